// Copyright 2026 The USL-H Metric Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include "uslh/perturb.h"

#include <algorithm>
#include <array>
#include <cctype>

#include "uslh/error.h"
#include "uslh/text_io.h"

namespace uslh {

namespace {

constexpr std::array<std::pair<Rule, std::string_view>, 10> kRuleNames = {{
    {Rule::kIdentity, "identity"},
    {Rule::kStripPunct, "strip_punct"},
    {Rule::kStripStopwords, "strip_stopwords"},
    {Rule::kConsecutivePair, "consecutive_pair"},
    {Rule::kEmotion, "emotion"},
    {Rule::kReorder, "reorder"},
    {Rule::kDrop, "drop"},
    {Rule::kRepeat, "repeat"},
    {Rule::kRandomPair, "random_pair"},
    {Rule::kNoEmotion, "no_emotion"},
}};

}  // namespace

std::string_view RuleName(Rule rule) {
  for (const auto& [r, name] : kRuleNames) {
    if (r == rule) return name;
  }
  return "unknown";
}

Rule ParseRule(std::string_view name) {
  for (const auto& [r, n] : kRuleNames) {
    if (n == name) return r;
  }
  throw ParseError("unknown rule '" + std::string(name) + "'");
}

bool IsPositiveRule(Rule rule) {
  switch (rule) {
    case Rule::kIdentity:
    case Rule::kStripPunct:
    case Rule::kStripStopwords:
    case Rule::kConsecutivePair:
    case Rule::kEmotion:
      return true;
    default:
      return false;
  }
}

const std::unordered_set<std::string>& StopWords() {
  static const std::unordered_set<std::string> kWords = {
      "a",    "an",   "the",   "and",  "or",    "but",  "if",   "of",   "at",   "by",
      "for",  "with", "about", "to",   "from",  "in",   "on",   "is",   "am",   "are",
      "was",  "were", "be",    "been", "being", "do",   "does", "did",  "have", "has",
      "had",  "it",   "its",   "this", "that",  "these", "those", "so",  "than", "too",
      "very", "just", "can",   "will", "would", "should", "could", "then", "there", "as",
  };
  return kWords;
}

bool IsPunctuation(std::string_view token) {
  return !token.empty() && std::all_of(token.begin(), token.end(), [](char c) {
    return std::ispunct(static_cast<unsigned char>(c)) != 0;
  });
}

PerturbResult VupPositive(const Tokens& tokens, Rng& rng) {
  switch (rng.Index(3)) {
    case 0: {
      Tokens out = tokens;
      while (!out.empty() && IsPunctuation(out.back())) out.pop_back();
      if (out.empty()) return {tokens, Rule::kIdentity};
      return {std::move(out), Rule::kStripPunct};
    }
    case 1: {
      Tokens out;
      const auto& stop = StopWords();
      std::copy_if(tokens.begin(), tokens.end(), std::back_inserter(out),
                   [&](const std::string& t) { return !stop.contains(t); });
      if (out.empty()) return {tokens, Rule::kIdentity};
      return {std::move(out), Rule::kStripStopwords};
    }
    default:
      return {tokens, Rule::kIdentity};
  }
}

Tokens ReorderTokens(const Tokens& tokens, Rng& rng) {
  Tokens out = tokens;
  rng.Shuffle(std::span<std::string>(out));
  if (out == tokens) rng.Shuffle(std::span<std::string>(out));  // one resample, then accept
  return out;
}

Tokens DropTokens(const Tokens& tokens, Rng& rng) {
  std::vector<bool> keep(tokens.size());
  while (true) {
    size_t kept = 0;
    for (size_t i = 0; i < tokens.size(); ++i) {
      keep[i] = !rng.Bernoulli(kDropProbability);
      kept += keep[i];
    }
    if (kept >= 1 && kept < tokens.size()) break;
  }
  Tokens out;
  for (size_t i = 0; i < tokens.size(); ++i) {
    if (keep[i]) out.push_back(tokens[i]);
  }
  return out;
}

Tokens RepeatSpans(const Tokens& tokens, Rng& rng) {
  // Spans are chosen on the original positions; insertions are applied from
  // the back so earlier offsets stay valid.
  struct Span {
    size_t start, length;
    int copies;
  };
  const int span_count = static_cast<int>(rng.Range(1, 2));
  std::vector<Span> spans;
  for (int s = 0; s < span_count; ++s) {
    const size_t length = std::min<size_t>(static_cast<size_t>(rng.Range(1, 3)), tokens.size());
    const size_t start = rng.Index(tokens.size() - length + 1);
    const int copies = static_cast<int>(rng.Range(2, 3));
    spans.push_back({start, length, copies});
  }
  std::stable_sort(spans.begin(), spans.end(),
                   [](const Span& a, const Span& b) { return a.start > b.start; });
  Tokens out = tokens;
  for (const Span& span : spans) {
    const Tokens piece(tokens.begin() + span.start, tokens.begin() + span.start + span.length);
    const auto insert_at = out.begin() + span.start + span.length;
    Tokens extra;
    for (int c = 1; c < span.copies; ++c) extra.insert(extra.end(), piece.begin(), piece.end());
    out.insert(insert_at, extra.begin(), extra.end());
  }
  return out;
}

PerturbResult VupNegative(const Tokens& tokens, Rng& rng) {
  if (tokens.size() < 2) {
    throw InvalidArgument("corruption needs at least 2 tokens, got " +
                          std::to_string(tokens.size()));
  }
  switch (rng.Index(3)) {
    case 0:
      return {ReorderTokens(tokens, rng), Rule::kReorder};
    case 1:
      return {DropTokens(tokens, rng), Rule::kDrop};
    default:
      return {RepeatSpans(tokens, rng), Rule::kRepeat};
  }
}

std::vector<LabeledExample> BuildVupDataset(const std::vector<Utterance>& utterances,
                                            uint64_t seed) {
  Rng rng(seed);
  std::vector<LabeledExample> out;
  out.reserve(utterances.size());
  for (const Utterance& u : utterances) {
    if (u.tokens.empty()) continue;
    const bool positive = rng.Bernoulli(0.5) || u.tokens.size() < 2;
    PerturbResult r = positive ? VupPositive(u.tokens, rng) : VupNegative(u.tokens, rng);
    out.push_back({std::move(r.tokens), positive ? 1 : 0, r.rule});
  }
  return out;
}

Tokens JoinPair(const Tokens& context, const Tokens& response) {
  Tokens out;
  out.reserve(context.size() + response.size() + 1);
  out.insert(out.end(), context.begin(), context.end());
  out.emplace_back(kSeparatorToken);
  out.insert(out.end(), response.begin(), response.end());
  return out;
}

std::vector<LabeledExample> BuildNupDataset(const std::vector<Dialogue>& dialogues,
                                            uint64_t seed) {
  if (dialogues.size() < 2) throw InvalidArgument("next-utterance data needs at least 2 dialogues");
  std::vector<const Tokens*> pool;
  for (const Dialogue& d : dialogues) {
    for (const Utterance& u : d.utterances) {
      if (!u.tokens.empty()) pool.push_back(&u.tokens);
    }
  }
  std::vector<LabeledExample> out;
  for (size_t id = 0; id < dialogues.size(); ++id) {
    Rng rng(DeriveSeed(seed, id));
    const auto& turns = dialogues[id].utterances;
    for (size_t i = 0; i + 1 < turns.size(); ++i) {
      const Tokens& context = turns[i].tokens;
      const Tokens& truth = turns[i + 1].tokens;
      if (context.empty() || truth.empty()) continue;
      const Tokens* negative = pool[rng.Index(pool.size())];
      // Re-draw while the sample equals the true reply. Bail out if the pool
      // has nothing else to offer.
      const bool has_alternative = std::any_of(pool.begin(), pool.end(),
                                               [&](const Tokens* t) { return *t != truth; });
      if (!has_alternative) continue;
      while (*negative == truth) negative = pool[rng.Index(pool.size())];
      out.push_back({JoinPair(context, truth), 1, Rule::kConsecutivePair});
      out.push_back({JoinPair(context, *negative), 0, Rule::kRandomPair});
    }
  }
  return out;
}

std::vector<LabeledExample> BuildEmpathyDataset(const std::vector<Dialogue>& dialogues) {
  std::vector<LabeledExample> out;
  for (size_t id = 0; id < dialogues.size(); ++id) {
    const Dialogue& d = dialogues[id];
    if (!d.emotions) {
      throw InvalidArgument("dialogue " + std::to_string(id) + " has no emotion labels");
    }
    for (size_t i = 0; i < d.utterances.size(); ++i) {
      if (d.utterances[i].tokens.empty()) continue;
      const bool has_emotion = (*d.emotions)[i] != kNoEmotion;
      out.push_back({d.utterances[i].tokens, has_emotion ? 1 : 0,
                     has_emotion ? Rule::kEmotion : Rule::kNoEmotion});
    }
  }
  return out;
}

std::string SerializeDataset(const std::vector<LabeledExample>& examples) {
  std::string out;
  for (const LabeledExample& e : examples) {
    out += std::to_string(e.label);
    out += '\t';
    out += RuleName(e.rule);
    out += '\t';
    out += Join(e.tokens, " ");
    out += '\n';
  }
  return out;
}

std::vector<LabeledExample> ParseDataset(const std::vector<std::string>& lines) {
  std::vector<LabeledExample> out;
  for (size_t n = 0; n < lines.size(); ++n) {
    if (TrimWhitespace(lines[n]).empty()) continue;
    const auto fields = SplitFields(lines[n], '\t');
    const std::string where = "dataset line " + std::to_string(n + 1);
    if (fields.size() != 3) throw ParseError(where + ": expected 3 tab-separated fields");
    LabeledExample e;
    if (fields[0] != "0" && fields[0] != "1") throw ParseError(where + ": label must be 0 or 1");
    e.label = fields[0] == "1";
    e.rule = ParseRule(fields[1]);
    if (IsPositiveRule(e.rule) != (e.label == 1)) {
      throw ParseError(where + ": rule '" + fields[1] + "' inconsistent with label");
    }
    e.tokens = SplitWhitespace(fields[2]);
    if (e.tokens.empty()) throw ParseError(where + ": no tokens");
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace uslh
