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

#include "uslh/langmodel.h"

#include <cmath>

#include "uslh/error.h"
#include "uslh/text_io.h"

namespace uslh {

MlmScores ComputeMlmScores(const MaskedLanguageModel& model, const Tokens& tokens) {
  if (tokens.empty()) throw InvalidArgument("MLM scores need a non-empty utterance");
  const std::vector<double> logs = model.MaskedLogProbs(tokens);
  double sum = 0.0, unigram_sum = 0.0;
  for (size_t i = 0; i < tokens.size(); ++i) {
    sum += logs[i];
    unigram_sum += model.UnigramLogProb(tokens[i]);
  }
  const double m = static_cast<double>(tokens.size());
  MlmScores s;
  s.nce = sum;
  s.likelihood = -sum / m;
  s.ppl = std::exp(s.likelihood);
  s.slor = (sum - unigram_sum) / m;
  return s;
}

UniformLanguageModel::UniformLanguageModel(size_t size)
    : log_prob_(-std::log(static_cast<double>(size))) {
  if (size == 0) throw InvalidArgument("uniform model over zero outcomes");
}

std::vector<double> UniformLanguageModel::MaskedLogProbs(const Tokens& tokens) const {
  return std::vector<double>(tokens.size(), log_prob_);
}

double UniformLanguageModel::UnigramLogProb(const std::string&) const { return log_prob_; }

namespace {

const std::string kUnk(kUnknownToken);
const std::string kBos(kBeginToken);
const std::string kEos(kEndToken);

std::string ContextKey(const Tokens& padded, size_t begin, size_t end) {
  std::string key;
  for (size_t i = begin; i < end; ++i) {
    if (i > begin) key += ' ';
    key += padded[i];
  }
  return key;
}

}  // namespace

PseudoLm PseudoLm::Train(const std::vector<Tokens>& corpus, const LmOptions& options) {
  if (options.order < 1) throw InvalidArgument("order must be >= 1");
  if (!(options.delta > 0.0)) throw InvalidArgument("smoothing constant must be positive");
  PseudoLm lm;
  lm.order_ = options.order;
  lm.delta_ = options.delta;
  for (const Tokens& sentence : corpus) {
    for (const std::string& t : sentence) {
      ++lm.unigram_[t];
      ++lm.total_tokens_;
    }
  }
  if (lm.total_tokens_ == 0) throw InvalidArgument("cannot train a language model on an empty corpus");
  if (lm.order_ == 1) return lm;

  const size_t h = static_cast<size_t>(lm.order_ - 1);
  for (const Tokens& sentence : corpus) {
    if (sentence.empty()) continue;
    Tokens padded(h, kBos);
    padded.insert(padded.end(), sentence.begin(), sentence.end());
    padded.insert(padded.end(), h, kEos);
    for (size_t i = h; i < h + sentence.size(); ++i) {
      const std::string fwd = ContextKey(padded, i - h, i);
      const std::string bwd = ContextKey(padded, i + 1, i + 1 + h);
      ++lm.forward_.counts[fwd][padded[i]];
      ++lm.forward_.totals[fwd];
      ++lm.backward_.counts[bwd][padded[i]];
      ++lm.backward_.totals[bwd];
    }
  }
  return lm;
}

const std::string& PseudoLm::Canonical(const std::string& token) const {
  return unigram_.contains(token) ? token : kUnk;
}

double PseudoLm::UnigramProb(const std::string& token) const {
  const auto it = unigram_.find(token);
  const double count = it == unigram_.end() ? 0.0 : static_cast<double>(it->second);
  return (count + delta_) /
         (static_cast<double>(total_tokens_) + delta_ * static_cast<double>(OutcomeCount()));
}

double PseudoLm::UnigramLogProb(const std::string& token) const {
  return std::log(UnigramProb(token));
}

double PseudoLm::ConditionalProb(const Table& table, const std::string& context,
                                 const std::string& token) const {
  double count = 0.0, total = 0.0;
  if (const auto it = table.counts.find(context); it != table.counts.end()) {
    total = static_cast<double>(table.totals.at(context));
    if (const auto jt = it->second.find(token); jt != it->second.end()) {
      count = static_cast<double>(jt->second);
    }
  }
  return (count + delta_) / (total + delta_ * static_cast<double>(OutcomeCount()));
}

double PseudoLm::ForwardProb(const Tokens& left_context, const std::string& token) const {
  if (order_ == 1) return UnigramProb(token);
  const size_t h = static_cast<size_t>(order_ - 1);
  Tokens ctx(h, kBos);
  const size_t take = std::min(h, left_context.size());
  for (size_t k = 0; k < take; ++k) {
    ctx[h - take + k] = Canonical(left_context[left_context.size() - take + k]);
  }
  return ConditionalProb(forward_, ContextKey(ctx, 0, h), Canonical(token));
}

double PseudoLm::BackwardProb(const Tokens& right_context, const std::string& token) const {
  if (order_ == 1) return UnigramProb(token);
  const size_t h = static_cast<size_t>(order_ - 1);
  Tokens ctx(h, kEos);
  const size_t take = std::min(h, right_context.size());
  for (size_t k = 0; k < take; ++k) ctx[k] = Canonical(right_context[k]);
  return ConditionalProb(backward_, ContextKey(ctx, 0, h), Canonical(token));
}

std::vector<double> PseudoLm::MaskedLogProbs(const Tokens& tokens) const {
  std::vector<double> out(tokens.size());
  const size_t h = static_cast<size_t>(order_ - 1);
  for (size_t i = 0; i < tokens.size(); ++i) {
    const size_t left_begin = i >= h ? i - h : 0;
    const Tokens left(tokens.begin() + left_begin, tokens.begin() + i);
    const Tokens right(tokens.begin() + i + 1,
                       tokens.begin() + std::min(tokens.size(), i + 1 + h));
    out[i] = std::log(0.5 * ForwardProb(left, tokens[i]) + 0.5 * BackwardProb(right, tokens[i]));
  }
  return out;
}

// Format:
//   USLH-MODEL v1 lm
//   order <n>
//   delta <d>
//   total <N>
//   vocab <V>
//   <token> <count>            (V lines, sorted)
//   forward <C>
//   <context> \t <token> \t <count>   (sorted by context, then token)
//   backward <C>
//   ...
std::string PseudoLm::Serialize() const {
  std::string out = "USLH-MODEL v1 lm\n";
  out += "order " + std::to_string(order_) + "\n";
  out += "delta " + FormatExact(delta_) + "\n";
  out += "total " + std::to_string(total_tokens_) + "\n";
  out += "vocab " + std::to_string(unigram_.size()) + "\n";
  for (const auto& [token, count] : unigram_) out += token + " " + std::to_string(count) + "\n";
  auto write_table = [&out](const char* name, const Table& table) {
    size_t rows = 0;
    for (const auto& [ctx, row] : table.counts) rows += row.size();
    out += std::string(name) + " " + std::to_string(rows) + "\n";
    for (const auto& [ctx, row] : table.counts) {
      for (const auto& [token, count] : row) {
        out += ctx + "\t" + token + "\t" + std::to_string(count) + "\n";
      }
    }
  };
  write_table("forward", forward_);
  write_table("backward", backward_);
  return out;
}

PseudoLm PseudoLm::Deserialize(const std::vector<std::string>& lines) {
  size_t pos = 0;
  auto next = [&]() -> const std::string& {
    if (pos >= lines.size()) throw ParseError("language model file truncated");
    return lines[pos++];
  };
  auto keyed = [&](std::string_view key) {
    const std::string& line = next();
    if (line.rfind(std::string(key) + " ", 0) != 0) {
      throw ParseError("language model file: expected '" + std::string(key) + "' at line " +
                       std::to_string(pos));
    }
    return line.substr(key.size() + 1);
  };
  if (next() != "USLH-MODEL v1 lm") throw ParseError("not a USLH-MODEL v1 lm file");
  PseudoLm lm;
  lm.order_ = static_cast<int>(ParseInt(keyed("order")));
  lm.delta_ = ParseDouble(keyed("delta"));
  lm.total_tokens_ = ParseInt(keyed("total"));
  if (lm.order_ < 1 || !(lm.delta_ > 0.0)) throw ParseError("language model file: bad order/delta");
  const long long vocab = ParseInt(keyed("vocab"));
  for (long long v = 0; v < vocab; ++v) {
    const std::string& line = next();
    const size_t space = line.rfind(' ');
    if (space == std::string::npos) throw ParseError("language model file: bad vocab line");
    lm.unigram_[line.substr(0, space)] = ParseInt(line.substr(space + 1));
  }
  auto read_table = [&](std::string_view name, Table& table) {
    const long long rows = ParseInt(keyed(name));
    for (long long r = 0; r < rows; ++r) {
      const auto fields = SplitFields(next(), '\t');
      if (fields.size() != 3) throw ParseError("language model file: bad n-gram line");
      const long long count = ParseInt(fields[2]);
      table.counts[fields[0]][fields[1]] = count;
      table.totals[fields[0]] += count;
    }
  };
  read_table("forward", lm.forward_);
  read_table("backward", lm.backward_);
  return lm;
}

}  // namespace uslh
