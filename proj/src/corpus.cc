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

#include "uslh/corpus.h"

#include <cctype>
#include <istream>
#include <numeric>
#include <sstream>

#include "uslh/error.h"
#include "uslh/random.h"
#include "uslh/text_io.h"

namespace uslh {

bool IsReservedToken(std::string_view token) {
  return token == kSeparatorToken || token == kUnknownToken || token == kBeginToken ||
         token == kEndToken;
}

Tokens Tokenize(std::string_view raw) {
  std::string lowered(raw);
  for (char& c : lowered) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  Tokens tokens = SplitWhitespace(lowered);
  for (std::string& token : tokens) {
    if (IsReservedToken(token)) token.insert(token.begin(), '\\');
  }
  return tokens;
}

Utterance Utterance::FromRaw(std::string_view raw) {
  return Utterance{std::string(TrimWhitespace(raw)), Tokenize(raw)};
}

namespace {

std::vector<int> ParseEmotionLine(std::string_view line, size_t line_number) {
  std::vector<int> labels;
  for (const std::string& field : SplitWhitespace(line)) {
    if (field.size() != 1 || field[0] < '0' || field[0] > '0' + kMaxEmotion) {
      throw ParseError("emotion line " + std::to_string(line_number) + ": label '" + field +
                       "' outside 0-6");
    }
    labels.push_back(field[0] - '0');
  }
  return labels;
}

std::vector<Dialogue> ParseLines(const std::vector<std::string>& corpus_lines,
                                 const std::vector<std::string>* emotion_lines) {
  std::vector<Dialogue> dialogues;
  size_t emotion_index = 0;
  for (size_t n = 0; n < corpus_lines.size(); ++n) {
    const std::string_view line = corpus_lines[n];
    if (TrimWhitespace(line).empty()) continue;
    Dialogue dialogue;
    size_t start = 0;
    while (start <= line.size()) {
      const size_t pos = line.find(kTurnMarker, start);
      const std::string_view segment =
          line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start);
      if (pos == std::string_view::npos) {
        // Text after the final marker is a turn only if it is non-blank.
        if (!TrimWhitespace(segment).empty()) {
          dialogue.utterances.push_back(Utterance::FromRaw(segment));
        }
        break;
      }
      dialogue.utterances.push_back(Utterance::FromRaw(segment));
      start = pos + kTurnMarker.size();
    }
    if (dialogue.utterances.empty()) continue;
    if (emotion_lines != nullptr) {
      // Emotion lines pair with non-empty corpus lines; blank emotion lines
      // are skipped the same way.
      while (emotion_index < emotion_lines->size() &&
             TrimWhitespace((*emotion_lines)[emotion_index]).empty()) {
        ++emotion_index;
      }
      if (emotion_index >= emotion_lines->size()) {
        throw ParseError("corpus line " + std::to_string(n + 1) + ": no matching emotion line");
      }
      std::vector<int> labels = ParseEmotionLine((*emotion_lines)[emotion_index], emotion_index + 1);
      if (labels.size() != dialogue.utterances.size()) {
        throw ParseError("corpus line " + std::to_string(n + 1) + ": " +
                         std::to_string(dialogue.utterances.size()) + " utterances but " +
                         std::to_string(labels.size()) + " emotion labels");
      }
      dialogue.emotions = std::move(labels);
      ++emotion_index;
    }
    dialogues.push_back(std::move(dialogue));
  }
  return dialogues;
}

}  // namespace

std::vector<Dialogue> ParseDailyDialog(std::istream& corpus, std::istream* emotions) {
  const std::vector<std::string> corpus_lines = ReadLines(corpus);
  if (emotions == nullptr) return ParseLines(corpus_lines, nullptr);
  const std::vector<std::string> emotion_lines = ReadLines(*emotions);
  return ParseLines(corpus_lines, &emotion_lines);
}

std::vector<Dialogue> ParseDailyDialogText(std::string_view corpus,
                                           std::optional<std::string_view> emotions) {
  std::istringstream corpus_in{std::string(corpus)};
  if (!emotions) return ParseDailyDialog(corpus_in);
  std::istringstream emotion_in{std::string(*emotions)};
  return ParseDailyDialog(corpus_in, &emotion_in);
}

std::string SerializeDailyDialog(const std::vector<Dialogue>& dialogues) {
  std::string out;
  for (const Dialogue& dialogue : dialogues) {
    for (const Utterance& u : dialogue.utterances) {
      out += u.raw;
      out += ' ';
      out += kTurnMarker;
      out += ' ';
    }
    out += '\n';
  }
  return out;
}

std::string SerializeEmotions(const std::vector<Dialogue>& dialogues) {
  std::string out;
  for (const Dialogue& dialogue : dialogues) {
    if (!dialogue.emotions) throw InvalidArgument("dialogue without emotion labels");
    for (size_t i = 0; i < dialogue.emotions->size(); ++i) {
      if (i > 0) out += ' ';
      out += std::to_string((*dialogue.emotions)[i]);
    }
    out += '\n';
  }
  return out;
}

std::vector<ContextResponsePair> ExtractPairs(const Dialogue& dialogue, int64_t dialogue_id) {
  std::vector<ContextResponsePair> pairs;
  for (size_t i = 0; i + 1 < dialogue.utterances.size(); ++i) {
    pairs.push_back({dialogue.utterances[i], dialogue.utterances[i + 1], dialogue_id,
                     static_cast<int64_t>(i)});
  }
  return pairs;
}

std::pair<std::vector<Dialogue>, std::vector<Dialogue>> SplitCorpus(std::vector<Dialogue> dialogues,
                                                                    uint64_t seed) {
  std::vector<size_t> order(dialogues.size());
  std::iota(order.begin(), order.end(), 0);
  Rng rng(seed);
  rng.Shuffle(std::span<size_t>(order));
  const size_t first_size = (dialogues.size() + 1) / 2;
  std::vector<Dialogue> first, second;
  first.reserve(first_size);
  second.reserve(dialogues.size() - first_size);
  for (size_t i = 0; i < order.size(); ++i) {
    (i < first_size ? first : second).push_back(std::move(dialogues[order[i]]));
  }
  return {std::move(first), std::move(second)};
}

std::vector<Utterance> AllUtterances(const std::vector<Dialogue>& dialogues) {
  std::vector<Utterance> out;
  for (const Dialogue& d : dialogues) out.insert(out.end(), d.utterances.begin(), d.utterances.end());
  return out;
}

}  // namespace uslh
