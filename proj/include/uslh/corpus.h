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

#ifndef USLH_CORPUS_H_
#define USLH_CORPUS_H_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace uslh {

using Tokens = std::vector<std::string>;

// Reserved symbols. Tokenize never emits them: a raw word that collides with
// one is escaped with a leading backslash.
inline constexpr std::string_view kSeparatorToken = "\xE2\x9F\xA8sep\xE2\x9F\xA9";  // ⟨sep⟩
inline constexpr std::string_view kUnknownToken = "\xE2\x9F\xA8unk\xE2\x9F\xA9";    // ⟨unk⟩
inline constexpr std::string_view kBeginToken = "\xE2\x9F\xA8s\xE2\x9F\xA9";        // ⟨s⟩
inline constexpr std::string_view kEndToken = "\xE2\x9F\xA8/s\xE2\x9F\xA9";         // ⟨/s⟩

bool IsReservedToken(std::string_view token);

// ASCII-lowercase, then split on whitespace. DailyDialog text is already
// tokenized with punctuation separated by spaces.
Tokens Tokenize(std::string_view raw);

struct Utterance {
  std::string raw;
  Tokens tokens;

  static Utterance FromRaw(std::string_view raw);
};

// DailyDialog emotion label 0 means "no emotion"; 1..6 are the six emotions.
inline constexpr int kNoEmotion = 0;
inline constexpr int kMaxEmotion = 6;

struct Dialogue {
  std::vector<Utterance> utterances;
  std::optional<std::vector<int>> emotions;
};

struct ContextResponsePair {
  Utterance context;
  Utterance response;
  int64_t dialogue_id = 0;
  int64_t turn_index = 0;  // position of `context` in its dialogue
};

inline constexpr std::string_view kTurnMarker = "__eou__";

// One dialogue per non-empty line, turns terminated by "__eou__". Emotion
// lines (when given) align one-to-one with non-empty corpus lines.
std::vector<Dialogue> ParseDailyDialog(std::istream& corpus, std::istream* emotions = nullptr);
std::vector<Dialogue> ParseDailyDialogText(std::string_view corpus,
                                           std::optional<std::string_view> emotions = std::nullopt);

// Inverse of ParseDailyDialog for the corpus stream.
std::string SerializeDailyDialog(const std::vector<Dialogue>& dialogues);
std::string SerializeEmotions(const std::vector<Dialogue>& dialogues);

std::vector<ContextResponsePair> ExtractPairs(const Dialogue& dialogue, int64_t dialogue_id = 0);

// Deterministic shuffle by seed, then halves. The first part receives the
// extra dialogue when the count is odd.
std::pair<std::vector<Dialogue>, std::vector<Dialogue>> SplitCorpus(std::vector<Dialogue> dialogues,
                                                                    uint64_t seed);

std::vector<Utterance> AllUtterances(const std::vector<Dialogue>& dialogues);

}  // namespace uslh

#endif  // USLH_CORPUS_H_
