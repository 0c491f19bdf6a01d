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

#ifndef USLH_PERTURB_H_
#define USLH_PERTURB_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "uslh/corpus.h"
#include "uslh/random.h"

namespace uslh {

// Provenance of a training example. The first block yields label 1.
enum class Rule {
  kIdentity,
  kStripPunct,
  kStripStopwords,
  kConsecutivePair,
  kEmotion,
  kReorder,
  kDrop,
  kRepeat,
  kRandomPair,
  kNoEmotion,
};

std::string_view RuleName(Rule rule);
Rule ParseRule(std::string_view name);
bool IsPositiveRule(Rule rule);

struct LabeledExample {
  Tokens tokens;
  int label = 0;
  Rule rule = Rule::kIdentity;

  bool operator==(const LabeledExample&) const = default;
};

// Fixed English function-word list used by the stop-word removal rule.
const std::unordered_set<std::string>& StopWords();

// Token is made only of ASCII punctuation characters.
bool IsPunctuation(std::string_view token);

struct PerturbResult {
  Tokens tokens;
  Rule rule;
};

inline constexpr double kDropProbability = 0.3;

// Label-1 variants: strip final punctuation, strip stop words, or identity,
// chosen uniformly. Falls back to identity when a rule would empty the input.
PerturbResult VupPositive(const Tokens& tokens, Rng& rng);

// Label-0 variants: reorder, drop, or repeat, chosen uniformly. Requires at
// least two tokens.
PerturbResult VupNegative(const Tokens& tokens, Rng& rng);

// Individual corruption rules, exposed for testing.
Tokens ReorderTokens(const Tokens& tokens, Rng& rng);
Tokens DropTokens(const Tokens& tokens, Rng& rng);
Tokens RepeatSpans(const Tokens& tokens, Rng& rng);

std::vector<LabeledExample> BuildVupDataset(const std::vector<Utterance>& utterances, uint64_t seed);

// Context tokens, separator, response tokens.
Tokens JoinPair(const Tokens& context, const Tokens& response);

std::vector<LabeledExample> BuildNupDataset(const std::vector<Dialogue>& dialogues, uint64_t seed);

std::vector<LabeledExample> BuildEmpathyDataset(const std::vector<Dialogue>& dialogues);

// `label<TAB>rule<TAB>space-joined tokens`, one per line.
std::string SerializeDataset(const std::vector<LabeledExample>& examples);
std::vector<LabeledExample> ParseDataset(const std::vector<std::string>& lines);

}  // namespace uslh

#endif  // USLH_PERTURB_H_
