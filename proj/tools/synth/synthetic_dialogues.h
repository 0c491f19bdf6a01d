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

#ifndef USLH_TOOLS_SYNTH_SYNTHETIC_DIALOGUES_H_
#define USLH_TOOLS_SYNTH_SYNTHETIC_DIALOGUES_H_

#include <cstdint>
#include <string>
#include <vector>

#include "uslh/corpus.h"
#include "uslh/stats.h"

// Deterministic generator of everyday two-party dialogues in the DailyDialog
// layout (pre-tokenized, space-separated punctuation, per-turn emotion labels
// 0-6). Used for desk-scale training runs and the bundled sample.
namespace uslh::synth {

std::vector<Dialogue> GenerateDialogues(size_t count, uint64_t seed);

// Candidate responses for annotated evaluation, modeled on a retrieval /
// generation line-up: ground truth, random retrieval, generic reply,
// corrupted reply, and an on-topic reply from another exchange.
struct EvalItem {
  std::string item_id;
  std::string context;
  std::string response;
  std::string reference;
  std::string system;
};

struct EvalSet {
  std::vector<EvalItem> items;
  std::vector<AnnotationRecord> annotations;
};

EvalSet GenerateEvalSet(const std::vector<Dialogue>& dialogues, size_t contexts,
                        size_t annotators, uint64_t seed);

// `token v1 ... vd` lines for every token in the dialogues; topic words share
// a topic direction.
std::string GenerateWordVectors(const std::vector<Dialogue>& dialogues, size_t dim, uint64_t seed);

std::string SerializeEvalPairs(const EvalSet& set);

}  // namespace uslh::synth

#endif  // USLH_TOOLS_SYNTH_SYNTHETIC_DIALOGUES_H_
