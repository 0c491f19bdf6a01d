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

#ifndef USLH_KERNELS_H_
#define USLH_KERNELS_H_

#include <span>
#include <vector>

#include "uslh/classify.h"
#include "uslh/langmodel.h"

// Batch scoring kernels. Each has a serial reference implementation and an
// OpenMP version; both produce bit-identical results in input order.
namespace uslh::kernels {

std::vector<double> ScoreSequencesSerial(const ScorerModel& model, std::span<const Tokens> batch);
std::vector<double> ScoreSequencesParallel(const ScorerModel& model, std::span<const Tokens> batch);

std::vector<MlmScores> MlmScoresSerial(const MaskedLanguageModel& model,
                                       std::span<const Tokens> batch);
std::vector<MlmScores> MlmScoresParallel(const MaskedLanguageModel& model,
                                         std::span<const Tokens> batch);

// Number of threads the parallel kernels will use.
int MaxThreads();

}  // namespace uslh::kernels

#endif  // USLH_KERNELS_H_
