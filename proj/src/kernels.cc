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

#include "uslh/kernels.h"

#ifdef _OPENMP
#include <omp.h>
#endif

#include <cstdint>

#include "uslh/error.h"

namespace uslh::kernels {

namespace {

// Exceptions must not cross an OpenMP region, so inputs are checked up front.
void RequireNonEmpty(std::span<const Tokens> batch) {
  for (size_t i = 0; i < batch.size(); ++i) {
    if (batch[i].empty()) {
      throw InvalidArgument("batch entry " + std::to_string(i) + " has no tokens");
    }
  }
}

}  // namespace

int MaxThreads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

std::vector<double> ScoreSequencesSerial(const ScorerModel& model, std::span<const Tokens> batch) {
  RequireNonEmpty(batch);
  std::vector<double> out(batch.size());
  for (size_t i = 0; i < batch.size(); ++i) out[i] = model.ScoreSequence(batch[i]);
  return out;
}

std::vector<double> ScoreSequencesParallel(const ScorerModel& model,
                                           std::span<const Tokens> batch) {
  RequireNonEmpty(batch);
  std::vector<double> out(batch.size());
  const int64_t n = static_cast<int64_t>(batch.size());
#pragma omp parallel for schedule(dynamic, 16)
  for (int64_t i = 0; i < n; ++i) out[i] = model.ScoreSequence(batch[i]);
  return out;
}

std::vector<MlmScores> MlmScoresSerial(const MaskedLanguageModel& model,
                                       std::span<const Tokens> batch) {
  RequireNonEmpty(batch);
  std::vector<MlmScores> out(batch.size());
  for (size_t i = 0; i < batch.size(); ++i) out[i] = ComputeMlmScores(model, batch[i]);
  return out;
}

std::vector<MlmScores> MlmScoresParallel(const MaskedLanguageModel& model,
                                         std::span<const Tokens> batch) {
  RequireNonEmpty(batch);
  std::vector<MlmScores> out(batch.size());
  const int64_t n = static_cast<int64_t>(batch.size());
#pragma omp parallel for schedule(dynamic, 16)
  for (int64_t i = 0; i < n; ++i) out[i] = ComputeMlmScores(model, batch[i]);
  return out;
}

}  // namespace uslh::kernels
