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

#ifndef USLH_BASELINES_H_
#define USLH_BASELINES_H_

#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "uslh/corpus.h"

namespace uslh {

inline constexpr double kBleuPrecisionFloor = 1e-9;

// Sentence BLEU: geometric mean of clipped n-gram precisions for n in
// [1, max_n], each floored at kBleuPrecisionFloor, times the brevity penalty.
double Bleu(const Tokens& reference, const Tokens& candidate, int max_n);

size_t LongestCommonSubsequence(const Tokens& a, const Tokens& b);

// LCS F1; 0 when nothing is shared.
double RougeL(const Tokens& reference, const Tokens& candidate);

class WordVectorTable {
 public:
  // `token v1 ... vd` per line; every row must share the same dimension.
  static WordVectorTable Parse(const std::vector<std::string>& lines);

  void Add(const std::string& token, std::vector<double> vector);
  const std::vector<double>* Find(const std::string& token) const;
  size_t dimension() const { return dimension_; }
  size_t size() const { return vectors_.size(); }

 private:
  size_t dimension_ = 0;
  std::unordered_map<std::string, std::vector<double>> vectors_;
};

enum class EmbeddingMode { kAverage, kGreedy, kExtrema };

std::string_view EmbeddingModeName(EmbeddingMode mode);

// Cosine-based similarity in [-1, 1]. Out-of-vocabulary tokens are skipped;
// a side with no known token is an error.
double EmbeddingMetric(const WordVectorTable& table, const Tokens& reference,
                       const Tokens& candidate, EmbeddingMode mode);

double Cosine(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace uslh

#endif  // USLH_BASELINES_H_
