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

#include "uslh/baselines.h"

#include <algorithm>
#include <cmath>
#include <map>

#include "uslh/error.h"
#include "uslh/text_io.h"

namespace uslh {

namespace {

std::map<Tokens, int> NgramCounts(const Tokens& tokens, size_t n) {
  std::map<Tokens, int> counts;
  for (size_t i = 0; i + n <= tokens.size(); ++i) {
    ++counts[Tokens(tokens.begin() + i, tokens.begin() + i + n)];
  }
  return counts;
}

}  // namespace

double Bleu(const Tokens& reference, const Tokens& candidate, int max_n) {
  if (max_n < 1 || max_n > 4) throw InvalidArgument("BLEU order must be in 1..4");
  if (reference.empty()) throw InvalidArgument("BLEU needs a non-empty reference");
  if (candidate.empty()) throw InvalidArgument("BLEU needs a non-empty candidate");
  double log_sum = 0.0;
  for (int n = 1; n <= max_n; ++n) {
    const auto cand = NgramCounts(candidate, static_cast<size_t>(n));
    const auto ref = NgramCounts(reference, static_cast<size_t>(n));
    int matched = 0, total = 0;
    for (const auto& [gram, count] : cand) {
      total += count;
      const auto it = ref.find(gram);
      if (it != ref.end()) matched += std::min(count, it->second);
    }
    const double precision = total == 0 ? 0.0 : static_cast<double>(matched) / total;
    log_sum += std::log(std::max(precision, kBleuPrecisionFloor));
  }
  const double c = static_cast<double>(candidate.size());
  const double r = static_cast<double>(reference.size());
  const double brevity = c > r ? 1.0 : std::exp(1.0 - r / c);
  return std::clamp(brevity * std::exp(log_sum / max_n), 0.0, 1.0);
}

size_t LongestCommonSubsequence(const Tokens& a, const Tokens& b) {
  std::vector<size_t> prev(b.size() + 1, 0), cur(b.size() + 1, 0);
  for (size_t i = 1; i <= a.size(); ++i) {
    for (size_t j = 1; j <= b.size(); ++j) {
      cur[j] = a[i - 1] == b[j - 1] ? prev[j - 1] + 1 : std::max(prev[j], cur[j - 1]);
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

double RougeL(const Tokens& reference, const Tokens& candidate) {
  if (reference.empty() || candidate.empty()) throw InvalidArgument("ROUGE-L needs non-empty inputs");
  const double lcs = static_cast<double>(LongestCommonSubsequence(reference, candidate));
  if (lcs == 0.0) return 0.0;
  const double recall = lcs / static_cast<double>(reference.size());
  const double precision = lcs / static_cast<double>(candidate.size());
  return 2.0 * precision * recall / (precision + recall);
}

WordVectorTable WordVectorTable::Parse(const std::vector<std::string>& lines) {
  WordVectorTable table;
  for (size_t n = 0; n < lines.size(); ++n) {
    const auto fields = SplitWhitespace(lines[n]);
    if (fields.empty()) continue;
    if (fields.size() < 2) {
      throw ParseError("word-vector line " + std::to_string(n + 1) + ": no values");
    }
    std::vector<double> v;
    v.reserve(fields.size() - 1);
    for (size_t k = 1; k < fields.size(); ++k) v.push_back(ParseDouble(fields[k]));
    try {
      table.Add(fields[0], std::move(v));
    } catch (const Error& e) {
      throw ParseError("word-vector line " + std::to_string(n + 1) + ": " + e.what());
    }
  }
  if (table.size() == 0) throw ParseError("word-vector table is empty");
  return table;
}

void WordVectorTable::Add(const std::string& token, std::vector<double> vector) {
  if (vector.empty()) throw InvalidArgument("empty vector for '" + token + "'");
  if (dimension_ == 0) dimension_ = vector.size();
  if (vector.size() != dimension_) {
    throw InvalidArgument("vector for '" + token + "' has dimension " +
                          std::to_string(vector.size()) + ", expected " +
                          std::to_string(dimension_));
  }
  vectors_[token] = std::move(vector);
}

const std::vector<double>* WordVectorTable::Find(const std::string& token) const {
  const auto it = vectors_.find(token);
  return it == vectors_.end() ? nullptr : &it->second;
}

std::string_view EmbeddingModeName(EmbeddingMode mode) {
  switch (mode) {
    case EmbeddingMode::kAverage:
      return "average";
    case EmbeddingMode::kGreedy:
      return "greedy";
    case EmbeddingMode::kExtrema:
      return "extrema";
  }
  return "average";
}

double Cosine(const std::vector<double>& a, const std::vector<double>& b) {
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  if (na == 0.0 || nb == 0.0) return 0.0;
  return std::clamp(dot / std::sqrt(na * nb), -1.0, 1.0);
}

namespace {

std::vector<const std::vector<double>*> Lookup(const WordVectorTable& table, const Tokens& tokens,
                                               const char* side) {
  std::vector<const std::vector<double>*> out;
  for (const std::string& t : tokens) {
    if (const auto* v = table.Find(t)) out.push_back(v);
  }
  if (out.empty()) throw InvalidArgument(std::string(side) + " has no in-vocabulary token");
  return out;
}

std::vector<double> MeanVector(const std::vector<const std::vector<double>*>& vs, size_t dim) {
  std::vector<double> m(dim, 0.0);
  for (const auto* v : vs) {
    for (size_t d = 0; d < dim; ++d) m[d] += (*v)[d];
  }
  for (double& x : m) x /= static_cast<double>(vs.size());
  return m;
}

std::vector<double> ExtremaVector(const std::vector<const std::vector<double>*>& vs, size_t dim) {
  std::vector<double> e(dim, 0.0);
  for (const auto* v : vs) {
    for (size_t d = 0; d < dim; ++d) {
      if (std::abs((*v)[d]) > std::abs(e[d])) e[d] = (*v)[d];
    }
  }
  return e;
}

double GreedyDirection(const std::vector<const std::vector<double>*>& from,
                       const std::vector<const std::vector<double>*>& to) {
  double sum = 0.0;
  for (const auto* f : from) {
    double best = -1.0;
    for (const auto* t : to) best = std::max(best, Cosine(*f, *t));
    sum += best;
  }
  return sum / static_cast<double>(from.size());
}

}  // namespace

double EmbeddingMetric(const WordVectorTable& table, const Tokens& reference,
                       const Tokens& candidate, EmbeddingMode mode) {
  const auto ref = Lookup(table, reference, "reference");
  const auto cand = Lookup(table, candidate, "candidate");
  const size_t dim = table.dimension();
  switch (mode) {
    case EmbeddingMode::kAverage:
      return Cosine(MeanVector(ref, dim), MeanVector(cand, dim));
    case EmbeddingMode::kGreedy:
      return 0.5 * (GreedyDirection(ref, cand) + GreedyDirection(cand, ref));
    case EmbeddingMode::kExtrema:
      return Cosine(ExtremaVector(ref, dim), ExtremaVector(cand, dim));
  }
  return 0.0;
}

}  // namespace uslh
