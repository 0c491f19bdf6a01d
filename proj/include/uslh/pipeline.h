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

#ifndef USLH_PIPELINE_H_
#define USLH_PIPELINE_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "uslh/baselines.h"
#include "uslh/classify.h"
#include "uslh/compose.h"
#include "uslh/corpus.h"
#include "uslh/langmodel.h"
#include "uslh/stats.h"

namespace uslh {

// Model file names inside a model directory.
inline constexpr const char* kVupModelFile = "vup.model";
inline constexpr const char* kNupModelFile = "nup.model";
inline constexpr const char* kEmpathyModelFile = "empathy.model";
inline constexpr const char* kLmModelFile = "lm.model";

enum class NormalizerPolicy { kBatch, kFile };

struct PipelineConfig {
  uint64_t seed = 42;
  std::filesystem::path model_dir;
  std::optional<std::filesystem::path> vectors_path;
  CompositionWeights weights;
  NormalizerPolicy normalizer_policy = NormalizerPolicy::kBatch;
  // Bounds used under NormalizerPolicy::kFile.
  Normalizer file_normalizer;
  // Quality used for likability when weights.beta is empty.
  std::string likability = "mlm_likelihood";
  // Output columns to keep; empty keeps all.
  std::vector<std::string> metrics;
};

// Every model the scorer needs, loaded once and shared read-only.
struct ScoringModels {
  ScorerModel vup;
  ScorerModel nup;
  PseudoLm lm;
  std::optional<ScorerModel> empathy;
  std::optional<WordVectorTable> vectors;

  // Throws Error(kNotFound) naming the first missing model path. The empathy
  // model is optional and loaded when present.
  static ScoringModels Load(const PipelineConfig& config);
};

ScorerModel LoadScorerModel(const std::filesystem::path& path);
PseudoLm LoadLanguageModel(const std::filesystem::path& path);

struct ScoringInput {
  std::string item_id;
  Utterance context;
  Utterance response;
  std::optional<Utterance> reference;
};

struct ScoredItem {
  std::string item_id;
  Utterance context;
  Utterance response;
  // Column name -> value, in fixed output order.
  std::vector<std::pair<std::string, double>> scores;

  double Get(const std::string& metric) const;
};

struct ScoreBatchResult {
  std::vector<ScoredItem> items;
  Normalizer normalizer;  // bounds actually applied to likability qualities
};

// Raw sub-scores, normalized likability, composites, and (with references)
// baselines for every input, in input order.
ScoreBatchResult ScoreBatch(const ScoringModels& models, const PipelineConfig& config,
                            const std::vector<ScoringInput>& inputs);

// `item_id<TAB>context<TAB>response[<TAB>reference]`.
std::vector<ScoringInput> ParsePairsFile(const std::vector<std::string>& lines);

// Pairs from consecutive turns, ids `d<dialogue>_t<turn>`.
std::vector<ScoringInput> PairsFromCorpus(const std::vector<Dialogue>& dialogues);

// `item_id<TAB>metric<TAB>value`, six decimals.
std::string SerializeScores(const std::vector<ScoredItem>& items);

struct ScoreTable {
  std::vector<std::string> item_order;
  std::map<std::string, std::map<std::string, double>> values;  // item -> metric -> value
  std::vector<std::string> metric_order;
};

ScoreTable ParseScoresFile(const std::vector<std::string>& lines);

struct Ranking {
  size_t best_index = 0;
  std::vector<size_t> order;  // pool indices, best first
  std::vector<double> scores; // indexed by pool position
};

// Descending by score; equal scores keep pool order.
Ranking RankByScores(const std::vector<double>& scores);

Ranking RankResponses(const ScoringModels& models, const PipelineConfig& config,
                      const Utterance& context, const std::vector<Utterance>& pool,
                      const std::string& metric);

struct CorrelationRow {
  std::string metric;
  size_t items = 0;
  CorrelationTest pearson_vanilla, spearman_vanilla;
  CorrelationTest pearson_usl_h, spearman_usl_h;
};

struct CorrelationReport {
  std::vector<CorrelationRow> rows;
};

// Correlates each metric column with the mean human overall score and with
// the human USL-H composite, over items present in both inputs.
CorrelationReport EvaluateMetrics(const ScoreTable& scores,
                                  const std::vector<AnnotationRecord>& annotations,
                                  const std::vector<std::string>& metrics,
                                  const std::array<double, 3>& alpha);

std::string FormatCorrelationReport(const CorrelationReport& report);

}  // namespace uslh

#endif  // USLH_PIPELINE_H_
