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

#include "uslh/pipeline.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "uslh/error.h"
#include "uslh/kernels.h"
#include "uslh/perturb.h"
#include "uslh/text_io.h"

namespace uslh {

namespace {

const std::set<std::string>& MlmColumns() {
  static const std::set<std::string> kColumns = {"mlm_likelihood", "mlm_nce", "mlm_ppl",
                                                 "mlm_slor"};
  return kColumns;
}

std::vector<std::string> ReadModelLines(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path)) {
    throw Error(ErrorCode::kNotFound, "model file not found: " + path.string());
  }
  return ReadLines(path);
}

}  // namespace

ScorerModel LoadScorerModel(const std::filesystem::path& path) {
  return ScorerModel::Deserialize(ReadModelLines(path));
}

PseudoLm LoadLanguageModel(const std::filesystem::path& path) {
  return PseudoLm::Deserialize(ReadModelLines(path));
}

ScoringModels ScoringModels::Load(const PipelineConfig& config) {
  const auto& dir = config.model_dir;
  ScorerModel vup = LoadScorerModel(dir / kVupModelFile);
  ScorerModel nup = LoadScorerModel(dir / kNupModelFile);
  PseudoLm lm = LoadLanguageModel(dir / kLmModelFile);
  if (vup.kind() != ScorerKind::kVup || nup.kind() != ScorerKind::kNup) {
    throw InvalidArgument("model directory " + dir.string() + " holds models of the wrong kind");
  }
  ScoringModels models{std::move(vup), std::move(nup), std::move(lm), std::nullopt, std::nullopt};
  if (std::filesystem::exists(dir / kEmpathyModelFile)) {
    models.empathy = LoadScorerModel(dir / kEmpathyModelFile);
    if (models.empathy->kind() != ScorerKind::kEmpathy) {
      throw InvalidArgument((dir / kEmpathyModelFile).string() + " is not an empathy model");
    }
  }
  if (config.vectors_path) {
    if (!std::filesystem::exists(*config.vectors_path)) {
      throw Error(ErrorCode::kNotFound, "word-vector file not found: " + config.vectors_path->string());
    }
    models.vectors = WordVectorTable::Parse(ReadLines(*config.vectors_path));
  }
  return models;
}

double ScoredItem::Get(const std::string& metric) const {
  for (const auto& [name, value] : scores) {
    if (name == metric) return value;
  }
  throw Error(ErrorCode::kNotFound, "item " + item_id + " has no metric '" + metric + "'");
}

ScoreBatchResult ScoreBatch(const ScoringModels& models, const PipelineConfig& config,
                            const std::vector<ScoringInput>& inputs) {
  config.weights.Validate();
  ScoreBatchResult result;
  if (inputs.empty()) return result;

  std::vector<Tokens> responses, pairs;
  responses.reserve(inputs.size());
  pairs.reserve(inputs.size());
  for (const ScoringInput& in : inputs) {
    if (in.context.tokens.empty() || in.response.tokens.empty()) {
      throw InvalidArgument("item " + in.item_id + " has an empty context or response");
    }
    responses.push_back(in.response.tokens);
    pairs.push_back(JoinPair(in.context.tokens, in.response.tokens));
  }

  const std::vector<double> vup = kernels::ScoreSequencesParallel(models.vup, responses);
  const std::vector<double> nup = kernels::ScoreSequencesParallel(models.nup, pairs);
  const std::vector<MlmScores> mlm = kernels::MlmScoresParallel(models.lm, responses);
  std::vector<double> empathy;
  if (models.empathy) empathy = kernels::ScoreSequencesParallel(*models.empathy, responses);

  std::map<std::string, std::vector<double>> raw = {
      {"vup", vup}, {"nup", nup}, {"mlm_likelihood", {}}, {"mlm_nce", {}}, {"mlm_ppl", {}},
      {"mlm_slor", {}}};
  for (const MlmScores& m : mlm) {
    raw["mlm_likelihood"].push_back(m.likelihood);
    raw["mlm_nce"].push_back(m.nce);
    raw["mlm_ppl"].push_back(m.ppl);
    raw["mlm_slor"].push_back(m.slor);
  }
  if (models.empathy) raw["empathy"] = empathy;

  std::map<std::string, double> beta = config.weights.beta;
  if (beta.empty()) beta[config.likability] = 1.0;
  for (const auto& [name, weight] : beta) {
    if (name == "empathy") {
      if (!models.empathy) {
        throw Error(ErrorCode::kNotFound, "likability uses empathy but " +
                                              (config.model_dir / kEmpathyModelFile).string() +
                                              " is missing");
      }
    } else if (!MlmColumns().contains(name)) {
      throw InvalidArgument("unknown likability quality '" + name + "'");
    } else if (config.normalizer_policy == NormalizerPolicy::kBatch) {
      result.normalizer.Set(name, Normalizer::Fit({{name, raw[name]}}).bounds().at(name));
    } else {
      if (!config.file_normalizer.Has(name)) {
        throw Error(ErrorCode::kNotFound, "normalizer file has no entry for '" + name + "'");
      }
      result.normalizer.Set(name, config.file_normalizer.bounds().at(name));
    }
  }

  const std::set<std::string> keep(config.metrics.begin(), config.metrics.end());
  const auto& alpha = config.weights.alpha;
  result.items.reserve(inputs.size());
  for (size_t i = 0; i < inputs.size(); ++i) {
    const ScoringInput& in = inputs[i];
    ScoredItem item{in.item_id, in.context, in.response, {}};
    auto& cols = item.scores;
    for (const char* name : {"vup", "nup", "mlm_likelihood", "mlm_nce", "mlm_ppl", "mlm_slor"}) {
      cols.emplace_back(name, raw[name][i]);
    }
    if (models.empathy) cols.emplace_back("empathy", empathy[i]);

    std::map<std::string, double> qualities;
    for (const auto& [name, weight] : beta) {
      qualities[name] = name == "empathy" ? empathy[i] : result.normalizer.Normalize(name, raw[name][i]);
    }
    const double su = vup[i], ss = nup[i];
    const double sl = Likability(qualities, beta);
    cols.emplace_back("sL", sl);
    cols.emplace_back("usl_h", UslH(su, ss, sl, alpha));
    cols.emplace_back("usl_h_full", UslHFull(su, ss, sl, alpha));
    cols.emplace_back("usl_a", UslA(su, ss, sl, alpha));
    for (MeanKind kind : {MeanKind::kArithmetic, MeanKind::kGeometric, MeanKind::kHarmonic}) {
      cols.emplace_back("mean_" + std::string(MeanKindName(kind)), CompositeMean(su, ss, sl, kind));
    }
    if (in.reference && !in.reference->tokens.empty()) {
      const Tokens& ref = in.reference->tokens;
      for (int n = 2; n <= 4; ++n) {
        cols.emplace_back("bleu" + std::to_string(n), Bleu(ref, in.response.tokens, n));
      }
      cols.emplace_back("rouge_l", RougeL(ref, in.response.tokens));
      if (models.vectors) {
        for (EmbeddingMode mode :
             {EmbeddingMode::kAverage, EmbeddingMode::kGreedy, EmbeddingMode::kExtrema}) {
          try {
            cols.emplace_back("emb_" + std::string(EmbeddingModeName(mode)),
                              EmbeddingMetric(*models.vectors, ref, in.response.tokens, mode));
          } catch (const Error&) {
            // No in-vocabulary token on one side: the column is left out for
            // this item.
          }
        }
      }
    }
    if (!keep.empty()) {
      std::erase_if(cols, [&](const auto& c) { return !keep.contains(c.first); });
    }
    result.items.push_back(std::move(item));
  }
  return result;
}

std::vector<ScoringInput> ParsePairsFile(const std::vector<std::string>& lines) {
  std::vector<ScoringInput> out;
  std::set<std::string> seen;
  for (size_t n = 0; n < lines.size(); ++n) {
    if (TrimWhitespace(lines[n]).empty()) continue;
    const auto f = SplitFields(lines[n], '\t');
    const std::string where = "pairs line " + std::to_string(n + 1);
    if (f.size() != 3 && f.size() != 4) {
      throw ParseError(where + ": expected item_id, context, response[, reference]");
    }
    if (!seen.insert(f[0]).second) throw ParseError(where + ": duplicate item id '" + f[0] + "'");
    ScoringInput in{f[0], Utterance::FromRaw(f[1]), Utterance::FromRaw(f[2]), std::nullopt};
    if (f.size() == 4) in.reference = Utterance::FromRaw(f[3]);
    out.push_back(std::move(in));
  }
  return out;
}

std::vector<ScoringInput> PairsFromCorpus(const std::vector<Dialogue>& dialogues) {
  std::vector<ScoringInput> out;
  for (size_t d = 0; d < dialogues.size(); ++d) {
    for (const ContextResponsePair& p : ExtractPairs(dialogues[d], static_cast<int64_t>(d))) {
      if (p.context.tokens.empty() || p.response.tokens.empty()) continue;
      out.push_back({"d" + std::to_string(d) + "_t" + std::to_string(p.turn_index), p.context,
                     p.response, std::nullopt});
    }
  }
  return out;
}

std::string SerializeScores(const std::vector<ScoredItem>& items) {
  std::string out;
  for (const ScoredItem& item : items) {
    for (const auto& [name, value] : item.scores) {
      out += item.item_id + "\t" + name + "\t" + FormatFixed(value, 6) + "\n";
    }
  }
  return out;
}

ScoreTable ParseScoresFile(const std::vector<std::string>& lines) {
  ScoreTable table;
  std::set<std::string> metrics;
  for (size_t n = 0; n < lines.size(); ++n) {
    if (TrimWhitespace(lines[n]).empty()) continue;
    const auto f = SplitFields(lines[n], '\t');
    if (f.size() != 3) throw ParseError("scores line " + std::to_string(n + 1) + ": expected 3 fields");
    if (!table.values.contains(f[0])) table.item_order.push_back(f[0]);
    table.values[f[0]][f[1]] = ParseDouble(f[2]);
    if (metrics.insert(f[1]).second) table.metric_order.push_back(f[1]);
  }
  return table;
}

Ranking RankByScores(const std::vector<double>& scores) {
  Ranking r;
  r.scores = scores;
  r.order.resize(scores.size());
  std::iota(r.order.begin(), r.order.end(), 0);
  std::stable_sort(r.order.begin(), r.order.end(),
                   [&](size_t a, size_t b) { return scores[a] > scores[b]; });
  r.best_index = r.order.empty() ? 0 : r.order.front();
  return r;
}

Ranking RankResponses(const ScoringModels& models, const PipelineConfig& config,
                      const Utterance& context, const std::vector<Utterance>& pool,
                      const std::string& metric) {
  if (pool.empty()) throw InvalidArgument("response pool is empty");
  std::vector<ScoringInput> inputs;
  for (size_t k = 0; k < pool.size(); ++k) {
    inputs.push_back({std::to_string(k), context, pool[k], std::nullopt});
  }
  PipelineConfig unfiltered = config;
  unfiltered.metrics.clear();
  const ScoreBatchResult scored = ScoreBatch(models, unfiltered, inputs);
  std::vector<double> scores;
  for (const ScoredItem& item : scored.items) scores.push_back(item.Get(metric));
  return RankByScores(scores);
}

CorrelationReport EvaluateMetrics(const ScoreTable& scores,
                                  const std::vector<AnnotationRecord>& annotations,
                                  const std::vector<std::string>& metrics,
                                  const std::array<double, 3>& alpha) {
  const auto human = AggregateHumanScores(annotations, alpha);
  size_t joined = 0;
  for (const std::string& item : scores.item_order) joined += human.contains(item);
  if (joined == 0) throw InvalidArgument("no item id is shared by scores and annotations");

  CorrelationReport report;
  for (const std::string& metric : metrics) {
    std::vector<double> x, vanilla, usl_h;
    for (const std::string& item : scores.item_order) {
      const auto h = human.find(item);
      if (h == human.end()) continue;
      const auto& row = scores.values.at(item);
      const auto v = row.find(metric);
      if (v == row.end()) continue;
      x.push_back(v->second);
      vanilla.push_back(h->second.overall);
      usl_h.push_back(h->second.usl_h);
    }
    if (x.size() < 2) {
      throw InvalidArgument("metric '" + metric + "' has fewer than 2 annotated items");
    }
    CorrelationRow row;
    row.metric = metric;
    row.items = x.size();
    const double nan = std::nan("");
    auto safe = [&](auto fn, const std::vector<double>& y) {
      try {
        return fn(x, y);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::kUndefined) throw;
        return CorrelationTest{nan, nan};
      }
    };
    row.pearson_vanilla = safe(PearsonTest, vanilla);
    row.spearman_vanilla = safe(SpearmanTest, vanilla);
    row.pearson_usl_h = safe(PearsonTest, usl_h);
    row.spearman_usl_h = safe(SpearmanTest, usl_h);
    report.rows.push_back(row);
  }
  return report;
}

std::string FormatCorrelationReport(const CorrelationReport& report) {
  std::string out =
      "metric\titems\tpearson_vanilla\tp\tspearman_vanilla\tp\tpearson_human_usl_h\tp\t"
      "spearman_human_usl_h\tp\n";
  auto cell = [](double v) { return std::isnan(v) ? std::string("nan") : FormatFixed(v, 6); };
  for (const CorrelationRow& r : report.rows) {
    out += r.metric + "\t" + std::to_string(r.items);
    for (const CorrelationTest& t :
         {r.pearson_vanilla, r.spearman_vanilla, r.pearson_usl_h, r.spearman_usl_h}) {
      out += "\t" + cell(t.coefficient) + "\t" + cell(t.p_value);
    }
    out += "\n";
  }
  return out;
}

}  // namespace uslh
