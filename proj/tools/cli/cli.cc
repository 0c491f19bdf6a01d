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

#include "cli.h"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "uslh/classify.h"
#include "uslh/compose.h"
#include "uslh/corpus.h"
#include "uslh/error.h"
#include "uslh/langmodel.h"
#include "uslh/perturb.h"
#include "uslh/pipeline.h"
#include "uslh/stats.h"
#include "uslh/text_io.h"

namespace uslh::cli {

namespace fs = std::filesystem;

namespace {

struct Options {
  uint64_t seed = 42;
  std::string out;

  // Data.
  std::string task;
  std::string corpus;
  std::string emotions;
  std::string split = "all";
  std::string data;
  std::string pairs;
  std::string vectors;
  std::string annotations;
  std::string scores;
  std::string context;
  std::string pool;

  // Models and composition.
  std::string model_dir;
  std::string weights;
  std::string normalizer = "batch";
  std::string likability = "mlm_likelihood";
  std::string metric = "usl_h";
  std::vector<std::string> metrics;
  bool human_ceiling = false;

  // Training.
  ClassifierConfig classifier;
  LmOptions lm;
};

void Emit(const Options& o, const std::string& text, std::ostream& out) {
  if (o.out.empty()) {
    out << text;
  } else {
    WriteTextFile(o.out, text);
  }
}

void RequireFile(const std::string& flag, const std::string& path) {
  if (path.empty()) throw InvalidArgument(flag + " is required");
  if (!fs::is_regular_file(path)) throw Error(ErrorCode::kNotFound, flag + " file not found: " + path);
}

std::vector<Dialogue> LoadCorpus(const Options& o) {
  RequireFile("--corpus", o.corpus);
  std::ifstream corpus(o.corpus);
  std::optional<std::ifstream> emotions;
  if (!o.emotions.empty()) {
    RequireFile("--emotions", o.emotions);
    emotions.emplace(o.emotions);
  }
  std::vector<Dialogue> dialogues = ParseDailyDialog(corpus, emotions ? &*emotions : nullptr);
  if (o.split == "all") return dialogues;
  auto [first, second] = SplitCorpus(std::move(dialogues), o.seed);
  return o.split == "a" ? first : second;
}

WeightsFile LoadWeights(const Options& o) {
  if (o.weights.empty()) return {};
  RequireFile("--weights", o.weights);
  return ParseWeightsFile(ReadLines(o.weights));
}

PipelineConfig MakePipelineConfig(const Options& o) {
  if (o.model_dir.empty()) throw InvalidArgument("--model-dir is required");
  PipelineConfig config;
  config.seed = o.seed;
  config.model_dir = o.model_dir;
  if (!o.vectors.empty()) {
    RequireFile("--vectors", o.vectors);
    config.vectors_path = o.vectors;
  }
  const WeightsFile wf = LoadWeights(o);
  config.weights = wf.weights;
  config.file_normalizer = wf.normalizer;
  if (o.normalizer == "file") {
    if (o.weights.empty()) throw InvalidArgument("--normalizer file needs --weights with norm entries");
    config.normalizer_policy = NormalizerPolicy::kFile;
  }
  config.likability = o.likability;
  config.metrics = o.metrics;
  return config;
}

int BuildData(const Options& o, std::ostream& out) {
  const std::vector<Dialogue> dialogues = LoadCorpus(o);
  std::vector<LabeledExample> examples;
  if (o.task == "vup") {
    examples = BuildVupDataset(AllUtterances(dialogues), o.seed);
  } else if (o.task == "nup") {
    examples = BuildNupDataset(dialogues, o.seed);
  } else {
    examples = BuildEmpathyDataset(dialogues);
  }
  Emit(o, SerializeDataset(examples), out);
  return kExitOk;
}

int Train(const Options& o, std::ostream& out) {
  if (o.model_dir.empty()) throw InvalidArgument("--model-dir is required");
  fs::create_directories(o.model_dir);
  if (o.task == "lm") {
    std::vector<Tokens> sentences;
    for (const Utterance& u : AllUtterances(LoadCorpus(o))) {
      if (!u.tokens.empty()) sentences.push_back(u.tokens);
    }
    const PseudoLm lm = PseudoLm::Train(sentences, o.lm);
    WriteTextFile(fs::path(o.model_dir) / kLmModelFile, lm.Serialize());
    out << "lm\tsentences\t" << sentences.size() << "\tvocab\t" << lm.OutcomeCount() - 1 << "\n";
    return kExitOk;
  }
  RequireFile("--data", o.data);
  const ScorerKind kind = ParseScorerKind(o.task);
  ClassifierConfig config = o.classifier;
  config.seed = o.seed;
  const ScorerModel model = TrainClassifier(ParseDataset(ReadLines(o.data)), kind, config);
  const char* file = kind == ScorerKind::kVup   ? kVupModelFile
                     : kind == ScorerKind::kNup ? kNupModelFile
                                                : kEmpathyModelFile;
  WriteTextFile(fs::path(o.model_dir) / file, model.Serialize());
  std::ostringstream log;
  for (const EpochLoss& e : model.meta().losses) {
    log << o.task << "\tepoch\t" << e.epoch << "\ttrain_loss\t" << FormatFixed(e.train_loss, 6)
        << "\tvalidation_loss\t" << FormatFixed(e.validation_loss, 6) << "\n";
  }
  log << o.task << "\tbest_epoch\t" << model.meta().best_epoch << "\n";
  out << log.str();
  return kExitOk;
}

int Score(const Options& o, std::ostream& out) {
  const PipelineConfig config = MakePipelineConfig(o);
  std::vector<ScoringInput> inputs;
  if (!o.pairs.empty()) {
    RequireFile("--pairs", o.pairs);
    inputs = ParsePairsFile(ReadLines(o.pairs));
  } else if (!o.corpus.empty()) {
    inputs = PairsFromCorpus(LoadCorpus(o));
  } else {
    throw InvalidArgument("score needs --pairs or --corpus");
  }
  const ScoringModels models = ScoringModels::Load(config);
  const ScoreBatchResult result = ScoreBatch(models, config, inputs);
  Emit(o, SerializeScores(result.items), out);
  // Keep the applied bounds so later runs can reuse them with --normalizer file.
  if (!o.out.empty()) {
    WriteTextFile(o.out + ".weights", SerializeWeightsFile({config.weights, result.normalizer}));
  }
  return kExitOk;
}

int Rank(const Options& o, std::ostream& out) {
  const PipelineConfig config = MakePipelineConfig(o);
  if (TrimWhitespace(o.context).empty()) throw InvalidArgument("--context must be non-empty");
  RequireFile("--pool", o.pool);
  std::vector<Utterance> pool;
  for (const std::string& line : ReadLines(o.pool)) {
    if (!TrimWhitespace(line).empty()) pool.push_back(Utterance::FromRaw(line));
  }
  if (pool.empty()) throw InvalidArgument("response pool is empty");
  const ScoringModels models = ScoringModels::Load(config);
  const Ranking ranking = RankResponses(models, config, Utterance::FromRaw(o.context), pool, o.metric);
  std::string text;
  for (size_t r = 0; r < ranking.order.size(); ++r) {
    const size_t i = ranking.order[r];
    text += std::to_string(r + 1) + "\t" + std::to_string(i) + "\t" +
            FormatFixed(ranking.scores[i], 6) + "\t" + pool[i].raw + "\n";
  }
  Emit(o, text, out);
  return kExitOk;
}

std::vector<AnnotationRecord> LoadAnnotations(const Options& o) {
  RequireFile("--annotations", o.annotations);
  return ParseAnnotations(ReadLines(o.annotations));
}

int Calibrate(const Options& o, std::ostream& out) {
  if (o.out.empty()) throw InvalidArgument("calibrate needs --out for the weights file");
  const std::vector<AnnotationRecord> records = LoadAnnotations(o);
  WeightsFile wf = LoadWeights(o);
  const AspectWeights pooled = FitAspectWeights(records);
  wf.weights.alpha = pooled.weights;

  std::ostringstream report;
  auto row = [&](const std::string& who, const AspectWeights& w) {
    report << "weights\t" << who;
    for (double x : w.weights) report << "\t" << FormatFixed(x, 6);
    report << "\n";
  };
  row("all", pooled);
  for (const auto& [annotator, w] : FitAspectWeightsPerAnnotator(records)) row(annotator, w);

  // Group means of the human overall score and, when a scores file is given,
  // of every metric column.
  std::optional<ScoreTable> table;
  if (!o.scores.empty()) {
    RequireFile("--scores", o.scores);
    table = ParseScoresFile(ReadLines(o.scores));
  }
  std::vector<GroupedItem> items;
  for (const AnnotationRecord& r : records) {
    GroupedItem item{r.understandable, r.sensible, r.likable, {{"human_overall", r.overall}}};
    item.scores["human_usl_h"] = UslH(r.understandable, r.sensible, r.likable, wf.weights.alpha);
    if (table) {
      const auto it = table->values.find(r.item_id);
      if (it == table->values.end()) continue;
      for (const auto& [metric, value] : it->second) item.scores[metric] = value;
    }
    items.push_back(std::move(item));
  }
  for (const auto& [group, stats] : AggregateGroups(items)) {
    for (const auto& [metric, mean] : stats.means) {
      report << "group\t" << GroupName(group) << "\t" << stats.count << "\t" << metric << "\t"
             << FormatFixed(mean, 6) << "\n";
    }
  }
  out << report.str();
  WriteTextFile(o.out, SerializeWeightsFile(wf));
  return kExitOk;
}

int Evaluate(const Options& o, std::ostream& out) {
  RequireFile("--scores", o.scores);
  const ScoreTable table = ParseScoresFile(ReadLines(o.scores));
  const std::vector<AnnotationRecord> records = LoadAnnotations(o);
  const std::vector<std::string> metrics = o.metrics.empty() ? table.metric_order : o.metrics;
  const WeightsFile wf = LoadWeights(o);
  std::string text = FormatCorrelationReport(EvaluateMetrics(table, records, metrics, wf.weights.alpha));
  if (o.human_ceiling) {
    // Same columns as the metric rows; only the vanilla correlations apply.
    const HumanCeiling c = LeaveOneOutHuman(records, Question::kOverall);
    auto row = [&](const char* name, double pearson, double spearman) {
      text += std::string(name) + "\t" + std::to_string(c.annotators) + "\t" + FormatFixed(pearson, 6) +
              "\t-\t" + FormatFixed(spearman, 6) + "\t-\t-\t-\t-\t-\n";
    };
    row("human_avg", c.mean_pearson, c.mean_spearman);
    row("human_max", c.max_pearson, c.max_spearman);
  }
  Emit(o, text, out);
  return kExitOk;
}

int Agreement(const Options& o, std::ostream& out) {
  const std::vector<AnnotationRecord> records = LoadAnnotations(o);
  std::string text = "question\tmean_kappa\tannotator_pairs\n";
  for (Question q : kAllQuestions) {
    const KappaSummary k = MeanPairwiseKappa(records, q);
    text += QuestionName(q) + "\t" + FormatFixed(k.mean_kappa, 4) + "\t" +
            std::to_string(k.annotator_pairs) + "\n";
  }
  Emit(o, text, out);
  return kExitOk;
}

void AddCommon(CLI::App* cmd, Options& o) {
  cmd->add_option("--seed", o.seed, "Random seed")->capture_default_str();
  cmd->add_option("--out", o.out, "Output file (stdout when omitted)");
}

void AddCorpus(CLI::App* cmd, Options& o) {
  cmd->add_option("--corpus", o.corpus, "Dialogue file, one dialogue per line, turns split by __eou__");
  cmd->add_option("--emotions", o.emotions, "Per-turn emotion labels aligned with --corpus");
  cmd->add_option("--split", o.split, "Corpus half to use")
      ->check(CLI::IsMember({"a", "b", "all"}))
      ->capture_default_str();
}

void AddScoring(CLI::App* cmd, Options& o) {
  cmd->add_option("--model-dir", o.model_dir, "Directory with trained models")->required();
  cmd->add_option("--weights", o.weights, "Weights file with alpha, beta and normalizer bounds");
  cmd->add_option("--normalizer", o.normalizer, "Likability bounds source")
      ->check(CLI::IsMember({"batch", "file"}))
      ->capture_default_str();
  cmd->add_option("--likability", o.likability, "Likability quality when the weights file has no beta")
      ->check(CLI::IsMember({"mlm_likelihood", "mlm_nce", "mlm_ppl", "mlm_slor", "empathy"}))
      ->capture_default_str();
  cmd->add_option("--vectors", o.vectors, "Word-vector file for embedding baselines");
  cmd->add_option("--metrics", o.metrics, "Output columns to keep")->delimiter(',');
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Hierarchical dialogue response scoring and metric evaluation", "uslh"};
  app.require_subcommand(1);

  CLI::App* build = app.add_subcommand("build-data", "Build a labeled dataset from a corpus");
  build->add_option("task", o.task)->required()->check(CLI::IsMember({"vup", "nup", "empathy"}));
  AddCommon(build, o);
  AddCorpus(build, o);
  build->get_option("--corpus")->required();

  CLI::App* train = app.add_subcommand("train", "Train a scorer or the language model");
  train->add_option("task", o.task)->required()->check(CLI::IsMember({"vup", "nup", "empathy", "lm"}));
  AddCommon(train, o);
  AddCorpus(train, o);
  train->add_option("--data", o.data, "Labeled dataset from build-data");
  train->add_option("--model-dir", o.model_dir, "Output model directory")->required();
  train->add_option("--epochs", o.classifier.epochs)->capture_default_str()->check(CLI::PositiveNumber);
  train->add_option("--lr", o.classifier.learning_rate)->capture_default_str()->check(CLI::PositiveNumber);
  train->add_option("--dim", o.classifier.embed_dim)->capture_default_str()->check(CLI::PositiveNumber);
  train->add_option("--batch", o.classifier.batch_size)->capture_default_str()->check(CLI::PositiveNumber);
  train->add_option("--min-count", o.classifier.min_count)->capture_default_str()->check(CLI::PositiveNumber);
  train->add_option("--order", o.lm.order)->capture_default_str()->check(CLI::PositiveNumber);
  train->add_option("--delta", o.lm.delta)->capture_default_str()->check(CLI::PositiveNumber);

  CLI::App* score = app.add_subcommand("score", "Score context/response pairs");
  AddCommon(score, o);
  AddCorpus(score, o);
  AddScoring(score, o);
  score->add_option("--pairs", o.pairs, "id, context, response[, reference] per line");

  CLI::App* rank = app.add_subcommand("rank", "Rank a response pool for one context");
  AddCommon(rank, o);
  AddScoring(rank, o);
  rank->add_option("--context", o.context, "Context utterance")->required();
  rank->add_option("--pool", o.pool, "Candidate responses, one per line")->required();
  rank->add_option("--metric", o.metric, "Column to rank by")->capture_default_str();

  CLI::App* calibrate = app.add_subcommand("calibrate", "Fit aspect weights from annotations");
  AddCommon(calibrate, o);
  calibrate->add_option("--annotations", o.annotations)->required();
  calibrate->add_option("--weights", o.weights, "Weights file whose beta and bounds are kept");
  calibrate->add_option("--scores", o.scores, "Scores file for per-group metric means");

  CLI::App* evaluate = app.add_subcommand("evaluate", "Correlate metric columns with human scores");
  AddCommon(evaluate, o);
  evaluate->add_option("--scores", o.scores)->required();
  evaluate->add_option("--annotations", o.annotations)->required();
  evaluate->add_option("--weights", o.weights, "Weights file supplying alpha for human USL-H");
  evaluate->add_option("--metrics", o.metrics, "Metric columns to report")->delimiter(',');
  evaluate->add_flag("--human-ceiling", o.human_ceiling, "Add leave-one-annotator-out rows");

  CLI::App* agreement = app.add_subcommand("agreement", "Mean pairwise Cohen's kappa per question");
  AddCommon(agreement, o);
  agreement->add_option("--annotations", o.annotations)->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitInvalid;
  }

  try {
    if (build->parsed()) return BuildData(o, out);
    if (train->parsed()) return Train(o, out);
    if (score->parsed()) return Score(o, out);
    if (rank->parsed()) return Rank(o, out);
    if (calibrate->parsed()) return Calibrate(o, out);
    if (evaluate->parsed()) return Evaluate(o, out);
    if (agreement->parsed()) return Agreement(o, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitInvalid;
}

}  // namespace uslh::cli
