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

#include "uslh/classify.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

#include "uslh/error.h"
#include "uslh/random.h"
#include "uslh/text_io.h"

namespace uslh {

std::string_view ScorerKindName(ScorerKind kind) {
  switch (kind) {
    case ScorerKind::kVup:
      return "vup";
    case ScorerKind::kNup:
      return "nup";
    case ScorerKind::kEmpathy:
      return "empathy";
  }
  return "vup";
}

ScorerKind ParseScorerKind(std::string_view name) {
  if (name == "vup") return ScorerKind::kVup;
  if (name == "nup") return ScorerKind::kNup;
  if (name == "empathy") return ScorerKind::kEmpathy;
  throw InvalidArgument("unknown scorer kind '" + std::string(name) + "'");
}

namespace {

const std::string kBos(kBeginToken);
const std::string kEos(kEndToken);

std::string BigramKey(const std::string& a, const std::string& b) { return a + " " + b; }

double PositionOffset(size_t position, size_t d, size_t dim) {
  const double exponent = static_cast<double>(2 * (d / 2)) / static_cast<double>(dim);
  const double angle = static_cast<double>(position) / std::pow(10000.0, exponent);
  return d % 2 == 0 ? std::sin(angle) : std::cos(angle);
}

// -log sigmoid(x) without overflow.
double SoftplusNeg(double x) { return x >= 0 ? std::log1p(std::exp(-x)) : -x + std::log1p(std::exp(x)); }

double Sigmoid(double x) {
  if (x >= 0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

double ExampleLoss(double logit, int label) {
  return label == 1 ? SoftplusNeg(logit) : SoftplusNeg(-logit);
}

}  // namespace

void ScorerModel::Layout() {
  const size_t d = dim();
  token_offset_ = 0;
  bigram_offset_ = token_offset_ + vocab_list_.size() * d;
  segment_offset_ = bigram_offset_ + bigram_list_.size() * d;
  hidden_bias_offset_ = segment_offset_ + 2 * d;
  output_offset_ = hidden_bias_offset_ + d;
  output_bias_offset_ = output_offset_ + d;
  params_.assign(output_bias_offset_ + 1, 0.0);
  vocab_.clear();
  for (size_t i = 0; i < vocab_list_.size(); ++i) vocab_[vocab_list_[i]] = static_cast<int>(i);
  bigrams_.clear();
  for (size_t i = 0; i < bigram_list_.size(); ++i) bigrams_[bigram_list_[i]] = static_cast<int>(i);
}

ScorerModel ScorerModel::ZeroInitialized(ScorerKind kind, const std::vector<std::string>& vocab,
                                         const ClassifierConfig& config) {
  if (config.embed_dim < 1) throw InvalidArgument("embed_dim must be positive");
  ScorerModel model;
  model.kind_ = kind;
  model.config_ = config;
  model.vocab_list_ = {std::string(kUnknownToken), std::string(kSeparatorToken)};
  std::vector<std::string> sorted = vocab;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  for (const std::string& t : sorted) {
    if (t != kUnknownToken && t != kSeparatorToken) model.vocab_list_.push_back(t);
  }
  model.bigram_list_ = {std::string(kUnknownToken)};
  model.Layout();
  return model;
}

ScorerModel::Encoded ScorerModel::Encode(const Tokens& tokens) const {
  Encoded e;
  const size_t n = tokens.size();
  e.token_ids.resize(n);
  e.left_bigram_ids.resize(n);
  e.right_bigram_ids.resize(n);
  e.segments.resize(n);
  int segment = 0;
  for (size_t i = 0; i < n; ++i) {
    const auto it = vocab_.find(tokens[i]);
    e.token_ids[i] = it == vocab_.end() ? 0 : it->second;
    e.segments[i] = segment;
    if (segment == 0 && tokens[i] == kSeparatorToken) segment = 1;
    if (config_.bigram_features) {
      const std::string& prev = i == 0 ? kBos : tokens[i - 1];
      const std::string& next = i + 1 == n ? kEos : tokens[i + 1];
      const auto l = bigrams_.find(BigramKey(prev, tokens[i]));
      const auto r = bigrams_.find(BigramKey(tokens[i], next));
      e.left_bigram_ids[i] = l == bigrams_.end() ? 0 : l->second;
      e.right_bigram_ids[i] = r == bigrams_.end() ? 0 : r->second;
    }
  }
  return e;
}

void ScorerModel::RunForward(const Encoded& input, Forward& out) const {
  const size_t d_count = dim();
  const size_t n = input.token_ids.size();
  std::vector<double> mean(d_count, 0.0);
  // Summing in token-id order makes the mean independent of token order.
  std::vector<int> sorted_ids = input.token_ids;
  std::sort(sorted_ids.begin(), sorted_ids.end());
  for (int id : sorted_ids) {
    const double* row = token_row(id);
    for (size_t d = 0; d < d_count; ++d) mean[d] += row[d];
  }
  const double inv_n = 1.0 / static_cast<double>(n);
  for (double& v : mean) v *= inv_n;

  const double* hidden_bias = params_.data() + hidden_bias_offset_;
  out.hidden.assign(n * d_count, 0.0);
  out.pooled.assign(d_count, -std::numeric_limits<double>::infinity());
  out.argmax.assign(d_count, 0);
  for (size_t i = 0; i < n; ++i) {
    const double* tok = token_row(input.token_ids[i]);
    const double* seg = segment_row(input.segments[i]);
    const double* left = config_.bigram_features ? bigram_row(input.left_bigram_ids[i]) : nullptr;
    const double* right = config_.bigram_features ? bigram_row(input.right_bigram_ids[i]) : nullptr;
    double* h = out.hidden.data() + i * d_count;
    for (size_t d = 0; d < d_count; ++d) {
      double a = tok[d] + seg[d] + mean[d] + hidden_bias[d];
      if (left != nullptr) a += left[d] + right[d];
      if (config_.position_offsets) a += PositionOffset(i, d, d_count);
      h[d] = std::tanh(a);
      if (h[d] > out.pooled[d]) {
        out.pooled[d] = h[d];
        out.argmax[d] = static_cast<int>(i);
      }
    }
  }
  const double* w = params_.data() + output_offset_;
  double logit = params_[output_bias_offset_];
  for (size_t d = 0; d < d_count; ++d) logit += w[d] * out.pooled[d];
  out.logit = logit;
  out.prob = Sigmoid(logit);
}

double ScorerModel::ScoreSequence(const Tokens& tokens) const {
  if (tokens.empty()) throw InvalidArgument("cannot score an empty token sequence");
  Forward f;
  RunForward(Encode(tokens), f);
  return f.prob;
}

class ClassifierTrainer {
 public:
  ClassifierTrainer(const std::vector<LabeledExample>& examples, ScorerKind kind,
                    const ClassifierConfig& config)
      : examples_(examples), config_(config) {
    BuildVocabulary(kind);
  }

  ScorerModel Run();

 private:
  void BuildVocabulary(ScorerKind kind);
  double Accumulate(const ScorerModel::Encoded& input, int label, double scale,
                    std::vector<double>& grad);
  double MeanLoss(const std::vector<size_t>& indices) const;

  const std::vector<LabeledExample>& examples_;
  ClassifierConfig config_;
  ScorerModel model_;
  std::vector<ScorerModel::Encoded> encoded_;
  ScorerModel::Forward scratch_;
};

void ClassifierTrainer::BuildVocabulary(ScorerKind kind) {
  std::map<std::string, int> token_counts;
  std::map<std::string, int> bigram_counts;
  for (const LabeledExample& e : examples_) {
    for (size_t i = 0; i < e.tokens.size(); ++i) {
      ++token_counts[e.tokens[i]];
      ++bigram_counts[BigramKey(i == 0 ? kBos : e.tokens[i - 1], e.tokens[i])];
    }
    ++bigram_counts[BigramKey(e.tokens.back(), kEos)];
  }
  std::vector<std::string> vocab;
  for (const auto& [t, c] : token_counts) {
    if (c >= config_.min_count) vocab.push_back(t);
  }
  model_ = ScorerModel::ZeroInitialized(kind, vocab, config_);
  if (config_.bigram_features) {
    for (const auto& [b, c] : bigram_counts) {
      if (c >= config_.min_count) model_.bigram_list_.push_back(b);
    }
  }
  model_.Layout();

  Rng rng(config_.seed);
  auto init = [&](size_t begin, size_t end) {
    for (size_t k = begin; k < end; ++k) {
      model_.params_[k] = (2.0 * rng.Uniform() - 1.0) * config_.init_scale;
    }
  };
  init(model_.token_offset_, model_.segment_offset_);  // token and bigram tables
  init(model_.output_offset_, model_.output_bias_offset_);

  encoded_.reserve(examples_.size());
  for (const LabeledExample& e : examples_) encoded_.push_back(model_.Encode(e.tokens));
}

double ClassifierTrainer::Accumulate(const ScorerModel::Encoded& input, int label, double scale,
                                     std::vector<double>& grad) {
  model_.RunForward(input, scratch_);
  const size_t d_count = model_.dim();
  const size_t n = input.token_ids.size();
  const double g = (scratch_.prob - static_cast<double>(label)) * scale;
  const double* w = model_.params_.data() + model_.output_offset_;
  grad[model_.output_bias_offset_] += g;
  const double inv_n = 1.0 / static_cast<double>(n);
  for (size_t d = 0; d < d_count; ++d) {
    grad[model_.output_offset_ + d] += g * scratch_.pooled[d];
    const size_t i = static_cast<size_t>(scratch_.argmax[d]);
    const double h = scratch_.hidden[i * d_count + d];
    const double ga = g * w[d] * (1.0 - h * h);
    if (ga == 0.0) continue;
    grad[model_.token_offset_ + static_cast<size_t>(input.token_ids[i]) * d_count + d] += ga;
    if (config_.bigram_features) {
      grad[model_.bigram_offset_ + static_cast<size_t>(input.left_bigram_ids[i]) * d_count + d] += ga;
      grad[model_.bigram_offset_ + static_cast<size_t>(input.right_bigram_ids[i]) * d_count + d] += ga;
    }
    grad[model_.segment_offset_ + static_cast<size_t>(input.segments[i]) * d_count + d] += ga;
    grad[model_.hidden_bias_offset_ + d] += ga;
    const double share = ga * inv_n;
    for (size_t j = 0; j < n; ++j) {
      grad[model_.token_offset_ + static_cast<size_t>(input.token_ids[j]) * d_count + d] += share;
    }
  }
  return ExampleLoss(scratch_.logit, label);
}

double ClassifierTrainer::MeanLoss(const std::vector<size_t>& indices) const {
  double total = 0.0;
  ScorerModel::Forward f;
  for (size_t k : indices) {
    model_.RunForward(encoded_[k], f);
    total += ExampleLoss(f.logit, examples_[k].label);
  }
  return indices.empty() ? 0.0 : total / static_cast<double>(indices.size());
}

ScorerModel ClassifierTrainer::Run() {
  Rng rng(DeriveSeed(config_.seed, 1));
  std::vector<size_t> order(examples_.size());
  std::iota(order.begin(), order.end(), 0);
  rng.Shuffle(std::span<size_t>(order));
  size_t validation_size = static_cast<size_t>(
      std::ceil(config_.validation_fraction * static_cast<double>(examples_.size())));
  if (validation_size >= examples_.size()) validation_size = 0;
  std::vector<size_t> validation(order.begin(), order.begin() + validation_size);
  std::vector<size_t> train(order.begin() + validation_size, order.end());

  const double beta1 = 0.9, beta2 = 0.999, eps = 1e-8;
  std::vector<double>& params = model_.params_;
  std::vector<double> grad(params.size()), m1(params.size(), 0.0), m2(params.size(), 0.0);
  std::vector<double> best = params;
  double best_loss = std::numeric_limits<double>::infinity();
  long long step = 0;
  const size_t batch = static_cast<size_t>(std::max(1, config_.batch_size));

  for (int epoch = 1; epoch <= config_.epochs; ++epoch) {
    rng.Shuffle(std::span<size_t>(train));
    double epoch_loss = 0.0;
    for (size_t start = 0; start < train.size(); start += batch) {
      const size_t end = std::min(train.size(), start + batch);
      std::fill(grad.begin(), grad.end(), 0.0);
      const double scale = 1.0 / static_cast<double>(end - start);
      for (size_t k = start; k < end; ++k) {
        epoch_loss += Accumulate(encoded_[train[k]], examples_[train[k]].label, scale, grad);
      }
      ++step;
      const double c1 = 1.0 - std::pow(beta1, static_cast<double>(step));
      const double c2 = 1.0 - std::pow(beta2, static_cast<double>(step));
      for (size_t p = 0; p < params.size(); ++p) {
        m1[p] = beta1 * m1[p] + (1.0 - beta1) * grad[p];
        m2[p] = beta2 * m2[p] + (1.0 - beta2) * grad[p] * grad[p];
        params[p] -= config_.learning_rate * (m1[p] / c1) / (std::sqrt(m2[p] / c2) + eps);
      }
    }
    epoch_loss /= static_cast<double>(std::max<size_t>(1, train.size()));
    const double validation_loss = validation.empty() ? epoch_loss : MeanLoss(validation);
    if (!std::isfinite(epoch_loss) || !std::isfinite(validation_loss)) {
      throw Error(ErrorCode::kUndefined, "training diverged at epoch " + std::to_string(epoch));
    }
    model_.meta_.losses.push_back({epoch, epoch_loss, validation_loss});
    if (validation_loss < best_loss) {
      best_loss = validation_loss;
      best = params;
      model_.meta_.best_epoch = epoch;
    }
  }
  params = best;
  return std::move(model_);
}

ScorerModel TrainClassifier(const std::vector<LabeledExample>& examples, ScorerKind kind,
                            const ClassifierConfig& config) {
  if (examples.empty()) throw InvalidArgument("no training examples");
  const bool has_pos = std::any_of(examples.begin(), examples.end(),
                                   [](const LabeledExample& e) { return e.label == 1; });
  const bool has_neg = std::any_of(examples.begin(), examples.end(),
                                   [](const LabeledExample& e) { return e.label == 0; });
  if (!has_pos || !has_neg) throw InvalidArgument("training examples contain a single label");
  for (const LabeledExample& e : examples) {
    if (e.tokens.empty()) throw InvalidArgument("training example with no tokens");
  }
  if (config.embed_dim < 1 || config.epochs < 0 || !(config.learning_rate > 0.0) ||
      config.validation_fraction < 0.0 || config.validation_fraction >= 1.0) {
    throw InvalidArgument("invalid classifier configuration");
  }
  return ClassifierTrainer(examples, kind, config).Run();
}

double ScoreUtterance(const ScorerModel& model, const Tokens& tokens) {
  if (model.kind() == ScorerKind::kNup) {
    throw InvalidArgument("next-utterance model scores pairs, not single utterances");
  }
  return model.ScoreSequence(tokens);
}

double ScorePair(const ScorerModel& model, const Tokens& context, const Tokens& response) {
  if (model.kind() != ScorerKind::kNup) throw InvalidArgument("pair scoring needs a nup model");
  if (context.empty() || response.empty()) throw InvalidArgument("pair scoring needs both sides");
  return model.ScoreSequence(JoinPair(context, response));
}

ClassifierMetrics EvaluatePredictions(const std::vector<double>& scores,
                                      const std::vector<int>& labels, double threshold) {
  if (scores.empty() || scores.size() != labels.size()) {
    throw InvalidArgument("evaluation needs equal-length non-empty scores and labels");
  }
  ClassifierMetrics m;
  for (size_t i = 0; i < scores.size(); ++i) {
    const bool predicted = scores[i] >= threshold;
    if (predicted && labels[i] == 1) ++m.true_positive;
    if (predicted && labels[i] == 0) ++m.false_positive;
    if (!predicted && labels[i] == 0) ++m.true_negative;
    if (!predicted && labels[i] == 1) ++m.false_negative;
  }
  const auto ratio = [](size_t a, size_t b) {
    return b == 0 ? 0.0 : static_cast<double>(a) / static_cast<double>(b);
  };
  m.accuracy = ratio(m.true_positive + m.true_negative, scores.size());
  m.precision = ratio(m.true_positive, m.true_positive + m.false_positive);
  m.recall = ratio(m.true_positive, m.true_positive + m.false_negative);
  return m;
}

ClassifierMetrics EvaluateClassifier(const ScorerModel& model,
                                     const std::vector<LabeledExample>& examples,
                                     double threshold) {
  std::vector<double> scores;
  std::vector<int> labels;
  for (const LabeledExample& e : examples) {
    scores.push_back(model.ScoreSequence(e.tokens));
    labels.push_back(e.label);
  }
  return EvaluatePredictions(scores, labels, threshold);
}

// File layout:
//   USLH-MODEL v1 <kind>
//   config <seed> <dim> <epochs> <lr> <val_frac> <batch> <min_count> <pos> <bigram> <init>
//   best_epoch <e>
//   losses <k>, then k lines "<epoch> <train> <validation>"
//   vocab <V>, then V tokens
//   bigrams <B>, then B lines "<a> <b>"
//   params <P>, then rows of dim values (the final row holds the output bias)
std::string ScorerModel::Serialize() const {
  std::string out = "USLH-MODEL v1 " + std::string(ScorerKindName(kind_)) + "\n";
  const ClassifierConfig& c = config_;
  out += "config " + std::to_string(c.seed) + " " + std::to_string(c.embed_dim) + " " +
         std::to_string(c.epochs) + " " + FormatExact(c.learning_rate) + " " +
         FormatExact(c.validation_fraction) + " " + std::to_string(c.batch_size) + " " +
         std::to_string(c.min_count) + " " + (c.position_offsets ? "1" : "0") + " " +
         (c.bigram_features ? "1" : "0") + " " + FormatExact(c.init_scale) + "\n";
  out += "best_epoch " + std::to_string(meta_.best_epoch) + "\n";
  out += "losses " + std::to_string(meta_.losses.size()) + "\n";
  for (const EpochLoss& l : meta_.losses) {
    out += std::to_string(l.epoch) + " " + FormatExact(l.train_loss) + " " +
           FormatExact(l.validation_loss) + "\n";
  }
  out += "vocab " + std::to_string(vocab_list_.size()) + "\n";
  for (const std::string& t : vocab_list_) out += t + "\n";
  out += "bigrams " + std::to_string(bigram_list_.size()) + "\n";
  for (const std::string& b : bigram_list_) out += b + "\n";
  out += "params " + std::to_string(params_.size()) + "\n";
  const size_t d = dim();
  for (size_t p = 0; p < params_.size(); ++p) {
    out += FormatExact(params_[p]);
    out += ((p + 1) % d == 0 || p + 1 == params_.size()) ? '\n' : ' ';
  }
  return out;
}

ScorerModel ScorerModel::Deserialize(const std::vector<std::string>& lines) {
  size_t pos = 0;
  auto next = [&]() -> const std::string& {
    if (pos >= lines.size()) throw ParseError("scorer model file truncated");
    return lines[pos++];
  };
  auto keyed = [&](std::string_view key) {
    const std::string& line = next();
    if (line.rfind(std::string(key) + " ", 0) != 0) {
      throw ParseError("scorer model file: expected '" + std::string(key) + "' at line " +
                       std::to_string(pos));
    }
    return line.substr(key.size() + 1);
  };
  const std::string header = next();
  const std::string prefix = "USLH-MODEL v1 ";
  if (header.rfind(prefix, 0) != 0) throw ParseError("not a USLH-MODEL v1 file");
  ScorerModel model;
  model.kind_ = ParseScorerKind(header.substr(prefix.size()));
  const auto cfg = SplitWhitespace(keyed("config"));
  if (cfg.size() != 10) throw ParseError("scorer model file: bad config line");
  ClassifierConfig& c = model.config_;
  c.seed = static_cast<uint64_t>(std::stoull(cfg[0]));
  c.embed_dim = static_cast<int>(ParseInt(cfg[1]));
  c.epochs = static_cast<int>(ParseInt(cfg[2]));
  c.learning_rate = ParseDouble(cfg[3]);
  c.validation_fraction = ParseDouble(cfg[4]);
  c.batch_size = static_cast<int>(ParseInt(cfg[5]));
  c.min_count = static_cast<int>(ParseInt(cfg[6]));
  c.position_offsets = cfg[7] == "1";
  c.bigram_features = cfg[8] == "1";
  c.init_scale = ParseDouble(cfg[9]);
  if (c.embed_dim < 1) throw ParseError("scorer model file: bad embed_dim");
  model.meta_.best_epoch = static_cast<int>(ParseInt(keyed("best_epoch")));
  const long long loss_count = ParseInt(keyed("losses"));
  for (long long k = 0; k < loss_count; ++k) {
    const auto f = SplitWhitespace(next());
    if (f.size() != 3) throw ParseError("scorer model file: bad loss line");
    model.meta_.losses.push_back(
        {static_cast<int>(ParseInt(f[0])), ParseDouble(f[1]), ParseDouble(f[2])});
  }
  const long long vocab = ParseInt(keyed("vocab"));
  for (long long k = 0; k < vocab; ++k) model.vocab_list_.push_back(next());
  const long long bigram_count = ParseInt(keyed("bigrams"));
  for (long long k = 0; k < bigram_count; ++k) model.bigram_list_.push_back(next());
  if (model.vocab_list_.size() < 2 || model.vocab_list_[0] != kUnknownToken ||
      model.vocab_list_[1] != kSeparatorToken || model.bigram_list_.empty()) {
    throw ParseError("scorer model file: vocabulary lacks reserved symbols");
  }
  model.Layout();
  const long long param_count = ParseInt(keyed("params"));
  if (param_count != static_cast<long long>(model.params_.size())) {
    throw ParseError("scorer model file: parameter count mismatch");
  }
  size_t p = 0;
  while (p < model.params_.size()) {
    for (const std::string& v : SplitWhitespace(next())) {
      if (p >= model.params_.size()) throw ParseError("scorer model file: too many parameters");
      model.params_[p++] = ParseDouble(v);
    }
  }
  return model;
}

}  // namespace uslh
