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

#ifndef USLH_CLASSIFY_H_
#define USLH_CLASSIFY_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "uslh/corpus.h"
#include "uslh/perturb.h"

namespace uslh {

enum class ScorerKind { kVup, kNup, kEmpathy };

std::string_view ScorerKindName(ScorerKind kind);
ScorerKind ParseScorerKind(std::string_view name);

struct ClassifierConfig {
  uint64_t seed = 42;
  int embed_dim = 64;
  int epochs = 10;
  double learning_rate = 1e-3;
  double validation_fraction = 0.1;
  int batch_size = 32;
  // Tokens and bigrams seen fewer times map to the unknown row.
  int min_count = 2;
  bool position_offsets = true;
  bool bigram_features = true;
  double init_scale = 0.1;
};

struct EpochLoss {
  int epoch = 0;
  double train_loss = 0.0;
  double validation_loss = 0.0;
};

struct TrainingMeta {
  int best_epoch = 0;
  std::vector<EpochLoss> losses;
};

// Binary scorer over a token sequence.
//
// Every position i gets a vector
//   a_i = E[w_i] + B[w_{i-1} w_i] + B[w_i w_{i+1}] + P(i) + S[segment_i] + mean_j E[w_j] + b
// with learned token table E, learned bigram table B (sequence ends padded by
// boundary symbols), fixed sinusoidal offsets P, and a learned segment row S
// (segment 1 marks tokens after the pair separator). The sequence vector is
// the elementwise max over positions of tanh(a_i), and the score is
// sigmoid(w . pooled + c). A two-way softmax over (0, logit) is the same
// function, so the logistic form is used directly.
class ScorerModel {
 public:
  // All parameters zero: every input scores exactly 0.5.
  static ScorerModel ZeroInitialized(ScorerKind kind, const std::vector<std::string>& vocab,
                                     const ClassifierConfig& config = {});

  ScorerKind kind() const { return kind_; }
  const ClassifierConfig& config() const { return config_; }
  const TrainingMeta& meta() const { return meta_; }
  int embed_dim() const { return config_.embed_dim; }
  size_t vocab_size() const { return vocab_.size(); }
  bool HasToken(const std::string& token) const { return vocab_.contains(token); }

  // Probability of label 1 for an already-assembled sequence.
  double ScoreSequence(const Tokens& tokens) const;

  std::string Serialize() const;
  static ScorerModel Deserialize(const std::vector<std::string>& lines);

 private:
  friend class ClassifierTrainer;

  struct Encoded {
    std::vector<int> token_ids;
    std::vector<int> left_bigram_ids;
    std::vector<int> right_bigram_ids;
    std::vector<int> segments;
  };

  struct Forward {
    std::vector<double> hidden;    // T x D, tanh outputs
    std::vector<double> pooled;    // D
    std::vector<int> argmax;       // D, winning position per dimension
    double logit = 0.0;
    double prob = 0.5;
  };

  Encoded Encode(const Tokens& tokens) const;
  void RunForward(const Encoded& input, Forward& out) const;
  void Layout();

  double* token_row(int id) { return params_.data() + token_offset_ + static_cast<size_t>(id) * dim(); }
  const double* token_row(int id) const {
    return params_.data() + token_offset_ + static_cast<size_t>(id) * dim();
  }
  const double* bigram_row(int id) const {
    return params_.data() + bigram_offset_ + static_cast<size_t>(id) * dim();
  }
  const double* segment_row(int s) const {
    return params_.data() + segment_offset_ + static_cast<size_t>(s) * dim();
  }
  size_t dim() const { return static_cast<size_t>(config_.embed_dim); }

  ScorerKind kind_ = ScorerKind::kVup;
  ClassifierConfig config_;
  TrainingMeta meta_;
  // Index 0 is UNK in both maps; index 1 of vocab_ is the separator.
  std::vector<std::string> vocab_list_;
  std::unordered_map<std::string, int> vocab_;
  std::vector<std::string> bigram_list_;
  std::unordered_map<std::string, int> bigrams_;

  // Flat parameter vector: tokens, bigrams, segments(2), hidden bias, output
  // weights, output bias.
  std::vector<double> params_;
  size_t token_offset_ = 0, bigram_offset_ = 0, segment_offset_ = 0, hidden_bias_offset_ = 0,
         output_offset_ = 0, output_bias_offset_ = 0;
};

// Trains with Adam on binary cross-entropy and keeps the parameters of the
// epoch with the lowest validation loss. Deterministic given config.seed.
ScorerModel TrainClassifier(const std::vector<LabeledExample>& examples, ScorerKind kind,
                            const ClassifierConfig& config = {});

// For vup and empathy models.
double ScoreUtterance(const ScorerModel& model, const Tokens& tokens);

// For nup models: scores context + separator + response.
double ScorePair(const ScorerModel& model, const Tokens& context, const Tokens& response);

struct ClassifierMetrics {
  double accuracy = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  size_t true_positive = 0, false_positive = 0, true_negative = 0, false_negative = 0;
};

// Score >= threshold predicts label 1.
ClassifierMetrics EvaluateClassifier(const ScorerModel& model,
                                     const std::vector<LabeledExample>& examples,
                                     double threshold = 0.5);
ClassifierMetrics EvaluatePredictions(const std::vector<double>& scores,
                                      const std::vector<int>& labels, double threshold = 0.5);

}  // namespace uslh

#endif  // USLH_CLASSIFY_H_
