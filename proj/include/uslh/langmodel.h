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

#ifndef USLH_LANGMODEL_H_
#define USLH_LANGMODEL_H_

#include <map>
#include <string>
#include <vector>

#include "uslh/corpus.h"

namespace uslh {

// Anything that can predict a token with one position masked out. The MLM
// score family is defined on top of this interface, so a stronger backbone
// can be dropped in without touching the scores.
class MaskedLanguageModel {
 public:
  virtual ~MaskedLanguageModel() = default;

  // log p(w_i | everything but w_i) for every position.
  virtual std::vector<double> MaskedLogProbs(const Tokens& tokens) const = 0;

  // Context-free log p(w); the SLOR reference distribution.
  virtual double UnigramLogProb(const std::string& token) const = 0;
};

struct MlmScores {
  double likelihood = 0.0;  // mean negative log-probability, nats/token
  double nce = 0.0;         // summed log-probability, nats
  double ppl = 1.0;         // exp(likelihood)
  double slor = 0.0;        // (sum log p - sum log p_unigram) / m
};

MlmScores ComputeMlmScores(const MaskedLanguageModel& model, const Tokens& tokens);

// Uniform distribution over `size` outcomes.
class UniformLanguageModel : public MaskedLanguageModel {
 public:
  explicit UniformLanguageModel(size_t size);
  std::vector<double> MaskedLogProbs(const Tokens& tokens) const override;
  double UnigramLogProb(const std::string& token) const override;

 private:
  double log_prob_;
};

struct LmOptions {
  int order = 3;
  double delta = 0.1;
};

// Bidirectional additive-smoothed n-gram model. The masked probability of a
// position is the equal mixture of the left-to-right prediction from the
// preceding order-1 tokens and the right-to-left prediction from the following
// order-1 tokens. Outcomes range over the training vocabulary plus UNK.
class PseudoLm : public MaskedLanguageModel {
 public:
  static PseudoLm Train(const std::vector<Tokens>& corpus, const LmOptions& options = {});

  std::vector<double> MaskedLogProbs(const Tokens& tokens) const override;
  double UnigramLogProb(const std::string& token) const override;

  double UnigramProb(const std::string& token) const;
  double ForwardProb(const Tokens& left_context, const std::string& token) const;
  double BackwardProb(const Tokens& right_context, const std::string& token) const;

  int order() const { return order_; }
  double delta() const { return delta_; }
  // Vocabulary plus UNK.
  size_t OutcomeCount() const { return unigram_.size() + 1; }
  const std::map<std::string, long long>& unigram_counts() const { return unigram_; }

  std::string Serialize() const;
  static PseudoLm Deserialize(const std::vector<std::string>& lines);

  bool operator==(const PseudoLm& other) const {
    return order_ == other.order_ && delta_ == other.delta_ &&
           total_tokens_ == other.total_tokens_ && unigram_ == other.unigram_ &&
           forward_ == other.forward_ && backward_ == other.backward_;
  }

 private:
  // context (space-joined) -> (token -> count). Total per context is cached.
  struct Table {
    std::map<std::string, std::map<std::string, long long>> counts;
    std::map<std::string, long long> totals;
    bool operator==(const Table&) const = default;
  };

  double ConditionalProb(const Table& table, const std::string& context,
                         const std::string& token) const;
  const std::string& Canonical(const std::string& token) const;

  int order_ = 3;
  double delta_ = 0.1;
  long long total_tokens_ = 0;
  std::map<std::string, long long> unigram_;
  Table forward_;
  Table backward_;
};

}  // namespace uslh

#endif  // USLH_LANGMODEL_H_
