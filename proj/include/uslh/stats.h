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

#ifndef USLH_STATS_H_
#define USLH_STATS_H_

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace uslh {

// Sample Pearson correlation. Throws Error(kUndefined) when either side has
// zero variance.
double Pearson(const std::vector<double>& x, const std::vector<double>& y);

// Pearson correlation of average ranks (ties share the mean rank).
double Spearman(const std::vector<double>& x, const std::vector<double>& y);

// 1-based ranks; tied values get the average of the ranks they span.
std::vector<double> AverageRanks(const std::vector<double>& values);

struct CorrelationTest {
  double coefficient = 0.0;
  // Two-sided, from the t approximation with n - 2 degrees of freedom.
  // 1 when n < 3.
  double p_value = 1.0;
};

CorrelationTest PearsonTest(const std::vector<double>& x, const std::vector<double>& y);
CorrelationTest SpearmanTest(const std::vector<double>& x, const std::vector<double>& y);

// (p_o - p_e) / (1 - p_e) with p_e from the product of marginals. Returns 1
// when both p_o and p_e are 1, 0 when only p_e is.
double CohenKappa(const std::vector<int>& a, const std::vector<int>& b);

struct AnnotationRecord {
  std::string item_id;
  std::string annotator_id;
  int understandable = 0;  // {0,1}
  int sensible = 0;        // {0,1}
  int likable = 0;         // {0,1}
  int overall = 0;         // {0,1,2,3}
};

// `item_id<TAB>annotator_id<TAB>u<TAB>s<TAB>l<TAB>overall`, one per line.
std::vector<AnnotationRecord> ParseAnnotations(const std::vector<std::string>& lines);
std::string SerializeAnnotations(const std::vector<AnnotationRecord>& records);

enum class Question { kUnderstandable, kSensible, kLikable, kOverall };
inline constexpr std::array<Question, 4> kAllQuestions = {
    Question::kUnderstandable, Question::kSensible, Question::kLikable, Question::kOverall};
std::string QuestionName(Question q);
int Answer(const AnnotationRecord& record, Question q);

struct KappaSummary {
  double mean_kappa = 0.0;
  size_t annotator_pairs = 0;
};

// Unweighted mean of Cohen's kappa over all annotator pairs, each pair using
// the items both annotated. Pairs without shared items are skipped.
KappaSummary MeanPairwiseKappa(const std::vector<AnnotationRecord>& records, Question q);

struct AspectWeights {
  std::array<double, 3> slopes = {0, 0, 0};  // OLS coefficients on (u, s, l)
  double intercept = 0.0;
  std::array<double, 3> weights = {0, 0, 0};  // softmax(slopes)
};

// Least squares of overall on (1, u, s, l), then softmax over the slopes.
// Needs at least 4 records and a full-rank design.
AspectWeights FitAspectWeights(const std::vector<AnnotationRecord>& records);

std::map<std::string, AspectWeights> FitAspectWeightsPerAnnotator(
    const std::vector<AnnotationRecord>& records);

// Binary-pattern groups over (u, s, l).
enum class ResponseGroup { kG1, kG2, kG3, kG4, kG5, kOther };
std::string GroupName(ResponseGroup g);
// (0,0,*) -> G1, (1,0,0) -> G2, (1,0,1) -> G3, (1,1,0) -> G4, (1,1,1) -> G5,
// (0,1,*) -> other.
ResponseGroup ClassifyPattern(int u, int s, int l);

struct GroupedItem {
  int u = 0, s = 0, l = 0;
  std::map<std::string, double> scores;
};

struct GroupStats {
  size_t count = 0;
  std::map<std::string, double> means;
};

// Absent groups are omitted from the result.
std::map<ResponseGroup, GroupStats> AggregateGroups(const std::vector<GroupedItem>& items);

enum class Judgment { kAWins, kBWins, kTie };

struct WinTally {
  size_t a_wins = 0;
  size_t b_wins = 0;
  size_t ties = 0;
};

WinTally TallyJudgments(const std::vector<Judgment>& judgments);

// a_wins / (a_wins + b_wins). Throws Error(kUndefined) naming the counts when
// every judgment is a tie.
double WinRate(const WinTally& tally);

// Per-item human aggregates over annotators.
struct HumanItemScores {
  double overall = 0.0;         // mean raw overall
  double usl_h = 0.0;           // mean over annotators of UslH(u, s, l)
  double usl_a = 0.0;           // mean over annotators of UslA(u, s, l)
  std::array<double, 3> aspects = {0, 0, 0};  // mean u, s, l
  size_t annotators = 0;
};

std::map<std::string, HumanItemScores> AggregateHumanScores(
    const std::vector<AnnotationRecord>& records, const std::array<double, 3>& alpha);

// Leave-one-annotator-out agreement: each annotator's item scores against the
// mean of the other annotators, over items with both.
struct HumanCeiling {
  double mean_pearson = 0.0, max_pearson = 0.0;
  double mean_spearman = 0.0, max_spearman = 0.0;
  size_t annotators = 0;
};

HumanCeiling LeaveOneOutHuman(const std::vector<AnnotationRecord>& records, Question q);

}  // namespace uslh

#endif  // USLH_STATS_H_
