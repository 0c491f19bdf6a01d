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

#include "uslh/stats.h"

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "oracles.h"
#include "uslh/error.h"

namespace uslh {
namespace {

TEST(PearsonTest, Examples) {
  EXPECT_NEAR(Pearson({1, 2, 3}, {2, 4, 6}), 1.0, 1e-12);
  EXPECT_NEAR(Pearson({1, 2, 3}, {6, 4, 2}), -1.0, 1e-12);
  EXPECT_NEAR(Pearson({1, 2, 4}, {1, 3, 3}), 24.0 / std::sqrt(42.0 * 24.0), 1e-12);
  EXPECT_NEAR(Pearson({1, 2, 4}, {1, 3, 3}), 0.7559, 1e-4);
}

TEST(PearsonTest, AffineInvariance) {
  const std::vector<double> x = {0.3, -1.2, 5.5, 2.0, 2.0, 7.25};
  std::vector<double> up, down;
  for (double v : x) {
    up.push_back(3.5 * v - 2);
    down.push_back(-0.25 * v + 10);
  }
  EXPECT_NEAR(Pearson(x, up), 1.0, 1e-12);
  EXPECT_NEAR(Pearson(x, down), -1.0, 1e-12);
}

TEST(PearsonTest, UndefinedCases) {
  EXPECT_THROW(Pearson({1, 1, 1}, {1, 2, 3}), Error);
  EXPECT_THROW(Pearson({1, 2}, {1, 2, 3}), Error);
  EXPECT_THROW(Pearson({1}, {1}), Error);
}

TEST(SpearmanTest, Examples) {
  EXPECT_NEAR(Spearman({1, 2, 3, 4}, {10, 20, 35, 100}), 1.0, 1e-12);
  EXPECT_EQ(AverageRanks({1, 2, 2, 4}), (std::vector<double>{1, 2.5, 2.5, 4}));
  const std::vector<double> x = {3, 1, 4, 1, 5, 9, 2, 6};
  std::vector<double> neg;
  for (double v : x) neg.push_back(-v);
  EXPECT_NEAR(Spearman(x, neg), -1.0, 1e-12);
}

TEST(SpearmanTest, MonotoneTransformInvariance) {
  const std::vector<double> x = {0.1, 0.5, 0.2, 0.9, 0.4, 0.4};
  const std::vector<double> y = {3, 1, 2, 5, 4, 4};
  std::vector<double> ex;
  for (double v : x) ex.push_back(std::exp(3 * v));
  EXPECT_NEAR(Spearman(x, y), Spearman(ex, y), 1e-12);
}

TEST(CohenKappaTest, Examples) {
  EXPECT_EQ(CohenKappa({1, 1, 0, 0}, {1, 0, 0, 1}), 0.0);
  EXPECT_NEAR(CohenKappa({0, 1, 2, 1}, {0, 1, 2, 1}), 1.0, 1e-12);
  EXPECT_EQ(CohenKappa({1, 1, 1}, {1, 1, 1}), 1.0);
  EXPECT_THROW(CohenKappa({1, 0}, {1}), Error);
  EXPECT_THROW(CohenKappa({}, {}), Error);
}

TEST(StatsOracleTest, RandomInstancesMatchDefinitions) {
  std::mt19937_64 gen(2024);
  std::uniform_int_distribution<int> len(3, 20), small(0, 3);
  std::normal_distribution<double> normal;
  int checked = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = len(gen);
    std::vector<double> x(n), y(n), xt(n), yt(n);
    std::vector<int> a(n), b(n);
    for (int i = 0; i < n; ++i) {
      x[i] = normal(gen);
      y[i] = 0.5 * x[i] + normal(gen);
      xt[i] = small(gen);  // ties
      yt[i] = small(gen);
      a[i] = small(gen);
      b[i] = small(gen);
    }
    EXPECT_NEAR(Pearson(x, y), oracle::Pearson(x, y), 1e-9);
    EXPECT_NEAR(Spearman(x, y), oracle::Spearman(x, y), 1e-9);
    if (oracle::Mean(xt) != xt[0] && oracle::Mean(yt) != yt[0]) {
      EXPECT_NEAR(Spearman(xt, yt), oracle::Spearman(xt, yt), 1e-9);
      ++checked;
    }
    const double k = oracle::CohenKappa(a, b);
    if (std::isfinite(k)) {
      EXPECT_NEAR(CohenKappa(a, b), k, 1e-9);
    }
  }
  EXPECT_GT(checked, 80);
}

TEST(CorrelationTestTest, PValues) {
  const CorrelationTest perfect = PearsonTest({1, 2, 3, 4, 5}, {2, 4, 6, 8, 10});
  EXPECT_NEAR(perfect.coefficient, 1.0, 1e-12);
  EXPECT_NEAR(perfect.p_value, 0.0, 1e-12);
  std::vector<double> x = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  const CorrelationTest small = PearsonTest({1, 2}, {2, 1});
  EXPECT_EQ(small.p_value, 1.0);
  const CorrelationTest s = SpearmanTest(x, {2, 1, 4, 3, 6, 5, 8, 7, 10, 9});
  EXPECT_GT(s.p_value, 0.0);
  EXPECT_LT(s.p_value, 0.001);
}

TEST(CorrelationTestTest, KnownStudentTValue) {
  const std::vector<double> u = {1, 2, 3, 4, 5, 6};
  const std::vector<double> v = {2, 1, 4, 3, 6, 5};
  const double r = oracle::Pearson(u, v);
  const double t = r * std::sqrt(4.0 / (1 - r * r));
  // Closed-form two-sided tail of Student's t with 4 degrees of freedom.
  const double q = t / std::sqrt(t * t + 4);
  const double expected = 1 - q * (3 - q * q) / 2;
  EXPECT_NEAR(PearsonTest(u, v).p_value, expected, 1e-9);
}

std::vector<AnnotationRecord> TwoAnnotators() {
  // Understandable: identical; sensible: a = [1,1,0,0], b = [1,0,0,1].
  return {
      {"i1", "a", 1, 1, 1, 3}, {"i1", "b", 1, 1, 0, 2}, {"i2", "a", 1, 1, 0, 2},
      {"i2", "b", 0, 0, 0, 0}, {"i3", "a", 0, 0, 0, 0}, {"i3", "b", 0, 0, 1, 1},
      {"i4", "a", 1, 0, 1, 1}, {"i4", "b", 1, 1, 1, 3},
  };
}

TEST(MeanPairwiseKappaTest, OneValuePerQuestion) {
  const auto records = TwoAnnotators();
  for (Question q : kAllQuestions) {
    const KappaSummary s = MeanPairwiseKappa(records, q);
    EXPECT_EQ(s.annotator_pairs, 1u) << QuestionName(q);
    std::vector<int> a, b;
    for (const auto& r : records) (r.annotator_id == "a" ? a : b).push_back(Answer(r, q));
    EXPECT_NEAR(s.mean_kappa, oracle::CohenKappa(a, b), 1e-12) << QuestionName(q);
  }
  EXPECT_EQ(QuestionName(Question::kLikable), "specific");
}

TEST(MeanPairwiseKappaTest, AveragesOverPairs) {
  auto records = TwoAnnotators();
  for (const auto& r : TwoAnnotators()) {
    if (r.annotator_id == "a") {
      AnnotationRecord copy = r;
      copy.annotator_id = "c";
      records.push_back(copy);
    }
  }
  const KappaSummary s = MeanPairwiseKappa(records, Question::kSensible);
  EXPECT_EQ(s.annotator_pairs, 3u);
  // (a,b) = 0, (a,c) = 1, (b,c) = 0.
  EXPECT_NEAR(s.mean_kappa, 1.0 / 3.0, 1e-12);
}

TEST(AnnotationFileTest, RoundTripAndValidation) {
  const auto records = TwoAnnotators();
  const std::string text = SerializeAnnotations(records);
  std::vector<std::string> lines;
  size_t start = 0;
  for (size_t pos; (pos = text.find('\n', start)) != std::string::npos; start = pos + 1) {
    lines.push_back(text.substr(start, pos - start));
  }
  const auto back = ParseAnnotations(lines);
  ASSERT_EQ(back.size(), records.size());
  EXPECT_EQ(back[3].annotator_id, "b");
  EXPECT_EQ(back[3].overall, 0);
  EXPECT_THROW(ParseAnnotations({"i\ta\t1\t1\t2\t1"}), Error);
  EXPECT_THROW(ParseAnnotations({"i\ta\t1\t1\t1\t4"}), Error);
  EXPECT_THROW(ParseAnnotations({"i\ta\t1\t1\t1"}), Error);
}

// Every (u, s, l) pattern with overall == s.
std::vector<AnnotationRecord> NoiseFreeCalibration(double shift = 0.0) {
  std::vector<AnnotationRecord> out;
  int id = 0;
  for (int u = 0; u <= 1; ++u) {
    for (int s = 0; s <= 1; ++s) {
      for (int l = 0; l <= 1; ++l) {
        out.push_back({"i" + std::to_string(id++), "a", u, s, l, s + static_cast<int>(shift)});
      }
    }
  }
  return out;
}

TEST(FitAspectWeightsTest, RecoversSensiblenessSlope) {
  const AspectWeights w = FitAspectWeights(NoiseFreeCalibration());
  EXPECT_NEAR(w.slopes[0], 0.0, 1e-12);
  EXPECT_NEAR(w.slopes[1], 1.0, 1e-12);
  EXPECT_NEAR(w.slopes[2], 0.0, 1e-12);
  const auto expected = oracle::Softmax({0, 1, 0});
  for (int k = 0; k < 3; ++k) EXPECT_NEAR(w.weights[k], expected[k], 1e-12);
  EXPECT_NEAR(w.weights[0], 0.2119, 1e-4);
  EXPECT_NEAR(w.weights[1], 0.5761, 1e-4);
  EXPECT_NEAR(w.weights[0] + w.weights[1] + w.weights[2], 1.0, 1e-15);
}

TEST(FitAspectWeightsTest, ShiftChangesOnlyIntercept) {
  const AspectWeights base = FitAspectWeights(NoiseFreeCalibration());
  const AspectWeights shifted = FitAspectWeights(NoiseFreeCalibration(2.0));
  EXPECT_NEAR(shifted.intercept - base.intercept, 2.0, 1e-12);
  for (int k = 0; k < 3; ++k) EXPECT_NEAR(shifted.weights[k], base.weights[k], 1e-12);
}

TEST(FitAspectWeightsTest, OrderInvariant) {
  auto records = NoiseFreeCalibration();
  records[2].overall = 3;
  const AspectWeights a = FitAspectWeights(records);
  std::reverse(records.begin(), records.end());
  const AspectWeights b = FitAspectWeights(records);
  for (int k = 0; k < 3; ++k) EXPECT_NEAR(a.weights[k], b.weights[k], 1e-12);
}

TEST(FitAspectWeightsTest, RankDeficientIsUndefined) {
  std::vector<AnnotationRecord> records;
  for (int i = 0; i < 6; ++i) records.push_back({"i" + std::to_string(i), "a", 1, i % 2, 0, i % 4});
  try {
    FitAspectWeights(records);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUndefined);
  }
  EXPECT_THROW(FitAspectWeights({}), Error);
}

TEST(FitAspectWeightsTest, PerAnnotator) {
  auto records = NoiseFreeCalibration();
  for (auto r : NoiseFreeCalibration()) {
    r.annotator_id = "b";
    r.overall = r.understandable;
    records.push_back(r);
  }
  const auto per = FitAspectWeightsPerAnnotator(records);
  ASSERT_EQ(per.size(), 2u);
  EXPECT_NEAR(per.at("a").slopes[1], 1.0, 1e-12);
  EXPECT_NEAR(per.at("b").slopes[0], 1.0, 1e-12);
}

TEST(GroupTest, PatternClassification) {
  EXPECT_EQ(ClassifyPattern(0, 0, 0), ResponseGroup::kG1);
  EXPECT_EQ(ClassifyPattern(0, 0, 1), ResponseGroup::kG1);
  EXPECT_EQ(ClassifyPattern(1, 0, 0), ResponseGroup::kG2);
  EXPECT_EQ(ClassifyPattern(1, 0, 1), ResponseGroup::kG3);
  EXPECT_EQ(ClassifyPattern(1, 1, 0), ResponseGroup::kG4);
  EXPECT_EQ(ClassifyPattern(1, 1, 1), ResponseGroup::kG5);
  EXPECT_EQ(ClassifyPattern(0, 1, 0), ResponseGroup::kOther);
  EXPECT_EQ(ClassifyPattern(0, 1, 1), ResponseGroup::kOther);
}

TEST(GroupTest, AggregatesMeansAndKeepsResidual) {
  const std::vector<GroupedItem> items = {
      {1, 1, 1, {{"overall", 1}}}, {1, 1, 1, {{"overall", 3}}}, {0, 1, 1, {{"overall", 2}}}};
  const auto groups = AggregateGroups(items);
  EXPECT_EQ(groups.at(ResponseGroup::kG5).count, 2u);
  EXPECT_EQ(groups.at(ResponseGroup::kG5).means.at("overall"), 2.0);
  EXPECT_EQ(groups.at(ResponseGroup::kOther).count, 1u);
  EXPECT_FALSE(groups.contains(ResponseGroup::kG1));
  EXPECT_EQ(GroupName(ResponseGroup::kOther), "other");
}

WinTally Tally(size_t a, size_t b, size_t t) {
  std::vector<Judgment> j(a, Judgment::kAWins);
  j.insert(j.end(), b, Judgment::kBWins);
  j.insert(j.end(), t, Judgment::kTie);
  return TallyJudgments(j);
}

TEST(WinRateTest, PublishedCounts) {
  EXPECT_EQ(std::round(WinRate(Tally(24, 12, 14)) * 100) / 100, 0.67);
  EXPECT_EQ(std::round(WinRate(Tally(30, 4, 16)) * 100) / 100, 0.88);
  EXPECT_EQ(WinRate(Tally(5, 5, 0)), 0.5);
  const WinTally t = Tally(24, 12, 14);
  EXPECT_EQ(t.a_wins, 24u);
  EXPECT_EQ(t.b_wins, 12u);
  EXPECT_EQ(t.ties, 14u);
}

TEST(WinRateTest, AllTiesIsUndefined) {
  try {
    WinRate(Tally(0, 0, 3));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUndefined);
    EXPECT_NE(std::string(e.what()).find("3"), std::string::npos);
  }
  EXPECT_THROW(TallyJudgments({}), Error);
}

TEST(HumanScoresTest, PerItemAggregates) {
  constexpr std::array<double, 3> kEqual = {1.0 / 3, 1.0 / 3, 1.0 / 3};
  const auto scores = AggregateHumanScores(TwoAnnotators(), kEqual);
  ASSERT_EQ(scores.size(), 4u);
  const HumanItemScores& i1 = scores.at("i1");
  EXPECT_EQ(i1.annotators, 2u);
  EXPECT_DOUBLE_EQ(i1.overall, 2.5);
  // Annotator a: (1,1,1) -> 1; annotator b: (1,1,0) -> 2/3.
  EXPECT_NEAR(i1.usl_h, (1.0 + 2.0 / 3.0) / 2, 1e-12);
  EXPECT_NEAR(i1.aspects[2], 0.5, 1e-12);
  // i4: a (1,0,1) -> 1/3; b (1,1,1) -> 1.
  EXPECT_NEAR(scores.at("i4").usl_h, (1.0 / 3.0 + 1.0) / 2, 1e-12);
  EXPECT_NEAR(scores.at("i4").usl_a, (2.0 / 3.0 + 1.0) / 2, 1e-12);
}

TEST(HumanCeilingTest, IdenticalAnnotatorsAgreePerfectly) {
  std::vector<AnnotationRecord> records;
  const int overall[] = {0, 3, 1, 2, 2, 1};
  for (int i = 0; i < 6; ++i) {
    for (const char* who : {"a", "b", "c"}) {
      records.push_back({"i" + std::to_string(i), who, 1, 1, 1, overall[i]});
    }
  }
  const HumanCeiling c = LeaveOneOutHuman(records, Question::kOverall);
  EXPECT_EQ(c.annotators, 3u);
  EXPECT_NEAR(c.mean_pearson, 1.0, 1e-12);
  EXPECT_NEAR(c.max_spearman, 1.0, 1e-12);
}

TEST(HumanCeilingTest, MatchesManualLeaveOneOut) {
  std::vector<AnnotationRecord> records;
  const int table[3][5] = {{0, 1, 2, 3, 3}, {1, 1, 2, 2, 3}, {0, 2, 1, 3, 2}};
  const char* who[3] = {"a", "b", "c"};
  for (int a = 0; a < 3; ++a) {
    for (int i = 0; i < 5; ++i) records.push_back({"i" + std::to_string(i), who[a], 1, 1, 1, table[a][i]});
  }
  double sum = 0, best = -2;
  for (int a = 0; a < 3; ++a) {
    std::vector<double> mine, rest;
    for (int i = 0; i < 5; ++i) {
      mine.push_back(table[a][i]);
      double s = 0;
      for (int b = 0; b < 3; ++b) {
        if (b != a) s += table[b][i];
      }
      rest.push_back(s / 2);
    }
    const double r = oracle::Pearson(mine, rest);
    sum += r;
    best = std::max(best, r);
  }
  const HumanCeiling c = LeaveOneOutHuman(records, Question::kOverall);
  EXPECT_NEAR(c.mean_pearson, sum / 3, 1e-12);
  EXPECT_NEAR(c.max_pearson, best, 1e-12);
}

}  // namespace
}  // namespace uslh
