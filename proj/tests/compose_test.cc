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

#include "uslh/compose.h"

#include <random>

#include <gtest/gtest.h>

#include "uslh/error.h"

namespace uslh {
namespace {

constexpr std::array<double, 3> kEqual = {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};

TEST(NormalizerTest, FitFindsBounds) {
  const Normalizer n = Normalizer::Fit({{"x", {2, 4, 6}}, {"y", {5}}});
  EXPECT_EQ(n.bounds().at("x").min, 2);
  EXPECT_EQ(n.bounds().at("x").max, 6);
  EXPECT_EQ(n.bounds().at("y").min, 5);
  EXPECT_EQ(n.bounds().at("y").max, 5);
}

TEST(NormalizerTest, FitIsOrderInvariant) {
  const Normalizer a = Normalizer::Fit({{"x", {3, -1, 7, 2}}});
  const Normalizer b = Normalizer::Fit({{"x", {7, 2, 3, -1}}});
  EXPECT_EQ(a.bounds().at("x").min, b.bounds().at("x").min);
  EXPECT_EQ(a.bounds().at("x").max, b.bounds().at("x").max);
}

TEST(NormalizerTest, NormalizeClampsAndHandlesDegenerateRange) {
  Normalizer n;
  n.Set("x", {2, 6});
  n.Set("flat", {5, 5});
  EXPECT_EQ(n.Normalize("x", 4), 0.5);
  EXPECT_EQ(n.Normalize("x", 9), 1.0);
  EXPECT_EQ(n.Normalize("x", -3), 0.0);
  EXPECT_EQ(n.Normalize("flat", 5), 0.5);
}

TEST(NormalizerTest, ErrorsOnMissingOrEmpty) {
  Normalizer n;
  EXPECT_THROW(n.Normalize("nope", 1), Error);
  EXPECT_THROW(Normalizer::Fit({{"x", {}}}), Error);
}

TEST(LikabilityTest, WeightedSum) {
  EXPECT_DOUBLE_EQ(Likability({{"spec", 0.7}}, {{"spec", 1.0}}), 0.7);
  EXPECT_DOUBLE_EQ(Likability({{"spec", 1.0}, {"emp", 0.0}}, {{"spec", 0.5}, {"emp", 0.5}}), 0.5);
  EXPECT_DOUBLE_EQ(Likability({{"a", 1.0}, {"b", 1.0}, {"c", 1.0}},
                              {{"a", 0.2}, {"b", 0.3}, {"c", 0.5}}),
                   1.0);
}

TEST(LikabilityTest, RejectsMismatchedKeys) {
  EXPECT_THROW(Likability({{"spec", 0.5}}, {{"emp", 1.0}}), Error);
  EXPECT_THROW(Likability({{"spec", 0.5}}, {{"spec", 0.6}}), Error);
}

TEST(UslHFullTest, Examples) {
  EXPECT_EQ(UslHFull(0.0, 0.8, 0.9, kEqual), 0.0);
  EXPECT_DOUBLE_EQ(UslHFull(1, 1, 1, {0.2, 0.5, 0.3}), 1.0);
  EXPECT_NEAR(UslHFull(0.6, 0.9, 0.5, kEqual), 0.47, 1e-12);
}

TEST(UslHTest, Examples) {
  EXPECT_EQ(UslH(0.7, 0.0, 0.9, {0.5, 0.25, 0.25}), 0.5 * 0.7);
  EXPECT_DOUBLE_EQ(UslH(1, 1, 1, {0.1, 0.1, 0.8}), 1.0);
  EXPECT_NEAR(UslH(0.6, 0.9, 0.5, kEqual), 0.65, 1e-12);
}

TEST(UslATest, Examples) {
  EXPECT_DOUBLE_EQ(UslA(1, 0, 1, kEqual), 2.0 / 3.0);
  EXPECT_EQ(UslA(0, 0, 0, kEqual), 0.0);
}

TEST(CompositeMeanTest, Examples) {
  EXPECT_EQ(CompositeMean(1, 0, 1, MeanKind::kGeometric), 0.0);
  EXPECT_DOUBLE_EQ(CompositeMean(1, 0, 1, MeanKind::kArithmetic), 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(CompositeMean(0.5, 0.5, 0.5, MeanKind::kHarmonic), 0.5);
  EXPECT_EQ(CompositeMean(1, 0, 1, MeanKind::kHarmonic), 0.0);
  EXPECT_NEAR(CompositeMean(0.25, 1, 1, MeanKind::kGeometric), std::cbrt(0.25), 1e-15);
}

TEST(CompositionTest, RejectsOutOfRangeInputsAndBadWeights) {
  EXPECT_THROW(UslH(1.1, 0.5, 0.5, kEqual), Error);
  EXPECT_THROW(UslH(0.5, -0.1, 0.5, kEqual), Error);
  EXPECT_THROW(UslHFull(0.5, 0.5, 0.5, {0.5, 0.5, 0.5}), Error);
  EXPECT_THROW(UslA(0.5, 0.5, 0.5, {-0.1, 0.6, 0.5}), Error);
  EXPECT_THROW(CompositeMean(0.5, 2.0, 0.5, MeanKind::kArithmetic), Error);
}

TEST(CompositionTest, RandomPropertySweep) {
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < 2000; ++i) {
    double a = unit(gen), b = unit(gen), c = unit(gen);
    const double sum = a + b + c;
    const std::array<double, 3> alpha = {a / sum, b / sum, c / sum};
    const double u = unit(gen), s = unit(gen), l = unit(gen);
    for (double v : {UslH(u, s, l, alpha), UslHFull(u, s, l, alpha), UslA(u, s, l, alpha)}) {
      EXPECT_GE(v, 0.0);
      EXPECT_LE(v, 1.0);
    }
    EXPECT_NEAR(UslA(u, s, l, alpha) - UslH(u, s, l, alpha), alpha[2] * l * (1 - s), 1e-12);
    EXPECT_EQ(UslH(u, 0.0, l, alpha), alpha[0] * u);
    EXPECT_EQ(UslHFull(0.0, s, l, alpha), 0.0);
    const double bump = unit(gen);
    EXPECT_LE(UslH(u, s, l, alpha), UslH(std::max(u, bump), s, l, alpha));
    EXPECT_LE(UslH(u, s, l, alpha), UslH(u, std::max(s, bump), l, alpha));
    EXPECT_LE(UslH(u, s, l, alpha), UslH(u, s, std::max(l, bump), alpha));
  }
}

TEST(CompositionTest, BinaryGroupsWithEqualWeights) {
  EXPECT_EQ(UslH(0, 0, 0, kEqual), 0.0);
  EXPECT_EQ(UslH(0, 0, 1, kEqual), 0.0);
  EXPECT_EQ(UslH(1, 0, 0, kEqual), UslH(1, 0, 1, kEqual));
  EXPECT_DOUBLE_EQ(UslH(1, 0, 0, kEqual), 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(UslH(1, 1, 0, kEqual), 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(UslH(1, 1, 1, kEqual), 1.0);
}

TEST(CompositionWeightsTest, Validate) {
  CompositionWeights w;
  EXPECT_NO_THROW(w.Validate());
  w.beta = {{"a", 0.4}, {"b", 0.5}};
  EXPECT_THROW(w.Validate(), Error);
  w.beta["b"] = 0.6;
  EXPECT_NO_THROW(w.Validate());
  w.alpha = {0.5, 0.5, 0.1};
  EXPECT_THROW(w.Validate(), Error);
}

TEST(WeightsFileTest, RoundTrip) {
  WeightsFile f;
  f.weights.alpha = {0.2, 0.5, 0.3};
  f.weights.beta = {{"mlm_likelihood", 0.25}, {"empathy", 0.75}};
  f.normalizer.Set("mlm_likelihood", {1.25, 6.5});
  std::vector<std::string> lines = {"# comment", ""};
  const std::string text = SerializeWeightsFile(f);
  size_t start = 0;
  for (size_t pos; (pos = text.find('\n', start)) != std::string::npos; start = pos + 1) {
    lines.push_back(text.substr(start, pos - start));
  }
  const WeightsFile back = ParseWeightsFile(lines);
  EXPECT_EQ(back.weights.alpha, f.weights.alpha);
  EXPECT_EQ(back.weights.beta, f.weights.beta);
  EXPECT_EQ(back.normalizer.bounds().at("mlm_likelihood").min, 1.25);
  EXPECT_EQ(back.normalizer.bounds().at("mlm_likelihood").max, 6.5);
}

TEST(WeightsFileTest, RejectsMalformedLines) {
  EXPECT_THROW(ParseWeightsFile({"alpha = 0.5 0.5"}), Error);
  EXPECT_THROW(ParseWeightsFile({"gamma = 1"}), Error);
  EXPECT_THROW(ParseWeightsFile({"alpha = 0.6 0.6 0.6"}), Error);
  EXPECT_THROW(ParseWeightsFile({"norm.x = 3"}), Error);
}

}  // namespace
}  // namespace uslh
