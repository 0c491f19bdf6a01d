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

#include <cmath>

#include <gtest/gtest.h>

#include "uslh/error.h"

namespace uslh {
namespace {

TEST(BleuTest, IdenticalSentences) {
  const Tokens s = {"i", "like", "green", "tea", "."};
  for (int n = 1; n <= 4; ++n) EXPECT_NEAR(Bleu(s, s, n), 1.0, 1e-12);
}

TEST(BleuTest, ClippedUnigramPrecision) {
  EXPECT_NEAR(Bleu({"the", "cat"}, {"the", "the", "the"}, 1), 1.0 / 3.0, 1e-12);
}

TEST(BleuTest, BrevityPenalty) {
  EXPECT_NEAR(Bleu({"a", "b", "c", "d"}, {"a", "b", "c"}, 2), std::exp(1.0 - 4.0 / 3.0), 1e-12);
}

TEST(BleuTest, DisjointIsNearZero) {
  const double b = Bleu({"a", "b"}, {"c", "d"}, 2);
  EXPECT_GT(b, 0.0);
  EXPECT_LT(b, 1e-8);
}

TEST(BleuTest, UnigramOrderInvariant) {
  EXPECT_EQ(Bleu({"x", "y", "z"}, {"z", "x", "w"}, 1), Bleu({"x", "y", "z"}, {"x", "w", "z"}, 1));
}

TEST(BleuTest, Errors) {
  EXPECT_THROW(Bleu({}, {"a"}, 2), Error);
  EXPECT_THROW(Bleu({"a"}, {}, 2), Error);
  EXPECT_THROW(Bleu({"a"}, {"a"}, 0), Error);
  EXPECT_THROW(Bleu({"a"}, {"a"}, 5), Error);
}

TEST(RougeLTest, Examples) {
  EXPECT_DOUBLE_EQ(RougeL({"a", "b", "c"}, {"a", "b", "c"}), 1.0);
  EXPECT_EQ(LongestCommonSubsequence({"a", "b", "c", "d"}, {"a", "c", "d"}), 3u);
  EXPECT_NEAR(RougeL({"a", "b", "c", "d"}, {"a", "c", "d"}), 2 * 0.75 / 1.75, 1e-12);
  EXPECT_NEAR(RougeL({"a", "b", "c", "d"}, {"a", "c", "d"}), 0.857, 1e-3);
  EXPECT_EQ(RougeL({"a", "b"}, {"c", "d"}), 0.0);
}

TEST(RougeLTest, OrderSensitive) {
  EXPECT_NE(RougeL({"a", "b", "c"}, {"c", "b", "a"}), RougeL({"a", "b", "c"}, {"a", "b", "c"}));
}

WordVectorTable Toy() {
  WordVectorTable t;
  t.Add("a", {1, 0});
  t.Add("b", {0, 1});
  t.Add("c", {1, 1});
  t.Add("d", {-2, 0.5});
  return t;
}

constexpr EmbeddingMode kModes[] = {EmbeddingMode::kAverage, EmbeddingMode::kGreedy,
                                    EmbeddingMode::kExtrema};

TEST(EmbeddingMetricTest, IdenticalAndOrthogonal) {
  const WordVectorTable t = Toy();
  for (EmbeddingMode m : kModes) {
    EXPECT_NEAR(EmbeddingMetric(t, {"a", "c", "d"}, {"a", "c", "d"}, m), 1.0, 1e-12);
    EXPECT_NEAR(EmbeddingMetric(t, {"a"}, {"b"}, m), 0.0, 1e-12);
  }
}

TEST(EmbeddingMetricTest, HandComputedGreedy) {
  // Reference side: a matches a (1). Candidate side: a -> 1, b -> 0.
  EXPECT_NEAR(EmbeddingMetric(Toy(), {"a"}, {"a", "b"}, EmbeddingMode::kGreedy), 0.75, 1e-12);
  // a vs c and b vs c both sqrt(1/2) in both directions.
  EXPECT_NEAR(EmbeddingMetric(Toy(), {"a", "b"}, {"c"}, EmbeddingMode::kGreedy), std::sqrt(0.5),
              1e-12);
}

TEST(EmbeddingMetricTest, HandComputedAverageAndExtrema) {
  // Mean of a and d = (-0.5, 0.25); versus b = (0, 1).
  EXPECT_NEAR(EmbeddingMetric(Toy(), {"b"}, {"a", "d"}, EmbeddingMode::kAverage),
              0.25 / std::sqrt(0.3125), 1e-12);
  // Extrema of a and d = (-2, 0.5); versus c = (1, 1).
  EXPECT_NEAR(EmbeddingMetric(Toy(), {"c"}, {"a", "d"}, EmbeddingMode::kExtrema),
              -1.5 / (std::sqrt(4.25) * std::sqrt(2.0)), 1e-12);
}

TEST(EmbeddingMetricTest, AverageIsOrderInvariantAndBounded) {
  const WordVectorTable t = Toy();
  EXPECT_DOUBLE_EQ(EmbeddingMetric(t, {"a", "b"}, {"c", "d", "a"}, EmbeddingMode::kAverage),
                   EmbeddingMetric(t, {"b", "a"}, {"a", "d", "c"}, EmbeddingMode::kAverage));
  for (EmbeddingMode m : kModes) {
    const double v = EmbeddingMetric(t, {"d"}, {"a", "c"}, m);
    EXPECT_GE(v, -1.0);
    EXPECT_LE(v, 1.0);
  }
}

TEST(EmbeddingMetricTest, SkipsOovAndRejectsAllOov) {
  const WordVectorTable t = Toy();
  EXPECT_NEAR(EmbeddingMetric(t, {"a", "zzz"}, {"a"}, EmbeddingMode::kAverage), 1.0, 1e-12);
  EXPECT_THROW(EmbeddingMetric(t, {"zzz"}, {"a"}, EmbeddingMode::kGreedy), Error);
}

TEST(WordVectorTableTest, ParseChecksDimension) {
  const WordVectorTable t = WordVectorTable::Parse({"a 1 0", "b 0 1", ""});
  EXPECT_EQ(t.size(), 2u);
  EXPECT_EQ(t.dimension(), 2u);
  ASSERT_NE(t.Find("b"), nullptr);
  EXPECT_EQ((*t.Find("b"))[1], 1.0);
  EXPECT_EQ(t.Find("q"), nullptr);
  EXPECT_THROW(WordVectorTable::Parse({"a 1 0", "b 1"}), Error);
  EXPECT_THROW(WordVectorTable::Parse({"a 1 x"}), Error);
}

TEST(CosineTest, ZeroNormIsZero) {
  EXPECT_EQ(Cosine({0, 0}, {1, 2}), 0.0);
  EXPECT_NEAR(Cosine({1, 2}, {2, 4}), 1.0, 1e-12);
}

}  // namespace
}  // namespace uslh
