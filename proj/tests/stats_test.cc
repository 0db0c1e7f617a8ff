// Copyright 2026 The E2E Bench Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "e2e_bench/stats.h"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "e2e_bench/errors.h"
#include "oracles.h"

namespace e2e_bench {
namespace {

MetricSeries Series(const std::string& name, const std::vector<double>& values,
                    const std::string& prefix = "r") {
  std::vector<MetricPoint> points;
  for (std::size_t i = 0; i < values.size(); ++i) {
    points.push_back({prefix + std::to_string(i), values[i]});
  }
  return MetricSeries(name, "v", std::move(points));
}

std::vector<double> Uniform(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  std::vector<double> out(n);
  for (auto& v : out) v = dist(rng);
  return out;
}

TEST(SummarizeTest, ConstantSeries) {
  const auto s = Summarize(Series("m", {1, 1, 1}));
  EXPECT_EQ(s.mean, 1.0);
  EXPECT_EQ(s.std, 0.0);
  EXPECT_EQ(s.min, 1.0);
  EXPECT_EQ(s.max, 1.0);
  EXPECT_EQ(s.count, 3u);
  EXPECT_EQ(s.histogram.counts, (std::vector<std::size_t>{3}));
  EXPECT_EQ(s.histogram.edges, (std::vector<double>{1.0, 1.0}));
}

TEST(SummarizeTest, PopulationStandardDeviation) {
  const auto s = Summarize(Series("m", {0, 1}));
  EXPECT_EQ(s.mean, 0.5);
  EXPECT_EQ(s.std, 0.5);
}

TEST(SummarizeTest, TwoBinHistogram) {
  const auto s = Summarize(Series("m", {0.2, 0.4, 0.9}), 2);
  ASSERT_EQ(s.histogram.edges.size(), 3u);
  EXPECT_DOUBLE_EQ(s.histogram.edges[0], 0.2);
  EXPECT_DOUBLE_EQ(s.histogram.edges[1], 0.55);
  EXPECT_DOUBLE_EQ(s.histogram.edges[2], 0.9);
  EXPECT_EQ(s.histogram.counts, (std::vector<std::size_t>{2, 1}));
}

TEST(SummarizeTest, RejectsEmptySeriesAndBadBins) {
  EXPECT_THROW(Summarize(MetricSeries("m", "v", {})), DomainError);
  EXPECT_THROW(Summarize(Series("m", {1, 2}), 0), DomainError);
}

TEST(SummarizeTest, PropertyHistogramAndBounds) {
  std::mt19937_64 rng(21);
  std::uniform_int_distribution<std::size_t> size_dist(1, 200);
  std::uniform_int_distribution<int> bins_dist(1, 20);
  for (int trial = 0; trial < 300; ++trial) {
    const auto values = Uniform(rng, size_dist(rng));
    const int bins = bins_dist(rng);
    const auto s = Summarize(Series("m", values), bins);
    std::size_t total = 0;
    for (auto c : s.histogram.counts) total += c;
    ASSERT_EQ(total, values.size());
    ASSERT_LE(s.min, s.mean);
    ASSERT_LE(s.mean, s.max);
    ASSERT_GE(s.std, 0.0);
    // Two-pass long double reference.
    long double sum = 0;
    for (double v : values) sum += v;
    const long double mean = sum / values.size();
    long double sq = 0;
    for (double v : values) sq += (v - mean) * (v - mean);
    ASSERT_NEAR(s.mean, static_cast<double>(mean), 1e-14);
    ASSERT_NEAR(s.std, static_cast<double>(std::sqrt(sq / values.size())), 1e-12);
  }
}

TEST(MeanTest, ConcatenationIsWeightedMean) {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 200; ++trial) {
    const auto a = Uniform(rng, 1 + trial % 17);
    const auto b = Uniform(rng, 1 + trial % 29);
    auto both = a;
    both.insert(both.end(), b.begin(), b.end());
    const double expected =
        (Mean(a) * static_cast<double>(a.size()) + Mean(b) * static_cast<double>(b.size())) /
        static_cast<double>(both.size());
    ASSERT_NEAR(Mean(both), expected, 1e-14);
  }
}

TEST(MetricSeriesTest, RejectsDuplicatesAndNonFinite) {
  EXPECT_THROW(MetricSeries("m", "v", {{"a", 1}, {"a", 2}}), DomainError);
  EXPECT_THROW(MetricSeries("m", "v", {{"a", NAN}}), DomainError);
  EXPECT_THROW(MetricSeries("m", "v", {{"a", INFINITY}}), DomainError);
}

TEST(RSquaredTest, AffineRelationIsOne) {
  std::mt19937_64 rng(23);
  const auto x = Uniform(rng, 100);
  std::vector<double> y, neg;
  for (double v : x) {
    y.push_back(3.0 * v + 2.0);
    neg.push_back(-v);
  }
  EXPECT_NEAR(RSquared(Series("x", x), Series("y", y)), 1.0, 1e-9);
  EXPECT_NEAR(RSquared(Series("x", x), Series("n", neg)), 1.0, 1e-9);
}

TEST(RSquaredTest, IndependentSeriesAreNearZero) {
  std::mt19937_64 rng(24);
  const auto x = Uniform(rng, 1000);
  const auto y = Uniform(rng, 1000);
  const double r2 = RSquared(Series("x", x), Series("y", y));
  EXPECT_LT(r2, 0.02);
  EXPECT_NEAR(r2, oracle::LeastSquaresR2(x, y), 1e-12);
}

TEST(RSquaredTest, MatchesLeastSquaresOracle) {
  std::mt19937_64 rng(25);
  std::normal_distribution<double> noise(0.0, 0.3);
  for (int trial = 0; trial < 200; ++trial) {
    const auto x = Uniform(rng, 3 + static_cast<std::size_t>(trial % 40));
    std::vector<double> y;
    for (double v : x) y.push_back(0.7 * v + noise(rng));
    ASSERT_NEAR(RSquared(Series("x", x), Series("y", y)), oracle::LeastSquaresR2(x, y), 1e-10);
  }
}

TEST(RSquaredTest, PropertySymmetricAndAffineInvariant) {
  std::mt19937_64 rng(26);
  std::uniform_real_distribution<double> coef(-5.0, 5.0);
  for (int trial = 0; trial < 200; ++trial) {
    const auto x = Uniform(rng, 20);
    const auto y = Uniform(rng, 20);
    const double r2 = RSquared(Series("x", x), Series("y", y));
    ASSERT_GE(r2, 0.0);
    ASSERT_LE(r2, 1.0);
    ASSERT_NEAR(r2, RSquared(Series("y", y), Series("x", x)), 1e-12);
    double k = coef(rng);
    if (std::abs(k) < 0.1) k = 1.0;
    const double c = coef(rng);
    std::vector<double> scaled;
    for (double v : x) scaled.push_back(k * v + c);
    ASSERT_NEAR(RSquared(Series("s", scaled), Series("y", y)), r2, 1e-9);
  }
}

TEST(RSquaredTest, JoinsByIdNotByPosition) {
  std::vector<MetricPoint> a = {{"p", 1}, {"q", 2}, {"r", 3}, {"s", 4}};
  std::vector<MetricPoint> b = {{"s", 8}, {"r", 6}, {"q", 4}, {"p", 2}};
  EXPECT_NEAR(RSquared(MetricSeries("a", "v", a), MetricSeries("b", "v", b)), 1.0, 1e-12);
}

TEST(RSquaredTest, PreconditionErrors) {
  EXPECT_THROW(RSquared(Series("a", {1, 1, 1}), Series("b", {1, 2, 3})), DomainError);
  EXPECT_THROW(RSquared(Series("a", {1, 2}), Series("b", {1, 2})), DomainError);
  try {
    RSquared(Series("a", {1, 2, 3}), Series("b", {1, 2, 3}, "s"));
    FAIL() << "expected InputError";
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("r0"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("s0"), std::string::npos);
  }
}

TEST(JoinByIdTest, PartialJoinReportsDropped) {
  const MetricSeries a("a", "v", {{"x", 1}, {"y", 2}, {"z", 3}, {"w", 4}});
  const MetricSeries b("b", "v", {{"z", 30}, {"x", 10}, {"y", 20}, {"u", 0}});
  EXPECT_THROW(JoinById(a, b), InputError);
  const auto pairs = JoinById(a, b, true);
  EXPECT_EQ(pairs.ids, (std::vector<std::string>{"x", "y", "z"}));
  EXPECT_EQ(pairs.b, (std::vector<double>{10, 20, 30}));
  EXPECT_EQ(pairs.dropped.size(), 2u);
  EXPECT_NEAR(RSquared(a, b, true), 1.0, 1e-12);
}

TEST(MeanDeltaTest, Example) {
  const auto delta = ComputeMeanDelta(Series("m", {0.2, 0.4}), Series("m", {0.5, 0.3}));
  EXPECT_NEAR(delta.delta_mean, 0.1, 1e-15);
  const auto per = delta.per_record.values();
  ASSERT_EQ(per.size(), 2u);
  EXPECT_NEAR(per[0], 0.3, 1e-15);
  EXPECT_NEAR(per[1], -0.1, 1e-15);
  EXPECT_EQ(delta.per_record.ids(), (std::vector<std::string>{"r0", "r1"}));
}

TEST(MeanDeltaTest, PropertyAntisymmetricAndMatchesPerRecordMean) {
  std::mt19937_64 rng(27);
  for (int trial = 0; trial < 200; ++trial) {
    const auto a = Series("m", Uniform(rng, 1 + trial % 30));
    const auto b = Series("m", Uniform(rng, a.size()));
    const auto ab = ComputeMeanDelta(a, b);
    const auto ba = ComputeMeanDelta(b, a);
    ASSERT_NEAR(ab.delta_mean, -ba.delta_mean, 1e-15);
    ASSERT_NEAR(ab.delta_mean, Mean(ab.per_record.values()), 1e-14);
  }
}

TEST(MeanDeltaTest, MismatchedIdsFail) {
  EXPECT_THROW(ComputeMeanDelta(Series("m", {1, 2}), Series("m", {1, 2}, "x")), InputError);
}

}  // namespace
}  // namespace e2e_bench
