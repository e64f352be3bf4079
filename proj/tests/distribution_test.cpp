//
// Copyright 2026 The pantest Authors
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

#include "pantest/distribution.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include <gtest/gtest.h>

#include "pantest/errors.hpp"
#include "pantest/stream.hpp"

namespace pantest {
namespace {

Eigen::VectorXd vec(std::initializer_list<double> v) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out[i++] = x;
  return out;
}

TEST(UniformTest, Entries) {
  EXPECT_TRUE(uniform(4).probs().isApprox(vec({0.25, 0.25, 0.25, 0.25})));
  EXPECT_EQ(uniform(1).probs(), vec({1.0}));
  EXPECT_EQ(uniform(2).probs(), vec({0.5, 0.5}));
  EXPECT_THROW(uniform(0), DomainError);
}

TEST(DiscreteDistributionTest, NormalizationPolicy) {
  EXPECT_NO_THROW(DiscreteDistribution(vec({0.5, 0.5 + 1e-12})));
  DiscreteDistribution renorm(vec({0.5, 0.5 + 1e-7}));
  EXPECT_NEAR(renorm.probs().sum(), 1.0, 1e-15);
  EXPECT_THROW(DiscreteDistribution(vec({0.5, 0.51})), DomainError);
  EXPECT_THROW(DiscreteDistribution(vec({1.5, -0.5})), DomainError);
  EXPECT_THROW(
      DiscreteDistribution(vec({std::numeric_limits<double>::quiet_NaN(), 1.0})),
      DomainError);
  EXPECT_THROW(DiscreteDistribution(Eigen::VectorXd()), DomainError);
}

TEST(TvDistanceTest, Examples) {
  const DiscreteDistribution a(vec({1.0, 0.0}));
  const DiscreteDistribution b(vec({0.0, 1.0}));
  EXPECT_DOUBLE_EQ(tv_distance(a, b), 1.0);
  EXPECT_DOUBLE_EQ(tv_distance(a, a), 0.0);
  const DiscreteDistribution p(vec({0.375, 0.125, 0.375, 0.125}));
  EXPECT_DOUBLE_EQ(tv_distance(p, uniform(4)), 0.25);
  EXPECT_THROW(tv_distance(uniform(3), uniform(4)), DomainError);
}

TEST(TvDistanceTest, AcceptsEigenExpressions) {
  const Eigen::VectorXd p = vec({0.5, 0.5});
  const Eigen::VectorXd q = vec({0.25, 0.75});
  EXPECT_DOUBLE_EQ(tv_distance(p, q), 0.25);
  EXPECT_DOUBLE_EQ(tv_distance(0.5 * (p + q), q), 0.125);
  const Eigen::VectorXf pf = p.cast<float>();
  const Eigen::VectorXf qf = q.cast<float>();
  EXPECT_FLOAT_EQ(tv_distance(pf, qf), 0.25f);
}

TEST(TvDistanceTest, MetricAxioms) {
  Rng rng(RngSeed{11, 0});
  auto random_dist = [&](int k) {
    Eigen::VectorXd v(k);
    for (int i = 0; i < k; ++i) v[i] = rng.uniform01();
    return DiscreteDistribution(v / v.sum());
  };
  for (int trial = 0; trial < 200; ++trial) {
    const auto p = random_dist(6), q = random_dist(6), r = random_dist(6);
    EXPECT_EQ(tv_distance(p, q), tv_distance(q, p));
    EXPECT_LE(tv_distance(p, r), tv_distance(p, q) + tv_distance(q, r) + 1e-12);
    EXPECT_GE(tv_distance(p, q), 0.0);
    EXPECT_LE(tv_distance(p, q), 1.0);
    EXPECT_NEAR(tv_distance(p, p), 0.0, 1e-15);
  }
}

TEST(AliasSamplerTest, PointMassAlwaysHitsItsElement) {
  AliasSampler s(point_mass(5, 3));
  Rng rng(RngSeed{12, 0});
  for (int i = 0; i < 10000; ++i) ASSERT_EQ(s(rng), 3);
}

TEST(AliasSamplerTest, FrequenciesMatchSkewedDistribution) {
  const DiscreteDistribution p(vec({0.05, 0.5, 0.2, 0.0, 0.25}));
  AliasSampler s(p);
  Rng rng(RngSeed{13, 0});
  const int n = 1000000;
  std::vector<int> counts(5, 0);
  for (int i = 0; i < n; ++i) ++counts[s(rng)];
  EXPECT_EQ(counts[3], 0);
  for (int i = 0; i < 5; ++i) {
    const double se = std::sqrt(p[i] * (1 - p[i]) / n);
    EXPECT_NEAR(counts[i] / double(n), p[i], 5 * se + 1e-9) << i;
  }
}

TEST(SampleStreamTest, PointMassStream) {
  auto s = sample_stream(point_mass(4, 3), 5, RngSeed{14, 0});
  std::vector<Element> got;
  while (auto x = s.next()) got.push_back(*x);
  EXPECT_EQ(got, (std::vector<Element>{3, 3, 3, 3, 3}));
  EXPECT_FALSE(s.next().has_value());  // consumed once, no rewind
}

TEST(SampleStreamTest, EmptyAndNegativeCounts) {
  auto s = sample_stream(uniform(4), 0, RngSeed{15, 0});
  EXPECT_FALSE(s.next().has_value());
  EXPECT_THROW(sample_stream(uniform(4), -1, RngSeed{15, 0}), DomainError);
}

TEST(SampleStreamTest, UniformFrequencies) {
  auto s = sample_stream(uniform(4), 1000000, RngSeed{16, 0});
  std::vector<int> counts(4, 0);
  while (auto x = s.next()) ++counts[*x];
  for (int c : counts) EXPECT_NEAR(c / 1e6, 0.25, 0.002);
}

TEST(SampleStreamTest, SameSeedSameStream) {
  auto a = sample_stream(uniform(10), 1000, RngSeed{17, 3});
  auto b = sample_stream(uniform(10), 1000, RngSeed{17, 3});
  while (auto x = a.next()) ASSERT_EQ(*x, *b.next());
}

TEST(SampleStreamTest, PoissonizedLength) {
  EXPECT_EQ(poissonized_stream_length(100), 170);
  EXPECT_EQ(poissonized_stream_length(1), 17);
  EXPECT_EQ(poissonized_stream_length(10000), 10610);
}

TEST(StreamAdaptersTest, MappedStreamRelabels) {
  VectorStream base({0, 1, 2, 3});
  MappedStream mapped(base, [](Element x) { return x / 2; });
  std::vector<Element> got;
  while (auto x = mapped.next()) got.push_back(*x);
  EXPECT_EQ(got, (std::vector<Element>{0, 0, 1, 1}));
}

}  // namespace
}  // namespace pantest
