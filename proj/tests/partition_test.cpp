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

#include "pantest/partition.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <vector>

#include <boost/math/distributions/chi_squared.hpp>
#include <gtest/gtest.h>

#include "pantest/errors.hpp"

namespace pantest {
namespace {

std::multiset<std::size_t> sizes(const PartitionPlan& plan) {
  std::multiset<std::size_t> out;
  for (const auto& g : plan.groups) out.insert(g.size());
  return out;
}

TEST(RandomPartitionTest, BalancedSizes) {
  Rng rng(RngSeed{1, 0});
  const PartitionPlan plan = random_partition(10, 3, rng);
  EXPECT_EQ(sizes(plan), (std::multiset<std::size_t>{4, 3, 3}));
  EXPECT_EQ(plan.groups[0].size(), 4u);
  EXPECT_EQ(plan.k(), 10);
  EXPECT_NO_THROW(validate_partition(plan));
  for (std::int64_t n = 2; n <= 17; ++n) {
    const PartitionPlan p = random_partition(17, n, rng);
    const auto s = sizes(p);
    EXPECT_LE(*s.rbegin() - *s.begin(), 1u);
    EXPECT_NO_THROW(validate_partition(p));
  }
}

TEST(RandomPartitionTest, Deterministic) {
  Rng a(RngSeed{2, 5});
  Rng b(RngSeed{2, 5});
  EXPECT_EQ(random_partition(6, 2, a).groups, random_partition(6, 2, b).groups);
}

TEST(RandomPartitionTest, RangeErrors) {
  Rng rng(RngSeed{3, 0});
  EXPECT_THROW(random_partition(5, 6, rng), DomainError);
  EXPECT_THROW(random_partition(5, 1, rng), DomainError);
}

TEST(RandomPartitionTest, EachElementEquallyLikelyInFirstGroup) {
  Rng rng(RngSeed{4, 0});
  const int trials = 10000;
  std::vector<int> in_first(6, 0);
  for (int i = 0; i < trials; ++i) {
    const PartitionPlan p = random_partition(6, 2, rng);
    for (Element x : p.groups[0]) ++in_first[x];
  }
  for (int c : in_first) EXPECT_NEAR(c / double(trials), 0.5, 0.02);
}

// All C(6,3) = 20 ordered bipartitions appear with equal frequency.
TEST(RandomPartitionTest, UniformOverBipartitions) {
  Rng rng(RngSeed{5, 0});
  const int trials = 40000;
  std::map<std::vector<Element>, int> counts;
  for (int i = 0; i < trials; ++i) {
    std::vector<Element> g = random_partition(6, 2, rng).groups[0];
    std::sort(g.begin(), g.end());
    ++counts[g];
  }
  ASSERT_EQ(counts.size(), 20u);
  const double expected = trials / 20.0;
  double chi2 = 0.0;
  for (const auto& [g, c] : counts) chi2 += (c - expected) * (c - expected) / expected;
  const boost::math::chi_squared_distribution<double> dist(19);
  EXPECT_GT(boost::math::cdf(boost::math::complement(dist, chi2)), 0.001);
}

TEST(ValidatePartitionTest, RejectsBrokenPlans) {
  Rng rng(RngSeed{6, 0});
  PartitionPlan plan = random_partition(6, 3, rng);
  PartitionPlan missing = plan;
  missing.groups[0].pop_back();
  EXPECT_THROW(validate_partition(missing), DomainError);
  PartitionPlan unbalanced = plan;
  unbalanced.groups[1].push_back(unbalanced.groups[0].back());
  unbalanced.groups[0].pop_back();
  unbalanced.group_of[unbalanced.groups[1].back()] = 1;
  EXPECT_THROW(validate_partition(unbalanced), DomainError);
}

TEST(InducedDistributionTest, SumsGroupMasses) {
  Eigen::VectorXd v(4);
  v << 0.1, 0.2, 0.3, 0.4;
  const DiscreteDistribution p(v);
  PartitionPlan plan;
  plan.n = 2;
  plan.groups = {{0, 3}, {1, 2}};
  plan.group_of = {0, 1, 1, 0};
  const DiscreteDistribution q = induced_distribution(p, plan);
  EXPECT_NEAR(q[0], 0.5, 1e-15);
  EXPECT_NEAR(q[1], 0.5, 1e-15);
  EXPECT_THROW(induced_distribution(uniform(5), plan), DomainError);
}

TEST(InducedDistributionTest, FullPartitionPreservesDistance) {
  Rng rng(RngSeed{7, 0});
  Eigen::VectorXd v(8);
  for (int i = 0; i < 8; ++i) v[i] = 1.0 + i;
  const DiscreteDistribution p(v / v.sum());
  for (int trial = 0; trial < 20; ++trial) {
    const PartitionPlan plan = random_partition(8, 8, rng);
    EXPECT_NEAR(tv_distance(induced_distribution(p, plan), uniform(8)),
                tv_distance(p, uniform(8)), 1e-12);
  }
}

}  // namespace
}  // namespace pantest
