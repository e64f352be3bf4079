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
#include <numeric>
#include <utility>

#include "pantest/errors.hpp"

namespace pantest {

PartitionPlan random_partition(std::int64_t k, std::int64_t n, Rng& rng) {
  if (n < 2 || n > k) {
    throw DomainError("random_partition: need 2 <= n <= k");
  }
  std::vector<Element> order(static_cast<std::size_t>(k));
  std::iota(order.begin(), order.end(), Element{0});
  for (std::int64_t i = k - 1; i > 0; --i) {
    const auto j = static_cast<std::int64_t>(
        rng.uniform_below(static_cast<std::uint64_t>(i + 1)));
    std::swap(order[static_cast<std::size_t>(i)],
              order[static_cast<std::size_t>(j)]);
  }

  PartitionPlan plan;
  plan.n = n;
  plan.groups.resize(static_cast<std::size_t>(n));
  plan.group_of.resize(static_cast<std::size_t>(k));
  const std::int64_t base = k / n;
  const std::int64_t extra = k % n;
  std::size_t pos = 0;
  for (std::int64_t g = 0; g < n; ++g) {
    const std::int64_t size = base + (g < extra ? 1 : 0);
    auto& group = plan.groups[static_cast<std::size_t>(g)];
    group.assign(order.begin() + static_cast<std::ptrdiff_t>(pos),
                 order.begin() + static_cast<std::ptrdiff_t>(pos + size));
    for (Element x : group) plan.group_of[static_cast<std::size_t>(x)] = g;
    pos += static_cast<std::size_t>(size);
  }
  return plan;
}

DiscreteDistribution induced_distribution(const DiscreteDistribution& p,
                                          const PartitionPlan& plan) {
  if (p.k() != plan.k()) {
    throw DomainError("induced_distribution: partition domain mismatch");
  }
  Eigen::VectorXd induced = Eigen::VectorXd::Zero(plan.n);
  for (Eigen::Index i = 0; i < p.k(); ++i) {
    induced[plan.group_of[static_cast<std::size_t>(i)]] += p[i];
  }
  return DiscreteDistribution(std::move(induced));
}

void validate_partition(const PartitionPlan& plan) {
  if (plan.n != static_cast<std::int64_t>(plan.groups.size())) {
    throw DomainError("partition: group count mismatch");
  }
  std::vector<int> seen(plan.group_of.size(), 0);
  std::size_t smallest = plan.group_of.size(), largest = 0;
  for (std::size_t g = 0; g < plan.groups.size(); ++g) {
    smallest = std::min(smallest, plan.groups[g].size());
    largest = std::max(largest, plan.groups[g].size());
    for (Element x : plan.groups[g]) {
      if (x < 0 || x >= plan.k() || seen[static_cast<std::size_t>(x)]++ ||
          plan.group_of[static_cast<std::size_t>(x)] !=
              static_cast<Element>(g)) {
        throw DomainError("partition: groups are not a partition of [k]");
      }
    }
  }
  if (std::find(seen.begin(), seen.end(), 0) != seen.end()) {
    throw DomainError("partition: groups do not cover [k]");
  }
  if (largest - smallest > 1) throw DomainError("partition: unbalanced groups");
}

}  // namespace pantest
