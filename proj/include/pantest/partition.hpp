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

#ifndef PANTEST_PARTITION_HPP_
#define PANTEST_PARTITION_HPP_

#include <cstdint>
#include <vector>

#include "pantest/distribution.hpp"
#include "pantest/random.hpp"

namespace pantest {

// A partition of {0, ..., k-1} into n groups whose sizes differ by at most
// one. `group_of[x]` is the group index of element x.
struct PartitionPlan {
  std::int64_t n = 0;
  std::vector<std::vector<Element>> groups;
  std::vector<Element> group_of;

  std::int64_t k() const { return static_cast<std::int64_t>(group_of.size()); }
};

// Uniformly random balanced partition: a Fisher-Yates shuffle of [k] cut
// into contiguous slices; the first k mod n slices get ceil(k/n) elements.
// Requires 2 <= n <= k.
PartitionPlan random_partition(std::int64_t k, std::int64_t n, Rng& rng);

// p_n(j) = sum of p over group j.
DiscreteDistribution induced_distribution(const DiscreteDistribution& p,
                                          const PartitionPlan& plan);

// Throws DomainError unless the groups form a balanced partition of [k].
void validate_partition(const PartitionPlan& plan);

}  // namespace pantest

#endif  // PANTEST_PARTITION_HPP_
