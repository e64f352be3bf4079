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

// Far-from-uniform instance families used to measure tester power.
//
// A Paninski instance lives on 2 * k_pairs elements grouped into pairs
// {2j, 2j+1} (0-based). With x_bit = 0 the distribution is uniform. With
// x_bit = 1 pair j puts mass (1 + y_j a) / (2 k_pairs) on its first element
// and (1 - y_j a) / (2 k_pairs) on its second, where a is the construction
// parameter `alpha`. Its total variation distance from uniform is a / 2.

#ifndef PANTEST_HARD_INSTANCES_HPP_
#define PANTEST_HARD_INSTANCES_HPP_

#include <cstdint>
#include <vector>

#include "json.hpp"
#include "pantest/distribution.hpp"
#include "pantest/random.hpp"

namespace pantest {

struct PaninskiInstance {
  std::int64_t k_pairs = 1;
  int x_bit = 0;
  std::vector<int> y_signs;  // each +1 or -1, one per pair
  double alpha = 0.5;

  std::int64_t domain_size() const { return 2 * k_pairs; }
  // Exact TV distance of the induced distribution from uniform.
  double tv_from_uniform() const { return x_bit == 1 ? alpha / 2.0 : 0.0; }

  // Throws DomainError on malformed fields.
  void validate() const;

  friend bool operator==(const PaninskiInstance&,
                         const PaninskiInstance&) = default;
};

DiscreteDistribution paninski_distribution(const PaninskiInstance& instance);

// A sample viewed as (pair index J, side V).
struct DecomposedSample {
  std::int64_t pair = 0;
  bool first_side = true;

  Element element() const { return 2 * pair + (first_side ? 0 : 1); }
};

// J uniform over pairs; V first side w.p. 1/2 (x_bit = 0) or
// (1 + alpha y_J) / 2 (x_bit = 1).
DecomposedSample sample_decomposed(const PaninskiInstance& instance, Rng& rng);

// y_signs drawn i.i.d. uniform from {+1, -1}.
PaninskiInstance random_paninski(std::int64_t k_pairs, double alpha, int x_bit,
                                 Rng& rng);

// Construction parameter giving a Paninski instance at TV distance `tv`
// from uniform: min(2 tv, 1).
double target_tv(double tv);

// (1 - w) U_k + w delta_at, for domains of any parity. TV from uniform is
// w (1 - 1/k).
DiscreteDistribution perturbed_point_mass(std::int64_t k, double weight,
                                          Element at);

void to_json(nlohmann::json& j, const PaninskiInstance& instance);
void from_json(const nlohmann::json& j, PaninskiInstance& instance);

}  // namespace pantest

#endif  // PANTEST_HARD_INSTANCES_HPP_
