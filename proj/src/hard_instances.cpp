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

#include "pantest/hard_instances.hpp"

#include <algorithm>

#include "pantest/errors.hpp"

namespace pantest {

void PaninskiInstance::validate() const {
  if (k_pairs < 1) throw DomainError("Paninski instance needs k_pairs >= 1");
  if (x_bit != 0 && x_bit != 1) throw DomainError("x_bit must be 0 or 1");
  if (!(alpha > 0.0 && alpha <= 1.0)) throw DomainError("alpha must be in (0, 1]");
  if (static_cast<std::int64_t>(y_signs.size()) != k_pairs) {
    throw DomainError("y_signs must have one entry per pair");
  }
  for (int y : y_signs) {
    if (y != 1 && y != -1) throw DomainError("y_signs entries must be +1 or -1");
  }
}

DiscreteDistribution paninski_distribution(const PaninskiInstance& instance) {
  instance.validate();
  const double base = 1.0 / static_cast<double>(instance.domain_size());
  Eigen::VectorXd probs = Eigen::VectorXd::Constant(instance.domain_size(), base);
  if (instance.x_bit == 1) {
    for (std::int64_t j = 0; j < instance.k_pairs; ++j) {
      const double shift =
          instance.y_signs[static_cast<std::size_t>(j)] * instance.alpha;
      probs[2 * j] = (1.0 + shift) * base;
      probs[2 * j + 1] = (1.0 - shift) * base;
    }
  }
  return DiscreteDistribution(std::move(probs));
}

DecomposedSample sample_decomposed(const PaninskiInstance& instance, Rng& rng) {
  DecomposedSample s;
  s.pair = static_cast<std::int64_t>(
      rng.uniform_below(static_cast<std::uint64_t>(instance.k_pairs)));
  const double p_first =
      instance.x_bit == 0
          ? 0.5
          : (1.0 + instance.alpha *
                       instance.y_signs[static_cast<std::size_t>(s.pair)]) /
                2.0;
  s.first_side = rng.bernoulli(p_first);
  return s;
}

PaninskiInstance random_paninski(std::int64_t k_pairs, double alpha, int x_bit,
                                 Rng& rng) {
  PaninskiInstance instance;
  instance.k_pairs = k_pairs;
  instance.alpha = alpha;
  instance.x_bit = x_bit;
  if (k_pairs < 1) throw DomainError("Paninski instance needs k_pairs >= 1");
  instance.y_signs.resize(static_cast<std::size_t>(k_pairs));
  for (int& y : instance.y_signs) y = (rng.next_u64() >> 63) ? 1 : -1;
  instance.validate();
  return instance;
}

double target_tv(double tv) {
  if (!(tv > 0.0)) throw DomainError("target TV distance must be positive");
  return std::min(2.0 * tv, 1.0);
}

DiscreteDistribution perturbed_point_mass(std::int64_t k, double weight,
                                          Element at) {
  if (k < 1 || at < 0 || at >= k) {
    throw DomainError("perturbed_point_mass: element outside [0, k)");
  }
  if (!(weight >= 0.0 && weight <= 1.0)) {
    throw DomainError("perturbed_point_mass: weight must be in [0, 1]");
  }
  Eigen::VectorXd probs =
      Eigen::VectorXd::Constant(k, (1.0 - weight) / static_cast<double>(k));
  probs[at] += weight;
  return DiscreteDistribution(std::move(probs));
}

void to_json(nlohmann::json& j, const PaninskiInstance& instance) {
  j = nlohmann::json{{"k_pairs", instance.k_pairs},
                     {"x_bit", instance.x_bit},
                     {"y_signs", instance.y_signs},
                     {"alpha", instance.alpha},
                     {"tv_from_uniform", instance.tv_from_uniform()}};
}

void from_json(const nlohmann::json& j, PaninskiInstance& instance) {
  j.at("k_pairs").get_to(instance.k_pairs);
  j.at("x_bit").get_to(instance.x_bit);
  j.at("y_signs").get_to(instance.y_signs);
  j.at("alpha").get_to(instance.alpha);
  instance.validate();
}

}  // namespace pantest
