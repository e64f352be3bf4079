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
#include <iostream>
#include <limits>
#include <string>

#include "pantest/errors.hpp"

namespace pantest {

DiscreteDistribution::DiscreteDistribution(Eigen::VectorXd probs)
    : probs_(std::move(probs)) {
  if (probs_.size() == 0) throw DomainError("distribution over an empty domain");
  if (!probs_.allFinite() || (probs_.array() < 0.0).any()) {
    throw DomainError("probabilities must be finite and non-negative");
  }
  const double total = probs_.sum();
  const double gap = std::fabs(total - 1.0);
  if (gap <= kSumTolerance) return;
  if (gap <= kRenormalizeTolerance) {
    std::clog << "warning: renormalizing probability vector with sum "
              << total << "\n";
    probs_ /= total;
    return;
  }
  throw DomainError("probabilities sum to " + std::to_string(total) +
                    ", not 1");
}

DiscreteDistribution uniform(Eigen::Index k) {
  if (k < 1) throw DomainError("uniform: k must be at least 1");
  return DiscreteDistribution(
      Eigen::VectorXd::Constant(k, 1.0 / static_cast<double>(k)));
}

DiscreteDistribution point_mass(Eigen::Index k, Element at) {
  if (k < 1 || at < 0 || at >= k) {
    throw DomainError("point_mass: element outside [0, k)");
  }
  Eigen::VectorXd probs = Eigen::VectorXd::Zero(k);
  probs[at] = 1.0;
  return DiscreteDistribution(std::move(probs));
}

double tv_distance(const DiscreteDistribution& p,
                   const DiscreteDistribution& q) {
  if (p.k() != q.k()) throw DomainError("tv_distance: domain sizes differ");
  return tv_distance(p.probs(), q.probs());
}

AliasSampler::AliasSampler(const DiscreteDistribution& p)
    : threshold_(static_cast<std::size_t>(p.k())),
      alias_(static_cast<std::size_t>(p.k())) {
  const auto k = static_cast<std::size_t>(p.k());
  std::vector<double> scaled(k);
  std::vector<std::size_t> small, large;
  for (std::size_t i = 0; i < k; ++i) {
    scaled[i] = p[static_cast<Eigen::Index>(i)] * static_cast<double>(k);
    alias_[i] = static_cast<Element>(i);
    (scaled[i] < 1.0 ? small : large).push_back(i);
  }
  constexpr double kTwo64 = 0x1.0p64;
  constexpr auto kFull = std::numeric_limits<std::uint64_t>::max();
  auto to_threshold = [&](double q) -> std::uint64_t {
    if (q >= 1.0) return kFull;
    if (q <= 0.0) return 0;
    return static_cast<std::uint64_t>(q * kTwo64);
  };
  while (!small.empty() && !large.empty()) {
    const std::size_t s = small.back();
    small.pop_back();
    const std::size_t l = large.back();
    threshold_[s] = to_threshold(scaled[s]);
    alias_[s] = static_cast<Element>(l);
    scaled[l] -= 1.0 - scaled[s];
    if (scaled[l] < 1.0) {
      large.pop_back();
      small.push_back(l);
    }
  }
  // Leftovers are 1 up to rounding.
  for (std::size_t i : large) threshold_[i] = kFull;
  for (std::size_t i : small) threshold_[i] = kFull;
}

Element AliasSampler::operator()(Rng& rng) const {
  const __uint128_t product =
      static_cast<__uint128_t>(rng.next_u64()) * threshold_.size();
  const auto column = static_cast<std::size_t>(product >> 64);
  const auto fraction = static_cast<std::uint64_t>(product);
  const std::uint64_t t = threshold_[column];
  if (t == std::numeric_limits<std::uint64_t>::max() || fraction < t) {
    return static_cast<Element>(column);
  }
  return alias_[column];
}

}  // namespace pantest
