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

#ifndef PANTEST_DISTRIBUTION_HPP_
#define PANTEST_DISTRIBUTION_HPP_

#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "pantest/random.hpp"

namespace pantest {

using Element = std::int64_t;

// A probability vector over the domain {0, ..., k-1}.
//
// Construction accepts vectors summing to 1 within 1e-9. Vectors within 1e-6
// are renormalized with a warning on std::clog; anything further off, or any
// negative or non-finite entry, throws DomainError.
class DiscreteDistribution {
 public:
  static constexpr double kSumTolerance = 1e-9;
  static constexpr double kRenormalizeTolerance = 1e-6;

  explicit DiscreteDistribution(Eigen::VectorXd probs);

  Eigen::Index k() const { return probs_.size(); }
  const Eigen::VectorXd& probs() const { return probs_; }
  double operator[](Eigen::Index i) const { return probs_[i]; }

 private:
  Eigen::VectorXd probs_;
};

DiscreteDistribution uniform(Eigen::Index k);
DiscreteDistribution point_mass(Eigen::Index k, Element at);

// Half the L1 distance between two probability vectors. Works on any dense
// Eigen expressions of matching size.
template <typename DerivedA, typename DerivedB>
typename DerivedA::Scalar tv_distance(const Eigen::MatrixBase<DerivedA>& p,
                                      const Eigen::MatrixBase<DerivedB>& q) {
  using Scalar = typename DerivedA::Scalar;
  return Scalar(0.5) * (p - q).cwiseAbs().sum();
}

// Throws DomainError on mismatched domain sizes.
double tv_distance(const DiscreteDistribution& p, const DiscreteDistribution& q);

// Walker/Vose alias table: O(k) construction, O(1) sampling from one 64-bit
// draw.
class AliasSampler {
 public:
  explicit AliasSampler(const DiscreteDistribution& p);

  Element operator()(Rng& rng) const;
  Eigen::Index k() const { return static_cast<Eigen::Index>(alias_.size()); }

 private:
  std::vector<std::uint64_t> threshold_;
  std::vector<Element> alias_;
};

}  // namespace pantest

#endif  // PANTEST_DISTRIBUTION_HPP_
