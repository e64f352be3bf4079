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

// The chi-square style statistic shared by the private and non-private
// testers, and the closed-form decision thresholds.

#ifndef PANTEST_STATISTIC_HPP_
#define PANTEST_STATISTIC_HPP_

#include <cmath>
#include <cstdint>

#include <Eigen/Core>

#include "pantest/errors.hpp"

namespace pantest {

// sum_i ((H_i - m/k)^2 - H_i) / (m/k) over the k bins of `bins`.
//
// `m` is the nominal sample size (not the Poissonized count), so the
// statistic of exact-uniform counts is -k.
template <typename Derived>
typename Derived::Scalar compute_statistic(const Eigen::MatrixBase<Derived>& bins,
                                           std::int64_t m) {
  using Scalar = typename Derived::Scalar;
  if (m < 1) throw DomainError("compute_statistic: m must be positive");
  if (bins.size() < 1) throw DomainError("compute_statistic: no bins");
  const Scalar expected = Scalar(m) / Scalar(bins.size());
  const auto h = bins.derived().array();
  return ((h - expected).square() - h).sum() / expected;
}

// Uniform-side threshold
//   a^2 m / 100 + 4 k^2 / (e^2 m) + 24 sqrt2 k^1.5 / (e^2 m)
//     + 16 sqrt2 k / (e sqrt m) + 8 sqrt2 k^1.5 / (e m).
template <typename Scalar = double>
Scalar threshold_tu(Scalar k, Scalar m, Scalar alpha, Scalar epsilon) {
  using std::pow;
  using std::sqrt;
  const Scalar sqrt2 = sqrt(Scalar(2));
  const Scalar k32 = pow(k, Scalar(1.5));
  const Scalar e2m = epsilon * epsilon * m;
  return alpha * alpha * m / Scalar(100) + Scalar(4) * k * k / e2m +
         Scalar(24) * sqrt2 * k32 / e2m +
         Scalar(16) * sqrt2 * k / (epsilon * sqrt(m)) +
         Scalar(8) * sqrt2 * k32 / (epsilon * m);
}

// Far-side lower threshold; reported as a diagnostic only, the decision rule
// uses threshold_tu alone.
template <typename Scalar = double>
Scalar threshold_talpha(Scalar k, Scalar m, Scalar alpha, Scalar epsilon) {
  using std::pow;
  using std::sqrt;
  const Scalar sqrt3 = sqrt(Scalar(3));
  const Scalar k32 = pow(k, Scalar(1.5));
  return alpha * alpha * m / Scalar(10) +
         Scalar(4) * k * k / (epsilon * epsilon * m) -
         Scalar(12) * sqrt3 * k32 / (epsilon * epsilon * m) -
         Scalar(4) * sqrt3 * k32 / (epsilon * m);
}

// Threshold of the non-private baseline, between the uniform and far
// expectations of the noiseless statistic.
template <typename Scalar = double>
Scalar threshold_chi2(Scalar m, Scalar alpha) {
  return alpha * alpha * m / Scalar(10);
}

}  // namespace pantest

#endif  // PANTEST_STATISTIC_HPP_
