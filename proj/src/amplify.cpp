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

#include "pantest/amplify.hpp"

#include <algorithm>
#include <cmath>

#include "pantest/errors.hpp"

namespace pantest {

TestVerdict amplify(const RepeatedTester& tester, std::int64_t r,
                    double decision_fraction) {
  if (r < 1) throw DomainError("amplify: r must be positive");
  if (!(decision_fraction > 0.0 && decision_fraction < 1.0)) {
    throw DomainError("amplify: decision fraction must lie in (0, 1)");
  }
  std::int64_t non_uniform = 0;
  std::int64_t samples = 0;
  std::int64_t domain = 0;
  for (std::int64_t i = 0; i < r; ++i) {
    const TestVerdict v = tester(i);
    if (v.verdict == Verdict::kNonUniform) ++non_uniform;
    samples += v.samples_consumed;
    domain = v.domain_size;
  }
  TestVerdict out;
  out.statistic = static_cast<double>(non_uniform) / static_cast<double>(r);
  out.threshold = 1.0 - decision_fraction;
  out.verdict = decide(out.statistic, out.threshold);
  out.samples_consumed = samples;
  out.domain_size = domain;
  return out;
}

std::int64_t uniform_vote_threshold(std::int64_t r, double decision_fraction) {
  const double threshold = 1.0 - decision_fraction;
  for (std::int64_t votes = 0; votes <= r; ++votes) {
    const double non_uniform =
        static_cast<double>(r - votes) / static_cast<double>(r);
    if (decide(non_uniform, threshold) == Verdict::kUniform) return votes;
  }
  return r + 1;
}

double binomial_upper_tail(std::int64_t r, double p, std::int64_t j) {
  if (j <= 0) return 1.0;
  if (j > r) return 0.0;
  if (p <= 0.0) return 0.0;
  if (p >= 1.0) return 1.0;
  const double log_p = std::log(p);
  const double log_q = std::log1p(-p);
  const double lg_r = std::lgamma(static_cast<double>(r) + 1.0);
  double total = 0.0;
  for (std::int64_t i = j; i <= r; ++i) {
    const double di = static_cast<double>(i);
    total += std::exp(lg_r - std::lgamma(di + 1.0) -
                      std::lgamma(static_cast<double>(r - i) + 1.0) +
                      di * log_p + static_cast<double>(r - i) * log_q);
  }
  return std::min(total, 1.0);
}

AmplifiedAccuracy amplified_accuracy(double c_uniform, double c_far,
                                     std::int64_t r, double decision_fraction) {
  const std::int64_t votes = uniform_vote_threshold(r, decision_fraction);
  return {binomial_upper_tail(r, c_uniform, votes),
          1.0 - binomial_upper_tail(r, c_far, votes)};
}

std::optional<std::int64_t> required_repetitions(double c_uniform, double c_far,
                                                 double decision_fraction,
                                                 double target,
                                                 std::int64_t r_max) {
  for (std::int64_t r = 1; r <= r_max; ++r) {
    const auto acc = amplified_accuracy(c_uniform, c_far, r, decision_fraction);
    if (acc.correct_given_uniform >= target && acc.correct_given_far >= target) {
      return r;
    }
  }
  return std::nullopt;
}

}  // namespace pantest
