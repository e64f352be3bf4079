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

#ifndef PANTEST_AMPLIFY_HPP_
#define PANTEST_AMPLIFY_HPP_

#include <cstdint>
#include <functional>
#include <optional>

#include "pantest/testers.hpp"

namespace pantest {

// One run of a base tester. The argument is the repetition index; callers
// derive a fresh stream and fresh tester randomness from it.
using RepeatedTester = std::function<TestVerdict(std::int64_t repetition)>;

// Runs `tester` r times and outputs Uniform iff the fraction of Uniform
// verdicts is at least `decision_fraction`. The returned statistic is the
// fraction of NonUniform verdicts and the threshold is 1 - decision_fraction,
// so verdict == decide(statistic, threshold).
TestVerdict amplify(const RepeatedTester& tester, std::int64_t r,
                    double decision_fraction);

// Smallest number of Uniform votes out of r that makes amplify() answer
// Uniform.
std::int64_t uniform_vote_threshold(std::int64_t r, double decision_fraction);

// P[Binomial(r, p) >= j].
double binomial_upper_tail(std::int64_t r, double p, std::int64_t j);

struct AmplifiedAccuracy {
  double correct_given_uniform = 0.0;  // P[amplified Uniform | base rate c1]
  double correct_given_far = 0.0;      // P[amplified NonUniform | base rate c2]
};

// Exact accuracy of amplify() over a base tester that says Uniform with
// probability c_uniform on uniform inputs and c_far on far inputs.
AmplifiedAccuracy amplified_accuracy(double c_uniform, double c_far,
                                     std::int64_t r, double decision_fraction);

// Smallest r <= r_max for which both sides of amplified_accuracy reach
// `target`, found by scanning r = 1, 2, ...
std::optional<std::int64_t> required_repetitions(double c_uniform, double c_far,
                                                 double decision_fraction,
                                                 double target,
                                                 std::int64_t r_max = 100000);

}  // namespace pantest

#endif  // PANTEST_AMPLIFY_HPP_
