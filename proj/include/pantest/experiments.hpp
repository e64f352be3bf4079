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

// Monte-Carlo harness: power estimation, sample-complexity search, scaling
// curves and the partition-distance experiment. Every result is a pure
// function of its config and seed; the thread count never changes a number.

#ifndef PANTEST_EXPERIMENTS_HPP_
#define PANTEST_EXPERIMENTS_HPP_

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "pantest/distribution.hpp"
#include "pantest/random.hpp"
#include "pantest/stream.hpp"
#include "pantest/testers.hpp"

namespace pantest {

// Runs fn(i) for i in [0, count) on up to `threads` threads, static chunks.
void parallel_for(std::int64_t count, int threads,
                  const std::function<void(std::int64_t)>& fn);

struct Interval {
  double lower = 0.0;
  double upper = 1.0;
};

// Wilson score interval; z defaults to the two-sided 95% quantile. Returns
// [0, 1] when trials == 0.
Interval wilson_interval(std::int64_t successes, std::int64_t trials,
                         double z = 1.959963984540054);

// A tester as the harness sees it: a stream with enough elements for
// Poisson(m) draws, the nominal m, and the tester's own seed.
using StreamTester =
    std::function<TestVerdict(ElementStream&, std::int64_t, RngSeed)>;
using DistributionSource = std::function<DiscreteDistribution(RngSeed)>;

enum class TesterKind { kSimplePan, kPan, kNonPrivateChi2 };

std::string_view to_string(TesterKind kind);
// Accepts "simple_pan_test", "pan_test", "nonprivate_chi2_test" and the
// short forms "simple", "pan", "chi2". Throws ConfigError otherwise.
TesterKind parse_tester_kind(std::string_view name);

struct TesterSpec {
  TesterKind kind = TesterKind::kSimplePan;
  std::int64_t k = 2;
  double alpha = 0.5;
  double epsilon = 1.0;
  double distance_constant = kDefaultDistanceConstant;

  void validate() const;
};

StreamTester make_tester(const TesterSpec& spec);

enum class InstanceKind { kUniform, kPaninski, kPointMass };

std::string_view to_string(InstanceKind kind);
InstanceKind parse_instance_kind(std::string_view name);

// Far-side input. `parameter` is the Paninski construction parameter (the
// instance sits at TV parameter / 2) or the point-mass weight; when absent
// it defaults to the tester's alpha.
struct InstanceSpec {
  InstanceKind kind = InstanceKind::kPaninski;
  std::optional<double> parameter;

  std::string describe(double alpha) const;
};

// A fresh distribution per seed (Paninski signs are redrawn every trial).
DistributionSource make_source(const InstanceSpec& spec, std::int64_t k,
                               double alpha);

struct PowerEstimate {
  std::string tester_id;
  std::string instance;
  std::int64_t m = 0;
  std::int64_t trials = 0;
  double p_uniform_given_uniform = 0.0;
  double p_uniform_given_far = 0.0;
  double wilson_halfwidth = 0.0;  // larger of the two sides, 95%
  Interval uniform_interval;
  Interval far_interval;
  std::int64_t errors_uniform = 0;
  std::int64_t errors_far = 0;

  double separation() const {
    return p_uniform_given_uniform - p_uniform_given_far;
  }
  // Lower Wilson bound on the uniform side minus upper bound on the far side.
  double separation_lower_bound() const {
    return uniform_interval.lower - far_interval.upper;
  }
};

// Trial i on side s (0 uniform, 1 far) uses seed.derive(s, i) for its
// distribution, stream and tester, independently of m. Tester InputError and
// DomainError are counted per side and excluded from the rates. Throws
// DomainError when trials < 100.
PowerEstimate estimate_power(const StreamTester& tester,
                             const DistributionSource& uniform_source,
                             const DistributionSource& far_source,
                             std::int64_t m, std::int64_t trials, RngSeed seed,
                             int threads = 1, std::string tester_id = "",
                             std::string instance = "");

struct SearchOptions {
  std::int64_t trials = 1000;
  std::int64_t m_start = 16;
  std::int64_t m_cap = 10'000'000;
  double bisect_ratio = 1.1;
  int threads = 1;
};

struct SearchStep {
  std::int64_t m = 0;
  double separation = 0.0;
  double separation_lower = 0.0;
  double p_uniform_given_uniform = 0.0;
  double p_uniform_given_far = 0.0;
};

struct ComplexityPoint {
  std::string tester_id;
  std::int64_t k = 0;
  double alpha = 0.0;
  double epsilon = 0.0;
  double target = 0.0;
  std::optional<std::int64_t> m_star;  // absent: NotFound up to m_cap
  std::vector<SearchStep> search_trace;

  bool found() const { return m_star.has_value(); }
};

using PowerFunction = std::function<PowerEstimate(std::int64_t)>;

// Doubling from m_start until separation_lower_bound() >= target, then
// geometric bisection until hi / lo <= bisect_ratio; m_star is the smallest
// succeeding m probed. target <= 0 returns m_start after one probe.
ComplexityPoint sample_complexity_search(const PowerFunction& power,
                                         double target,
                                         const SearchOptions& options);

struct LogLogFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_stderr = 0.0;  // NaN with fewer than three points
};

// Least-squares fit of log y = intercept + slope * log x.
LogLogFit fit_loglog(const std::vector<double>& x, const std::vector<double>& y);

struct ScalingCurve {
  std::string tester_id;
  double alpha = 0.0;
  double epsilon = 0.0;
  std::vector<ComplexityPoint> points;
  std::optional<LogLogFit> fit;  // over the found points, if >= 2
  bool partial = false;          // some point was NotFound
};

struct PowerConfig {
  TesterSpec tester;
  InstanceSpec far;
  std::int64_t m = 16;
  std::int64_t trials = 1000;
  std::uint64_t seed = 0;
};

struct ComplexityConfig {
  TesterSpec tester;
  InstanceSpec far;
  double target = 0.125;
  std::uint64_t seed = 0;
  SearchOptions search;
};

struct CurveConfig {
  TesterKind kind = TesterKind::kSimplePan;
  std::vector<std::int64_t> k_values;
  double alpha = 0.5;
  double epsilon = 1.0;
  double distance_constant = kDefaultDistanceConstant;
  InstanceSpec far;
  double target = 0.125;
  std::uint64_t seed = 0;
  SearchOptions search;
};

PowerEstimate run_power(const PowerConfig& config, int threads = 1);
ComplexityPoint run_complexity(const ComplexityConfig& config);
// k_values must be sorted ascending with every k >= 4. Point i is searched
// with seed derived from (config.seed, k).
ScalingCurve scaling_curve(const CurveConfig& config);

struct PartitionExperimentResult {
  std::int64_t k = 0;
  std::int64_t n = 0;
  std::int64_t trials = 0;
  double alpha = 0.0;  // TV of p from uniform
  double bound = 0.0;
  double success_fraction = 0.0;
  double standard_error = 0.0;
};

// (alpha / 954) sqrt(n / (10 k)).
double partition_distance_bound(double alpha, std::int64_t k, std::int64_t n);

// Fraction of random balanced partitions with tv(p_n, U_n) >= bound(alpha).
PartitionExperimentResult partition_distance_experiment(
    const DiscreteDistribution& p, std::int64_t n, double alpha,
    std::int64_t trials, RngSeed seed);

// Same over a Paninski instance at TV exactly alpha (k even); signs drawn
// once from the seed.
PartitionExperimentResult partition_distance_experiment(
    std::int64_t k, std::int64_t n, double alpha, std::int64_t trials,
    RngSeed seed);

void to_json(nlohmann::json& j, const Interval& v);
void from_json(const nlohmann::json& j, Interval& v);
void to_json(nlohmann::json& j, const TesterSpec& v);
void from_json(const nlohmann::json& j, TesterSpec& v);
void to_json(nlohmann::json& j, const InstanceSpec& v);
void from_json(const nlohmann::json& j, InstanceSpec& v);
void to_json(nlohmann::json& j, const SearchOptions& v);
void from_json(const nlohmann::json& j, SearchOptions& v);
void to_json(nlohmann::json& j, const PowerEstimate& v);
void from_json(const nlohmann::json& j, PowerEstimate& v);
void to_json(nlohmann::json& j, const SearchStep& v);
void from_json(const nlohmann::json& j, SearchStep& v);
void to_json(nlohmann::json& j, const ComplexityPoint& v);
void from_json(const nlohmann::json& j, ComplexityPoint& v);
void to_json(nlohmann::json& j, const LogLogFit& v);
void to_json(nlohmann::json& j, const ScalingCurve& v);
void to_json(nlohmann::json& j, const PowerConfig& v);
void from_json(const nlohmann::json& j, PowerConfig& v);
void to_json(nlohmann::json& j, const ComplexityConfig& v);
void from_json(const nlohmann::json& j, ComplexityConfig& v);
void to_json(nlohmann::json& j, const CurveConfig& v);
void from_json(const nlohmann::json& j, CurveConfig& v);
void to_json(nlohmann::json& j, const PartitionExperimentResult& v);

}  // namespace pantest

#endif  // PANTEST_EXPERIMENTS_HPP_
