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

#include "pantest/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <limits>
#include <thread>

#include <Eigen/Dense>

#include "pantest/errors.hpp"
#include "pantest/hard_instances.hpp"
#include "pantest/partition.hpp"

namespace pantest {
namespace {

constexpr std::uint64_t kCurveTag = 0x4355525645;  // "CURVE"
constexpr std::uint64_t kInstanceTag = 0x494e5354;  // "INST"

std::string format_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", x);
  return buf;
}

struct SideTally {
  std::int64_t uniform_verdicts = 0;
  std::int64_t errors = 0;
};

SideTally run_side(const StreamTester& tester, const DistributionSource& source,
                   std::int64_t m, std::int64_t trials, RngSeed seed,
                   std::uint64_t side, int threads) {
  std::vector<std::int8_t> outcome(static_cast<std::size_t>(trials), 0);
  const std::int64_t length = poissonized_stream_length(m);
  parallel_for(trials, threads, [&](std::int64_t i) {
    const RngSeed base = seed.derive(side, static_cast<std::uint64_t>(i));
    try {
      DiscreteDistribution p = source(base.derive(1));
      SampledStream stream(p, length, base.derive(2));
      TestVerdict v = tester(stream, m, base.derive(3));
      outcome[i] = v.verdict == Verdict::kUniform ? 1 : 0;
    } catch (const InputError&) {
      outcome[i] = -1;
    } catch (const DomainError&) {
      outcome[i] = -1;
    }
  });
  SideTally tally;
  for (std::int8_t o : outcome) {
    if (o < 0) {
      ++tally.errors;
    } else {
      tally.uniform_verdicts += o;
    }
  }
  return tally;
}

ComplexityPoint search_for(const TesterSpec& spec, const InstanceSpec& far,
                           double target, RngSeed seed,
                           const SearchOptions& options) {
  spec.validate();
  const StreamTester tester = make_tester(spec);
  const DistributionSource uniform_source = make_source(
      InstanceSpec{InstanceKind::kUniform, std::nullopt}, spec.k, spec.alpha);
  const DistributionSource far_source = make_source(far, spec.k, spec.alpha);
  const std::string id(to_string(spec.kind));
  const std::string instance = far.describe(spec.alpha);
  ComplexityPoint point = sample_complexity_search(
      [&](std::int64_t m) {
        return estimate_power(tester, uniform_source, far_source, m,
                              options.trials, seed, options.threads, id,
                              instance);
      },
      target, options);
  point.tester_id = id;
  point.k = spec.k;
  point.alpha = spec.alpha;
  point.epsilon = spec.epsilon;
  return point;
}

template <typename T>
T get_or(const nlohmann::json& j, const char* key, T fallback) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return fallback;
  return it->get<T>();
}

}  // namespace

void parallel_for(std::int64_t count, int threads,
                  const std::function<void(std::int64_t)>& fn) {
  if (count <= 0) return;
  const std::int64_t workers =
      std::clamp<std::int64_t>(threads, 1, count);
  if (workers == 1) {
    for (std::int64_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::int64_t w = 0; w < workers; ++w) {
    const std::int64_t begin = count * w / workers;
    const std::int64_t end = count * (w + 1) / workers;
    pool.emplace_back([&, w, begin, end] {
      try {
        for (std::int64_t i = begin; i < end; ++i) fn(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

Interval wilson_interval(std::int64_t successes, std::int64_t trials,
                         double z) {
  if (trials <= 0) return {0.0, 1.0};
  if (successes < 0 || successes > trials) {
    throw DomainError("successes outside [0, trials]");
  }
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (p + z2 / (2.0 * n)) / denom;
  const double half =
      z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
  // The closed form leaves rounding residue at the boundary counts.
  return {successes == 0 ? 0.0 : std::max(0.0, center - half),
          successes == trials ? 1.0 : std::min(1.0, center + half)};
}

std::string_view to_string(TesterKind kind) {
  switch (kind) {
    case TesterKind::kSimplePan:
      return "simple_pan_test";
    case TesterKind::kPan:
      return "pan_test";
    case TesterKind::kNonPrivateChi2:
      return "nonprivate_chi2_test";
  }
  return "simple_pan_test";
}

TesterKind parse_tester_kind(std::string_view name) {
  if (name == "simple_pan_test" || name == "simple") {
    return TesterKind::kSimplePan;
  }
  if (name == "pan_test" || name == "pan") return TesterKind::kPan;
  if (name == "nonprivate_chi2_test" || name == "chi2") {
    return TesterKind::kNonPrivateChi2;
  }
  throw ConfigError("unknown tester '" + std::string(name) + "'");
}

void TesterSpec::validate() const {
  TesterConfig config;
  config.k = k;
  config.alpha = alpha;
  config.epsilon = epsilon;
  config.distance_constant = distance_constant;
  config.validate();
}

StreamTester make_tester(const TesterSpec& spec) {
  spec.validate();
  switch (spec.kind) {
    case TesterKind::kSimplePan:
    case TesterKind::kPan:
      return [spec](ElementStream& stream, std::int64_t m, RngSeed seed) {
        TesterConfig config;
        config.k = spec.k;
        config.alpha = spec.alpha;
        config.epsilon = spec.epsilon;
        config.seed = seed;
        config.distance_constant = spec.distance_constant;
        return spec.kind == TesterKind::kPan
                   ? pan_test(stream, config, m)
                   : simple_pan_test(stream, config, m);
      };
    case TesterKind::kNonPrivateChi2:
      return [spec](ElementStream& stream, std::int64_t m, RngSeed seed) {
        return nonprivate_chi2_test(stream, spec.k, spec.alpha, m, seed);
      };
  }
  throw ConfigError("unknown tester kind");
}

std::string_view to_string(InstanceKind kind) {
  switch (kind) {
    case InstanceKind::kUniform:
      return "uniform";
    case InstanceKind::kPaninski:
      return "paninski";
    case InstanceKind::kPointMass:
      return "point-mass";
  }
  return "uniform";
}

InstanceKind parse_instance_kind(std::string_view name) {
  if (name == "uniform") return InstanceKind::kUniform;
  if (name == "paninski" || name == "paninski-far") {
    return InstanceKind::kPaninski;
  }
  if (name == "point-mass") return InstanceKind::kPointMass;
  throw ConfigError("unknown instance '" + std::string(name) + "'");
}

std::string InstanceSpec::describe(double alpha) const {
  const double value = parameter.value_or(alpha);
  switch (kind) {
    case InstanceKind::kUniform:
      return "uniform";
    case InstanceKind::kPaninski:
      return "paninski(a=" + format_number(value) +
             ", tv=" + format_number(value / 2.0) + ")";
    case InstanceKind::kPointMass:
      return "point-mass(w=" + format_number(value) + ")";
  }
  return "uniform";
}

DistributionSource make_source(const InstanceSpec& spec, std::int64_t k,
                               double alpha) {
  if (k < 1) throw DomainError("domain size must be positive");
  const double value = spec.parameter.value_or(alpha);
  switch (spec.kind) {
    case InstanceKind::kUniform:
      return [k](RngSeed) { return uniform(k); };
    case InstanceKind::kPaninski: {
      if (k % 2 != 0) {
        throw DomainError("Paninski instances need an even domain size");
      }
      PaninskiInstance probe{k / 2, 1, std::vector<int>(k / 2, 1), value};
      probe.validate();
      return [k, value](RngSeed seed) {
        Rng rng(seed);
        return paninski_distribution(random_paninski(k / 2, value, 1, rng));
      };
    }
    case InstanceKind::kPointMass: {
      DiscreteDistribution p = perturbed_point_mass(k, value, 0);
      return [p](RngSeed) { return p; };
    }
  }
  throw ConfigError("unknown instance kind");
}

PowerEstimate estimate_power(const StreamTester& tester,
                             const DistributionSource& uniform_source,
                             const DistributionSource& far_source,
                             std::int64_t m, std::int64_t trials, RngSeed seed,
                             int threads, std::string tester_id,
                             std::string instance) {
  if (trials < 100) throw DomainError("estimate_power needs trials >= 100");
  if (m < 1) throw DomainError("sample size m must be positive");
  const SideTally u = run_side(tester, uniform_source, m, trials, seed, 0,
                               threads);
  const SideTally f = run_side(tester, far_source, m, trials, seed, 1,
                               threads);
  PowerEstimate est;
  est.tester_id = std::move(tester_id);
  est.instance = std::move(instance);
  est.m = m;
  est.trials = trials;
  est.errors_uniform = u.errors;
  est.errors_far = f.errors;
  auto rate = [](std::int64_t s, std::int64_t n) {
    return n > 0 ? static_cast<double>(s) / static_cast<double>(n) : 0.0;
  };
  est.p_uniform_given_uniform = rate(u.uniform_verdicts, trials - u.errors);
  est.p_uniform_given_far = rate(f.uniform_verdicts, trials - f.errors);
  est.uniform_interval = wilson_interval(u.uniform_verdicts, trials - u.errors);
  est.far_interval = wilson_interval(f.uniform_verdicts, trials - f.errors);
  est.wilson_halfwidth =
      0.5 * std::max(est.uniform_interval.upper - est.uniform_interval.lower,
                     est.far_interval.upper - est.far_interval.lower);
  return est;
}

ComplexityPoint sample_complexity_search(const PowerFunction& power,
                                         double target,
                                         const SearchOptions& options) {
  if (options.m_start < 1 || options.m_cap < options.m_start ||
      !(options.bisect_ratio > 1.0)) {
    throw ConfigError("invalid search options");
  }
  ComplexityPoint point;
  point.target = target;
  auto probe = [&](std::int64_t m) {
    PowerEstimate est = power(m);
    point.search_trace.push_back(
        {m, est.separation(), est.separation_lower_bound(),
         est.p_uniform_given_uniform, est.p_uniform_given_far});
    return est.separation_lower_bound() >= target;
  };

  if (target <= 0.0) {
    probe(options.m_start);
    point.m_star = options.m_start;
    return point;
  }
  std::int64_t lo = 0;  // largest failing m, 0 if none
  std::int64_t hi = options.m_start;
  while (!probe(hi)) {
    if (hi >= options.m_cap) return point;  // NotFound
    lo = hi;
    hi = std::min(2 * hi, options.m_cap);
  }
  while (lo > 0 && static_cast<double>(hi) >
                       options.bisect_ratio * static_cast<double>(lo)) {
    const auto mid = static_cast<std::int64_t>(
        std::llround(std::sqrt(static_cast<double>(lo) * static_cast<double>(hi))));
    if (mid <= lo || mid >= hi) break;
    if (probe(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  point.m_star = hi;
  return point;
}

LogLogFit fit_loglog(const std::vector<double>& x,
                     const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw DomainError("fit_loglog needs at least two (x, y) pairs");
  }
  const auto n = static_cast<Eigen::Index>(x.size());
  Eigen::MatrixXd design(n, 2);
  Eigen::VectorXd response(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) {
      throw DomainError("fit_loglog needs positive values");
    }
    design(i, 0) = 1.0;
    design(i, 1) = std::log(x[i]);
    response[i] = std::log(y[i]);
  }
  const Eigen::Matrix2d gram = design.transpose() * design;
  if (std::abs(gram.determinant()) < 1e-12) {
    throw DomainError("fit_loglog needs at least two distinct x values");
  }
  const Eigen::Vector2d beta = gram.ldlt().solve(design.transpose() * response);
  LogLogFit fit;
  fit.intercept = beta[0];
  fit.slope = beta[1];
  if (n > 2) {
    const double rss = (response - design * beta).squaredNorm();
    const double sigma2 = rss / static_cast<double>(n - 2);
    fit.slope_stderr = std::sqrt(sigma2 * gram.inverse()(1, 1));
  } else {
    fit.slope_stderr = std::numeric_limits<double>::quiet_NaN();
  }
  return fit;
}

PowerEstimate run_power(const PowerConfig& config, int threads) {
  config.tester.validate();
  const StreamTester tester = make_tester(config.tester);
  return estimate_power(
      tester,
      make_source(InstanceSpec{InstanceKind::kUniform, std::nullopt},
                  config.tester.k, config.tester.alpha),
      make_source(config.far, config.tester.k, config.tester.alpha), config.m,
      config.trials, RngSeed{config.seed, 0}, threads,
      std::string(to_string(config.tester.kind)),
      config.far.describe(config.tester.alpha));
}

ComplexityPoint run_complexity(const ComplexityConfig& config) {
  return search_for(config.tester, config.far, config.target,
                    RngSeed{config.seed, 0}, config.search);
}

ScalingCurve scaling_curve(const CurveConfig& config) {
  if (config.k_values.empty()) throw DomainError("k_values is empty");
  for (std::size_t i = 0; i < config.k_values.size(); ++i) {
    if (config.k_values[i] < 4) throw DomainError("every k must be >= 4");
    if (i > 0 && config.k_values[i] <= config.k_values[i - 1]) {
      throw DomainError("k_values must be strictly increasing");
    }
  }
  ScalingCurve curve;
  curve.tester_id = std::string(to_string(config.kind));
  curve.alpha = config.alpha;
  curve.epsilon = config.epsilon;
  std::vector<double> ks, ms;
  for (std::int64_t k : config.k_values) {
    TesterSpec spec{config.kind, k, config.alpha, config.epsilon,
                    config.distance_constant};
    const RngSeed seed = RngSeed{config.seed, 0}.derive(
        kCurveTag, static_cast<std::uint64_t>(k));
    ComplexityPoint point =
        search_for(spec, config.far, config.target, seed, config.search);
    if (point.found()) {
      ks.push_back(static_cast<double>(k));
      ms.push_back(static_cast<double>(*point.m_star));
    } else {
      curve.partial = true;
    }
    curve.points.push_back(std::move(point));
  }
  if (ks.size() >= 2) curve.fit = fit_loglog(ks, ms);
  return curve;
}

double partition_distance_bound(double alpha, std::int64_t k, std::int64_t n) {
  return alpha / 954.0 *
         std::sqrt(static_cast<double>(n) / (10.0 * static_cast<double>(k)));
}

PartitionExperimentResult partition_distance_experiment(
    const DiscreteDistribution& p, std::int64_t n, double alpha,
    std::int64_t trials, RngSeed seed) {
  if (trials < 1) throw DomainError("trials must be positive");
  PartitionExperimentResult result;
  result.k = p.k();
  result.n = n;
  result.trials = trials;
  result.alpha = alpha;
  result.bound = partition_distance_bound(alpha, p.k(), n);
  const DiscreteDistribution target = uniform(n);
  std::int64_t successes = 0;
  for (std::int64_t i = 0; i < trials; ++i) {
    Rng rng(seed.derive(static_cast<std::uint64_t>(i)));
    const PartitionPlan plan = random_partition(p.k(), n, rng);
    if (tv_distance(induced_distribution(p, plan), target) >= result.bound) {
      ++successes;
    }
  }
  const double f = static_cast<double>(successes) / static_cast<double>(trials);
  result.success_fraction = f;
  result.standard_error = std::sqrt(f * (1.0 - f) / static_cast<double>(trials));
  return result;
}

PartitionExperimentResult partition_distance_experiment(
    std::int64_t k, std::int64_t n, double alpha, std::int64_t trials,
    RngSeed seed) {
  if (k % 2 != 0) throw DomainError("Paninski instances need an even k");
  if (!(alpha > 0.0 && alpha <= 0.5)) {
    throw DomainError("a Paninski instance reaches TV alpha only for alpha <= 1/2");
  }
  Rng rng(seed.derive(kInstanceTag));
  const PaninskiInstance instance =
      random_paninski(k / 2, target_tv(alpha), 1, rng);
  return partition_distance_experiment(paninski_distribution(instance), n,
                                       alpha, trials, seed.derive(1));
}

void to_json(nlohmann::json& j, const Interval& v) {
  j = nlohmann::json{{"lower", v.lower}, {"upper", v.upper}};
}
void from_json(const nlohmann::json& j, Interval& v) {
  v.lower = j.at("lower").get<double>();
  v.upper = j.at("upper").get<double>();
}

void to_json(nlohmann::json& j, const TesterSpec& v) {
  j = nlohmann::json{{"tester", std::string(to_string(v.kind))},
                     {"k", v.k},
                     {"alpha", v.alpha},
                     {"epsilon", v.epsilon},
                     {"distance_constant", v.distance_constant}};
}
void from_json(const nlohmann::json& j, TesterSpec& v) {
  v.kind = parse_tester_kind(j.at("tester").get<std::string>());
  v.k = j.at("k").get<std::int64_t>();
  v.alpha = j.at("alpha").get<double>();
  v.epsilon = j.at("epsilon").get<double>();
  v.distance_constant =
      get_or(j, "distance_constant", kDefaultDistanceConstant);
}

void to_json(nlohmann::json& j, const InstanceSpec& v) {
  j = nlohmann::json{{"kind", std::string(to_string(v.kind))}};
  j["parameter"] =
      v.parameter ? nlohmann::json(*v.parameter) : nlohmann::json(nullptr);
}
void from_json(const nlohmann::json& j, InstanceSpec& v) {
  v.kind = parse_instance_kind(j.at("kind").get<std::string>());
  v.parameter.reset();
  if (j.contains("parameter") && !j.at("parameter").is_null()) {
    v.parameter = j.at("parameter").get<double>();
  }
}

void to_json(nlohmann::json& j, const SearchOptions& v) {
  j = nlohmann::json{{"trials", v.trials},
                     {"m_start", v.m_start},
                     {"m_cap", v.m_cap},
                     {"bisect_ratio", v.bisect_ratio}};
}
void from_json(const nlohmann::json& j, SearchOptions& v) {
  const SearchOptions d;
  v.trials = get_or(j, "trials", d.trials);
  v.m_start = get_or(j, "m_start", d.m_start);
  v.m_cap = get_or(j, "m_cap", d.m_cap);
  v.bisect_ratio = get_or(j, "bisect_ratio", d.bisect_ratio);
}

void to_json(nlohmann::json& j, const PowerEstimate& v) {
  j = nlohmann::json{{"tester_id", v.tester_id},
                     {"instance", v.instance},
                     {"m", v.m},
                     {"trials", v.trials},
                     {"p_uniform_verdict_given_uniform", v.p_uniform_given_uniform},
                     {"p_uniform_verdict_given_far", v.p_uniform_given_far},
                     {"wilson_halfwidth", v.wilson_halfwidth},
                     {"uniform_interval", v.uniform_interval},
                     {"far_interval", v.far_interval},
                     {"errors_uniform", v.errors_uniform},
                     {"errors_far", v.errors_far},
                     {"separation", v.separation()},
                     {"separation_lower_bound", v.separation_lower_bound()}};
}
void from_json(const nlohmann::json& j, PowerEstimate& v) {
  v.tester_id = j.at("tester_id").get<std::string>();
  v.instance = j.at("instance").get<std::string>();
  v.m = j.at("m").get<std::int64_t>();
  v.trials = j.at("trials").get<std::int64_t>();
  v.p_uniform_given_uniform = j.at("p_uniform_verdict_given_uniform").get<double>();
  v.p_uniform_given_far = j.at("p_uniform_verdict_given_far").get<double>();
  v.wilson_halfwidth = j.at("wilson_halfwidth").get<double>();
  v.uniform_interval = j.at("uniform_interval").get<Interval>();
  v.far_interval = j.at("far_interval").get<Interval>();
  v.errors_uniform = j.at("errors_uniform").get<std::int64_t>();
  v.errors_far = j.at("errors_far").get<std::int64_t>();
}

void to_json(nlohmann::json& j, const SearchStep& v) {
  j = nlohmann::json{{"m", v.m},
                     {"separation", v.separation},
                     {"separation_lower", v.separation_lower},
                     {"p_uniform_verdict_given_uniform", v.p_uniform_given_uniform},
                     {"p_uniform_verdict_given_far", v.p_uniform_given_far}};
}
void from_json(const nlohmann::json& j, SearchStep& v) {
  v.m = j.at("m").get<std::int64_t>();
  v.separation = j.at("separation").get<double>();
  v.separation_lower = j.at("separation_lower").get<double>();
  v.p_uniform_given_uniform = j.at("p_uniform_verdict_given_uniform").get<double>();
  v.p_uniform_given_far = j.at("p_uniform_verdict_given_far").get<double>();
}

void to_json(nlohmann::json& j, const ComplexityPoint& v) {
  j = nlohmann::json{{"tester_id", v.tester_id},
                     {"k", v.k},
                     {"alpha", v.alpha},
                     {"epsilon", v.epsilon},
                     {"target", v.target},
                     {"status", v.found() ? "found" : "NotFound"},
                     {"search_trace", v.search_trace}};
  j["m_star"] = v.m_star ? nlohmann::json(*v.m_star) : nlohmann::json(nullptr);
}
void from_json(const nlohmann::json& j, ComplexityPoint& v) {
  v.tester_id = j.at("tester_id").get<std::string>();
  v.k = j.at("k").get<std::int64_t>();
  v.alpha = j.at("alpha").get<double>();
  v.epsilon = j.at("epsilon").get<double>();
  v.target = j.at("target").get<double>();
  v.m_star.reset();
  if (!j.at("m_star").is_null()) v.m_star = j.at("m_star").get<std::int64_t>();
  v.search_trace = j.at("search_trace").get<std::vector<SearchStep>>();
}

void to_json(nlohmann::json& j, const LogLogFit& v) {
  j = nlohmann::json{{"slope", v.slope}, {"intercept", v.intercept}};
  j["slope_stderr"] = std::isfinite(v.slope_stderr)
                          ? nlohmann::json(v.slope_stderr)
                          : nlohmann::json(nullptr);
}

void to_json(nlohmann::json& j, const ScalingCurve& v) {
  j = nlohmann::json{{"tester_id", v.tester_id},
                     {"alpha", v.alpha},
                     {"epsilon", v.epsilon},
                     {"points", v.points},
                     {"partial", v.partial}};
  j["fit"] = v.fit ? nlohmann::json(*v.fit) : nlohmann::json(nullptr);
}

void to_json(nlohmann::json& j, const PowerConfig& v) {
  j = nlohmann::json{{"tester", v.tester},
                     {"far", v.far},
                     {"m", v.m},
                     {"trials", v.trials},
                     {"seed", v.seed}};
}
void from_json(const nlohmann::json& j, PowerConfig& v) {
  v.tester = j.at("tester").get<TesterSpec>();
  v.far = j.at("far").get<InstanceSpec>();
  v.m = j.at("m").get<std::int64_t>();
  v.trials = j.at("trials").get<std::int64_t>();
  v.seed = j.at("seed").get<std::uint64_t>();
}

void to_json(nlohmann::json& j, const ComplexityConfig& v) {
  j = nlohmann::json{{"tester", v.tester},
                     {"far", v.far},
                     {"target", v.target},
                     {"seed", v.seed},
                     {"search", v.search}};
}
void from_json(const nlohmann::json& j, ComplexityConfig& v) {
  v.tester = j.at("tester").get<TesterSpec>();
  v.far = j.at("far").get<InstanceSpec>();
  v.target = j.at("target").get<double>();
  v.seed = j.at("seed").get<std::uint64_t>();
  v.search = j.at("search").get<SearchOptions>();
}

void to_json(nlohmann::json& j, const CurveConfig& v) {
  j = nlohmann::json{{"tester", std::string(to_string(v.kind))},
                     {"k_values", v.k_values},
                     {"alpha", v.alpha},
                     {"epsilon", v.epsilon},
                     {"distance_constant", v.distance_constant},
                     {"far", v.far},
                     {"target", v.target},
                     {"seed", v.seed},
                     {"search", v.search}};
}
void from_json(const nlohmann::json& j, CurveConfig& v) {
  v.kind = parse_tester_kind(j.at("tester").get<std::string>());
  v.k_values = j.at("k_values").get<std::vector<std::int64_t>>();
  v.alpha = j.at("alpha").get<double>();
  v.epsilon = j.at("epsilon").get<double>();
  v.distance_constant =
      get_or(j, "distance_constant", kDefaultDistanceConstant);
  v.far = j.at("far").get<InstanceSpec>();
  v.target = j.at("target").get<double>();
  v.seed = j.at("seed").get<std::uint64_t>();
  v.search = j.at("search").get<SearchOptions>();
}

void to_json(nlohmann::json& j, const PartitionExperimentResult& v) {
  j = nlohmann::json{{"k", v.k},
                     {"n", v.n},
                     {"trials", v.trials},
                     {"alpha", v.alpha},
                     {"bound", v.bound},
                     {"success_fraction", v.success_fraction},
                     {"standard_error", v.standard_error}};
}

}  // namespace pantest
