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

#include "pantest/audit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <unordered_map>
#include <utility>

#include "pantest/errors.hpp"
#include "pantest/testing/intrusion.hpp"

namespace pantest {
namespace {

void check_time(const NeighborPair& pair, std::int64_t t, double epsilon) {
  pair.validate();
  if (t < 0 || t > pair.length()) {
    throw DomainError("time " + std::to_string(t) + " outside [0, " +
                      std::to_string(pair.length()) + "]");
  }
  if (!(epsilon > 0.0)) throw DomainError("epsilon must be positive");
}

std::string view_key(const PanProtocol& protocol,
                     std::span<const Element> stream, CoinSource& coins,
                     const std::set<std::int64_t>& times) {
  SimulationResult r = simulate(protocol, stream, coins, times);
  ConcatState view;
  for (auto& [t, state] : r.observed) view.append(std::move(state));
  view.append(std::move(r.output));
  return view.encode();
}

// Per-side outcome indices into a shared cell table.
struct Observations {
  std::vector<std::int32_t> side_a;
  std::vector<std::int32_t> side_b;
  std::size_t cells = 0;
};

// Smoothed log(P_a / P_b) for every cell.
std::vector<double> log_ratios(const std::vector<std::int64_t>& ca,
                               const std::vector<std::int64_t>& cb,
                               double smoothing, double na, double nb) {
  const double c = static_cast<double>(ca.size());
  std::vector<double> out(ca.size());
  for (std::size_t i = 0; i < ca.size(); ++i) {
    const double pa = (static_cast<double>(ca[i]) + smoothing) /
                      (na + smoothing * c);
    const double pb = (static_cast<double>(cb[i]) + smoothing) /
                      (nb + smoothing * c);
    out[i] = std::log(pa) - std::log(pb);
  }
  return out;
}

std::vector<std::int64_t> tally(const std::vector<std::int32_t>& outcomes,
                                std::size_t cells) {
  std::vector<std::int64_t> counts(cells, 0);
  for (std::int32_t o : outcomes) ++counts[o];
  return counts;
}

}  // namespace

NeighborPair NeighborPair::make(std::vector<Element> a,
                                std::vector<Element> b) {
  NeighborPair pair;
  pair.stream_a = std::move(a);
  pair.stream_b = std::move(b);
  if (pair.stream_a.size() != pair.stream_b.size()) {
    throw DomainError("neighbor streams must have equal length");
  }
  for (std::size_t i = 0; i < pair.stream_a.size(); ++i) {
    if (pair.stream_a[i] != pair.stream_b[i]) {
      if (pair.differ_at != 0) {
        throw DomainError("neighbor streams differ in more than one place");
      }
      pair.differ_at = static_cast<std::int64_t>(i + 1);
    }
  }
  if (pair.differ_at == 0) {
    throw DomainError("identical streams are not a neighbor pair");
  }
  return pair;
}

NeighborPair NeighborPair::replace(std::vector<Element> base,
                                   std::int64_t position,
                                   Element replacement) {
  if (position < 1 || position > static_cast<std::int64_t>(base.size())) {
    throw DomainError("replacement position out of range");
  }
  std::vector<Element> other = base;
  other[position - 1] = replacement;
  return make(std::move(base), std::move(other));
}

void NeighborPair::validate() const {
  NeighborPair check = make(stream_a, stream_b);
  if (check.differ_at != differ_at) {
    throw DomainError("differ_at does not match the streams");
  }
}

std::string_view to_string(AuditVerdict verdict) {
  switch (verdict) {
    case AuditVerdict::kPass:
      return "Pass";
    case AuditVerdict::kFail:
      return "Fail";
    case AuditVerdict::kInconclusive:
      return "Inconclusive";
  }
  return "Inconclusive";
}

void to_json(nlohmann::json& j, const AuditReport& report) {
  auto optional = [](const std::optional<double>& v) {
    return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
  };
  j = nlohmann::json{{"mechanism", report.mechanism},
                     {"claimed_epsilon", report.claimed_epsilon},
                     {"analytic_bound", optional(report.analytic_bound)},
                     {"empirical_lower_estimate",
                      optional(report.empirical_lower_estimate)},
                     {"slack", optional(report.slack)},
                     {"verdict", std::string(to_string(report.verdict))},
                     {"trials", report.trials},
                     {"confidence", report.confidence},
                     {"note", report.note}};
}

double laplace_state_ratio_bound(const NeighborPair& pair, std::int64_t t,
                                 double epsilon) {
  check_time(pair, t, epsilon);
  return pair.differ_at <= t ? epsilon : 0.0;
}

double laplace_state_l1_ratio_bound(const NeighborPair& pair, std::int64_t t,
                                    double epsilon) {
  check_time(pair, t, epsilon);
  if (pair.differ_at > t) return 0.0;
  std::map<Element, std::int64_t> delta;
  for (std::int64_t i = 0; i < t; ++i) {
    ++delta[pair.stream_a[i]];
    --delta[pair.stream_b[i]];
  }
  std::int64_t l1 = 0;
  for (const auto& [element, d] : delta) l1 += std::abs(d);
  return epsilon * static_cast<double>(l1);
}

double laplace_state_output_ratio_bound(const NeighborPair& pair,
                                        std::int64_t t, double epsilon) {
  check_time(pair, t, epsilon);
  // differ_at <= t: the state carries the ratio and the rest of the run
  //   is identical given the state.
  // differ_at > t: the states are identically distributed and the output
  //   carries the ratio.
  return epsilon;
}

double group_privacy_bound(double epsilon, std::int64_t hamming_distance) {
  if (!(epsilon > 0.0)) throw DomainError("epsilon must be positive");
  if (hamming_distance < 1) {
    throw DomainError("hamming distance must be at least 1");
  }
  return static_cast<double>(hamming_distance) * epsilon;
}

AuditReport empirical_epsilon(const DiscreteMechanism& mechanism,
                              const NeighborPair& pair, std::int64_t trials,
                              double confidence, double claimed_epsilon,
                              RngSeed seed,
                              const EmpiricalEpsilonOptions& options,
                              std::string mechanism_name) {
  pair.validate();
  if (!(confidence > 0.0 && confidence < 1.0)) {
    throw DomainError("confidence must lie in (0, 1)");
  }
  if (!(options.smoothing > 0.0) || options.bootstrap_resamples < 1) {
    throw DomainError("invalid empirical-epsilon options");
  }
  AuditReport report;
  report.mechanism = std::move(mechanism_name);
  report.claimed_epsilon = claimed_epsilon;
  report.trials = trials;
  report.confidence = confidence;
  report.note = "one-sided check: can refute a claimed epsilon, not certify it";
  if (trials < 100) {
    report.verdict = AuditVerdict::kInconclusive;
    report.note = "fewer than 100 trials per side";
    return report;
  }

  Observations obs;
  std::unordered_map<std::string, std::int32_t> index;
  auto record = [&](std::string key, std::vector<std::int32_t>& side) {
    auto [it, inserted] =
        index.try_emplace(std::move(key), static_cast<std::int32_t>(index.size()));
    side.push_back(it->second);
  };
  obs.side_a.reserve(trials);
  obs.side_b.reserve(trials);
  for (std::int64_t i = 0; i < trials; ++i) {
    Rng ra(seed.derive(0, static_cast<std::uint64_t>(i)));
    record(mechanism(pair.stream_a, ra), obs.side_a);
    Rng rb(seed.derive(1, static_cast<std::uint64_t>(i)));
    record(mechanism(pair.stream_b, rb), obs.side_b);
  }
  obs.cells = index.size();

  const auto ca = tally(obs.side_a, obs.cells);
  const auto cb = tally(obs.side_b, obs.cells);
  std::vector<bool> eligible(obs.cells);
  bool any = false;
  for (std::size_t i = 0; i < obs.cells; ++i) {
    eligible[i] = ca[i] + cb[i] >= options.min_cell_count;
    any = any || eligible[i];
  }
  if (!any) {
    report.verdict = AuditVerdict::kInconclusive;
    report.note = "no outcome reached the minimum cell count";
    return report;
  }
  const double n = static_cast<double>(trials);
  const std::vector<double> base =
      log_ratios(ca, cb, options.smoothing, n, n);
  double estimate = 0.0;
  for (std::size_t i = 0; i < obs.cells; ++i) {
    if (eligible[i]) estimate = std::max(estimate, std::abs(base[i]));
  }

  // Simultaneous band: the largest per-cell bootstrap deviation. With
  // probability about `confidence` every cell's true log ratio is within
  // `slack` of its estimate, so estimate - slack lower-bounds the true max.
  Rng boot(seed.derive(2));
  std::vector<double> replicates;
  replicates.reserve(options.bootstrap_resamples);
  std::vector<std::int32_t> resample(obs.side_a.size());
  for (int b = 0; b < options.bootstrap_resamples; ++b) {
    for (auto& o : resample) o = obs.side_a[boot.uniform_below(obs.side_a.size())];
    const auto ra = tally(resample, obs.cells);
    for (auto& o : resample) o = obs.side_b[boot.uniform_below(obs.side_b.size())];
    const auto rb = tally(resample, obs.cells);
    const std::vector<double> l = log_ratios(ra, rb, options.smoothing, n, n);
    double deviation = 0.0;
    for (std::size_t i = 0; i < obs.cells; ++i) {
      if (eligible[i]) deviation = std::max(deviation, std::abs(l[i] - base[i]));
    }
    replicates.push_back(deviation);
  }
  std::sort(replicates.begin(), replicates.end());
  const auto q = static_cast<std::size_t>(std::ceil(
      confidence * static_cast<double>(replicates.size())));
  const double slack = replicates[std::clamp<std::size_t>(
      q == 0 ? 0 : q - 1, 0, replicates.size() - 1)];

  report.empirical_lower_estimate = estimate;
  report.slack = slack;
  report.verdict = estimate > claimed_epsilon + slack ? AuditVerdict::kFail
                                                      : AuditVerdict::kPass;
  return report;
}

DiscreteMechanism randomized_response_mechanism(double epsilon) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw DomainError("epsilon must be positive and finite");
  }
  const double keep = 1.0 / (1.0 + std::exp(-epsilon));
  return [keep](std::span<const Element> stream, Rng& rng) {
    std::string out;
    out.reserve(stream.size());
    for (Element x : stream) {
      const bool bit = ((x % 2) + 2) % 2 == 1;
      out.push_back(rng.bernoulli(keep) == bit ? '1' : '0');
    }
    return out;
  };
}

DiscreteMechanism histogram_state_mechanism(const TesterConfig& config,
                                            std::int64_t t,
                                            std::vector<Element> bins,
                                            double bin_width) {
  config.validate();
  if (config.noiseless_debug) {
    throw ConfigError("noiseless_debug testers cannot be audited");
  }
  if (t < 0) throw DomainError("time must be non-negative");
  if (bins.empty()) {
    for (Element i = 0; i < config.k; ++i) bins.push_back(i);
  }
  for (Element b : bins) {
    if (b < 0 || b >= config.k) throw DomainError("audited bin outside the domain");
  }
  const double width = bin_width > 0.0 ? bin_width : 0.25 / config.epsilon;
  return [config, t, bins = std::move(bins), width](
             std::span<const Element> stream, Rng& rng) {
    if (t > static_cast<std::int64_t>(stream.size())) {
      throw DomainError("time exceeds the stream length");
    }
    TesterConfig run = config;
    run.seed = RngSeed{rng.next_u64(), rng.next_u64()};
    const auto length = static_cast<std::int64_t>(stream.size());
    SimplePanTester tester(run, std::max<std::int64_t>(length, 1));
    tester.start_with_sample_count(length);
    for (std::int64_t i = 0; i < t; ++i) tester.consume(stream[i]);
    const Eigen::VectorXd& state = testing::IntrusionHook::state(tester).bins;
    std::string key;
    for (Element b : bins) {
      key += std::to_string(
          static_cast<std::int64_t>(std::floor(state[b] / width)));
      key.push_back(',');
    }
    return key;
  };
}

DiscreteMechanism protocol_view_mechanism(
    PanProtocol protocol, std::set<std::int64_t> intrusion_times) {
  return [protocol = std::move(protocol),
          times = std::move(intrusion_times)](std::span<const Element> stream,
                                              Rng& rng) {
    RngCoins coins(rng);
    return view_key(protocol, stream, coins, times);
  };
}

double exact_max_log_ratio(const OutcomeDistribution& a,
                           const OutcomeDistribution& b) {
  double best = 0.0;
  for (const auto& [key, pa] : a) {
    auto it = b.find(key);
    if (it == b.end()) return std::numeric_limits<double>::infinity();
    best = std::max(best, std::abs(std::log(pa) - std::log(it->second)));
  }
  for (const auto& [key, pb] : b) {
    if (!a.contains(key)) return std::numeric_limits<double>::infinity();
  }
  return best;
}

double exact_view_epsilon(const PanProtocol& protocol, const NeighborPair& pair,
                          const std::set<std::int64_t>& intrusion_times) {
  pair.validate();
  auto dist = [&](const std::vector<Element>& stream) {
    return enumerate_distribution([&](CoinSource& coins) {
      return view_key(protocol, stream, coins, intrusion_times);
    });
  };
  return exact_max_log_ratio(dist(pair.stream_a), dist(pair.stream_b));
}

}  // namespace pantest
