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

// Privacy checks: closed-form density-ratio bounds for the Laplace histogram
// state, group privacy, and a Monte-Carlo epsilon estimator for mechanisms
// with discrete (or discretized) outputs.
//
// The estimator is one-sided. It can refute a claimed epsilon but can never
// certify one.

#ifndef PANTEST_AUDIT_HPP_
#define PANTEST_AUDIT_HPP_

#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "pantest/bridge.hpp"
#include "pantest/distribution.hpp"
#include "pantest/random.hpp"
#include "pantest/testers.hpp"

namespace pantest {

// Two equal-length streams that differ in exactly one position. differ_at is
// 1-based: the time step at which the differing element is read.
struct NeighborPair {
  std::vector<Element> stream_a;
  std::vector<Element> stream_b;
  std::int64_t differ_at = 0;

  // Throws DomainError unless a and b are neighbors.
  static NeighborPair make(std::vector<Element> a, std::vector<Element> b);
  static NeighborPair replace(std::vector<Element> base,
                              std::int64_t position, Element replacement);

  std::int64_t length() const {
    return static_cast<std::int64_t>(stream_a.size());
  }
  void validate() const;
};

enum class AuditVerdict { kPass, kFail, kInconclusive };

std::string_view to_string(AuditVerdict verdict);

struct AuditReport {
  std::string mechanism;
  double claimed_epsilon = 0.0;
  std::optional<double> analytic_bound;
  std::optional<double> empirical_lower_estimate;
  std::optional<double> slack;
  AuditVerdict verdict = AuditVerdict::kInconclusive;
  std::int64_t trials = 0;
  double confidence = 0.0;
  std::string note;
};

void to_json(nlohmann::json& j, const AuditReport& report);

// Supremum over states of the log-density ratio of any single bin of the
// time-t Laplace histogram under the two streams: 0 when differ_at > t and
// epsilon otherwise. Throws DomainError for t outside [0, length] or
// epsilon <= 0.
double laplace_state_ratio_bound(const NeighborPair& pair, std::int64_t t,
                                 double epsilon);

// Same ratio for the whole histogram vector: epsilon times the L1 distance
// between the two count vectors, which is 2 * epsilon once a replaced
// element has been read.
double laplace_state_l1_ratio_bound(const NeighborPair& pair, std::int64_t t,
                                    double epsilon);

// Joint (state at t, final output), per bin. Exactly one of the two factors
// (state before or after the differing element) differs between the
// streams, so the bound is epsilon for every valid t.
double laplace_state_output_ratio_bound(const NeighborPair& pair,
                                        std::int64_t t, double epsilon);

// hamming_distance * epsilon. Throws DomainError unless epsilon > 0 and
// hamming_distance >= 1.
double group_privacy_bound(double epsilon, std::int64_t hamming_distance);

// A randomized map from a stream to a discrete outcome key.
using DiscreteMechanism =
    std::function<std::string(std::span<const Element>, Rng&)>;

struct EmpiricalEpsilonOptions {
  double smoothing = 1.0;
  int bootstrap_resamples = 200;
  // Cells observed fewer times than this (both sides pooled) are ignored.
  std::int64_t min_cell_count = 100;
};

// Estimates max over outcomes of |log(P_a / P_b)| from `trials` runs per
// side with add-one smoothed frequencies. slack is the `confidence`
// quantile of the bootstrap distribution of the largest per-cell deviation
// of the log ratio, so estimate - slack is a simultaneous lower confidence
// bound; the verdict is Fail iff estimate > claimed + slack. Inconclusive
// with fewer than 100 trials or no cell reaching min_cell_count.
AuditReport empirical_epsilon(const DiscreteMechanism& mechanism,
                              const NeighborPair& pair, std::int64_t trials,
                              double confidence, double claimed_epsilon,
                              RngSeed seed,
                              const EmpiricalEpsilonOptions& options = {},
                              std::string mechanism_name = "mechanism");

// Epsilon-randomized response applied to every element's parity.
DiscreteMechanism randomized_response_mechanism(double epsilon);

// SimplePanTester's histogram right after element t (m' conditioned to the
// stream length), each bin floored to a multiple of bin_width (default
// 0.25 / epsilon). Only `bins` are reported; empty means all. Throws
// ConfigError for a noiseless_debug config.
DiscreteMechanism histogram_state_mechanism(const TesterConfig& config,
                                            std::int64_t t,
                                            std::vector<Element> bins = {},
                                            double bin_width = 0.0);

// The intruder's view of a pan protocol: states at the intrusion times plus
// the final output, encoded as one ConcatState.
DiscreteMechanism protocol_view_mechanism(
    PanProtocol protocol, std::set<std::int64_t> intrusion_times);

// max |log(a(x) / b(x))| over the union of supports; +infinity when the
// supports differ.
double exact_max_log_ratio(const OutcomeDistribution& a,
                           const OutcomeDistribution& b);

// Exact epsilon of protocol_view_mechanism by coin enumeration.
double exact_view_epsilon(const PanProtocol& protocol, const NeighborPair& pair,
                          const std::set<std::int64_t>& intrusion_times);

}  // namespace pantest

#endif  // PANTEST_AUDIT_HPP_
