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

#include "pantest/testers.hpp"

#include <cmath>
#include <string>

#include "pantest/errors.hpp"
#include "pantest/partition.hpp"
#include "pantest/statistic.hpp"

namespace pantest {
namespace {

constexpr std::uint64_t kTesterStreamTag = 0x53494D50;    // "SIMP"
constexpr std::uint64_t kPartitionStreamTag = 0x50415254; // "PART"
constexpr std::uint64_t kBaselineStreamTag = 0x43484932;  // "CHI2"

void require_phase(HistogramPhase actual, HistogramPhase expected,
                   const char* what) {
  if (actual != expected) {
    throw ContractViolation(std::string("SimplePanTester::") + what +
                            " called in the wrong phase");
  }
}

void check_element(Element x, std::int64_t k) {
  if (x < 0 || x >= k) {
    throw DomainError("stream element " + std::to_string(x) +
                      " outside [0, " + std::to_string(k) + ")");
  }
}

}  // namespace

void TesterConfig::validate() const {
  if (k < 2) throw ConfigError("k must be at least 2");
  if (!(alpha > 0.0 && alpha <= 1.0)) throw ConfigError("alpha must be in (0, 1]");
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw ConfigError("epsilon must be positive and finite");
  }
  if (!(distance_constant > 0.0)) {
    throw ConfigError("distance constant must be positive");
  }
}

std::string_view to_string(Verdict verdict) {
  return verdict == Verdict::kUniform ? "Uniform" : "NonUniform";
}

SimplePanTester::SimplePanTester(const TesterConfig& config, std::int64_t m,
                                 bool record_noise)
    : config_(config),
      m_(m),
      record_noise_(record_noise),
      rng_(config.seed.derive(kTesterStreamTag)) {
  config_.validate();
  if (m < 1) throw DomainError("sample size m must be positive");
  histogram_.bins = Eigen::VectorXd::Zero(config_.k);
}

void SimplePanTester::start() {
  require_phase(histogram_.phase, HistogramPhase::kPreStream, "start");
  begin(config_.noiseless_debug
            ? m_
            : poisson_sample(static_cast<double>(m_), rng_));
}

void SimplePanTester::start_with_sample_count(std::int64_t m_prime) {
  require_phase(histogram_.phase, HistogramPhase::kPreStream, "start");
  if (m_prime < 0) throw DomainError("m' must be non-negative");
  begin(m_prime);
}

void SimplePanTester::begin(std::int64_t m_prime) {
  const auto k = config_.k;
  target_samples_ = m_prime;
  if (!config_.noiseless_debug) {
    const auto scale = LaplaceScale::for_epsilon(config_.epsilon);
    for (Eigen::Index i = 0; i < k; ++i) {
      histogram_.bins[i] = laplace_sample(scale, rng_);
    }
  }
  if (record_noise_) {
    noise_.pre_stream = histogram_.bins;
    noise_.counts = Eigen::VectorXd::Zero(k);
  }
  histogram_.phase = HistogramPhase::kMidStream;
}

void SimplePanTester::consume(Element x) {
  require_phase(histogram_.phase, HistogramPhase::kMidStream, "consume");
  check_element(x, config_.k);
  if (consumed_ == target_samples_) {
    throw ContractViolation("SimplePanTester: more elements than m'");
  }
  histogram_.bins[x] += 1.0;
  if (record_noise_) noise_.counts[x] += 1.0;
  ++consumed_;
}

TestVerdict SimplePanTester::finalize() {
  require_phase(histogram_.phase, HistogramPhase::kMidStream, "finalize");
  if (consumed_ != target_samples_) {
    throw InputError("SimplePanTester: finalized after " +
                     std::to_string(consumed_) + " of " +
                     std::to_string(target_samples_) + " elements");
  }
  const auto k = config_.k;
  if (!config_.noiseless_debug) {
    const auto scale = LaplaceScale::for_epsilon(config_.epsilon);
    Eigen::VectorXd post(k);
    for (Eigen::Index i = 0; i < k; ++i) post[i] = laplace_sample(scale, rng_);
    histogram_.bins += post;
    if (record_noise_) noise_.post_stream = std::move(post);
  } else if (record_noise_) {
    noise_.post_stream = Eigen::VectorXd::Zero(k);
  }
  histogram_.phase = HistogramPhase::kFinalized;

  const double kd = static_cast<double>(k);
  const double md = static_cast<double>(m_);
  TestVerdict out;
  out.statistic = compute_statistic(histogram_.bins, m_);
  out.threshold = threshold_tu(kd, md, config_.alpha, config_.epsilon);
  out.verdict = decide(out.statistic, out.threshold);
  out.samples_consumed = consumed_;
  out.domain_size = k;
  out.effective_alpha = config_.alpha;
  out.far_threshold = threshold_talpha(kd, md, config_.alpha, config_.epsilon);
  return out;
}

TestVerdict simple_pan_test(ElementStream& stream, const TesterConfig& config,
                            std::int64_t m) {
  SimplePanTester tester(config, m);
  tester.start();
  for (std::int64_t t = 0; t < tester.target_samples(); ++t) {
    const auto x = stream.next();
    if (!x) {
      throw InputError("stream exhausted after " + std::to_string(t) + " of " +
                       std::to_string(tester.target_samples()) + " elements");
    }
    tester.consume(*x);
  }
  return tester.finalize();
}

std::int64_t select_partition_count(std::int64_t k, double alpha,
                                    double epsilon) {
  const double ratio = std::pow(static_cast<double>(k), 2.0 / 3.0) *
                       std::pow(epsilon, 4.0 / 3.0) /
                       std::pow(alpha, 4.0 / 3.0);
  if (ratio < 2.0) return 2;
  if (ratio > static_cast<double>(k)) return k;
  return static_cast<std::int64_t>(std::floor(ratio));
}

double effective_alpha(std::int64_t k, std::int64_t n, double alpha,
                       double distance_constant) {
  if (n == k) return alpha;
  return distance_constant * alpha *
         std::sqrt(static_cast<double>(n) / static_cast<double>(k));
}

TestVerdict pan_test(ElementStream& stream, const TesterConfig& config,
                     std::int64_t m) {
  config.validate();
  const std::int64_t n =
      select_partition_count(config.k, config.alpha, config.epsilon);
  Rng partition_rng(config.seed.derive(kPartitionStreamTag));
  const PartitionPlan plan = random_partition(config.k, n, partition_rng);

  TesterConfig inner = config;
  inner.k = n;
  inner.alpha =
      effective_alpha(config.k, n, config.alpha, config.distance_constant);
  const std::int64_t k = config.k;
  MappedStream grouped(stream, [&plan, k](Element x) {
    check_element(x, k);
    return plan.group_of[static_cast<std::size_t>(x)];
  });
  return simple_pan_test(grouped, inner, m);
}

TestVerdict nonprivate_chi2_test(ElementStream& stream, std::int64_t k,
                                 double alpha, std::int64_t m, RngSeed seed,
                                 bool poissonize) {
  if (k < 1) throw DomainError("k must be positive");
  if (m < 1) throw DomainError("sample size m must be positive");
  if (!(alpha > 0.0 && alpha <= 1.0)) throw DomainError("alpha must be in (0, 1]");
  Rng rng(seed.derive(kBaselineStreamTag));
  const std::int64_t target =
      poissonize ? poisson_sample(static_cast<double>(m), rng) : m;
  Eigen::VectorXd counts = Eigen::VectorXd::Zero(k);
  for (std::int64_t t = 0; t < target; ++t) {
    const auto x = stream.next();
    if (!x) {
      throw InputError("stream exhausted after " + std::to_string(t) + " of " +
                       std::to_string(target) + " elements");
    }
    check_element(*x, k);
    counts[*x] += 1.0;
  }
  TestVerdict out;
  out.statistic = compute_statistic(counts, m);
  out.threshold = threshold_chi2(static_cast<double>(m), alpha);
  out.verdict = decide(out.statistic, out.threshold);
  out.samples_consumed = target;
  out.domain_size = k;
  out.effective_alpha = alpha;
  out.far_threshold = out.threshold;
  return out;
}

}  // namespace pantest
