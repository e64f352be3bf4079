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

// Pan-private uniformity testers.
//
// SimplePanTester is a single-pass state machine over a noisy histogram:
// Laplace(1/eps) noise is added to every bin before the stream, each element
// increments its bin, and a second layer of noise is added after the stream.
// The finalized histogram is scored with compute_statistic and compared
// against threshold_tu. pan_test runs the same tester over a random
// coarsening of the domain.

#ifndef PANTEST_TESTERS_HPP_
#define PANTEST_TESTERS_HPP_

#include <cstdint>
#include <string_view>

#include <Eigen/Core>

#include "pantest/random.hpp"
#include "pantest/stream.hpp"

namespace pantest {

namespace testing {
class IntrusionHook;
}  // namespace testing

// Default c_d: the effective distance over [n] is c_d * alpha * sqrt(n / k).
inline const double kDefaultDistanceConstant = 1.0 / (477.0 * 3.1622776601683795);

struct TesterConfig {
  std::int64_t k = 2;
  double alpha = 0.5;
  double epsilon = 1.0;
  RngSeed seed{};
  // No Laplace noise and m' = m. For analytic tests only; never audited.
  bool noiseless_debug = false;
  double distance_constant = kDefaultDistanceConstant;

  // Throws ConfigError unless k >= 2, 0 < alpha <= 1, epsilon > 0 and
  // distance_constant > 0.
  void validate() const;
};

enum class Verdict { kUniform, kNonUniform };

std::string_view to_string(Verdict verdict);

struct TestVerdict {
  Verdict verdict = Verdict::kUniform;
  double statistic = 0.0;
  double threshold = 0.0;
  std::int64_t samples_consumed = 0;

  // Diagnostics: bins the statistic was computed over, the distance used in
  // the threshold, and the far-side threshold (not used for the decision).
  std::int64_t domain_size = 0;
  double effective_alpha = 0.0;
  double far_threshold = 0.0;
};

// Strict comparison: a tie goes to Uniform.
inline Verdict decide(double statistic, double threshold) {
  return statistic > threshold ? Verdict::kNonUniform : Verdict::kUniform;
}

enum class HistogramPhase { kPreStream, kMidStream, kFinalized };

struct NoisyHistogram {
  Eigen::VectorXd bins;
  HistogramPhase phase = HistogramPhase::kPreStream;
};

// Noise layers and true counts, kept only when requested at construction.
struct NoiseRecord {
  Eigen::VectorXd pre_stream;
  Eigen::VectorXd post_stream;
  Eigen::VectorXd counts;
};

class SimplePanTester {
 public:
  SimplePanTester(const TesterConfig& config, std::int64_t m,
                  bool record_noise = false);

  // PreStream -> MidStream: draws m' ~ Poisson(m) and the first noise layer.
  void start();
  // As start(), but with m' fixed by the caller instead of drawn, i.e.
  // conditioned on the Poisson draw. The audit uses this to hold a neighbor
  // pair's streams fixed.
  void start_with_sample_count(std::int64_t m_prime);

  // Number of elements the tester will read (m'); valid after start().
  std::int64_t target_samples() const { return target_samples_; }
  std::int64_t consumed() const { return consumed_; }

  // One atomic update. Elements must lie in [0, k).
  void consume(Element x);

  // MidStream -> Finalized: second noise layer, statistic, verdict.
  TestVerdict finalize();

  HistogramPhase phase() const { return histogram_.phase; }
  const TesterConfig& config() const { return config_; }

 private:
  friend class testing::IntrusionHook;

  void begin(std::int64_t m_prime);

  TesterConfig config_;
  std::int64_t m_;
  bool record_noise_;
  Rng rng_;
  NoisyHistogram histogram_;
  NoiseRecord noise_;
  std::int64_t target_samples_ = 0;
  std::int64_t consumed_ = 0;
};

// Runs SimplePanTester over `stream`. Throws InputError if the stream holds
// fewer than m' elements.
TestVerdict simple_pan_test(ElementStream& stream, const TesterConfig& config,
                            std::int64_t m);

// Number of groups: 2 when k^(2/3) eps^(4/3) / alpha^(4/3) < 2, k when the
// ratio exceeds k, and floor(ratio) otherwise.
std::int64_t select_partition_count(std::int64_t k, double alpha,
                                    double epsilon);

// Distance handed to the inner tester over [n]. Equal to alpha when n == k
// (the partition is a relabeling), else c_d * alpha * sqrt(n / k).
double effective_alpha(std::int64_t k, std::int64_t n, double alpha,
                       double distance_constant);

TestVerdict pan_test(ElementStream& stream, const TesterConfig& config,
                     std::int64_t m);

// Noiseless chi-square baseline with threshold alpha^2 m / 10. Reads
// Poisson(m) elements, or exactly m when `poissonize` is false.
TestVerdict nonprivate_chi2_test(ElementStream& stream, std::int64_t k,
                                 double alpha, std::int64_t m, RngSeed seed,
                                 bool poissonize = true);

}  // namespace pantest

#endif  // PANTEST_TESTERS_HPP_
