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

// Seeded, splittable randomness plus the two scalar samplers the testers
// need (Laplace noise and Poisson sample sizes).
//
// Every random quantity in the library is drawn from an `Rng` built from an
// `RngSeed`. The generator is counter based (Philox4x32-10), so a
// (seed, stream_id) pair fully determines the sequence and sub-streams can be
// derived without coordination between threads.

#ifndef PANTEST_RANDOM_HPP_
#define PANTEST_RANDOM_HPP_

#include <array>
#include <cstdint>
#include <limits>

namespace pantest {

struct RngSeed {
  std::uint64_t seed = 0;
  std::uint64_t stream_id = 0;

  // Deterministic child sub-stream. Distinct tags give (with overwhelming
  // probability) disjoint, independent sequences.
  RngSeed derive(std::uint64_t tag) const;
  RngSeed derive(std::uint64_t tag_a, std::uint64_t tag_b) const {
    return derive(tag_a).derive(tag_b);
  }

  friend bool operator==(const RngSeed&, const RngSeed&) = default;
};

std::uint64_t splitmix64(std::uint64_t x);

// Philox4x32-10 keyed by `seed`, with `stream_id` in the upper half of the
// counter. Models UniformRandomBitGenerator.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(RngSeed seed);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }
  result_type operator()() { return next_u64(); }

  std::uint64_t next_u64();

  // Uniform on the open interval (0, 1); never returns exactly 0 or 1.
  double uniform01();

  // Uniform integer in [0, bound); bound must be positive.
  std::uint64_t uniform_below(std::uint64_t bound);

  bool bernoulli(double p) { return uniform01() < p; }

  RngSeed seed() const { return seed_; }

 private:
  void refill();

  RngSeed seed_;
  std::uint64_t block_ = 0;
  std::array<std::uint64_t, 2> buffer_{};
  int buffered_ = 0;
};

// Source of biased coin flips. Protocols in the model bridge draw all their
// randomness through this interface so that their output distributions can
// be enumerated exactly as well as sampled.
class CoinSource {
 public:
  virtual ~CoinSource() = default;
  // Returns true with probability p.
  virtual bool flip(double p) = 0;
};

class RngCoins final : public CoinSource {
 public:
  explicit RngCoins(Rng& rng) : rng_(rng) {}
  bool flip(double p) override { return rng_.bernoulli(p); }

 private:
  Rng& rng_;
};

// Scale b of a zero-centred Laplace distribution, density exp(-|x|/b)/(2b).
class LaplaceScale {
 public:
  explicit LaplaceScale(double scale);
  static LaplaceScale for_epsilon(double epsilon) {
    return LaplaceScale(1.0 / epsilon);
  }
  double value() const { return scale_; }

 private:
  double scale_;
};

// Inverse CDF of Lap(b) at u in (0, 1). u is clamped into
// [eps, 1 - eps] so the result is always finite.
double laplace_from_uniform(LaplaceScale scale, double u);

double laplace_sample(LaplaceScale scale, Rng& rng);

double laplace_log_density(LaplaceScale scale, double x);

// One Poisson(mean) draw: sequential-search inversion for mean < 30 and
// PTRS transformed rejection above. mean must be finite and >= 0.
std::int64_t poisson_sample(double mean, Rng& rng);

}  // namespace pantest

#endif  // PANTEST_RANDOM_HPP_
