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

#include "pantest/random.hpp"

#include <cmath>

#include "pantest/errors.hpp"

namespace pantest {
namespace {

constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9u;
constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi,
                    std::uint32_t& lo) {
  const std::uint64_t product = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(product >> 32);
  lo = static_cast<std::uint32_t>(product);
}

std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> ctr,
                                           std::array<std::uint32_t, 2> key) {
  for (int round = 0; round < 10; ++round) {
    std::uint32_t hi0, lo0, hi1, lo1;
    mulhilo(kPhiloxM0, ctr[0], hi0, lo0);
    mulhilo(kPhiloxM1, ctr[2], hi1, lo1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    key[0] += kPhiloxW0;
    key[1] += kPhiloxW1;
  }
  return ctr;
}

constexpr double kPoissonInversionLimit = 30.0;

std::int64_t poisson_inversion(double mean, Rng& rng) {
  const double u = rng.uniform01();
  double term = std::exp(-mean);
  double cdf = term;
  std::int64_t x = 0;
  // The tail beyond mean + 40 sqrt(mean) + 40 has mass far below 2^-53.
  const std::int64_t limit =
      static_cast<std::int64_t>(mean + 40.0 * std::sqrt(mean) + 40.0);
  while (u > cdf && x < limit) {
    ++x;
    term *= mean / static_cast<double>(x);
    cdf += term;
  }
  return x;
}

// Hormann (1993), "The transformed rejection method for generating Poisson
// random variables".
std::int64_t poisson_ptrs(double mean, Rng& rng) {
  const double slam = std::sqrt(mean);
  const double loglam = std::log(mean);
  const double b = 0.931 + 2.53 * slam;
  const double a = -0.059 + 0.02483 * b;
  const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
  const double vr = 0.9277 - 3.6224 / (b - 2.0);
  while (true) {
    const double u = rng.uniform01() - 0.5;
    const double v = rng.uniform01();
    const double us = 0.5 - std::fabs(u);
    const double k = std::floor((2.0 * a / us + b) * u + mean + 0.43);
    if (us >= 0.07 && v <= vr) return static_cast<std::int64_t>(k);
    if (k < 0.0 || (us < 0.013 && v > us)) continue;
    if (std::log(v) + std::log(inv_alpha) - std::log(a / (us * us) + b) <=
        -mean + k * loglam - std::lgamma(k + 1.0)) {
      return static_cast<std::int64_t>(k);
    }
  }
}

}  // namespace

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

RngSeed RngSeed::derive(std::uint64_t tag) const {
  const std::uint64_t child =
      splitmix64(splitmix64(stream_id) ^ splitmix64(tag ^ 0xA0761D6478BD642Full));
  return RngSeed{seed, child};
}

Rng::Rng(RngSeed seed) : seed_(seed) {}

void Rng::refill() {
  const std::array<std::uint32_t, 4> ctr = {
      static_cast<std::uint32_t>(block_), static_cast<std::uint32_t>(block_ >> 32),
      static_cast<std::uint32_t>(seed_.stream_id),
      static_cast<std::uint32_t>(seed_.stream_id >> 32)};
  const std::array<std::uint32_t, 2> key = {
      static_cast<std::uint32_t>(seed_.seed),
      static_cast<std::uint32_t>(seed_.seed >> 32)};
  const auto out = philox4x32_10(ctr, key);
  buffer_[0] = (static_cast<std::uint64_t>(out[1]) << 32) | out[0];
  buffer_[1] = (static_cast<std::uint64_t>(out[3]) << 32) | out[2];
  buffered_ = 2;
  ++block_;
}

std::uint64_t Rng::next_u64() {
  if (buffered_ == 0) refill();
  return buffer_[2 - buffered_--];
}

double Rng::uniform01() {
  // 53 random bits, offset by half an ulp: the result lies in (0, 1).
  return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

std::uint64_t Rng::uniform_below(std::uint64_t bound) {
  if (bound == 0) throw DomainError("uniform_below: bound must be positive");
  // Lemire's nearly-divisionless rejection.
  std::uint64_t x = next_u64();
  __uint128_t product = static_cast<__uint128_t>(x) * bound;
  std::uint64_t low = static_cast<std::uint64_t>(product);
  if (low < bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    while (low < threshold) {
      x = next_u64();
      product = static_cast<__uint128_t>(x) * bound;
      low = static_cast<std::uint64_t>(product);
    }
  }
  return static_cast<std::uint64_t>(product >> 64);
}

LaplaceScale::LaplaceScale(double scale) : scale_(scale) {
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    throw DomainError("Laplace scale must be positive and finite");
  }
}

double laplace_from_uniform(LaplaceScale scale, double u) {
  constexpr double kEps = std::numeric_limits<double>::epsilon();
  u = std::fmin(std::fmax(u, kEps), 1.0 - kEps);
  const double b = scale.value();
  if (u < 0.5) return b * std::log(2.0 * u);
  return -b * std::log(2.0 * (1.0 - u));
}

double laplace_sample(LaplaceScale scale, Rng& rng) {
  return laplace_from_uniform(scale, rng.uniform01());
}

double laplace_log_density(LaplaceScale scale, double x) {
  const double b = scale.value();
  return -std::fabs(x) / b - std::log(2.0 * b);
}

std::int64_t poisson_sample(double mean, Rng& rng) {
  if (!(mean >= 0.0) || !std::isfinite(mean)) {
    throw DomainError("Poisson mean must be finite and non-negative");
  }
  if (mean == 0.0) return 0;
  if (mean < kPoissonInversionLimit) return poisson_inversion(mean, rng);
  return poisson_ptrs(mean, rng);
}

}  // namespace pantest
