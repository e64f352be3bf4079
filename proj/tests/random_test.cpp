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
#include <cstdint>
#include <limits>
#include <vector>

#include <boost/math/distributions/poisson.hpp>
#include <gtest/gtest.h>

#include "pantest/errors.hpp"

namespace pantest {
namespace {

TEST(RngTest, SameSeedSameSequence) {
  Rng a(RngSeed{42, 7});
  Rng b(RngSeed{42, 7});
  for (int i = 0; i < 1000; ++i) ASSERT_EQ(a.next_u64(), b.next_u64());
}

TEST(RngTest, DistinctStreamsLookIndependent) {
  Rng a(RngSeed{42, 0});
  Rng b(RngSeed{42, 1});
  const int n = 100000;
  double sa = 0, sb = 0, sab = 0, saa = 0, sbb = 0;
  for (int i = 0; i < n; ++i) {
    const double x = a.uniform01();
    const double y = b.uniform01();
    sa += x;
    sb += y;
    sab += x * y;
    saa += x * x;
    sbb += y * y;
  }
  const double cov = sab / n - (sa / n) * (sb / n);
  const double corr = cov / std::sqrt((saa / n - (sa / n) * (sa / n)) *
                                      (sbb / n - (sb / n) * (sb / n)));
  EXPECT_NEAR(corr, 0.0, 0.01);
}

TEST(RngTest, DeriveIsDeterministicAndTagSensitive) {
  const RngSeed s{9, 0};
  EXPECT_EQ(s.derive(3), s.derive(3));
  EXPECT_FALSE(s.derive(3) == s.derive(4));
  EXPECT_FALSE(s.derive(1, 2) == s.derive(2, 1));
}

TEST(RngTest, Uniform01IsOpenInterval) {
  Rng rng(RngSeed{1, 0});
  for (int i = 0; i < 100000; ++i) {
    const double u = rng.uniform01();
    ASSERT_GT(u, 0.0);
    ASSERT_LT(u, 1.0);
  }
}

TEST(RngTest, UniformBelowCoversRangeEvenly) {
  Rng rng(RngSeed{2, 0});
  std::vector<int> counts(7, 0);
  const int n = 70000;
  for (int i = 0; i < n; ++i) {
    const auto v = rng.uniform_below(7);
    ASSERT_LT(v, 7u);
    ++counts[v];
  }
  for (int c : counts) EXPECT_NEAR(c / double(n), 1.0 / 7.0, 0.01);
}

TEST(LaplaceTest, MedianAndEndpoints) {
  const LaplaceScale one(1.0);
  EXPECT_EQ(laplace_from_uniform(one, 0.5), 0.0);
  EXPECT_TRUE(std::isfinite(laplace_from_uniform(one, 0.0)));
  EXPECT_TRUE(std::isfinite(laplace_from_uniform(one, 1.0)));
  EXPECT_LT(laplace_from_uniform(one, 0.25), 0.0);
  EXPECT_NEAR(laplace_from_uniform(one, 0.25), -laplace_from_uniform(one, 0.75),
              1e-15);
  EXPECT_NEAR(laplace_from_uniform(LaplaceScale(2.0), 0.25), 2.0 * std::log(0.5),
              1e-15);
}

TEST(LaplaceTest, ScaleValidation) {
  EXPECT_THROW(LaplaceScale(0.0), DomainError);
  EXPECT_THROW(LaplaceScale(-1.0), DomainError);
  EXPECT_THROW(LaplaceScale(std::numeric_limits<double>::infinity()),
               DomainError);
  EXPECT_DOUBLE_EQ(LaplaceScale::for_epsilon(0.5).value(), 2.0);
}

TEST(LaplaceTest, MomentsOfAMillionDraws) {
  Rng rng(RngSeed{3, 0});
  const LaplaceScale one(1.0);
  const int n = 1000000;
  double sum = 0, sum2 = 0;
  for (int i = 0; i < n; ++i) {
    const double x = laplace_sample(one, rng);
    sum += x;
    sum2 += x * x;
  }
  const double mean = sum / n;
  EXPECT_NEAR(mean, 0.0, 0.01);
  EXPECT_NEAR(sum2 / n - mean * mean, 2.0, 0.02);
}

TEST(LaplaceTest, UnitShiftLogRatioBoundedByInverseScale) {
  for (double b : {0.5, 1.0, 4.0}) {
    const LaplaceScale scale(b);
    for (double x = -10.0; x <= 10.0; x += 0.01) {
      const double r =
          laplace_log_density(scale, x) - laplace_log_density(scale, x - 1.0);
      ASSERT_LE(std::abs(r), 1.0 / b + 1e-12) << "x=" << x;
    }
    // Attained away from the kink.
    EXPECT_NEAR(laplace_log_density(scale, -3.0) -
                    laplace_log_density(scale, -4.0),
                1.0 / b, 1e-12);
  }
}

TEST(PoissonTest, ZeroMeanAndErrors) {
  Rng rng(RngSeed{4, 0});
  EXPECT_EQ(poisson_sample(0.0, rng), 0);
  EXPECT_THROW(poisson_sample(-1.0, rng), DomainError);
  EXPECT_THROW(poisson_sample(std::numeric_limits<double>::quiet_NaN(), rng),
               DomainError);
}

TEST(PoissonTest, MomentsAtMeanHundred) {
  Rng rng(RngSeed{5, 0});
  const int n = 100000;
  double sum = 0, sum2 = 0;
  for (int i = 0; i < n; ++i) {
    const double x = static_cast<double>(poisson_sample(100.0, rng));
    sum += x;
    sum2 += x * x;
  }
  const double mean = sum / n;
  EXPECT_NEAR(mean, 100.0, 1.0);
  EXPECT_NEAR(sum2 / n - mean * mean, 100.0, 3.0);
}

// Both samplers (inversion below 30, rejection above) against the pmf.
TEST(PoissonTest, FrequenciesMatchPmf) {
  for (double mean : {3.5, 29.0, 31.0, 250.0}) {
    Rng rng(RngSeed{6, static_cast<std::uint64_t>(mean)});
    const int n = 200000;
    std::vector<int> counts(static_cast<std::size_t>(mean * 4 + 40), 0);
    for (int i = 0; i < n; ++i) {
      const auto x = poisson_sample(mean, rng);
      ASSERT_GE(x, 0);
      if (static_cast<std::size_t>(x) < counts.size()) ++counts[x];
    }
    boost::math::poisson_distribution<double> oracle(mean);
    for (std::size_t x = 0; x < counts.size(); ++x) {
      const double p = boost::math::pdf(oracle, static_cast<double>(x));
      const double se = std::sqrt(p * (1 - p) / n);
      ASSERT_NEAR(counts[x] / double(n), p, 5 * se + 1e-4)
          << "mean=" << mean << " x=" << x;
    }
  }
}

}  // namespace
}  // namespace pantest
