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

#include "pantest/stream.hpp"

#include <cmath>

#include "pantest/errors.hpp"

namespace pantest {

SampledStream::SampledStream(const DiscreteDistribution& p, std::int64_t count,
                             RngSeed seed)
    : sampler_(p), rng_(seed), remaining_(count) {
  if (count < 0) throw DomainError("sample_stream: negative count");
}

std::optional<Element> SampledStream::next() {
  if (remaining_ == 0) return std::nullopt;
  --remaining_;
  return sampler_(rng_);
}

SampledStream sample_stream(const DiscreteDistribution& p, std::int64_t count,
                            RngSeed seed) {
  return SampledStream(p, count, seed);
}

std::int64_t poissonized_stream_length(std::int64_t m) {
  const double md = static_cast<double>(m);
  return static_cast<std::int64_t>(std::ceil(md + 6.0 * std::sqrt(md) + 10.0));
}

}  // namespace pantest
