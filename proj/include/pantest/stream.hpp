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

// Once-consumable element streams. Testers read elements one at a time and
// cannot rewind, matching the single-pass streaming model.

#ifndef PANTEST_STREAM_HPP_
#define PANTEST_STREAM_HPP_

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "pantest/distribution.hpp"
#include "pantest/random.hpp"

namespace pantest {

class ElementStream {
 public:
  ElementStream() = default;
  ElementStream(const ElementStream&) = delete;
  ElementStream& operator=(const ElementStream&) = delete;
  virtual ~ElementStream() = default;

  // Next element, or nullopt once the stream is exhausted.
  virtual std::optional<Element> next() = 0;
};

// `count` i.i.d. draws from a distribution, generated lazily.
class SampledStream final : public ElementStream {
 public:
  SampledStream(const DiscreteDistribution& p, std::int64_t count,
                RngSeed seed);

  std::optional<Element> next() override;
  std::int64_t remaining() const { return remaining_; }

 private:
  AliasSampler sampler_;
  Rng rng_;
  std::int64_t remaining_;
};

class VectorStream final : public ElementStream {
 public:
  explicit VectorStream(std::vector<Element> elements)
      : elements_(std::move(elements)) {}

  std::optional<Element> next() override {
    if (pos_ == elements_.size()) return std::nullopt;
    return elements_[pos_++];
  }

 private:
  std::vector<Element> elements_;
  std::size_t pos_ = 0;
};

// Applies `map` to every element of an underlying stream (used to relabel
// elements by partition group).
class MappedStream final : public ElementStream {
 public:
  MappedStream(ElementStream& source, std::function<Element(Element)> map)
      : source_(source), map_(std::move(map)) {}

  std::optional<Element> next() override {
    auto x = source_.next();
    if (!x) return std::nullopt;
    return map_(*x);
  }

 private:
  ElementStream& source_;
  std::function<Element(Element)> map_;
};

SampledStream sample_stream(const DiscreteDistribution& p, std::int64_t count,
                            RngSeed seed);

// Number of elements the harness makes available for a tester drawing
// Poisson(m) samples: ceil(m + 6 sqrt(m) + 10).
std::int64_t poissonized_stream_length(std::int64_t m);

}  // namespace pantest

#endif  // PANTEST_STREAM_HPP_
