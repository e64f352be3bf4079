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

// Test-only access to a tester's internal state. Reading the histogram
// mid-stream models an intrusion: what an adversary who breaches the
// tester's memory right after an update would observe.

#ifndef PANTEST_TESTING_INTRUSION_HPP_
#define PANTEST_TESTING_INTRUSION_HPP_

#include "pantest/testers.hpp"

namespace pantest::testing {

class IntrusionHook {
 public:
  static const NoisyHistogram& state(const SimplePanTester& tester) {
    return tester.histogram_;
  }
  static const NoiseRecord& noise(const SimplePanTester& tester) {
    return tester.noise_;
  }
};

}  // namespace pantest::testing

#endif  // PANTEST_TESTING_INTRUSION_HPP_
