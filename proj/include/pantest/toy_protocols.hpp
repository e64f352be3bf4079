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

// The fixed toy protocol corpus used to exercise the bridge and the audit.
// All protocols read elements of the binary alphabet {0, 1}; other values
// are reduced mod 2.

#ifndef PANTEST_TOY_PROTOCOLS_HPP_
#define PANTEST_TOY_PROTOCOLS_HPP_

#include <vector>

#include "pantest/bridge.hpp"

namespace pantest {

// Probability that epsilon-randomized response reports its true bit.
double randomized_response_keep(double epsilon);

// Deterministic running parity; state "0" or "1", output = state. Not
// private (declared epsilon is +infinity).
PanProtocol parity_counter();

// Running sum of epsilon-randomized-response bits, as a decimal string.
PanProtocol randomized_response_sum(double epsilon);

// Two rounds: the first element's randomized bit fixes a mode; every later
// element is reported (randomized) as-is in mode 1 and complemented in mode
// 0. State = mode digit followed by the last reported bit.
PanProtocol adaptive_chooser(double epsilon);

std::vector<PanProtocol> toy_pan_protocols(double epsilon);

// Locally private counterparts: one epsilon-RR randomizer per element, and
// the adaptive version whose randomizer choice depends on the first message.
LocalProtocol randomized_response_local(double epsilon);
LocalProtocol adaptive_chooser_local(double epsilon);

std::vector<LocalProtocol> toy_local_protocols(double epsilon);

}  // namespace pantest

#endif  // PANTEST_TOY_PROTOCOLS_HPP_
