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

#include "pantest/toy_protocols.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "pantest/errors.hpp"

namespace pantest {
namespace {

int bit_of(Element x) { return static_cast<int>(((x % 2) + 2) % 2); }

int randomize(int bit, double keep, CoinSource& coins) {
  return coins.flip(keep) ? bit : 1 - bit;
}

void check_epsilon(double epsilon) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw DomainError("toy protocol epsilon must be positive and finite");
  }
}

}  // namespace

double randomized_response_keep(double epsilon) {
  check_epsilon(epsilon);
  return 1.0 / (1.0 + std::exp(-epsilon));
}

PanProtocol parity_counter() {
  PanProtocol p;
  p.name = "parity_counter";
  p.epsilon = std::numeric_limits<double>::infinity();
  p.initial_state = "0";
  p.internal_step = [](const State& state, Element x, CoinSource&) -> State {
    return ((state == "1") != (bit_of(x) == 1)) ? "1" : "0";
  };
  p.output_step = [](const State& state, CoinSource&) { return state; };
  return p;
}

PanProtocol randomized_response_sum(double epsilon) {
  const double keep = randomized_response_keep(epsilon);
  PanProtocol p;
  p.name = "randomized_response_sum";
  p.epsilon = epsilon;
  p.initial_state = "0";
  p.internal_step = [keep](const State& state, Element x,
                           CoinSource& coins) -> State {
    return std::to_string(std::stoll(state) +
                          randomize(bit_of(x), keep, coins));
  };
  p.output_step = [](const State& state, CoinSource&) { return state; };
  return p;
}

PanProtocol adaptive_chooser(double epsilon) {
  const double keep = randomized_response_keep(epsilon);
  PanProtocol p;
  p.name = "adaptive_chooser";
  p.epsilon = epsilon;
  p.initial_state = "";
  p.internal_step = [keep](const State& state, Element x,
                           CoinSource& coins) -> State {
    if (state.empty()) {
      const int mode = randomize(bit_of(x), keep, coins);
      return std::to_string(mode) + std::to_string(mode);
    }
    const int mode = state[0] - '0';
    const int reported = mode == 1 ? bit_of(x) : 1 - bit_of(x);
    return state.substr(0, 1) + std::to_string(randomize(reported, keep, coins));
  };
  p.output_step = [](const State& state, CoinSource&) { return state; };
  return p;
}

std::vector<PanProtocol> toy_pan_protocols(double epsilon) {
  return {parity_counter(), randomized_response_sum(epsilon),
          adaptive_chooser(epsilon)};
}

LocalProtocol randomized_response_local(double epsilon) {
  const double keep = randomized_response_keep(epsilon);
  LocalProtocol lp;
  lp.name = "randomized_response_local";
  lp.epsilon = epsilon;
  lp.next_randomizer = [keep, epsilon](const Transcript&) {
    Randomizer r;
    r.id = "rr";
    r.epsilon = epsilon;
    r.apply = [keep](Element x, CoinSource& coins) {
      return std::to_string(randomize(bit_of(x), keep, coins));
    };
    return r;
  };
  return lp;
}

LocalProtocol adaptive_chooser_local(double epsilon) {
  const double keep = randomized_response_keep(epsilon);
  LocalProtocol lp;
  lp.name = "adaptive_chooser_local";
  lp.epsilon = epsilon;
  lp.next_randomizer = [keep, epsilon](const Transcript& transcript) {
    Randomizer r;
    r.epsilon = epsilon;
    const bool flip_mode =
        !transcript.entries.empty() && transcript.entries[0].message == "0";
    r.id = transcript.entries.empty() ? "rr" : (flip_mode ? "rr-not" : "rr");
    r.apply = [keep, flip_mode](Element x, CoinSource& coins) {
      const int bit = flip_mode ? 1 - bit_of(x) : bit_of(x);
      return std::to_string(randomize(bit, keep, coins));
    };
    return r;
  };
  return lp;
}

std::vector<LocalProtocol> toy_local_protocols(double epsilon) {
  return {randomized_response_local(epsilon), adaptive_chooser_local(epsilon)};
}

}  // namespace pantest
