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

// Executable pan-private <-> locally private protocol transforms.
//
// Protocol states are opaque byte strings. Multi-part states (the history
// of an inner protocol, or a transcript) use ConcatState's length-prefixed
// encoding, which is append-only: the encoding of a sequence is a byte prefix
// of the encoding of any extension of it.

#ifndef PANTEST_BRIDGE_HPP_
#define PANTEST_BRIDGE_HPP_

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "pantest/distribution.hpp"
#include "pantest/random.hpp"

namespace pantest {

using State = std::string;
using Message = std::string;

class ConcatState {
 public:
  ConcatState() = default;
  explicit ConcatState(std::vector<std::string> parts)
      : parts_(std::move(parts)) {}

  const std::vector<std::string>& parts() const { return parts_; }
  std::size_t size() const { return parts_.size(); }
  bool empty() const { return parts_.empty(); }
  const std::string& last() const { return parts_.back(); }
  void append(std::string part) { parts_.push_back(std::move(part)); }

  // "<decimal length>:<bytes>" for each part, concatenated.
  std::string encode() const;
  // Throws DomainError on malformed input.
  static ConcatState decode(std::string_view encoded);

  friend bool operator==(const ConcatState&, const ConcatState&) = default;

 private:
  std::vector<std::string> parts_;
};

std::string encode_part(std::string_view part);

// A streaming algorithm split into its internal and output algorithms.
// internal_step is the only place stream elements are read.
struct PanProtocol {
  std::string name;
  double epsilon = 0.0;  // declared privacy parameter
  State initial_state;
  std::function<State(const State&, Element, CoinSource&)> internal_step;
  std::function<std::string(const State&, CoinSource&)> output_step;
};

// An element -> message function with a declared epsilon.
struct Randomizer {
  std::string id;
  double epsilon = 0.0;
  std::function<Message(Element, CoinSource&)> apply;
};

struct TranscriptEntry {
  std::string randomizer_id;
  Message message;

  friend bool operator==(const TranscriptEntry&,
                         const TranscriptEntry&) = default;
};

struct Transcript {
  std::vector<TranscriptEntry> entries;

  std::size_t size() const { return entries.size(); }
  // The transcript with randomizer ids dropped.
  std::vector<Message> messages() const;
  // Canonical state encoding: each entry is one ConcatState part holding
  // the two-part encoding (randomizer_id, message).
  std::string encode() const;
  static Transcript decode(std::string_view encoded);

  friend bool operator==(const Transcript&, const Transcript&) = default;
};

// Sequentially interactive protocol: picks the randomizer for the next
// element from the transcript so far.
struct LocalProtocol {
  std::string name;
  double epsilon = 0.0;
  std::function<Randomizer(const Transcript&)> next_randomizer;
};

// State after t elements is the ConcatState of the source protocol's
// states after elements 1..t; the output applies the source output step to
// the last part (the source initial state when no element was read).
PanProtocol two_intrusion_to_one(PanProtocol p2);

// Element t is fed to the randomizer "state i_{t-1} -> new part", and the
// new part is the message. Throws ContractViolation at run time if p1's
// step does not append exactly one part to its ConcatState.
LocalProtocol pan_to_local(PanProtocol p1);

// State = encoded transcript so far; output = the final state.
PanProtocol local_to_pan(LocalProtocol lp);

struct TraceStep {
  std::int64_t t = 0;
  std::string state_digest;  // FNV-1a 64, hex
  std::optional<Message> message;
  bool intrusion = false;
};

struct SimulationResult {
  std::string output;
  // (t, state) for each requested intrusion time, in increasing t.
  std::vector<std::pair<std::int64_t, State>> observed;
  std::vector<TraceStep> trace;
};

// Runs the protocol and records states right after the update at each time
// in `intrusion_times` (t = 0 is the initial state). Throws DomainError for
// a time outside [0, stream.size()].
SimulationResult simulate(const PanProtocol& protocol,
                          std::span<const Element> stream, CoinSource& coins,
                          const std::set<std::int64_t>& intrusion_times = {});

// For a local protocol the state is the encoded transcript prefix and the
// output is the full encoded transcript.
SimulationResult simulate(const LocalProtocol& protocol,
                          std::span<const Element> stream, CoinSource& coins,
                          const std::set<std::int64_t>& intrusion_times = {});

std::string state_digest(std::string_view state);

// One JSON object per trace step.
std::string trace_to_jsonl(const std::vector<TraceStep>& trace);

using OutcomeDistribution = std::map<std::string, double>;

double distribution_tv(const OutcomeDistribution& p, const OutcomeDistribution& q);

OutcomeDistribution normalize_counts(const std::map<std::string, std::int64_t>& counts);

// Exact distribution of experiment(coins) by enumerating every sequence of
// coin outcomes. Zero-probability branches are skipped. Throws DomainError
// past `max_paths` paths.
OutcomeDistribution enumerate_distribution(
    const std::function<std::string(CoinSource&)>& experiment,
    std::size_t max_paths = 1u << 16);

struct BridgePrefixReport {
  std::int64_t t = 0;
  double monte_carlo_tv = 0.0;
  std::optional<double> exact_tv;  // when both supports have <= 64 states
  std::size_t state_space = 0;
};

struct BridgeReport {
  std::string protocol;
  std::int64_t trials = 0;
  std::vector<BridgePrefixReport> prefixes;
  // Final output of two_intrusion_to_one(p2) against p2's own output.
  double output_tv = 0.0;
  // Full transcripts of pan_to_local(p1) against
  // pan_to_local(local_to_pan(pan_to_local(p1))).
  double roundtrip_tv = 0.0;
  // Every local_to_pan state along every simulated trace extended its
  // predecessor.
  bool prefix_monotone = true;
};

// Pan -> local direction on `p2`: compares p1 = two_intrusion_to_one(p2)'s
// state I_t against the id-stripped transcript prefix of pan_to_local(p1)
// for t = 1..stream.size(), by Monte Carlo with `trials` runs per side and by
// exact enumeration. Also compares final outputs against p2, runs the
// local_to_pan / pan_to_local round trip, and checks prefix monotonicity of
// every local_to_pan trace.
BridgeReport bridge_check(const PanProtocol& p2, std::span<const Element> stream,
                          std::int64_t trials, RngSeed seed);

void to_json(nlohmann::json& j, const BridgeReport& report);

}  // namespace pantest

#endif  // PANTEST_BRIDGE_HPP_
