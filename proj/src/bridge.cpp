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

#include "pantest/bridge.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <memory>
#include <utility>

#include "pantest/errors.hpp"

namespace pantest {
namespace {

class ScriptedCoins final : public CoinSource {
 public:
  ScriptedCoins(std::vector<bool>& path, std::vector<bool>& branchable)
      : path_(path), branchable_(branchable) {}

  bool flip(double p) override {
    bool choice;
    if (pos_ < path_.size()) {
      choice = path_[pos_];
    } else {
      choice = p > 0.0;  // take the "true" branch first when it exists
      path_.push_back(choice);
      branchable_.push_back(p > 0.0 && p < 1.0);
    }
    ++pos_;
    probability_ *= choice ? p : 1.0 - p;
    return choice;
  }

  double probability() const { return probability_; }

 private:
  std::vector<bool>& path_;
  std::vector<bool>& branchable_;
  std::size_t pos_ = 0;
  double probability_ = 1.0;
};

void check_times(const std::set<std::int64_t>& times, std::size_t length) {
  for (std::int64_t t : times) {
    if (t < 0 || t > static_cast<std::int64_t>(length)) {
      throw DomainError("intrusion time " + std::to_string(t) +
                        " outside [0, " + std::to_string(length) + "]");
    }
  }
}

std::string entry_part(const std::string& id, const Message& message) {
  return ConcatState({id, message}).encode();
}

std::string message_prefix(const Transcript& transcript, std::size_t t) {
  std::string out;
  for (std::size_t i = 0; i < t; ++i) {
    out += encode_part(transcript.entries[i].message);
  }
  return out;
}

}  // namespace

std::string encode_part(std::string_view part) {
  std::string out = std::to_string(part.size());
  out.push_back(':');
  out.append(part);
  return out;
}

std::string ConcatState::encode() const {
  std::string out;
  for (const auto& part : parts_) out += encode_part(part);
  return out;
}

ConcatState ConcatState::decode(std::string_view encoded) {
  std::vector<std::string> parts;
  std::size_t pos = 0;
  while (pos < encoded.size()) {
    const std::size_t colon = encoded.find(':', pos);
    if (colon == std::string_view::npos || colon == pos) {
      throw DomainError("malformed ConcatState: missing length prefix");
    }
    std::size_t length = 0;
    const char* first = encoded.data() + pos;
    const char* last = encoded.data() + colon;
    auto [ptr, ec] = std::from_chars(first, last, length);
    if (ec != std::errc() || ptr != last) {
      throw DomainError("malformed ConcatState: bad length prefix");
    }
    if (length > encoded.size() - colon - 1) {
      throw DomainError("malformed ConcatState: truncated part");
    }
    parts.emplace_back(encoded.substr(colon + 1, length));
    pos = colon + 1 + length;
  }
  return ConcatState(std::move(parts));
}

std::vector<Message> Transcript::messages() const {
  std::vector<Message> out;
  out.reserve(entries.size());
  for (const auto& e : entries) out.push_back(e.message);
  return out;
}

std::string Transcript::encode() const {
  std::string out;
  for (const auto& e : entries) {
    out += encode_part(entry_part(e.randomizer_id, e.message));
  }
  return out;
}

Transcript Transcript::decode(std::string_view encoded) {
  Transcript transcript;
  const ConcatState outer = ConcatState::decode(encoded);
  for (const auto& part : outer.parts()) {
    ConcatState pair = ConcatState::decode(part);
    if (pair.size() != 2) {
      throw DomainError("malformed transcript entry");
    }
    transcript.entries.push_back({pair.parts()[0], pair.parts()[1]});
  }
  return transcript;
}

PanProtocol two_intrusion_to_one(PanProtocol p2) {
  auto source = std::make_shared<const PanProtocol>(std::move(p2));
  PanProtocol p1;
  p1.name = "two_to_one(" + source->name + ")";
  p1.epsilon = source->epsilon;
  p1.initial_state = ConcatState().encode();
  p1.internal_step = [source](const State& state, Element x,
                              CoinSource& coins) -> State {
    ConcatState history = ConcatState::decode(state);
    const State& last =
        history.empty() ? source->initial_state : history.last();
    return state + encode_part(source->internal_step(last, x, coins));
  };
  p1.output_step = [source](const State& state, CoinSource& coins) {
    ConcatState history = ConcatState::decode(state);
    const State& last =
        history.empty() ? source->initial_state : history.last();
    return source->output_step(last, coins);
  };
  return p1;
}

LocalProtocol pan_to_local(PanProtocol p1) {
  auto source = std::make_shared<const PanProtocol>(std::move(p1));
  std::vector<std::string> base;
  try {
    base = ConcatState::decode(source->initial_state).parts();
  } catch (const DomainError&) {
    throw ContractViolation(source->name +
                            ": initial state is not a ConcatState");
  }
  LocalProtocol lp;
  lp.name = "pan_to_local(" + source->name + ")";
  lp.epsilon = source->epsilon;
  lp.next_randomizer = [source, base](const Transcript& transcript) {
    std::vector<std::string> parts = base;
    for (const auto& e : transcript.entries) parts.push_back(e.message);
    const std::size_t expected = parts.size() + 1;
    ConcatState previous(std::move(parts));
    State prev_state = previous.encode();
    Randomizer r;
    r.id = source->name + "#" + std::to_string(transcript.size() + 1) + ":" +
           state_digest(prev_state);
    r.epsilon = source->epsilon;
    r.apply = [source, previous, prev_state, expected](
                  Element x, CoinSource& coins) -> Message {
      State next = source->internal_step(prev_state, x, coins);
      ConcatState decoded;
      try {
        decoded = ConcatState::decode(next);
      } catch (const DomainError&) {
        throw ContractViolation(source->name +
                                ": step produced a non-ConcatState state");
      }
      if (decoded.size() != expected ||
          !std::equal(previous.parts().begin(), previous.parts().end(),
                      decoded.parts().begin())) {
        throw ContractViolation(
            source->name + ": step must append exactly one part and keep "
                           "earlier parts unchanged");
      }
      return decoded.last();
    };
    return r;
  };
  return lp;
}

PanProtocol local_to_pan(LocalProtocol lp) {
  auto source = std::make_shared<const LocalProtocol>(std::move(lp));
  PanProtocol p;
  p.name = "local_to_pan(" + source->name + ")";
  p.epsilon = source->epsilon;
  p.initial_state = Transcript().encode();
  p.internal_step = [source](const State& state, Element x,
                             CoinSource& coins) -> State {
    Transcript transcript = Transcript::decode(state);
    Randomizer r = source->next_randomizer(transcript);
    Message y = r.apply(x, coins);
    return state + encode_part(entry_part(r.id, y));
  };
  p.output_step = [](const State& state, CoinSource&) { return state; };
  return p;
}

SimulationResult simulate(const PanProtocol& protocol,
                          std::span<const Element> stream, CoinSource& coins,
                          const std::set<std::int64_t>& intrusion_times) {
  check_times(intrusion_times, stream.size());
  SimulationResult result;
  State state = protocol.initial_state;
  if (intrusion_times.contains(0)) result.observed.emplace_back(0, state);
  for (std::size_t i = 0; i < stream.size(); ++i) {
    const auto t = static_cast<std::int64_t>(i + 1);
    state = protocol.internal_step(state, stream[i], coins);
    const bool intruded = intrusion_times.contains(t);
    if (intruded) result.observed.emplace_back(t, state);
    result.trace.push_back({t, state_digest(state), std::nullopt, intruded});
  }
  result.output = protocol.output_step(state, coins);
  return result;
}

SimulationResult simulate(const LocalProtocol& protocol,
                          std::span<const Element> stream, CoinSource& coins,
                          const std::set<std::int64_t>& intrusion_times) {
  check_times(intrusion_times, stream.size());
  SimulationResult result;
  Transcript transcript;
  State state = transcript.encode();
  if (intrusion_times.contains(0)) result.observed.emplace_back(0, state);
  for (std::size_t i = 0; i < stream.size(); ++i) {
    const auto t = static_cast<std::int64_t>(i + 1);
    Randomizer r = protocol.next_randomizer(transcript);
    Message y = r.apply(stream[i], coins);
    state += encode_part(entry_part(r.id, y));
    transcript.entries.push_back({std::move(r.id), y});
    const bool intruded = intrusion_times.contains(t);
    if (intruded) result.observed.emplace_back(t, state);
    result.trace.push_back({t, state_digest(state), std::move(y), intruded});
  }
  result.output = state;
  return result;
}

std::string state_digest(std::string_view state) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : state) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(h));
  return buf;
}

std::string trace_to_jsonl(const std::vector<TraceStep>& trace) {
  std::string out;
  for (const auto& step : trace) {
    nlohmann::json j;
    j["t"] = step.t;
    j["state_digest"] = step.state_digest;
    j["message"] = step.message ? nlohmann::json(*step.message)
                                : nlohmann::json(nullptr);
    j["intrusion"] = step.intrusion;
    out += j.dump();
    out.push_back('\n');
  }
  return out;
}

double distribution_tv(const OutcomeDistribution& p,
                       const OutcomeDistribution& q) {
  double sum = 0.0;
  for (const auto& [key, mass] : p) {
    auto it = q.find(key);
    sum += std::abs(mass - (it == q.end() ? 0.0 : it->second));
  }
  for (const auto& [key, mass] : q) {
    if (!p.contains(key)) sum += mass;
  }
  return 0.5 * sum;
}

OutcomeDistribution normalize_counts(
    const std::map<std::string, std::int64_t>& counts) {
  std::int64_t total = 0;
  for (const auto& [key, c] : counts) total += c;
  OutcomeDistribution out;
  if (total == 0) return out;
  for (const auto& [key, c] : counts) {
    out[key] = static_cast<double>(c) / static_cast<double>(total);
  }
  return out;
}

OutcomeDistribution enumerate_distribution(
    const std::function<std::string(CoinSource&)>& experiment,
    std::size_t max_paths) {
  OutcomeDistribution dist;
  std::vector<bool> path;
  std::vector<bool> branchable;
  std::size_t paths = 0;
  while (true) {
    if (++paths > max_paths) {
      throw DomainError("enumeration exceeded " + std::to_string(max_paths) +
                        " coin paths");
    }
    ScriptedCoins coins(path, branchable);
    std::string outcome = experiment(coins);
    if (coins.probability() > 0.0) dist[outcome] += coins.probability();
    // Backtrack to the deepest branch point still on its first branch.
    std::size_t i = path.size();
    while (i > 0 && !(branchable[i - 1] && path[i - 1])) --i;
    if (i == 0) break;
    path.resize(i);
    branchable.resize(i);
    path[i - 1] = false;
  }
  return dist;
}

BridgeReport bridge_check(const PanProtocol& p2,
                          std::span<const Element> stream, std::int64_t trials,
                          RngSeed seed) {
  if (trials < 1) throw DomainError("bridge_check needs trials >= 1");
  const PanProtocol p1 = two_intrusion_to_one(p2);
  const LocalProtocol lp = pan_to_local(p1);
  const PanProtocol lp_pan = local_to_pan(lp);
  const LocalProtocol round_trip = pan_to_local(lp_pan);
  const std::size_t length = stream.size();

  std::set<std::int64_t> all_times;
  for (std::size_t t = 0; t <= length; ++t) {
    all_times.insert(static_cast<std::int64_t>(t));
  }
  std::set<std::int64_t> positive_times(std::next(all_times.begin()),
                                        all_times.end());

  using Counts = std::map<std::string, std::int64_t>;
  std::vector<Counts> pan_counts(length + 1), local_counts(length + 1);
  Counts p1_out, p2_out, lp_full, rt_full;
  BridgeReport report;
  report.protocol = p2.name;
  report.trials = trials;

  for (std::int64_t i = 0; i < trials; ++i) {
    const auto trial = static_cast<std::uint64_t>(i);
    {
      Rng rng(seed.derive(1, trial));
      RngCoins coins(rng);
      SimulationResult r = simulate(p1, stream, coins, positive_times);
      for (const auto& [t, state] : r.observed) ++pan_counts[t][state];
      ++p1_out[r.output];
    }
    {
      Rng rng(seed.derive(2, trial));
      RngCoins coins(rng);
      SimulationResult r = simulate(lp, stream, coins);
      Transcript transcript = Transcript::decode(r.output);
      for (std::size_t t = 1; t <= length; ++t) {
        ++local_counts[t][message_prefix(transcript, t)];
      }
      ++lp_full[r.output];
    }
    {
      Rng rng(seed.derive(3, trial));
      RngCoins coins(rng);
      ++p2_out[simulate(p2, stream, coins).output];
    }
    {
      Rng rng(seed.derive(4, trial));
      RngCoins coins(rng);
      SimulationResult r = simulate(round_trip, stream, coins);
      // The round trip's messages are lp's encoded transcript entries.
      Transcript transcript = Transcript::decode(r.output);
      std::string rebuilt;
      for (const auto& e : transcript.entries) rebuilt += encode_part(e.message);
      ++rt_full[rebuilt];
    }
    {
      Rng rng(seed.derive(5, trial));
      RngCoins coins(rng);
      SimulationResult r = simulate(lp_pan, stream, coins, all_times);
      for (std::size_t j = 1; j < r.observed.size(); ++j) {
        if (!r.observed[j].second.starts_with(r.observed[j - 1].second)) {
          report.prefix_monotone = false;
        }
      }
    }
  }

  for (std::size_t t = 1; t <= length; ++t) {
    BridgePrefixReport prefix;
    prefix.t = static_cast<std::int64_t>(t);
    prefix.monte_carlo_tv = distribution_tv(normalize_counts(pan_counts[t]),
                                            normalize_counts(local_counts[t]));
    try {
      const auto time = static_cast<std::int64_t>(t);
      OutcomeDistribution exact_pan =
          enumerate_distribution([&](CoinSource& coins) {
            return simulate(p1, stream, coins, {time}).observed.front().second;
          });
      OutcomeDistribution exact_local =
          enumerate_distribution([&](CoinSource& coins) {
            Transcript transcript =
                Transcript::decode(simulate(lp, stream, coins).output);
            return message_prefix(transcript, t);
          });
      prefix.state_space = std::max(exact_pan.size(), exact_local.size());
      if (prefix.state_space <= 64) {
        prefix.exact_tv = distribution_tv(exact_pan, exact_local);
      }
    } catch (const DomainError&) {
      prefix.state_space = 0;
    }
    report.prefixes.push_back(prefix);
  }
  report.output_tv =
      distribution_tv(normalize_counts(p1_out), normalize_counts(p2_out));
  report.roundtrip_tv =
      distribution_tv(normalize_counts(lp_full), normalize_counts(rt_full));
  return report;
}

void to_json(nlohmann::json& j, const BridgeReport& report) {
  j = nlohmann::json{{"protocol", report.protocol},
                     {"trials", report.trials},
                     {"output_tv", report.output_tv},
                     {"roundtrip_tv", report.roundtrip_tv},
                     {"prefix_monotone", report.prefix_monotone}};
  nlohmann::json prefixes = nlohmann::json::array();
  for (const auto& p : report.prefixes) {
    nlohmann::json e{{"t", p.t},
                     {"monte_carlo_tv", p.monte_carlo_tv},
                     {"state_space", p.state_space}};
    e["exact_tv"] = p.exact_tv ? nlohmann::json(*p.exact_tv)
                               : nlohmann::json(nullptr);
    prefixes.push_back(std::move(e));
  }
  j["prefixes"] = std::move(prefixes);
}

}  // namespace pantest
