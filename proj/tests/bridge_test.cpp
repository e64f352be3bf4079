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

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "pantest/errors.hpp"
#include "pantest/toy_protocols.hpp"

namespace pantest {
namespace {

TEST(ConcatStateTest, RoundTripsAwkwardParts) {
  const ConcatState s({"", "12:ab", ":", "0", std::string(3, '\0'), "x"});
  EXPECT_EQ(s.encode(), "0:5:12:ab1::1:03:" + std::string(3, '\0') + "1:x");
  EXPECT_EQ(ConcatState::decode(s.encode()), s);
  EXPECT_TRUE(ConcatState::decode("").empty());
}

TEST(ConcatStateTest, RejectsMalformed) {
  for (const char* bad : {"3:ab", "x:a", ":a", "1a:b", "5", "-1:a"}) {
    EXPECT_THROW(ConcatState::decode(bad), DomainError) << bad;
  }
}

TEST(ConcatStateTest, AppendPreservesPrefix) {
  ConcatState s;
  std::string previous = s.encode();
  for (const char* part : {"a", "", "10:", "zz"}) {
    s.append(part);
    const std::string now = s.encode();
    EXPECT_TRUE(now.starts_with(previous));
    previous = now;
  }
}

TEST(TranscriptTest, RoundTrip) {
  Transcript t{{{"rr", "1"}, {"id:with:colons", ""}, {"", "0"}}};
  EXPECT_EQ(Transcript::decode(t.encode()), t);
  EXPECT_EQ(t.messages(), (std::vector<Message>{"1", "", "0"}));
  EXPECT_THROW(Transcript::decode("3:1:a"), DomainError);
}

TEST(TwoToOneTest, ParityHistory) {
  const PanProtocol p1 = two_intrusion_to_one(parity_counter());
  Rng rng(RngSeed{1, 0});
  RngCoins coins(rng);
  const std::vector<Element> stream{1, 0, 1};
  const SimulationResult r = simulate(p1, stream, coins, {3});
  ASSERT_EQ(r.observed.size(), 1u);
  EXPECT_EQ(ConcatState::decode(r.observed[0].second).parts(),
            (std::vector<std::string>{"1", "1", "0"}));
  EXPECT_EQ(r.output, "0");

  const SimulationResult empty = simulate(p1, std::span<const Element>{}, coins);
  EXPECT_EQ(empty.output, "0");
  EXPECT_TRUE(empty.trace.empty());
}

// The last part of p1's state is distributed as p2's state.
TEST(TwoToOneTest, LastPartMatchesSource) {
  const PanProtocol p2 = randomized_response_sum(1.0);
  const PanProtocol p1 = two_intrusion_to_one(p2);
  const std::vector<Element> stream{1, 0, 1};
  std::map<std::string, std::int64_t> a, b;
  for (std::uint64_t i = 0; i < 100000; ++i) {
    Rng r1(RngSeed{2, i});
    RngCoins c1(r1);
    ++a[ConcatState::decode(simulate(p1, stream, c1, {3}).observed[0].second)
            .last()];
    Rng r2(RngSeed{3, i});
    RngCoins c2(r2);
    ++b[simulate(p2, stream, c2, {3}).observed[0].second];
  }
  EXPECT_LE(distribution_tv(normalize_counts(a), normalize_counts(b)), 0.02);
}

TEST(PanToLocalTest, DeterministicTranscriptIsStateTrace) {
  const PanProtocol p1 = two_intrusion_to_one(parity_counter());
  const LocalProtocol lp = pan_to_local(p1);
  const std::vector<Element> stream{1, 1, 0, 1, 0};
  Rng rng(RngSeed{4, 0});
  RngCoins coins(rng);
  const Transcript t = Transcript::decode(simulate(lp, stream, coins).output);
  ASSERT_EQ(t.size(), stream.size());
  EXPECT_EQ(t.messages(),
            (std::vector<Message>{"1", "0", "0", "1", "1"}));
  for (std::size_t i = 0; i < t.size(); ++i) {
    EXPECT_TRUE(t.entries[i].randomizer_id.find("#" + std::to_string(i + 1) +
                                                ":") != std::string::npos);
  }
}

TEST(PanToLocalTest, RejectsNonAppendingProtocol) {
  EXPECT_THROW(pan_to_local(parity_counter()), ContractViolation);

  PanProtocol rewriter;
  rewriter.name = "rewriter";
  rewriter.initial_state = "";
  rewriter.internal_step = [](const State& s, Element, CoinSource&) {
    ConcatState c = ConcatState::decode(s);
    c.append("a");
    c.append("b");
    return c.encode();
  };
  rewriter.output_step = [](const State& s, CoinSource&) { return s; };
  const LocalProtocol lp = pan_to_local(rewriter);
  Rng rng(RngSeed{5, 0});
  RngCoins coins(rng);
  const std::vector<Element> stream{0};
  EXPECT_THROW(simulate(lp, stream, coins), ContractViolation);
}

TEST(LocalTest, RandomizedResponseExactDistribution) {
  const LocalProtocol lp = randomized_response_local(1.0);
  const std::vector<Element> stream{1};
  const OutcomeDistribution d = enumerate_distribution([&](CoinSource& c) {
    return Transcript::decode(simulate(lp, stream, c).output).messages()[0];
  });
  ASSERT_EQ(d.size(), 2u);
  const double e = std::exp(1.0);
  EXPECT_NEAR(d.at("1"), e / (1.0 + e), 1e-15);
  EXPECT_NEAR(d.at("0"), 1.0 / (1.0 + e), 1e-15);
}

TEST(LocalTest, AdaptiveChoosesRandomizerFromTranscript) {
  const LocalProtocol lp = adaptive_chooser_local(1.0);
  const std::vector<Element> stream{0, 1, 1};
  const OutcomeDistribution d = enumerate_distribution([&](CoinSource& c) {
    const Transcript t = Transcript::decode(simulate(lp, stream, c).output);
    std::string ids;
    for (const auto& e : t.entries) ids += e.randomizer_id + "|";
    return t.entries[0].message + ids;
  });
  const double keep = randomized_response_keep(1.0);
  double zero_mode = 0.0, one_mode = 0.0;
  for (const auto& [key, mass] : d) {
    if (key == "0rr|rr-not|rr-not|") zero_mode += mass;
    else if (key == "1rr|rr|rr|") one_mode += mass;
    else ADD_FAILURE() << key;
  }
  EXPECT_NEAR(zero_mode, keep, 1e-12);
  EXPECT_NEAR(one_mode, 1.0 - keep, 1e-12);
}

TEST(SimulateTest, IntrusionTimes) {
  const PanProtocol p = parity_counter();
  const std::vector<Element> stream{1, 1, 1};
  Rng rng(RngSeed{6, 0});
  RngCoins coins(rng);
  const SimulationResult none = simulate(p, stream, coins);
  EXPECT_TRUE(none.observed.empty());
  EXPECT_EQ(none.output, "1");
  ASSERT_EQ(none.trace.size(), 3u);

  const SimulationResult two = simulate(p, stream, coins, {0, 2});
  ASSERT_EQ(two.observed.size(), 2u);
  EXPECT_EQ(two.observed[0], (std::pair<std::int64_t, State>{0, "0"}));
  EXPECT_EQ(two.observed[1], (std::pair<std::int64_t, State>{2, "0"}));
  EXPECT_TRUE(two.trace[1].intrusion);
  EXPECT_FALSE(two.trace[0].intrusion);

  EXPECT_THROW(simulate(p, stream, coins, {4}), DomainError);
  EXPECT_THROW(simulate(p, stream, coins, {-1}), DomainError);
}

TEST(SimulateTest, LocalToPanStatesAreTranscriptPrefixes) {
  const PanProtocol p = local_to_pan(randomized_response_local(0.5));
  const std::vector<Element> stream{1, 0, 1, 1};
  Rng rng(RngSeed{7, 0});
  RngCoins coins(rng);
  const SimulationResult r = simulate(p, stream, coins, {0, 1, 2, 3, 4});
  ASSERT_EQ(r.observed.size(), 5u);
  const Transcript full = Transcript::decode(r.output);
  for (std::size_t t = 0; t < r.observed.size(); ++t) {
    const Transcript prefix = Transcript::decode(r.observed[t].second);
    ASSERT_EQ(prefix.size(), t);
    EXPECT_TRUE(std::equal(prefix.entries.begin(), prefix.entries.end(),
                           full.entries.begin()));
    EXPECT_TRUE(r.output.starts_with(r.observed[t].second));
  }
}

TEST(BridgeCheckTest, ToyCorpus) {
  const std::vector<Element> stream{1, 0, 1, 1};
  for (const PanProtocol& p2 : toy_pan_protocols(1.0)) {
    const BridgeReport report = bridge_check(p2, stream, 100000, RngSeed{8, 0});
    EXPECT_TRUE(report.prefix_monotone) << p2.name;
    EXPECT_LE(report.output_tv, 0.02) << p2.name;
    EXPECT_LE(report.roundtrip_tv, 0.02) << p2.name;
    ASSERT_EQ(report.prefixes.size(), stream.size());
    for (const auto& prefix : report.prefixes) {
      EXPECT_LE(prefix.monte_carlo_tv, 0.02) << p2.name << " t=" << prefix.t;
      ASSERT_TRUE(prefix.exact_tv.has_value()) << p2.name;
      EXPECT_NEAR(*prefix.exact_tv, 0.0, 1e-12) << p2.name;
    }
    const nlohmann::json j = report;
    EXPECT_EQ(j.at("prefixes").size(), stream.size());
  }
}

TEST(EnumerateTest, SkipsImpossibleBranchesAndCaps) {
  const OutcomeDistribution d = enumerate_distribution([](CoinSource& c) {
    std::string s;
    s += c.flip(1.0) ? 'a' : 'b';
    s += c.flip(0.25) ? 'x' : 'y';
    return s;
  });
  ASSERT_EQ(d.size(), 2u);
  EXPECT_DOUBLE_EQ(d.at("ax"), 0.25);
  EXPECT_DOUBLE_EQ(d.at("ay"), 0.75);

  EXPECT_THROW(enumerate_distribution(
                   [](CoinSource& c) {
                     std::string s;
                     for (int i = 0; i < 10; ++i) s += c.flip(0.5) ? '1' : '0';
                     return s;
                   },
                   100),
               DomainError);
}

TEST(DistributionTvTest, DisjointAndEqual) {
  EXPECT_DOUBLE_EQ(distribution_tv({{"a", 1.0}}, {{"b", 1.0}}), 1.0);
  EXPECT_DOUBLE_EQ(distribution_tv({{"a", 0.5}, {"b", 0.5}},
                                   {{"b", 0.5}, {"a", 0.5}}),
                   0.0);
  EXPECT_TRUE(normalize_counts({}).empty());
}

TEST(TraceTest, DigestAndJsonl) {
  EXPECT_EQ(state_digest(""), "cbf29ce484222325");
  EXPECT_EQ(state_digest("a"), "af63dc4c8601ec8c");
  const LocalProtocol lp = randomized_response_local(1.0);
  const std::vector<Element> stream{1, 0};
  Rng rng(RngSeed{9, 0});
  RngCoins coins(rng);
  const SimulationResult r = simulate(lp, stream, coins, {1});
  const std::string jsonl = trace_to_jsonl(r.trace);
  std::istringstream in(jsonl);
  std::string line;
  int lines = 0;
  while (std::getline(in, line)) {
    const auto j = nlohmann::json::parse(line);
    EXPECT_EQ(j.at("t"), lines + 1);
    EXPECT_EQ(j.at("intrusion"), lines == 0);
    EXPECT_TRUE(j.at("message").is_string());
    EXPECT_EQ(j.at("state_digest").get<std::string>().size(), 16u);
    ++lines;
  }
  EXPECT_EQ(lines, 2);
}

}  // namespace
}  // namespace pantest
