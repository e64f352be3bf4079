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

#include "pantest/cli.hpp"

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <memory>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "pantest/audit.hpp"
#include "pantest/bridge.hpp"
#include "pantest/errors.hpp"
#include "pantest/experiments.hpp"
#include "pantest/hard_instances.hpp"
#include "pantest/persist.hpp"
#include "pantest/stream.hpp"
#include "pantest/testers.hpp"
#include "pantest/toy_protocols.hpp"

namespace pantest::cli {
namespace {

constexpr std::int64_t kMinBridgeTrials = 1000;

struct Common {
  std::uint64_t seed = 0;
  CLI::Option* seed_option = nullptr;
  int threads = 1;
  std::string output;
};

struct TesterOptions {
  std::string tester = "simple";
  std::int64_t k = 0;
  double alpha = 0.5;
  double epsilon = 1.0;
  double distance_constant = kDefaultDistanceConstant;
};

struct InstanceOptions {
  std::string instance;
  double parameter = 0.0;
  CLI::Option* parameter_option = nullptr;

  std::optional<double> value() const {
    if (parameter_option != nullptr && parameter_option->count() > 0) {
      return parameter;
    }
    return std::nullopt;
  }
};

void add_common(CLI::App* app, Common& c, bool with_output) {
  c.seed_option =
      app->add_option("--seed", c.seed, "RNG seed (drawn and printed if omitted)");
  app->add_option("--threads", c.threads, "Worker threads")
      ->check(CLI::Range(1, 1024));
  if (with_output) {
    app->add_option("--output", c.output, "JSON-lines output path");
  }
  app->add_option("--config", "key=value configuration file");
}

void add_tester(CLI::App* app, TesterOptions& t, bool need_epsilon = true) {
  app->add_option("--tester", t.tester, "simple | pan | chi2")
      ->check(CLI::IsMember({"simple", "pan", "chi2", "simple_pan_test",
                             "pan_test", "nonprivate_chi2_test"}));
  app->add_option("--k", t.k, "Domain size")->required()->check(
      CLI::Range(std::int64_t{2}, std::int64_t{1} << 40));
  app->add_option("--alpha", t.alpha, "TV distance parameter in (0, 1]");
  if (need_epsilon) {
    app->add_option("--epsilon", t.epsilon, "Privacy parameter (> 0)");
  }
  app->add_option("--distance-constant", t.distance_constant,
                  "c_d for pan_test's effective distance");
}

void add_instance(CLI::App* app, InstanceOptions& i, std::string fallback,
                  std::vector<std::string> allowed) {
  i.instance = std::move(fallback);
  app->add_option("--instance", i.instance)->check(CLI::IsMember(allowed));
  i.parameter_option = app->add_option(
      "--instance-param", i.parameter,
      "Paninski construction parameter or point-mass weight (default alpha)");
}

TesterSpec tester_spec(const TesterOptions& t) {
  TesterSpec spec{parse_tester_kind(t.tester), t.k, t.alpha, t.epsilon,
                  t.distance_constant};
  spec.validate();
  return spec;
}

InstanceSpec instance_spec(const InstanceOptions& i) {
  return InstanceSpec{parse_instance_kind(i.instance), i.value()};
}

std::uint64_t resolve_seed(const Common& c, std::ostream& err) {
  if (c.seed_option->count() > 0) return c.seed;
  std::random_device rd;
  const std::uint64_t seed =
      (static_cast<std::uint64_t>(rd()) << 32) ^ static_cast<std::uint64_t>(rd());
  err << "seed " << seed << "\n";
  return seed;
}

std::vector<Element> parse_elements(const std::string& text) {
  std::vector<Element> out;
  std::string token;
  std::stringstream in(text);
  while (std::getline(in, token, ',')) {
    token.erase(0, token.find_first_not_of(" \t"));
    token.erase(token.find_last_not_of(" \t") + 1);
    if (token.empty()) continue;
    try {
      std::size_t used = 0;
      out.push_back(std::stoll(token, &used));
      if (used != token.size()) throw std::invalid_argument(token);
    } catch (const std::exception&) {
      throw ConfigError("bad element '" + token + "'");
    }
  }
  return out;
}

std::vector<Element> read_element_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open stream file " + path);
  std::vector<Element> out;
  std::string token;
  while (in >> token) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoll(token, &used));
      if (used != token.size()) throw std::invalid_argument(token);
    } catch (const std::exception&) {
      throw InputError(path + ": bad element '" + token + "'");
    }
  }
  return out;
}

// Numbers for humans: 6 significant digits.
std::ostream& human(std::ostream& out) {
  out << std::setprecision(6);
  return out;
}

// Expands `--config FILE` into flags placed right after the subcommand name,
// so later command-line flags take precedence.
std::vector<std::string> expand_config(const CLI::App& app,
                                       std::vector<std::string> args) {
  std::size_t sub_pos = args.size();
  const CLI::App* sub = nullptr;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (!args[i].empty() && args[i][0] != '-') {
      sub = app.get_subcommand_no_throw(args[i]);
      if (sub != nullptr) sub_pos = i;
      break;
    }
  }
  if (sub == nullptr) return args;
  std::optional<std::string> path;
  for (std::size_t i = sub_pos + 1; i < args.size();) {
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) throw ConfigError("--config needs a path");
      path = args[i + 1];
      args.erase(args.begin() + i, args.begin() + i + 2);
    } else if (args[i].starts_with("--config=")) {
      path = args[i].substr(9);
      args.erase(args.begin() + i);
    } else {
      ++i;
    }
  }
  if (!path) return args;
  std::ifstream in(*path);
  if (!in) throw ConfigError("cannot open config file " + *path);
  std::vector<std::string> injected;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line.erase(0, line.find_first_not_of(" \t\r"));
    line.erase(line.find_last_not_of(" \t\r") + 1);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(*path + ":" + std::to_string(number) +
                        ": expected key=value");
    }
    std::string key = line.substr(0, eq);
    std::string value = line.substr(eq + 1);
    key.erase(key.find_last_not_of(" \t") + 1);
    value.erase(0, value.find_first_not_of(" \t"));
    std::replace(key.begin(), key.end(), '_', '-');
    const CLI::Option* opt = sub->get_option_no_throw("--" + key);
    if (opt == nullptr || key == "config") {
      throw ConfigError(*path + ":" + std::to_string(number) +
                        ": unknown key '" + key + "'");
    }
    if (opt->get_expected_min() == 0) {  // flag
      if (value == "true" || value == "1") {
        injected.push_back("--" + key);
      } else if (value != "false" && value != "0") {
        throw ConfigError(*path + ": flag '" + key + "' needs true/false");
      }
      continue;
    }
    injected.push_back("--" + key);
    injected.push_back(value);
  }
  args.insert(args.begin() + static_cast<std::ptrdiff_t>(sub_pos) + 1,
              injected.begin(), injected.end());
  return args;
}

int cmd_test(const TesterOptions& t, const InstanceOptions& inst,
             const std::string& file, bool noiseless, std::int64_t m,
             const Common& c, std::ostream& out, std::ostream& err) {
  const TesterSpec spec = tester_spec(t);
  if (m < 1) throw ConfigError("--m must be positive");
  const std::uint64_t seed = resolve_seed(c, err);
  const RngSeed base{seed, 0};
  const double param = inst.value().value_or(t.alpha);
  const std::int64_t length = noiseless ? m : poissonized_stream_length(m);

  std::unique_ptr<ElementStream> stream;
  if (inst.instance == "file") {
    if (file.empty()) throw ConfigError("--instance file needs --file");
    stream = std::make_unique<VectorStream>(read_element_file(file));
  } else if (inst.instance == "exact-uniform") {
    std::vector<Element> elements(static_cast<std::size_t>(length));
    for (std::int64_t i = 0; i < length; ++i) elements[i] = i % t.k;
    stream = std::make_unique<VectorStream>(std::move(elements));
  } else {
    InstanceSpec far{parse_instance_kind(inst.instance), param};
    const DiscreteDistribution p = make_source(far, t.k, t.alpha)(base.derive(1));
    stream = std::make_unique<SampledStream>(p, length, base.derive(2));
  }

  TesterConfig config;
  config.k = spec.k;
  config.alpha = spec.alpha;
  config.epsilon = spec.epsilon;
  config.seed = base.derive(3);
  config.noiseless_debug = noiseless;
  config.distance_constant = spec.distance_constant;
  config.validate();

  TestVerdict v;
  try {
    switch (spec.kind) {
      case TesterKind::kSimplePan:
        v = simple_pan_test(*stream, config, m);
        break;
      case TesterKind::kPan:
        v = pan_test(*stream, config, m);
        break;
      case TesterKind::kNonPrivateChi2:
        v = nonprivate_chi2_test(*stream, spec.k, spec.alpha, m, config.seed,
                                 !noiseless);
        break;
    }
  } catch (const DomainError& e) {
    if (inst.instance == "file") throw InputError(e.what());
    throw;
  }
  nlohmann::json j{{"verdict", std::string(to_string(v.verdict))},
                   {"statistic", v.statistic},
                   {"threshold", v.threshold},
                   {"samples_consumed", v.samples_consumed},
                   {"seed", seed}};
  out << j.dump() << "\n";
  return kExitOk;
}

void print_power(const PowerEstimate& e, std::ostream& out) {
  human(out) << "tester " << e.tester_id << "  instance " << e.instance
             << "  m " << e.m << "  trials " << e.trials << "\n"
             << "p_u|u " << e.p_uniform_given_uniform << "  p_u|far "
             << e.p_uniform_given_far << "  separation " << e.separation()
             << "  separation_lower " << e.separation_lower_bound()
             << "  wilson_halfwidth " << e.wilson_halfwidth << "  errors "
             << e.errors_uniform << "/" << e.errors_far << "\n";
}

void print_point(const ComplexityPoint& p, std::ostream& out) {
  human(out) << "tester " << p.tester_id << "  k " << p.k << "  alpha "
             << p.alpha << "  epsilon " << p.epsilon << "  target " << p.target
             << "\n";
  out << std::left << std::setw(12) << "m" << std::setw(14) << "separation"
      << std::setw(14) << "sep_lower" << std::setw(12) << "p_u|u"
      << "p_u|far\n";
  for (const auto& s : p.search_trace) {
    out << std::setw(12) << s.m << std::setw(14) << s.separation
        << std::setw(14) << s.separation_lower << std::setw(12)
        << s.p_uniform_given_uniform << s.p_uniform_given_far << "\n";
  }
  out << std::right;
  if (p.m_star) {
    out << "m_star " << *p.m_star << "\n";
  } else {
    out << "m_star NotFound\n";
  }
}

void write_records(const Common& c, const std::vector<nlohmann::json>& records) {
  if (!c.output.empty()) persist_results(records, c.output);
}

}  // namespace

int run(const std::vector<std::string>& raw_args, std::ostream& out,
        std::ostream& err) {
  CLI::App app("Pan-private uniformity testing toolkit", "pantest");
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.require_subcommand(1);

  // test
  Common test_common;
  TesterOptions test_tester;
  InstanceOptions test_instance;
  std::string test_file;
  bool test_noiseless = false;
  std::int64_t test_m = 0;
  CLI::App* test = app.add_subcommand("test", "Run one tester on one stream");
  add_common(test, test_common, false);
  add_tester(test, test_tester);
  add_instance(test, test_instance, "uniform",
               {"uniform", "paninski-far", "paninski", "point-mass",
                "exact-uniform", "file"});
  test->add_option("--m", test_m, "Nominal sample size")->required();
  test->add_option("--file", test_file, "Whitespace-separated elements");
  test->add_flag("--noiseless", test_noiseless,
                 "No noise and m' = m (analytic checks only)");

  // power
  Common power_common;
  TesterOptions power_tester;
  InstanceOptions power_instance;
  std::int64_t power_m = 0;
  std::int64_t power_trials = 1000;
  CLI::App* power = app.add_subcommand("power", "Estimate power at one m");
  add_common(power, power_common, true);
  add_tester(power, power_tester);
  add_instance(power, power_instance, "paninski",
               {"paninski", "paninski-far", "point-mass", "uniform"});
  power->add_option("--m", power_m)->required();
  power->add_option("--trials", power_trials)
      ->check(CLI::Range(std::int64_t{100}, std::int64_t{100000000}));

  // complexity
  Common cx_common;
  TesterOptions cx_tester;
  InstanceOptions cx_instance;
  ComplexityConfig cx_config;
  CLI::App* complexity =
      app.add_subcommand("complexity", "Search for the sample complexity");
  add_common(complexity, cx_common, true);
  add_tester(complexity, cx_tester);
  add_instance(complexity, cx_instance, "paninski",
               {"paninski", "paninski-far", "point-mass", "uniform"});
  complexity->add_option("--target", cx_config.target);
  complexity->add_option("--trials", cx_config.search.trials)
      ->check(CLI::Range(std::int64_t{100}, std::int64_t{100000000}));
  complexity->add_option("--m-start", cx_config.search.m_start);
  complexity->add_option("--m-cap", cx_config.search.m_cap);
  complexity->add_option("--bisect-ratio", cx_config.search.bisect_ratio);

  // curve
  Common curve_common;
  TesterOptions curve_tester;
  InstanceOptions curve_instance;
  CurveConfig curve_config;
  std::string curve_csv;
  CLI::App* curve = app.add_subcommand("curve", "Scaling curve over k");
  add_common(curve, curve_common, true);
  curve->add_option("--tester", curve_tester.tester)
      ->check(CLI::IsMember({"simple", "pan", "chi2", "simple_pan_test",
                             "pan_test", "nonprivate_chi2_test"}));
  curve->add_option("--k-values", curve_config.k_values, "Comma-separated")
      ->required()
      ->delimiter(',');
  curve->add_option("--alpha", curve_config.alpha);
  curve->add_option("--epsilon", curve_config.epsilon);
  curve->add_option("--distance-constant", curve_config.distance_constant);
  add_instance(curve, curve_instance, "paninski",
               {"paninski", "paninski-far", "point-mass", "uniform"});
  curve->add_option("--target", curve_config.target);
  curve->add_option("--trials", curve_config.search.trials)
      ->check(CLI::Range(std::int64_t{100}, std::int64_t{100000000}));
  curve->add_option("--m-cap", curve_config.search.m_cap);
  curve->add_option("--csv", curve_csv, "CSV export path");

  // partition-exp
  Common part_common;
  std::int64_t part_k = 64, part_n = 8, part_trials = 100000;
  double part_alpha = 0.45;
  CLI::App* part = app.add_subcommand(
      "partition-exp", "Induced-distance success fraction over partitions");
  add_common(part, part_common, false);
  part->add_option("--k", part_k);
  part->add_option("--n", part_n);
  part->add_option("--alpha", part_alpha, "TV of the Paninski instance");
  part->add_option("--trials", part_trials)
      ->check(CLI::Range(std::int64_t{1}, std::int64_t{100000000}));

  // audit
  Common audit_common;
  std::string audit_mechanism = "randomized-response";
  double audit_epsilon = 1.0;
  double audit_claimed = 0.0;
  std::int64_t audit_trials = 100000;
  double audit_confidence = 0.95;
  std::int64_t audit_k = 4;
  std::string audit_stream = "0,1,2,3,0,1,2,3";
  std::int64_t audit_position = 1;
  Element audit_replacement = -1;
  std::int64_t audit_t = -1;
  std::vector<Element> audit_bins;
  bool audit_noiseless = false;
  EmpiricalEpsilonOptions audit_options;
  CLI::App* audit = app.add_subcommand("audit", "Empirical privacy audit");
  add_common(audit, audit_common, false);
  audit->add_option("--mechanism", audit_mechanism)
      ->check(CLI::IsMember({"randomized-response", "histogram-state"}));
  audit->add_option("--epsilon", audit_epsilon, "Mechanism epsilon");
  audit->add_option("--claimed", audit_claimed, "Claimed epsilon")->required();
  audit->add_option("--trials", audit_trials);
  audit->add_option("--confidence", audit_confidence);
  audit->add_option("--k", audit_k);
  audit->add_option("--stream", audit_stream, "Comma-separated base stream");
  audit->add_option("--position", audit_position, "1-based replaced position");
  audit->add_option("--replacement", audit_replacement,
                    "Replacement element (default: next element mod k)");
  audit->add_option("--t", audit_t, "Intrusion time (default: stream end)");
  audit->add_option("--bins", audit_bins, "Audit only these bins")
      ->delimiter(',');
  audit->add_flag("--noiseless", audit_noiseless);
  audit->add_option("--min-cell-count", audit_options.min_cell_count);
  audit->add_option("--bootstrap", audit_options.bootstrap_resamples);
  audit->add_option("--smoothing", audit_options.smoothing);

  // bridge-demo
  Common bridge_common;
  std::string bridge_protocol = "randomized-response";
  double bridge_epsilon = 1.0;
  std::int64_t bridge_trials = 100000;
  std::string bridge_stream = "1,0,1,1";
  std::string bridge_trace;
  CLI::App* bridge = app.add_subcommand(
      "bridge-demo", "Pan <-> local transforms on a toy protocol");
  add_common(bridge, bridge_common, true);
  bridge->add_option("--protocol", bridge_protocol,
                     "parity | randomized-response | adaptive");
  bridge->add_option("--epsilon", bridge_epsilon);
  bridge->add_option("--trials", bridge_trials);
  bridge->add_option("--stream", bridge_stream);
  bridge->add_option("--trace", bridge_trace, "JSON-lines trace of one run");

  try {
    std::vector<std::string> args = expand_config(app, raw_args);
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  }

  try {
    if (test->parsed()) {
      return cmd_test(test_tester, test_instance, test_file, test_noiseless,
                      test_m, test_common, out, err);
    }
    if (power->parsed()) {
      PowerConfig config;
      config.tester = tester_spec(power_tester);
      config.far = instance_spec(power_instance);
      config.m = power_m;
      config.trials = power_trials;
      if (power_m < 1) throw ConfigError("--m must be positive");
      make_source(config.far, config.tester.k, config.tester.alpha);
      config.seed = resolve_seed(power_common, err);
      const PowerEstimate e = run_power(config, power_common.threads);
      print_power(e, out);
      write_records(power_common, {power_record(config, e)});
      return kExitOk;
    }
    if (complexity->parsed()) {
      cx_config.tester = tester_spec(cx_tester);
      cx_config.far = instance_spec(cx_instance);
      make_source(cx_config.far, cx_config.tester.k, cx_config.tester.alpha);
      cx_config.seed = resolve_seed(cx_common, err);
      cx_config.search.threads = cx_common.threads;
      const ComplexityPoint p = run_complexity(cx_config);
      print_point(p, out);
      write_records(cx_common, {complexity_record(cx_config, p)});
      return kExitOk;
    }
    if (curve->parsed()) {
      curve_config.kind = parse_tester_kind(curve_tester.tester);
      curve_config.far = instance_spec(curve_instance);
      for (std::int64_t k : curve_config.k_values) {
        TesterSpec{curve_config.kind, k, curve_config.alpha,
                   curve_config.epsilon, curve_config.distance_constant}
            .validate();
        make_source(curve_config.far, k, curve_config.alpha);
      }
      curve_config.seed = resolve_seed(curve_common, err);
      curve_config.search.threads = curve_common.threads;
      const ScalingCurve result = scaling_curve(curve_config);
      for (const auto& p : result.points) print_point(p, out);
      if (result.fit) {
        human(out) << "slope " << result.fit->slope << "  stderr "
                   << result.fit->slope_stderr << "\n";
      }
      if (result.partial) out << "curve partial (NotFound points)\n";
      write_records(curve_common, {curve_record(curve_config, result)});
      if (!curve_csv.empty()) write_curve_csv({result}, curve_csv);
      return kExitOk;
    }
    if (part->parsed()) {
      const std::uint64_t seed = resolve_seed(part_common, err);
      const PartitionExperimentResult r = partition_distance_experiment(
          part_k, part_n, part_alpha, part_trials, RngSeed{seed, 0});
      nlohmann::json j = r;
      j["seed"] = seed;
      out << j.dump() << "\n";
      return kExitOk;
    }
    if (audit->parsed()) {
      if (!(audit_claimed > 0.0)) throw ConfigError("--claimed must be > 0");
      if (!(audit_epsilon > 0.0)) throw ConfigError("--epsilon must be > 0");
      DiscreteMechanism mechanism;
      NeighborPair pair;
      std::optional<double> analytic;
      if (audit_mechanism == "randomized-response") {
        if (audit_noiseless) {
          throw ConfigError("--noiseless applies to histogram-state only");
        }
        mechanism = randomized_response_mechanism(audit_epsilon);
        pair = NeighborPair::make({0}, {1});
        analytic = audit_epsilon;
      } else {
        TesterConfig config;
        config.k = audit_k;
        config.epsilon = audit_epsilon;
        config.noiseless_debug = audit_noiseless;
        std::vector<Element> base = parse_elements(audit_stream);
        if (audit_position < 1 ||
            audit_position > static_cast<std::int64_t>(base.size())) {
          throw ConfigError("--position outside the stream");
        }
        const Element replacement =
            audit_replacement >= 0 ? audit_replacement
                                   : (base[audit_position - 1] + 1) % audit_k;
        pair = NeighborPair::replace(base, audit_position, replacement);
        const std::int64_t t = audit_t >= 0 ? audit_t : pair.length();
        mechanism = histogram_state_mechanism(config, t, audit_bins);
        // One audited bin: the per-bin bound. Several: the whole-vector L1
        // bound, which upper-bounds any sub-vector.
        analytic = audit_bins.size() == 1
                       ? laplace_state_ratio_bound(pair, t, audit_epsilon)
                       : laplace_state_l1_ratio_bound(pair, t, audit_epsilon);
      }
      const std::uint64_t seed = resolve_seed(audit_common, err);
      AuditReport report =
          empirical_epsilon(mechanism, pair, audit_trials, audit_confidence,
                            audit_claimed, RngSeed{seed, 0}, audit_options,
                            audit_mechanism);
      report.analytic_bound = analytic;
      nlohmann::json j = report;
      j["seed"] = seed;
      out << j.dump() << "\n";
      return report.verdict == AuditVerdict::kFail ? kExitAuditFail : kExitOk;
    }
    if (bridge->parsed()) {
      PanProtocol protocol;
      if (bridge_protocol == "parity") {
        protocol = parity_counter();
      } else if (bridge_protocol == "randomized-response") {
        protocol = randomized_response_sum(bridge_epsilon);
      } else if (bridge_protocol == "adaptive") {
        protocol = adaptive_chooser(bridge_epsilon);
      } else {
        throw ConfigError("unknown protocol '" + bridge_protocol + "'");
      }
      if (bridge_trials < kMinBridgeTrials) {
        throw ConfigError("--trials must be at least " +
                          std::to_string(kMinBridgeTrials));
      }
      const std::vector<Element> stream = parse_elements(bridge_stream);
      const std::uint64_t seed = resolve_seed(bridge_common, err);
      const BridgeReport report =
          bridge_check(protocol, stream, bridge_trials, RngSeed{seed, 0});
      human(out) << "protocol " << report.protocol << "  trials "
                 << report.trials << "\n";
      out << std::left << std::setw(6) << "t" << std::setw(16)
          << "monte_carlo_tv" << std::setw(12) << "exact_tv"
          << "state_space\n";
      for (const auto& p : report.prefixes) {
        out << std::setw(6) << p.t << std::setw(16) << p.monte_carlo_tv
            << std::setw(12)
            << (p.exact_tv ? std::to_string(*p.exact_tv) : std::string("-"))
            << p.state_space << "\n";
      }
      out << std::right << "output_tv " << report.output_tv
          << "  roundtrip_tv " << report.roundtrip_tv << "  prefix_monotone "
          << (report.prefix_monotone ? "yes" : "no") << "\n";
      if (!bridge_common.output.empty()) {
        nlohmann::json j = report;
        j["seed"] = seed;
        persist_results({j}, bridge_common.output);
      }
      if (!bridge_trace.empty()) {
        Rng rng(RngSeed{seed, 0}.derive(0x5452));
        RngCoins coins(rng);
        const LocalProtocol lp = pan_to_local(two_intrusion_to_one(protocol));
        std::set<std::int64_t> times;
        for (std::size_t t = 1; t <= stream.size(); ++t) {
          times.insert(static_cast<std::int64_t>(t));
        }
        const SimulationResult r = simulate(lp, stream, coins, times);
        std::ofstream trace(bridge_trace, std::ios::trunc);
        if (!trace) throw InputError("cannot open " + bridge_trace);
        trace << trace_to_jsonl(r.trace);
      }
      return kExitOk;
    }
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitConfig;
}

}  // namespace pantest::cli
