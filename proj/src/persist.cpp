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

#include "pantest/persist.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <string>

#include "pantest/errors.hpp"

namespace pantest {
namespace {

std::string utc_timestamp() {
  const std::time_t now =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

nlohmann::json make_record(const char* type, nlohmann::json config,
                           nlohmann::json result) {
  return nlohmann::json{{"type", type},
                        {"config", std::move(config)},
                        {"result", std::move(result)},
                        {"timestamp", utc_timestamp()}};
}

}  // namespace

nlohmann::json power_record(const PowerConfig& config,
                            const PowerEstimate& result) {
  return make_record("power", config, result);
}

nlohmann::json complexity_record(const ComplexityConfig& config,
                                 const ComplexityPoint& result) {
  return make_record("complexity", config, result);
}

nlohmann::json curve_record(const CurveConfig& config,
                            const ScalingCurve& result) {
  return make_record("curve", config, result);
}

nlohmann::json strip_timestamp(nlohmann::json record) {
  record.erase("timestamp");
  return record;
}

nlohmann::json rerun_record(const nlohmann::json& record, int threads) {
  const std::string type = record.at("type").get<std::string>();
  const nlohmann::json& config = record.at("config");
  if (type == "power") {
    const auto c = config.get<PowerConfig>();
    return power_record(c, run_power(c, threads));
  }
  if (type == "complexity") {
    auto c = config.get<ComplexityConfig>();
    c.search.threads = threads;
    return complexity_record(c, run_complexity(c));
  }
  if (type == "curve") {
    auto c = config.get<CurveConfig>();
    c.search.threads = threads;
    return curve_record(c, scaling_curve(c));
  }
  throw ConfigError("unknown record type '" + type + "'");
}

void persist_results(const std::vector<nlohmann::json>& records,
                     const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError("cannot open " + path.string() + " for writing");
  for (const auto& r : records) out << r.dump() << '\n';
  out.flush();
  if (!out) throw InputError("write failed for " + path.string());
}

std::vector<nlohmann::json> read_results(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string() + " for reading");
  std::vector<nlohmann::json> records;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.empty()) continue;
    try {
      records.push_back(nlohmann::json::parse(line));
    } catch (const nlohmann::json::parse_error& e) {
      throw InputError(path.string() + ":" + std::to_string(number) + ": " +
                       e.what());
    }
  }
  return records;
}

void write_curve_csv(const std::vector<ScalingCurve>& curves,
                     const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw InputError("cannot open " + path.string() + " for writing");
  out.precision(17);
  out << "tester,k,alpha,epsilon,target,m_star,slope,slope_stderr\n";
  for (const auto& curve : curves) {
    for (const auto& p : curve.points) {
      out << curve.tester_id << ',' << p.k << ',' << p.alpha << ','
          << p.epsilon << ',' << p.target << ',';
      if (p.m_star) out << *p.m_star;
      out << ',';
      if (curve.fit) {
        out << curve.fit->slope << ',';
        if (std::isfinite(curve.fit->slope_stderr)) {
          out << curve.fit->slope_stderr;
        }
      } else {
        out << ',';
      }
      out << '\n';
    }
  }
  if (!out) throw InputError("write failed for " + path.string());
}

}  // namespace pantest
