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

// JSON-lines persistence of experiment records. A record is
//   {"type": ..., "config": ..., "result": ..., "timestamp": ...}
// and re-running its config reproduces "result" exactly.

#ifndef PANTEST_PERSIST_HPP_
#define PANTEST_PERSIST_HPP_

#include <filesystem>
#include <vector>

#include "json.hpp"
#include "pantest/experiments.hpp"

namespace pantest {

nlohmann::json power_record(const PowerConfig& config,
                            const PowerEstimate& result);
nlohmann::json complexity_record(const ComplexityConfig& config,
                                 const ComplexityPoint& result);
nlohmann::json curve_record(const CurveConfig& config,
                            const ScalingCurve& result);

// The record without its timestamp.
nlohmann::json strip_timestamp(nlohmann::json record);

// Recomputes a record from its config. Throws ConfigError for an unknown
// record type.
nlohmann::json rerun_record(const nlohmann::json& record, int threads = 1);

// One record per line. Throws InputError naming the path on I/O failure.
void persist_results(const std::vector<nlohmann::json>& records,
                     const std::filesystem::path& path);
std::vector<nlohmann::json> read_results(const std::filesystem::path& path);

// One row per (curve, point): tester,k,alpha,epsilon,target,m_star,slope,
// slope_stderr. Empty m_star for NotFound.
void write_curve_csv(const std::vector<ScalingCurve>& curves,
                     const std::filesystem::path& path);

}  // namespace pantest

#endif  // PANTEST_PERSIST_HPP_
