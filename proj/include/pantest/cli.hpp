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

// Command-line front end. Exit codes: 0 success, 1 audit failure,
// 2 configuration error, 3 input-data error.

#ifndef PANTEST_CLI_HPP_
#define PANTEST_CLI_HPP_

#include <ostream>
#include <string>
#include <vector>

namespace pantest::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitAuditFail = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitInput = 3;

// `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace pantest::cli

#endif  // PANTEST_CLI_HPP_
