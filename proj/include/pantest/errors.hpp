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

#ifndef PANTEST_ERRORS_HPP_
#define PANTEST_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace pantest {

// A precondition on numeric arguments was violated (k = 0, mismatched
// domains, n > k, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// The input data could not satisfy the request, e.g. a stream ran out before
// the Poissonized sample size was reached.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A user-supplied protocol broke a structural contract of a transform.
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Invalid configuration (unknown key, out-of-range value, forbidden mode).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace pantest

#endif  // PANTEST_ERRORS_HPP_
