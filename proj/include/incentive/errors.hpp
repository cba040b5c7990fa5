// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef INCENTIVE_ERRORS_HPP
#define INCENTIVE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace incentive {

// Exit codes used by the command-line front-end. Each error class maps to one.
enum class ExitCode : int {
  kSuccess = 0,
  kUsage = 1,
  kValidation = 2,
  kInfeasible = 3,
  kInternal = 4,
};

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual ExitCode exit_code() const noexcept = 0;
};

// Malformed input: bad indices, schema violations, rejected scenarios.
class ValidationError : public Error {
 public:
  using Error::Error;
  ExitCode exit_code() const noexcept override { return ExitCode::kValidation; }
};

// A customer or traffic vector that cannot be realized.
class InfeasibleError : public Error {
 public:
  using Error::Error;
  ExitCode exit_code() const noexcept override { return ExitCode::kInfeasible; }
};

// A violated algorithmic invariant, e.g. a negative cycle in an exchange
// graph that was supposed to come from an optimal decomposition.
class InvariantError : public Error {
 public:
  using Error::Error;
  ExitCode exit_code() const noexcept override { return ExitCode::kInternal; }
};

}  // namespace incentive

#endif  // INCENTIVE_ERRORS_HPP
