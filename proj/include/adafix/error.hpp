// Copyright 2026 The AdaFix Authors. All Rights Reserved.
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

#ifndef ADAFIX_ERROR_HPP_
#define ADAFIX_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace adafix {

enum class ErrorKind {
  DimensionMismatch,
  DivisionByZero,
  NonFiniteEvaluation,
  NonFiniteIterate,
  InvalidParameter,
  InvalidSchedule,
  DegenerateInput,
  HypothesisViolated,
  InvalidRegion,
  InsufficientData,
  ConfigError,
  IoError,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries one of the kinds above so
/// callers (and the CLI exit-code mapping) can dispatch without parsing text.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace adafix

#endif  // ADAFIX_ERROR_HPP_
