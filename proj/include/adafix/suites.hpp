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

#ifndef ADAFIX_SUITES_HPP_
#define ADAFIX_SUITES_HPP_

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "adafix/analysis.hpp"
#include "adafix/numerics.hpp"

namespace adafix {

enum class SuiteKind { Theorem31, Gradients, OptimizerProperties };

std::optional<SuiteKind> parse_suite_kind(std::string_view name);
std::string_view to_string(SuiteKind kind);

/// One randomized recede-bound configuration on opc_quadratic(c, x_star).
struct RecedeCase {
  double c = 0.0;
  ParamVector x_star;
  ParamVector x;
  double delta = 0.0;
  double eta = 0.0;
  ParamVector v_diag;  // sqrt(max_i v_i) <= bound * (1 - 1e-9)
  double bound = 0.0;
};

/// c in [0.5, 5], dim in {1, 2, 5}, ||x - x*|| in [0.1, 10],
/// delta in (0, c), eta in [0.01, 1], v_diag >= 0 below the bound.
std::vector<RecedeCase> generate_recede_cases(std::uint64_t seed, std::int64_t n,
                                              BoundForm form = BoundForm::ExactRoot);

struct SuiteReport {
  SuiteKind kind = SuiteKind::Theorem31;
  std::uint64_t seed = 0;
  std::int64_t n_cases = 0;
  std::int64_t failures = 0;
  nlohmann::json cases = nlohmann::json::array();

  bool passed() const { return failures == 0; }
  nlohmann::json to_json() const;
};

/// Runs a property suite and reports every case's inputs, expectation,
/// observation and verdict. For gradients, n_cases is the number of points
/// per objective; for optimizer_properties, the number of randomized
/// 1000-step runs per optimizer. Throws ConfigError when n_cases < 1.
SuiteReport run_verification_suite(SuiteKind kind, std::uint64_t seed,
                                   std::int64_t n_cases,
                                   BoundForm form = BoundForm::ExactRoot);

}  // namespace adafix

#endif  // ADAFIX_SUITES_HPP_
