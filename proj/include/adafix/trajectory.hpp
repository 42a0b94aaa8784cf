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

#ifndef ADAFIX_TRAJECTORY_HPP_
#define ADAFIX_TRAJECTORY_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "adafix/numerics.hpp"

namespace adafix {

/// One recorded step. Row t holds the iterate after t optimizer steps and
/// the noise-free gradient at that iterate. Second-momentum fields describe
/// the step that produced the row, so they are empty at t = 0 (and for
/// methods without a second momentum).
struct TrajectoryRow {
  std::int64_t t = 0;
  ParamVector x;
  ParamVector g;
  double f = 0.0;
  double grad_norm = 0.0;
  std::optional<double> v_norm;
  std::optional<double> sqrt_vmax_hat;
  std::optional<double> max_eff_lr;
  std::optional<double> dist_to_opt;
  std::optional<bool> gate_open;
  std::optional<double> L_est;
};

/// Set when a run stopped because an iterate or evaluation became
/// non-finite; `t` is the step that failed.
struct Divergence {
  std::int64_t t = 0;
  std::string reason;
};

struct TrajectoryRecord {
  std::size_t dim = 0;
  std::vector<TrajectoryRow> rows;
  std::optional<Divergence> divergence;
};

}  // namespace adafix

#endif  // ADAFIX_TRAJECTORY_HPP_
