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

#ifndef ADAFIX_OPTIMIZERS_HPP_
#define ADAFIX_OPTIMIZERS_HPP_

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

#include "adafix/numerics.hpp"
#include "adafix/objectives.hpp"

namespace adafix {

/// t -> bound on the per-coordinate effective learning rate.
using Schedule = std::function<double(std::int64_t)>;

/// final_lr * (1 - 1 / (gamma * t + 1))
Schedule adabound_lower(double final_lr, double gamma);
/// final_lr * (1 + 1 / (gamma * t))
Schedule adabound_upper(double final_lr, double gamma);

struct HyperParams {
  double eta = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  double mu = 0.9;  // heavy-ball momentum (sgdm)

  // AdaBound. When a schedule is unset the default band around final_lr is
  // used, tightening at rate gamma (default 1 - beta2).
  Schedule bound_lower;
  Schedule bound_upper;
  double final_lr = 0.1;
  std::optional<double> bound_gamma;

  // AdaFix.
  double L0 = 0.0;
  bool gate_signed = false;       // compare max_i g_i instead of max_i |g_i|
  bool freeze_permanent = false;  // never reopen the gate once it closed

  /// Throws InvalidParameter on out-of-range values.
  void validate() const;
  double lower_at(std::int64_t t) const;
  double upper_at(std::int64_t t) const;
};

struct OptimizerState {
  std::int64_t t = 0;
  ParamVector m;          // first momentum (velocity for sgdm)
  ParamVector v;          // second momentum, elementwise >= 0
  ParamVector v_hat_max;  // amsgrad running max of bias-corrected v
  double L = 0.0;         // adafix running smoothness estimate
  std::optional<ParamVector> v_frozen_hat;  // adafix v-hat in use
  bool gate_latched = false;  // adafix freeze_permanent: gate closed for good

  static OptimizerState fresh(std::size_t dim, double L0 = 0.0);
};

struct StepDiagnostics {
  ParamVector v_hat_used;
  ParamVector effective_lr;
  std::optional<bool> gate_open;
  std::optional<double> l_t;
  /// Gradient at x_next that adafix evaluated; reusable as the next g_t when
  /// the gradient oracle is deterministic.
  std::optional<ParamVector> g_next;
};

struct StepResult {
  ParamVector x_next;
  OptimizerState state;
  StepDiagnostics diagnostics;
};

using GradientFn = std::function<ParamVector(const ParamVector&)>;

// All steps throw DimensionMismatch when x, g and the state disagree, and
// NonFiniteIterate when the new iterate or state would contain NaN/Inf.

/// u <- mu u + g; x <- x - eta u.
StepResult sgdm_step(const ParamVector& x, const ParamVector& g,
                     const OptimizerState& s, const HyperParams& h);

/// Bias-corrected Adam, x <- x - eta m_hat / (sqrt(v_hat) + eps).
StepResult adam_step(const ParamVector& x, const ParamVector& g,
                     const OptimizerState& s, const HyperParams& h);

/// Adam with the denominator taken from the running max of v_hat.
StepResult amsgrad_step(const ParamVector& x, const ParamVector& g,
                        const OptimizerState& s, const HyperParams& h);

/// Adam whose per-coordinate effective learning rate is clipped into
/// [lower(t), upper(t)]. Throws InvalidSchedule if lower(t) > upper(t).
StepResult adabound_step(const ParamVector& x, const ParamVector& g,
                         const OptimizerState& s, const HyperParams& h);

/// Adam whose second momentum is only refreshed while the gradient is large
/// relative to the running smoothness estimate.
///
/// The gate is open when max_i |g_i| >= L * eta (signed max with
/// gate_signed). While open, v takes the usual EMA update and its
/// bias-corrected value is captured; while closed, v and the captured v_hat
/// are left untouched and the step keeps dividing by the captured v_hat.
/// After the step, l_t = ||g' - g|| / ||x_next - x|| with g' = grad_at(x_next)
/// and L <- max(L, l_t); a zero displacement leaves L unchanged.
///
/// The gate is treated as open until a first v_hat has been captured, since
/// dividing by an all-zero second momentum is meaningless.
StepResult adafix_step(const ParamVector& x, const ParamVector& g,
                       const OptimizerState& s, const HyperParams& h,
                       const GradientFn& grad_at);
StepResult adafix_step(const ParamVector& x, const ParamVector& g,
                       const OptimizerState& s, const HyperParams& h,
                       const Objective& f);

enum class OptimizerKind { Sgdm, Adam, AmsGrad, AdaBound, AdaFix };

std::string_view to_string(OptimizerKind kind);
/// Accepts "sgdm", "adam", "amsgrad", "adabound", "adafix".
std::optional<OptimizerKind> parse_optimizer_kind(std::string_view name);

/// Dispatches on kind; grad_at is only consulted by adafix.
StepResult optimizer_step(OptimizerKind kind, const ParamVector& x,
                          const ParamVector& g, const OptimizerState& s,
                          const HyperParams& h, const GradientFn& grad_at);

}  // namespace adafix

#endif  // ADAFIX_OPTIMIZERS_HPP_
