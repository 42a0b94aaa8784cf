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

#ifndef ADAFIX_ANALYSIS_HPP_
#define ADAFIX_ANALYSIS_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "adafix/numerics.hpp"
#include "adafix/objectives.hpp"
#include "adafix/trajectory.hpp"

namespace adafix {

struct RecedeBoundInput {
  ParamVector x;
  ParamVector x_star;
  ParamVector g;  // gradient at x
  double delta = 0.0;
  double eta = 0.0;
};

enum class BoundForm {
  /// eta * (sqrt(delta^2 + G^2 / D^2) - delta): the positive root of
  /// s^2 D^2 + 2 eta delta D^2 s - eta^2 G^2 = 0.
  ExactRoot,
  /// eta * (sqrt(delta^2 D^2 + G^2) / D^2 - delta). Agrees with ExactRoot
  /// only at D = 1; kept for side-by-side comparison.
  Printed,
};

/// Largest s = sqrt(max_i v_i) for which the one-step inequality chain
/// gives a non-decreasing distance to x_star, with D = ||x - x_star|| and
/// G = ||g||. Throws DegenerateInput when D = 0.
double recede_bound(const RecedeBoundInput& in,
                    BoundForm form = BoundForm::ExactRoot);

/// -2 eta delta D^2 + eta^2 G^2 / s >= s D^2, the scalar inequality whose
/// positive root is recede_bound. Requires s > 0.
bool recede_inequality_holds(double s, double delta, double eta, double D,
                             double G);

struct RecedeStep {
  ParamVector x_next;
  double dist2_before = 0.0;
  double dist2_after = 0.0;
  bool non_decreasing = false;
};

/// One momentum-free adaptive step x' = x - eta (diag(v) + eps I)^(-1/2) grad
/// f(x), compared against the distance before the step with relative slack
/// 1e-12. Throws DegenerateInput if f has no optimum, x is the optimum, or a
/// denominator is zero; InvalidParameter on a negative v entry;
/// HypothesisViolated if <-grad f(x), x* - x> > delta ||x* - x||^2 fails.
RecedeStep recede_step(const Objective& f, const ParamVector& x,
                       const ParamVector& v_diag, double delta, double eta,
                       double epsilon = 0.0);
bool verify_recede(const Objective& f, const ParamVector& x,
                   const ParamVector& v_diag, double delta, double eta,
                   double epsilon = 0.0);

struct Annulus {
  double r_min = 0.0;
  double r_max = 0.0;
};

struct OpcCheck {
  bool holds = true;
  std::vector<ParamVector> violations;
};

/// Samples n points in the annulus around x_star (uniform in r^2, uniform
/// direction) and collects those where the strict one-point condition with
/// `delta` fails. Throws InvalidRegion unless 0 <= r_min < r_max < inf and
/// n >= 1.
OpcCheck check_opc(const Objective& f, const ParamVector& x_star, double delta,
                   const Annulus& region, std::int64_t n_samples, Rng& rng);

/// min over samples of <-grad f(x), x* - x> / ||x* - x||^2; may be <= 0.
double estimate_delta(const Objective& f, const ParamVector& x_star,
                      const Annulus& region, std::int64_t n_samples, Rng& rng);

/// max over consecutive points of ||g_{k+1} - g_k|| / ||x_{k+1} - x_k||,
/// skipping zero displacements. Throws InsufficientData with fewer than two
/// points or when every displacement is zero.
double estimate_L(std::span<const ParamVector> xs,
                  std::span<const ParamVector> gs);
double estimate_L(const TrajectoryRecord& record);

/// eta / (sqrt(v_hat_i) + epsilon). Throws InvalidParameter on v_hat_i < 0.
ParamVector effective_lr(const ParamVector& v_hat, double eta, double epsilon);

struct EscapeReport {
  bool escaped = false;
  std::optional<std::int64_t> first_escape_step;
  double min_distance = 0.0;
  std::int64_t min_distance_step = 0;
};

/// Escape means some distance exceeds `radius` after the sequence first
/// came within `radius`. Steps are indices into `distances`.
EscapeReport detect_escape(std::span<const double> distances, double radius);
/// Same over a record, reporting row steps t.
EscapeReport detect_escape(const TrajectoryRecord& record,
                           const ParamVector& x_star, double radius);

}  // namespace adafix

#endif  // ADAFIX_ANALYSIS_HPP_
