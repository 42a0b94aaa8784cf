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

#ifndef ADAFIX_OBJECTIVES_HPP_
#define ADAFIX_OBJECTIVES_HPP_

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "adafix/numerics.hpp"

namespace adafix {

/// Annulus r_min < ||x - center|| < r_max on which
/// <-grad f(x), center - x> > d * ||center - x||^2 holds for every d < delta.
struct OpcRegion {
  ParamVector center;
  double r_min = 0.0;
  double r_max = 0.0;
  double delta = 0.0;
};

/// A differentiable test function. Stateless and safe to share.
class Objective {
 public:
  using GradFn = std::function<std::vector<double>(const ParamVector&)>;

  Objective(std::string name, std::size_t dim, ScalarFn eval, GradFn grad);

  const std::string& name() const noexcept { return name_; }
  std::size_t dim() const noexcept { return dim_; }

  /// Throws DimensionMismatch or NonFiniteEvaluation.
  double eval(const ParamVector& x) const;
  ParamVector grad(const ParamVector& x) const;
  ScalarFn eval_fn() const;

  const std::optional<ParamVector>& optimum() const noexcept { return optimum_; }
  const std::optional<OpcRegion>& opc_region() const noexcept { return region_; }
  /// Global smoothness constant when it is known in closed form.
  std::optional<double> smoothness() const noexcept { return smoothness_; }

  Objective& with_optimum(ParamVector x_star);
  Objective& with_opc_region(OpcRegion region);
  Objective& with_smoothness(double L);

 private:
  void require_dim(const ParamVector& x) const;

  std::string name_;
  std::size_t dim_;
  ScalarFn eval_;
  GradFn grad_;
  std::optional<ParamVector> optimum_;
  std::optional<OpcRegion> region_;
  std::optional<double> smoothness_;
};

/// f(x) = 1 - cos(x1^2 + x2^2), minimized at the origin.
///
/// <-grad f(x), -x> = 2 r^2 sin(r^2), so the strict one-point condition with
/// constant `delta` holds exactly on asin(delta/2) < r^2 < pi - asin(delta/2).
/// That annulus is stored as the region; delta must lie in (0, 2).
Objective bowl(double delta = 0.5);

/// f(x) = (c/2) ||x - x_star||^2. One-point strongly convex for every
/// delta < c on all of R^dim. Throws InvalidParameter if c <= 0.
Objective opc_quadratic(double c, const ParamVector& x_star);

/// f(x) = (1/2) sum diag[i] x[i]^2 with smoothness max_i diag[i].
/// Throws InvalidParameter on a nonpositive entry.
Objective anisotropic_quadratic(const ParamVector& diag);

/// Adds i.i.d. N(0, sigma^2) noise to every gradient coordinate; eval is
/// unperturbed. One noise vector is drawn per call to draw() and reused by
/// grad() until the next draw, so several gradients taken within one
/// optimizer step share the same sample. Single consumer.
class NoisyObjective {
 public:
  NoisyObjective(Objective base, double sigma, std::uint64_t seed);

  const Objective& base() const noexcept { return base_; }
  double sigma() const noexcept { return sigma_; }
  std::size_t dim() const noexcept { return base_.dim(); }

  void draw();
  double eval(const ParamVector& x) const { return base_.eval(x); }
  ParamVector grad(const ParamVector& x) const;

 private:
  Objective base_;
  double sigma_;
  Rng rng_;
  std::vector<double> noise_;
};

}  // namespace adafix

#endif  // ADAFIX_OBJECTIVES_HPP_
