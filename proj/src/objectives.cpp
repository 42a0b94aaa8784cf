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

#include "adafix/objectives.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <utility>

#include "adafix/error.hpp"

namespace adafix {

Objective::Objective(std::string name, std::size_t dim, ScalarFn eval,
                     GradFn grad)
    : name_(std::move(name)),
      dim_(dim),
      eval_(std::move(eval)),
      grad_(std::move(grad)) {
  if (dim_ == 0) {
    throw Error(ErrorKind::InvalidParameter, "objective dim must be >= 1");
  }
}

void Objective::require_dim(const ParamVector& x) const {
  if (x.dim() != dim_) {
    throw Error(ErrorKind::DimensionMismatch,
                name_ + " expects dim " + std::to_string(dim_) + ", got " +
                    std::to_string(x.dim()));
  }
}

double Objective::eval(const ParamVector& x) const {
  require_dim(x);
  const double value = eval_(x);
  if (!std::isfinite(value)) {
    throw Error(ErrorKind::NonFiniteEvaluation, name_ + " value is not finite");
  }
  return value;
}

ParamVector Objective::grad(const ParamVector& x) const {
  require_dim(x);
  std::vector<double> g = grad_(x);
  if (!all_finite(g)) {
    throw Error(ErrorKind::NonFiniteEvaluation, name_ + " gradient is not finite");
  }
  return ParamVector(std::move(g));
}

ScalarFn Objective::eval_fn() const {
  return eval_;
}

Objective& Objective::with_optimum(ParamVector x_star) {
  require_dim(x_star);
  optimum_ = std::move(x_star);
  return *this;
}

Objective& Objective::with_opc_region(OpcRegion region) {
  require_dim(region.center);
  region_ = std::move(region);
  return *this;
}

Objective& Objective::with_smoothness(double L) {
  smoothness_ = L;
  return *this;
}

Objective bowl(double delta) {
  if (!(delta > 0.0 && delta < 2.0)) {
    throw Error(ErrorKind::InvalidParameter, "bowl delta must lie in (0, 2)");
  }
  Objective f(
      "bowl", 2,
      [](const ParamVector& x) { return 1.0 - std::cos(x[0] * x[0] + x[1] * x[1]); },
      [](const ParamVector& x) {
        const double s = std::sin(x[0] * x[0] + x[1] * x[1]);
        return std::vector<double>{2.0 * x[0] * s, 2.0 * x[1] * s};
      });
  const double margin = std::asin(delta / 2.0);
  f.with_optimum(ParamVector{0.0, 0.0});
  f.with_opc_region(OpcRegion{ParamVector{0.0, 0.0}, std::sqrt(margin),
                              std::sqrt(std::numbers::pi - margin), delta});
  return f;
}

Objective opc_quadratic(double c, const ParamVector& x_star) {
  if (!(c > 0.0) || !std::isfinite(c)) {
    throw Error(ErrorKind::InvalidParameter, "opc_quadratic needs c > 0");
  }
  Objective f(
      "opc_quadratic", x_star.dim(),
      [c, x_star](const ParamVector& x) {
        double acc = 0.0;
        for (std::size_t i = 0; i < x.dim(); ++i) {
          const double d = x[i] - x_star[i];
          acc += d * d;
        }
        return 0.5 * c * acc;
      },
      [c, x_star](const ParamVector& x) {
        std::vector<double> g(x.dim());
        for (std::size_t i = 0; i < x.dim(); ++i) g[i] = c * (x[i] - x_star[i]);
        return g;
      });
  f.with_optimum(x_star);
  f.with_opc_region(OpcRegion{x_star, 0.0,
                              std::numeric_limits<double>::infinity(), c});
  f.with_smoothness(c);
  return f;
}

Objective anisotropic_quadratic(const ParamVector& diag) {
  double lo = diag[0];
  double hi = diag[0];
  for (double d : diag) {
    if (!(d > 0.0)) {
      throw Error(ErrorKind::InvalidParameter,
                  "anisotropic_quadratic needs positive diagonal entries");
    }
    lo = std::min(lo, d);
    hi = std::max(hi, d);
  }
  Objective f(
      "aniso_quadratic", diag.dim(),
      [diag](const ParamVector& x) {
        double acc = 0.0;
        for (std::size_t i = 0; i < x.dim(); ++i) acc += diag[i] * x[i] * x[i];
        return 0.5 * acc;
      },
      [diag](const ParamVector& x) {
        std::vector<double> g(x.dim());
        for (std::size_t i = 0; i < x.dim(); ++i) g[i] = diag[i] * x[i];
        return g;
      });
  const ParamVector origin(diag.dim(), 0.0);
  f.with_optimum(origin);
  f.with_opc_region(
      OpcRegion{origin, 0.0, std::numeric_limits<double>::infinity(), lo});
  f.with_smoothness(hi);
  return f;
}

NoisyObjective::NoisyObjective(Objective base, double sigma, std::uint64_t seed)
    : base_(std::move(base)),
      sigma_(sigma),
      rng_(seed),
      noise_(base_.dim(), 0.0) {
  if (!(sigma_ >= 0.0) || !std::isfinite(sigma_)) {
    throw Error(ErrorKind::InvalidParameter, "noise sigma must be >= 0");
  }
}

void NoisyObjective::draw() {
  if (sigma_ == 0.0) return;
  for (double& n : noise_) n = sigma_ * rng_.normal();
}

ParamVector NoisyObjective::grad(const ParamVector& x) const {
  if (sigma_ == 0.0) return base_.grad(x);
  ParamVector g = base_.grad(x);
  for (std::size_t i = 0; i < g.dim(); ++i) g[i] += noise_[i];
  return g;
}

}  // namespace adafix
