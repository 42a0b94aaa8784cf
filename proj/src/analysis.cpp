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

#include "adafix/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "adafix/error.hpp"

namespace adafix {

double recede_bound(const RecedeBoundInput& in, BoundForm form) {
  if (!(in.delta > 0.0)) {
    throw Error(ErrorKind::InvalidParameter, "delta must be > 0");
  }
  if (!(in.eta > 0.0)) {
    throw Error(ErrorKind::InvalidParameter, "eta must be > 0");
  }
  const double D = distance(in.x, in.x_star);
  if (D == 0.0) {
    throw Error(ErrorKind::DegenerateInput, "x coincides with x_star");
  }
  const double G = norm2(in.g);
  if (form == BoundForm::Printed) {
    return in.eta * (std::hypot(in.delta * D, G) / (D * D) - in.delta);
  }
  // sqrt(d^2 + q^2) - d rewritten as q^2 / (sqrt(d^2 + q^2) + d) to avoid
  // cancellation when delta dominates.
  const double q = G / D;
  return in.eta * q * q / (std::hypot(in.delta, q) + in.delta);
}

bool recede_inequality_holds(double s, double delta, double eta, double D,
                             double G) {
  if (!(s > 0.0)) {
    throw Error(ErrorKind::InvalidParameter, "s must be > 0");
  }
  const double D2 = D * D;
  return -2.0 * eta * delta * D2 + eta * eta * G * G / s >= s * D2;
}

RecedeStep recede_step(const Objective& f, const ParamVector& x,
                       const ParamVector& v_diag, double delta, double eta,
                       double epsilon) {
  if (!f.optimum()) {
    throw Error(ErrorKind::DegenerateInput, f.name() + " has no known optimum");
  }
  const ParamVector& x_star = *f.optimum();
  if (v_diag.dim() != x.dim()) {
    throw Error(ErrorKind::DimensionMismatch, "v_diag and x dimensions differ");
  }
  const double D = distance(x, x_star);
  if (D == 0.0) {
    throw Error(ErrorKind::DegenerateInput, "x coincides with x_star");
  }
  const ParamVector g = f.grad(x);
  const double pull = dot(g, x - x_star);
  if (!(pull > delta * D * D)) {
    throw Error(ErrorKind::HypothesisViolated,
                "one-point strong convexity fails at x for the given delta");
  }
  std::vector<double> next(x.dim());
  for (std::size_t i = 0; i < x.dim(); ++i) {
    if (v_diag[i] < 0.0) {
      throw Error(ErrorKind::InvalidParameter, "second momentum must be >= 0");
    }
    const double scale = std::sqrt(v_diag[i] + epsilon);
    if (scale == 0.0) {
      throw Error(ErrorKind::DegenerateInput, "zero second momentum entry");
    }
    next[i] = x[i] - eta * g[i] / scale;
  }
  if (!all_finite(next)) {
    throw Error(ErrorKind::NonFiniteIterate, "recede step overflowed");
  }
  RecedeStep out{ParamVector(std::move(next)), D * D, 0.0, false};
  const double after = distance(out.x_next, x_star);
  out.dist2_after = after * after;
  out.non_decreasing = out.dist2_after >= out.dist2_before * (1.0 - 1e-12);
  return out;
}

bool verify_recede(const Objective& f, const ParamVector& x,
                   const ParamVector& v_diag, double delta, double eta,
                   double epsilon) {
  return recede_step(f, x, v_diag, delta, eta, epsilon).non_decreasing;
}

namespace {

void require_region(const Annulus& region, std::int64_t n_samples) {
  if (!(region.r_min >= 0.0 && region.r_min < region.r_max &&
        std::isfinite(region.r_max))) {
    throw Error(ErrorKind::InvalidRegion, "need 0 <= r_min < r_max < inf");
  }
  if (n_samples < 1) {
    throw Error(ErrorKind::InvalidRegion, "need at least one sample");
  }
}

ParamVector sample_annulus(const ParamVector& center, const Annulus& region,
                           Rng& rng) {
  const double lo = region.r_min * region.r_min;
  const double hi = region.r_max * region.r_max;
  const double r = std::sqrt(rng.uniform(lo, hi));
  const ParamVector dir = rng.unit_vector(center.dim());
  std::vector<double> p(center.dim());
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = center[i] + r * dir[i];
  return ParamVector(std::move(p));
}

// <-grad f(x), x* - x> / ||x* - x||^2, or nullopt at x = x*.
std::optional<double> opc_ratio(const Objective& f, const ParamVector& x_star,
                                const ParamVector& x) {
  const ParamVector offset = x - x_star;
  const double D2 = dot(offset, offset);
  if (D2 == 0.0) return std::nullopt;
  return dot(f.grad(x), offset) / D2;
}

}  // namespace

OpcCheck check_opc(const Objective& f, const ParamVector& x_star, double delta,
                   const Annulus& region, std::int64_t n_samples, Rng& rng) {
  require_region(region, n_samples);
  OpcCheck out;
  for (std::int64_t k = 0; k < n_samples; ++k) {
    ParamVector x = sample_annulus(x_star, region, rng);
    const auto ratio = opc_ratio(f, x_star, x);
    if (!ratio) continue;
    if (!(*ratio > delta)) out.violations.push_back(std::move(x));
  }
  out.holds = out.violations.empty();
  return out;
}

double estimate_delta(const Objective& f, const ParamVector& x_star,
                      const Annulus& region, std::int64_t n_samples, Rng& rng) {
  require_region(region, n_samples);
  double best = std::numeric_limits<double>::infinity();
  for (std::int64_t k = 0; k < n_samples; ++k) {
    const auto ratio = opc_ratio(f, x_star, sample_annulus(x_star, region, rng));
    if (ratio) best = std::min(best, *ratio);
  }
  if (!std::isfinite(best)) {
    throw Error(ErrorKind::InsufficientData, "every sample hit x_star");
  }
  return best;
}

double estimate_L(std::span<const ParamVector> xs,
                  std::span<const ParamVector> gs) {
  if (xs.size() != gs.size()) {
    throw Error(ErrorKind::DimensionMismatch, "points and gradients differ in count");
  }
  if (xs.size() < 2) {
    throw Error(ErrorKind::InsufficientData, "need at least two points");
  }
  std::optional<double> best;
  for (std::size_t k = 0; k + 1 < xs.size(); ++k) {
    const double dx = distance(xs[k + 1], xs[k]);
    if (dx == 0.0) continue;
    const double l = distance(gs[k + 1], gs[k]) / dx;
    best = std::max(best.value_or(l), l);
  }
  if (!best) {
    throw Error(ErrorKind::InsufficientData, "every displacement is zero");
  }
  return *best;
}

double estimate_L(const TrajectoryRecord& record) {
  std::vector<ParamVector> xs;
  std::vector<ParamVector> gs;
  xs.reserve(record.rows.size());
  gs.reserve(record.rows.size());
  for (const auto& row : record.rows) {
    xs.push_back(row.x);
    gs.push_back(row.g);
  }
  return estimate_L(xs, gs);
}

ParamVector effective_lr(const ParamVector& v_hat, double eta, double epsilon) {
  std::vector<double> out(v_hat.dim());
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (v_hat[i] < 0.0) {
      throw Error(ErrorKind::InvalidParameter, "v_hat must be >= 0");
    }
    out[i] = eta / (std::sqrt(v_hat[i]) + epsilon);
  }
  if (!all_finite(out)) {
    throw Error(ErrorKind::NonFiniteEvaluation, "effective learning rate is not finite");
  }
  return ParamVector(std::move(out));
}

EscapeReport detect_escape(std::span<const double> distances, double radius) {
  if (!(radius > 0.0)) {
    throw Error(ErrorKind::InvalidParameter, "escape radius must be > 0");
  }
  if (distances.empty()) {
    throw Error(ErrorKind::InsufficientData, "empty distance sequence");
  }
  EscapeReport out;
  out.min_distance = distances[0];
  bool entered = false;
  for (std::size_t k = 0; k < distances.size(); ++k) {
    const double d = distances[k];
    if (d < out.min_distance) {
      out.min_distance = d;
      out.min_distance_step = static_cast<std::int64_t>(k);
    }
    if (d <= radius) {
      entered = true;
    } else if (entered && !out.escaped) {
      out.escaped = true;
      out.first_escape_step = static_cast<std::int64_t>(k);
    }
  }
  return out;
}

EscapeReport detect_escape(const TrajectoryRecord& record,
                           const ParamVector& x_star, double radius) {
  std::vector<double> distances;
  distances.reserve(record.rows.size());
  for (const auto& row : record.rows) distances.push_back(distance(row.x, x_star));
  EscapeReport out = detect_escape(distances, radius);
  out.min_distance_step = record.rows[static_cast<std::size_t>(out.min_distance_step)].t;
  if (out.first_escape_step) {
    out.first_escape_step =
        record.rows[static_cast<std::size_t>(*out.first_escape_step)].t;
  }
  return out;
}

}  // namespace adafix
