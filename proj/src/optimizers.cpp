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

#include "adafix/optimizers.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "adafix/error.hpp"

namespace adafix {

Schedule adabound_lower(double final_lr, double gamma) {
  return [final_lr, gamma](std::int64_t t) {
    return final_lr * (1.0 - 1.0 / (gamma * static_cast<double>(t) + 1.0));
  };
}

Schedule adabound_upper(double final_lr, double gamma) {
  return [final_lr, gamma](std::int64_t t) {
    return final_lr * (1.0 + 1.0 / (gamma * static_cast<double>(t)));
  };
}

void HyperParams::validate() const {
  auto fail = [](const std::string& what) {
    throw Error(ErrorKind::InvalidParameter, what);
  };
  if (!(eta > 0.0) || !std::isfinite(eta)) fail("eta must be > 0");
  if (!(beta1 >= 0.0 && beta1 < 1.0)) fail("beta1 must lie in [0, 1)");
  if (!(beta2 >= 0.0 && beta2 < 1.0)) fail("beta2 must lie in [0, 1)");
  if (!(epsilon > 0.0)) fail("epsilon must be > 0");
  if (!(mu >= 0.0 && mu < 1.0)) fail("mu must lie in [0, 1)");
  if (!(L0 >= 0.0) || !std::isfinite(L0)) fail("L0 must be >= 0");
  if (!(final_lr > 0.0)) fail("final_lr must be > 0");
  if (bound_gamma && !(*bound_gamma > 0.0)) fail("bound_gamma must be > 0");
}

double HyperParams::lower_at(std::int64_t t) const {
  if (bound_lower) return bound_lower(t);
  return adabound_lower(final_lr, bound_gamma.value_or(1.0 - beta2))(t);
}

double HyperParams::upper_at(std::int64_t t) const {
  if (bound_upper) return bound_upper(t);
  return adabound_upper(final_lr, bound_gamma.value_or(1.0 - beta2))(t);
}

OptimizerState OptimizerState::fresh(std::size_t dim, double L0) {
  return OptimizerState{
      .t = 0,
      .m = ParamVector(dim, 0.0),
      .v = ParamVector(dim, 0.0),
      .v_hat_max = ParamVector(dim, 0.0),
      .L = L0,
      .v_frozen_hat = std::nullopt,
      .gate_latched = false,
  };
}

namespace {

void require_dims(const ParamVector& x, const ParamVector& g,
                  const OptimizerState& s) {
  const std::size_t d = x.dim();
  if (g.dim() != d || s.m.dim() != d || s.v.dim() != d ||
      s.v_hat_max.dim() != d ||
      (s.v_frozen_hat && s.v_frozen_hat->dim() != d)) {
    throw Error(ErrorKind::DimensionMismatch,
                "iterate, gradient and optimizer state dimensions differ");
  }
}

ParamVector checked(std::vector<double> values, const char* what) {
  if (!all_finite(values)) {
    throw Error(ErrorKind::NonFiniteIterate, std::string(what) + " is not finite");
  }
  return ParamVector(std::move(values));
}

void ema(ParamVector& acc, const ParamVector& g, double beta, bool squared) {
  std::vector<double> out(acc.dim());
  for (std::size_t i = 0; i < acc.dim(); ++i) {
    const double sample = squared ? g[i] * g[i] : g[i];
    out[i] = beta * acc[i] + (1.0 - beta) * sample;
  }
  acc = checked(std::move(out), "momentum");
}

ParamVector bias_corrected(const ParamVector& acc, double beta, std::int64_t t) {
  const double correction = 1.0 - std::pow(beta, static_cast<double>(t));
  std::vector<double> out(acc.begin(), acc.end());
  for (double& v : out) v /= correction;
  return checked(std::move(out), "bias-corrected momentum");
}

ParamVector effective_rates(const ParamVector& v_hat, double eta, double eps) {
  std::vector<double> out(v_hat.dim());
  for (std::size_t i = 0; i < v_hat.dim(); ++i) {
    out[i] = eta / (std::sqrt(v_hat[i]) + eps);
  }
  return checked(std::move(out), "effective learning rate");
}

// x - eta * m_hat / (sqrt(v_hat) + eps), shared by every adaptive method so
// that equal inputs give bit-identical iterates.
ParamVector adaptive_update(const ParamVector& x, const ParamVector& m_hat,
                            const ParamVector& v_hat, const HyperParams& h) {
  std::vector<double> out(x.dim());
  for (std::size_t i = 0; i < x.dim(); ++i) {
    out[i] = x[i] - h.eta * m_hat[i] / (std::sqrt(v_hat[i]) + h.epsilon);
  }
  return checked(std::move(out), "iterate");
}

StepResult adaptive_step(const ParamVector& x, const ParamVector& g,
                         const OptimizerState& s, const HyperParams& h,
                         bool use_running_max) {
  h.validate();
  require_dims(x, g, s);
  OptimizerState next = s;
  next.t = s.t + 1;
  ema(next.m, g, h.beta1, false);
  ema(next.v, g, h.beta2, true);
  const ParamVector m_hat = bias_corrected(next.m, h.beta1, next.t);
  ParamVector v_hat = bias_corrected(next.v, h.beta2, next.t);
  if (use_running_max) {
    v_hat = elementwise(ElementwiseOp::Max, s.v_hat_max, v_hat);
    next.v_hat_max = v_hat;
  }
  ParamVector x_next = adaptive_update(x, m_hat, v_hat, h);
  ParamVector rates = effective_rates(v_hat, h.eta, h.epsilon);
  return StepResult{std::move(x_next), std::move(next),
                    StepDiagnostics{std::move(v_hat), std::move(rates),
                                    std::nullopt, std::nullopt, std::nullopt}};
}

}  // namespace

StepResult sgdm_step(const ParamVector& x, const ParamVector& g,
                     const OptimizerState& s, const HyperParams& h) {
  h.validate();
  require_dims(x, g, s);
  OptimizerState next = s;
  next.t = s.t + 1;
  std::vector<double> u(x.dim());
  std::vector<double> out(x.dim());
  for (std::size_t i = 0; i < x.dim(); ++i) {
    u[i] = h.mu * s.m[i] + g[i];
    out[i] = x[i] - h.eta * u[i];
  }
  next.m = checked(std::move(u), "velocity");
  return StepResult{checked(std::move(out), "iterate"), std::move(next),
                    StepDiagnostics{ParamVector(x.dim(), 0.0),
                                    ParamVector(x.dim(), h.eta), std::nullopt,
                                    std::nullopt, std::nullopt}};
}

StepResult adam_step(const ParamVector& x, const ParamVector& g,
                     const OptimizerState& s, const HyperParams& h) {
  return adaptive_step(x, g, s, h, false);
}

StepResult amsgrad_step(const ParamVector& x, const ParamVector& g,
                        const OptimizerState& s, const HyperParams& h) {
  return adaptive_step(x, g, s, h, true);
}

StepResult adabound_step(const ParamVector& x, const ParamVector& g,
                         const OptimizerState& s, const HyperParams& h) {
  h.validate();
  require_dims(x, g, s);
  OptimizerState next = s;
  next.t = s.t + 1;
  const double lo = h.lower_at(next.t);
  const double hi = h.upper_at(next.t);
  if (!(lo <= hi)) {
    throw Error(ErrorKind::InvalidSchedule,
                "lower bound exceeds upper bound at t=" + std::to_string(next.t));
  }
  ema(next.m, g, h.beta1, false);
  ema(next.v, g, h.beta2, true);
  const ParamVector m_hat = bias_corrected(next.m, h.beta1, next.t);
  const ParamVector v_hat = bias_corrected(next.v, h.beta2, next.t);

  std::vector<double> rates(x.dim());
  std::vector<double> implied_v(x.dim());
  std::vector<double> out(x.dim());
  for (std::size_t i = 0; i < x.dim(); ++i) {
    rates[i] = std::clamp(h.eta / (std::sqrt(v_hat[i]) + h.epsilon), lo, hi);
    out[i] = x[i] - rates[i] * m_hat[i];
    // Second momentum that would have produced the clipped rate unclipped.
    const double root = std::max(0.0, h.eta / rates[i] - h.epsilon);
    implied_v[i] = root * root;
  }
  return StepResult{checked(std::move(out), "iterate"), std::move(next),
                    StepDiagnostics{checked(std::move(implied_v), "v_hat"),
                                    checked(std::move(rates), "effective rate"),
                                    std::nullopt, std::nullopt, std::nullopt}};
}

StepResult adafix_step(const ParamVector& x, const ParamVector& g,
                       const OptimizerState& s, const HyperParams& h,
                       const GradientFn& grad_at) {
  h.validate();
  require_dims(x, g, s);
  OptimizerState next = s;
  next.t = s.t + 1;
  ema(next.m, g, h.beta1, false);

  const double signal = h.gate_signed ? g.max() : g.max_abs();
  bool open = signal >= s.L * h.eta;
  if (h.freeze_permanent && s.gate_latched) open = false;
  if (!s.v_frozen_hat) open = true;
  if (!open && h.freeze_permanent) next.gate_latched = true;

  if (open) {
    ema(next.v, g, h.beta2, true);
    next.v_frozen_hat = bias_corrected(next.v, h.beta2, next.t);
  }
  const ParamVector& v_hat = *next.v_frozen_hat;
  const ParamVector m_hat = bias_corrected(next.m, h.beta1, next.t);
  ParamVector x_next = adaptive_update(x, m_hat, v_hat, h);

  ParamVector g_next = grad_at(x_next);
  if (g_next.dim() != x.dim()) {
    throw Error(ErrorKind::DimensionMismatch, "gradient oracle returned wrong dim");
  }
  std::optional<double> l_t;
  const double displacement = distance(x_next, x);
  if (displacement > 0.0) {
    l_t = distance(g_next, g) / displacement;
    if (!std::isfinite(*l_t)) {
      throw Error(ErrorKind::NonFiniteIterate, "smoothness quotient is not finite");
    }
    next.L = std::max(next.L, *l_t);
  }

  ParamVector rates = effective_rates(v_hat, h.eta, h.epsilon);
  ParamVector v_used = v_hat;
  return StepResult{std::move(x_next), std::move(next),
                    StepDiagnostics{std::move(v_used), std::move(rates), open,
                                    l_t, std::move(g_next)}};
}

StepResult adafix_step(const ParamVector& x, const ParamVector& g,
                       const OptimizerState& s, const HyperParams& h,
                       const Objective& f) {
  return adafix_step(x, g, s, h,
                     [&f](const ParamVector& p) { return f.grad(p); });
}

std::string_view to_string(OptimizerKind kind) {
  switch (kind) {
    case OptimizerKind::Sgdm: return "sgdm";
    case OptimizerKind::Adam: return "adam";
    case OptimizerKind::AmsGrad: return "amsgrad";
    case OptimizerKind::AdaBound: return "adabound";
    case OptimizerKind::AdaFix: return "adafix";
  }
  return "unknown";
}

std::optional<OptimizerKind> parse_optimizer_kind(std::string_view name) {
  for (auto kind : {OptimizerKind::Sgdm, OptimizerKind::Adam,
                    OptimizerKind::AmsGrad, OptimizerKind::AdaBound,
                    OptimizerKind::AdaFix}) {
    if (to_string(kind) == name) return kind;
  }
  return std::nullopt;
}

StepResult optimizer_step(OptimizerKind kind, const ParamVector& x,
                          const ParamVector& g, const OptimizerState& s,
                          const HyperParams& h, const GradientFn& grad_at) {
  switch (kind) {
    case OptimizerKind::Sgdm: return sgdm_step(x, g, s, h);
    case OptimizerKind::Adam: return adam_step(x, g, s, h);
    case OptimizerKind::AmsGrad: return amsgrad_step(x, g, s, h);
    case OptimizerKind::AdaBound: return adabound_step(x, g, s, h);
    case OptimizerKind::AdaFix: return adafix_step(x, g, s, h, grad_at);
  }
  throw Error(ErrorKind::InvalidParameter, "unknown optimizer kind");
}

}  // namespace adafix
