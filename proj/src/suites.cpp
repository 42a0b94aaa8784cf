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

#include "adafix/suites.hpp"

#include <algorithm>
#include <cmath>

#include "adafix/error.hpp"
#include "adafix/objectives.hpp"
#include "adafix/optimizers.hpp"

namespace adafix {

namespace {

constexpr std::int64_t kPropertyRunSteps = 1000;

nlohmann::json to_json(const ParamVector& v) { return v.raw(); }

ParamVector random_box(Rng& rng, const ParamVector& center, double half_width) {
  std::vector<double> p(center.dim());
  for (std::size_t i = 0; i < p.size(); ++i) {
    p[i] = center[i] + rng.uniform(-half_width, half_width);
  }
  return ParamVector(std::move(p));
}

SuiteReport theorem31_suite(std::uint64_t seed, std::int64_t n, BoundForm form) {
  SuiteReport report{SuiteKind::Theorem31, seed, n};
  for (const RecedeCase& rc : generate_recede_cases(seed, n, form)) {
    const Objective f = opc_quadratic(rc.c, rc.x_star);
    const RecedeStep step = recede_step(f, rc.x, rc.v_diag, rc.delta, rc.eta);
    const double D = distance(rc.x, rc.x_star);
    const double G = norm2(f.grad(rc.x));
    const bool below = recede_inequality_holds(rc.bound * (1.0 - 1e-6), rc.delta, rc.eta, D, G);
    const bool above = recede_inequality_holds(rc.bound * (1.0 + 1e-6), rc.delta, rc.eta, D, G);
    const bool pass = step.non_decreasing && below && !above;
    if (!pass) ++report.failures;

    double vmax = 0.0;
    for (double v : rc.v_diag) vmax = std::max(vmax, v);
    nlohmann::json c;
    c["config"] = {{"c", rc.c},         {"x_star", to_json(rc.x_star)},
                   {"x", to_json(rc.x)}, {"delta", rc.delta},
                   {"eta", rc.eta},     {"v_diag", to_json(rc.v_diag)}};
    c["bound"] = rc.bound;
    c["expected"] = {{"non_decreasing", true},
                     {"inequality_below_bound", true},
                     {"inequality_above_bound", false}};
    c["observed"] = {{"sqrt_vmax", std::sqrt(vmax)},
                     {"dist2_before", step.dist2_before},
                     {"dist2_after", step.dist2_after},
                     {"non_decreasing", step.non_decreasing},
                     {"inequality_below_bound", below},
                     {"inequality_above_bound", above}};
    c["pass"] = pass;
    report.cases.push_back(std::move(c));
  }
  return report;
}

SuiteReport gradients_suite(std::uint64_t seed, std::int64_t n) {
  SuiteReport report{SuiteKind::Gradients, seed, n};
  Rng rng(seed);
  const std::vector<Objective> objectives = {
      bowl(),
      opc_quadratic(2.5, ParamVector{0.5, -1.0, 2.0}),
      anisotropic_quadratic(ParamVector{4.0, 1.0, 0.25, 9.0}),
  };
  for (const Objective& f : objectives) {
    for (std::int64_t k = 0; k < n; ++k) {
      ParamVector x = ParamVector(f.dim(), 0.0);
      if (f.name() == "bowl") {
        const double r = 2.0 * std::sqrt(rng.uniform());
        x = r * rng.unit_vector(2);
      } else {
        x = random_box(rng, *f.optimum(), 3.0);
      }
      const ParamVector analytic = f.grad(x);
      const ParamVector numeric = fd_gradient(f.eval_fn(), x);
      const double scale = norm2(analytic);
      const double err = distance(analytic, numeric) / (scale > 0.0 ? scale : 1.0);
      const bool pass = err < 1e-6;
      if (!pass) ++report.failures;
      nlohmann::json c;
      c["config"] = {{"objective", f.name()}, {"x", to_json(x)}};
      c["expected"] = {{"relative_error_below", 1e-6}};
      c["observed"] = {{"analytic", to_json(analytic)},
                       {"finite_difference", to_json(numeric)},
                       {"relative_error", err}};
      c["pass"] = pass;
      report.cases.push_back(std::move(c));
    }
  }
  return report;
}

struct PropertyCounts {
  std::int64_t v_negative = 0;
  std::int64_t amsgrad_decrease = 0;
  std::int64_t band_violations = 0;
  std::int64_t frozen_mismatch = 0;
  std::int64_t L_decrease = 0;
  std::int64_t first_step_excess = 0;
  std::int64_t closed_gate_steps = 0;
  bool diverged = false;

  bool ok() const {
    return v_negative == 0 && amsgrad_decrease == 0 && band_violations == 0 &&
           frozen_mismatch == 0 && L_decrease == 0 && first_step_excess == 0 &&
           !diverged;
  }
};

PropertyCounts property_run(OptimizerKind kind, const NoisyObjective& proto,
                            ParamVector x, const HyperParams& h) {
  NoisyObjective oracle = proto;
  auto grad_at = [&oracle](const ParamVector& p) { return oracle.grad(p); };
  OptimizerState state = OptimizerState::fresh(x.dim(), h.L0);
  std::optional<ParamVector> prev_v_hat;
  PropertyCounts counts;
  try {
    for (std::int64_t t = 1; t <= kPropertyRunSteps; ++t) {
      oracle.draw();
      const ParamVector g = oracle.grad(x);
      StepResult step = optimizer_step(kind, x, g, state, h, grad_at);
      const StepDiagnostics& diag = step.diagnostics;

      for (double v : step.state.v) counts.v_negative += v < 0.0;
      if (kind == OptimizerKind::AmsGrad && prev_v_hat) {
        for (std::size_t i = 0; i < x.dim(); ++i) {
          counts.amsgrad_decrease += diag.v_hat_used[i] < (*prev_v_hat)[i];
        }
      }
      if (kind == OptimizerKind::AdaBound) {
        const double lo = h.lower_at(step.state.t);
        const double hi = h.upper_at(step.state.t);
        for (double r : diag.effective_lr) {
          counts.band_violations += r < lo - 1e-12 || r > hi + 1e-12;
        }
      }
      if (kind == OptimizerKind::AdaFix) {
        if (diag.gate_open == false) {
          ++counts.closed_gate_steps;
          const bool same = step.state.v == state.v &&
                            step.state.v_frozen_hat == state.v_frozen_hat;
          counts.frozen_mismatch += !same;
        }
        counts.L_decrease += step.state.L < state.L;
      }
      if (t == 1 && kind != OptimizerKind::Sgdm && kind != OptimizerKind::AdaBound) {
        for (std::size_t i = 0; i < x.dim(); ++i) {
          if (g[i] == 0.0) continue;
          counts.first_step_excess +=
              std::abs(step.x_next[i] - x[i]) > h.eta * (1.0 + 1e-6);
        }
      }

      prev_v_hat = diag.v_hat_used;
      x = std::move(step.x_next);
      state = std::move(step.state);
    }
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NonFiniteIterate &&
        e.kind() != ErrorKind::NonFiniteEvaluation) {
      throw;
    }
    counts.diverged = true;
  }
  return counts;
}

SuiteReport optimizer_properties_suite(std::uint64_t seed, std::int64_t n) {
  SuiteReport report{SuiteKind::OptimizerProperties, seed, n};
  Rng rng(seed);
  for (std::int64_t k = 0; k < n; ++k) {
    const std::size_t dim = 1 + rng.next_u64() % 5;
    std::vector<double> diag(dim);
    for (double& d : diag) d = rng.uniform(0.1, 10.0);
    const ParamVector x0 = random_box(rng, ParamVector(dim, 0.0), 3.0);
    HyperParams h;
    h.eta = rng.uniform(0.01, 0.5);
    const double sigma = (k % 2 == 1) ? 1e-3 : 0.0;
    const std::uint64_t noise_seed = rng.next_u64();
    const NoisyObjective proto(anisotropic_quadratic(ParamVector(diag)), sigma, noise_seed);

    for (auto kind : {OptimizerKind::Sgdm, OptimizerKind::Adam, OptimizerKind::AmsGrad,
                      OptimizerKind::AdaBound, OptimizerKind::AdaFix}) {
      HyperParams hk = h;
      if (kind == OptimizerKind::Sgdm) hk.eta = h.eta * 0.1;
      const PropertyCounts counts = property_run(kind, proto, x0, hk);
      const bool pass = counts.ok();
      if (!pass) ++report.failures;
      nlohmann::json c;
      c["config"] = {{"optimizer", std::string(to_string(kind))},
                     {"aniso_diag", diag},
                     {"x0", to_json(x0)},
                     {"eta", hk.eta},
                     {"noise_sigma", sigma},
                     {"noise_seed", noise_seed},
                     {"steps", kPropertyRunSteps}};
      c["expected"] = "every step-level property holds";
      c["observed"] = {{"v_negative", counts.v_negative},
                       {"amsgrad_decrease", counts.amsgrad_decrease},
                       {"band_violations", counts.band_violations},
                       {"frozen_mismatch", counts.frozen_mismatch},
                       {"L_decrease", counts.L_decrease},
                       {"first_step_excess", counts.first_step_excess},
                       {"closed_gate_steps", counts.closed_gate_steps},
                       {"diverged", counts.diverged}};
      c["pass"] = pass;
      report.cases.push_back(std::move(c));
    }
  }
  return report;
}

}  // namespace

std::optional<SuiteKind> parse_suite_kind(std::string_view name) {
  for (auto kind : {SuiteKind::Theorem31, SuiteKind::Gradients,
                    SuiteKind::OptimizerProperties}) {
    if (to_string(kind) == name) return kind;
  }
  return std::nullopt;
}

std::string_view to_string(SuiteKind kind) {
  switch (kind) {
    case SuiteKind::Theorem31: return "theorem31";
    case SuiteKind::Gradients: return "gradients";
    case SuiteKind::OptimizerProperties: return "optimizer_properties";
  }
  return "unknown";
}

std::vector<RecedeCase> generate_recede_cases(std::uint64_t seed, std::int64_t n,
                                              BoundForm form) {
  constexpr std::size_t kDims[] = {1, 2, 5};
  Rng rng(seed);
  std::vector<RecedeCase> out;
  out.reserve(static_cast<std::size_t>(std::max<std::int64_t>(n, 0)));
  for (std::int64_t k = 0; k < n; ++k) {
    const double c = rng.uniform(0.5, 5.0);
    const std::size_t dim = kDims[rng.next_u64() % 3];
    ParamVector x_star = random_box(rng, ParamVector(dim, 0.0), 1.0);
    const double D = rng.uniform(0.1, 10.0);
    const ParamVector dir = rng.unit_vector(dim);
    std::vector<double> x(dim);
    for (std::size_t i = 0; i < dim; ++i) x[i] = x_star[i] + D * dir[i];
    // delta stays strictly inside (0, c) so the hypothesis check is robust.
    const double delta = c * rng.uniform(1e-3, 1.0 - 1e-3);
    const double eta = rng.uniform(0.01, 1.0);

    RecedeCase rc{c, x_star, ParamVector(std::move(x)), delta, eta,
                  ParamVector(dim, 1.0), 0.0};
    ParamVector g = c * (rc.x - rc.x_star);
    rc.bound = recede_bound(RecedeBoundInput{rc.x, rc.x_star, g, delta, eta}, form);
    const double cap = rc.bound * (1.0 - 1e-9);
    std::vector<double> v(dim);
    for (double& vi : v) {
      const double root = cap * (1.0 - rng.uniform());
      vi = root * root;
    }
    // Every other case pins one coordinate at the cap.
    if (k % 2 == 0) v[rng.next_u64() % dim] = cap * cap;
    rc.v_diag = ParamVector(std::move(v));
    out.push_back(std::move(rc));
  }
  return out;
}

nlohmann::json SuiteReport::to_json() const {
  nlohmann::json j;
  j["suite"] = std::string(to_string(kind));
  j["seed"] = seed;
  j["n_cases"] = n_cases;
  j["total"] = cases.size();
  j["failures"] = failures;
  j["pass"] = passed();
  j["cases"] = cases;
  return j;
}

SuiteReport run_verification_suite(SuiteKind kind, std::uint64_t seed,
                                   std::int64_t n_cases, BoundForm form) {
  if (n_cases < 1) {
    throw Error(ErrorKind::ConfigError, "n_cases must be >= 1");
  }
  switch (kind) {
    case SuiteKind::Theorem31: return theorem31_suite(seed, n_cases, form);
    case SuiteKind::Gradients: return gradients_suite(seed, n_cases);
    case SuiteKind::OptimizerProperties: return optimizer_properties_suite(seed, n_cases);
  }
  throw Error(ErrorKind::ConfigError, "unknown suite");
}

}  // namespace adafix
