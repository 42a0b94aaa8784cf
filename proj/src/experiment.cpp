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

#include "adafix/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "adafix/analysis.hpp"
#include "adafix/csv.hpp"
#include "adafix/error.hpp"

namespace adafix {

namespace {

bool has_second_momentum(OptimizerKind kind) { return kind != OptimizerKind::Sgdm; }

TrajectoryRow make_row(std::int64_t t, const ParamVector& x, const Objective& f) {
  ParamVector g = f.grad(x);
  const double grad_norm = norm2(g);
  TrajectoryRow row{.t = t, .x = x, .g = std::move(g), .f = f.eval(x), .grad_norm = grad_norm,
                    .v_norm = {}, .sqrt_vmax_hat = {}, .max_eff_lr = {}, .dist_to_opt = {},
                    .gate_open = {}, .L_est = {}};
  if (f.optimum()) row.dist_to_opt = distance(x, *f.optimum());
  return row;
}

bool is_divergence(const Error& e) {
  return e.kind() == ErrorKind::NonFiniteIterate ||
         e.kind() == ErrorKind::NonFiniteEvaluation;
}

}  // namespace

TrajectoryRecord run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  const Objective f = cfg.build_objective();
  NoisyObjective oracle(f, cfg.noise_sigma, cfg.seed);
  const HyperParams& h = cfg.hyper;
  const OptimizerKind kind = cfg.optimizer;
  const bool adafix = kind == OptimizerKind::AdaFix;

  ParamVector x = cfg.initial_point();
  OptimizerState state = OptimizerState::fresh(x.dim(), h.L0);

  TrajectoryRecord record;
  record.dim = x.dim();
  record.rows.reserve(static_cast<std::size_t>(cfg.steps / cfg.record_every + 2));

  auto grad_at = [&oracle](const ParamVector& p) { return oracle.grad(p); };
  std::optional<ParamVector> g;
  try {
    TrajectoryRow first = make_row(0, x, f);
    if (has_second_momentum(kind)) first.v_norm = 0.0;
    if (adafix) first.L_est = h.L0;
    record.rows.push_back(std::move(first));
    oracle.draw();
    g = oracle.grad(x);
  } catch (const Error& e) {
    if (!is_divergence(e)) throw;
    record.divergence = Divergence{0, e.what()};
  }

  for (std::int64_t t = 1; t <= cfg.steps && !record.divergence; ++t) {
    try {
      StepResult step = optimizer_step(kind, x, *g, state, h, grad_at);
      x = std::move(step.x_next);
      state = std::move(step.state);
      const StepDiagnostics& diag = step.diagnostics;

      if (t % cfg.record_every == 0 || t == cfg.steps) {
        TrajectoryRow row = make_row(t, x, f);
        if (has_second_momentum(kind)) {
          row.v_norm = norm2(state.v);
          double vmax = 0.0;
          for (double v : diag.v_hat_used) vmax = std::max(vmax, v);
          row.sqrt_vmax_hat = std::sqrt(vmax);
        }
        row.max_eff_lr = diag.effective_lr.max();
        row.gate_open = diag.gate_open;
        if (adafix) row.L_est = state.L;
        record.rows.push_back(std::move(row));
      }

      oracle.draw();
      if (cfg.noise_sigma == 0.0 && diag.g_next) {
        g = *diag.g_next;
      } else {
        g = oracle.grad(x);
      }
    } catch (const Error& e) {
      if (!is_divergence(e)) throw;
      record.divergence = Divergence{t, e.what()};
    }
  }

  if (!cfg.output_path.empty()) export_csv(record, cfg.output_path);
  return record;
}

double escape_radius_for(const ExperimentConfig& cfg, const Objective& f) {
  if (cfg.escape_radius) return *cfg.escape_radius;
  // The bowl's basin ends where sin(r^2) changes sign.
  if (f.name() == "bowl") return std::sqrt(std::numbers::pi);
  if (f.opc_region()) return f.opc_region()->r_max;
  return std::numeric_limits<double>::infinity();
}

RunSummary summarize(const ExperimentConfig& cfg, const TrajectoryRecord& record) {
  const Objective f = cfg.build_objective();
  if (!f.optimum()) {
    throw Error(ErrorKind::ConfigError, f.name() + " has no known optimum to compare against");
  }
  if (record.rows.empty()) {
    throw Error(ErrorKind::InsufficientData, "run produced no rows");
  }
  RunSummary out;
  out.optimizer = std::string(to_string(cfg.optimizer));
  out.diverged = record.divergence.has_value();
  out.steps_completed = record.divergence ? record.divergence->t - 1 : record.rows.back().t;
  out.final_distance = distance(record.rows.back().x, *f.optimum());
  const EscapeReport escape =
      detect_escape(record, *f.optimum(), escape_radius_for(cfg, f));
  out.min_distance = escape.min_distance;
  out.min_distance_step = escape.min_distance_step;
  out.escaped = escape.escaped;
  out.first_escape_step = escape.first_escape_step;
  for (const auto& row : record.rows) {
    if (row.max_eff_lr) out.max_effective_lr = std::max(out.max_effective_lr, *row.max_eff_lr);
  }
  return out;
}

std::vector<RunSummary> compare_optimizers(const std::vector<ExperimentConfig>& cfgs) {
  if (cfgs.size() < 2) {
    throw Error(ErrorKind::ConfigError, "compare needs at least two configs");
  }
  auto objective_key = [](const ExperimentConfig& c) {
    KeyValues kv = to_key_values(c);
    KeyValues keep;
    for (const char* k : {"objective", "bowl_delta", "opc_c", "x_star", "aniso_diag", "x0"}) {
      if (auto it = kv.find(k); it != kv.end()) keep.insert(*it);
    }
    return keep;
  };
  const KeyValues reference = objective_key(cfgs.front());
  for (const auto& cfg : cfgs) {
    if (objective_key(cfg) != reference) {
      throw Error(ErrorKind::ConfigError,
                  "compared configs must share the objective and starting point");
    }
  }
  std::vector<RunSummary> out;
  out.reserve(cfgs.size());
  for (const auto& cfg : cfgs) out.push_back(summarize(cfg, run_experiment(cfg)));
  return out;
}

nlohmann::json to_json(const RunSummary& s) {
  nlohmann::json j;
  j["optimizer"] = s.optimizer;
  j["steps_completed"] = s.steps_completed;
  j["diverged"] = s.diverged;
  j["final_distance"] = s.final_distance;
  j["min_distance"] = s.min_distance;
  j["min_distance_step"] = s.min_distance_step;
  j["escaped"] = s.escaped;
  j["first_escape_step"] =
      s.first_escape_step ? nlohmann::json(*s.first_escape_step) : nlohmann::json(nullptr);
  j["max_effective_lr"] = s.max_effective_lr;
  return j;
}

nlohmann::json to_json(const std::vector<RunSummary>& summaries) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& s : summaries) j.push_back(to_json(s));
  return j;
}

}  // namespace adafix
