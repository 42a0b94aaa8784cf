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

#include "adafix/config.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "adafix/csv.hpp"
#include "adafix/error.hpp"

namespace adafix {

namespace {

constexpr std::array<std::string_view, 23> kKeys = {
    "objective", "bowl_delta",  "opc_c",        "x_star",
    "aniso_diag", "optimizer",  "eta",          "beta1",
    "beta2",     "epsilon",     "mu",           "final_lr",
    "bound_gamma", "L0",        "gate_signed",  "freeze_permanent",
    "x0",        "steps",       "seed",         "noise_sigma",
    "record_every", "output",   "escape_radius",
};

[[noreturn]] void config_error(std::string_view key, const std::string& what) {
  throw Error(ErrorKind::ConfigError, std::string(key) + ": " + what);
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::int64_t parse_int(std::string_view key, std::string_view text) {
  text = trim(text);
  std::int64_t out = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    config_error(key, "expected an integer, got '" + std::string(text) + "'");
  }
  return out;
}

std::uint64_t parse_uint(std::string_view key, std::string_view text) {
  text = trim(text);
  std::uint64_t out = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    config_error(key, "expected an unsigned integer, got '" + std::string(text) + "'");
  }
  return out;
}

bool parse_bool(std::string_view key, std::string_view text) {
  text = trim(text);
  if (text == "true" || text == "1") return true;
  if (text == "false" || text == "0") return false;
  config_error(key, "expected true/false, got '" + std::string(text) + "'");
}

std::string join(const ParamVector& v) {
  std::string out;
  for (std::size_t i = 0; i < v.dim(); ++i) {
    if (i) out += ',';
    out += format_real(v[i]);
  }
  return out;
}

}  // namespace

double parse_real(std::string_view key, std::string_view text) {
  text = trim(text);
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(out)) {
    config_error(key, "expected a finite real, got '" + std::string(text) + "'");
  }
  return out;
}

ParamVector parse_vector(std::string_view key, std::string_view text) {
  std::vector<double> values;
  std::size_t start = 0;
  while (true) {
    const auto comma = text.find(',', start);
    values.push_back(parse_real(key, text.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return ParamVector(std::move(values));
}

Objective make_objective(const ObjectiveSpec& spec, std::size_t dim_hint) {
  try {
    if (spec.name == "bowl") return bowl(spec.bowl_delta);
    if (spec.name == "opc_quadratic") {
      return opc_quadratic(spec.opc_c, spec.x_star.value_or(ParamVector(dim_hint, 0.0)));
    }
    if (spec.name == "aniso_quadratic") {
      if (!spec.aniso_diag) config_error("aniso_diag", "required by aniso_quadratic");
      return anisotropic_quadratic(*spec.aniso_diag);
    }
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::ConfigError) throw;
    config_error("objective", e.what());
  }
  config_error("objective", "unknown objective '" + spec.name + "'");
}

void ExperimentConfig::validate() const {
  if (steps < 1) config_error("steps", "must be >= 1");
  if (record_every < 1) config_error("record_every", "must be >= 1");
  if (!(noise_sigma >= 0.0)) config_error("noise_sigma", "must be >= 0");
  if (escape_radius && !(*escape_radius > 0.0)) config_error("escape_radius", "must be > 0");
  try {
    hyper.validate();
  } catch (const Error& e) {
    config_error("hyperparameters", e.what());
  }
  const Objective f = build_objective();
  if (initial_point().dim() != f.dim()) {
    config_error("x0", "dimension " + std::to_string(initial_point().dim()) +
                           " does not match objective dimension " +
                           std::to_string(f.dim()));
  }
}

ParamVector ExperimentConfig::initial_point() const {
  if (x0) return *x0;
  if (objective.name == "bowl") return ParamVector{1.0, 0.3};
  config_error("x0", "required for objective '" + objective.name + "'");
}

Objective ExperimentConfig::build_objective() const {
  const std::size_t hint = x0 ? x0->dim() : 2;
  return make_objective(objective, hint);
}

std::span<const std::string_view> config_keys() { return kKeys; }

KeyValues read_key_values(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorKind::IoError, "cannot read " + path.string());
  }
  KeyValues out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view view = line;
    if (const auto hash = view.find('#'); hash != std::string_view::npos) {
      view = view.substr(0, hash);
    }
    view = trim(view);
    if (view.empty()) continue;
    const auto eq = view.find('=');
    if (eq == std::string_view::npos) {
      config_error(path.string() + ":" + std::to_string(lineno), "expected key = value");
    }
    out[std::string(trim(view.substr(0, eq)))] = std::string(trim(view.substr(eq + 1)));
  }
  return out;
}

ExperimentConfig config_from_key_values(const KeyValues& kv) {
  return config_from_key_values(kv, ExperimentConfig{});
}

ExperimentConfig config_from_key_values(const KeyValues& kv, ExperimentConfig cfg) {
  for (const auto& [key, value] : kv) {
    const std::string_view k = key;
    if (k == "objective") cfg.objective.name = std::string(trim(value));
    else if (k == "bowl_delta") cfg.objective.bowl_delta = parse_real(k, value);
    else if (k == "opc_c") cfg.objective.opc_c = parse_real(k, value);
    else if (k == "x_star") cfg.objective.x_star = parse_vector(k, value);
    else if (k == "aniso_diag") cfg.objective.aniso_diag = parse_vector(k, value);
    else if (k == "optimizer") {
      const auto kind = parse_optimizer_kind(trim(value));
      if (!kind) config_error(k, "unknown optimizer '" + value + "'");
      cfg.optimizer = *kind;
    }
    else if (k == "eta") cfg.hyper.eta = parse_real(k, value);
    else if (k == "beta1") cfg.hyper.beta1 = parse_real(k, value);
    else if (k == "beta2") cfg.hyper.beta2 = parse_real(k, value);
    else if (k == "epsilon") cfg.hyper.epsilon = parse_real(k, value);
    else if (k == "mu") cfg.hyper.mu = parse_real(k, value);
    else if (k == "final_lr") cfg.hyper.final_lr = parse_real(k, value);
    else if (k == "bound_gamma") cfg.hyper.bound_gamma = parse_real(k, value);
    else if (k == "L0") cfg.hyper.L0 = parse_real(k, value);
    else if (k == "gate_signed") cfg.hyper.gate_signed = parse_bool(k, value);
    else if (k == "freeze_permanent") cfg.hyper.freeze_permanent = parse_bool(k, value);
    else if (k == "x0") cfg.x0 = parse_vector(k, value);
    else if (k == "steps") cfg.steps = parse_int(k, value);
    else if (k == "seed") cfg.seed = parse_uint(k, value);
    else if (k == "noise_sigma") cfg.noise_sigma = parse_real(k, value);
    else if (k == "record_every") cfg.record_every = parse_int(k, value);
    else if (k == "output") cfg.output_path = std::string(trim(value));
    else if (k == "escape_radius") cfg.escape_radius = parse_real(k, value);
    else config_error(k, "unknown key");
  }
  return cfg;
}

KeyValues to_key_values(const ExperimentConfig& cfg) {
  KeyValues kv;
  kv["objective"] = cfg.objective.name;
  if (cfg.objective.name == "bowl") kv["bowl_delta"] = format_real(cfg.objective.bowl_delta);
  if (cfg.objective.name == "opc_quadratic") {
    kv["opc_c"] = format_real(cfg.objective.opc_c);
    if (cfg.objective.x_star) kv["x_star"] = join(*cfg.objective.x_star);
  }
  if (cfg.objective.aniso_diag) kv["aniso_diag"] = join(*cfg.objective.aniso_diag);
  kv["optimizer"] = std::string(to_string(cfg.optimizer));
  kv["eta"] = format_real(cfg.hyper.eta);
  kv["beta1"] = format_real(cfg.hyper.beta1);
  kv["beta2"] = format_real(cfg.hyper.beta2);
  kv["epsilon"] = format_real(cfg.hyper.epsilon);
  kv["mu"] = format_real(cfg.hyper.mu);
  kv["final_lr"] = format_real(cfg.hyper.final_lr);
  if (cfg.hyper.bound_gamma) kv["bound_gamma"] = format_real(*cfg.hyper.bound_gamma);
  kv["L0"] = format_real(cfg.hyper.L0);
  kv["gate_signed"] = cfg.hyper.gate_signed ? "true" : "false";
  kv["freeze_permanent"] = cfg.hyper.freeze_permanent ? "true" : "false";
  if (cfg.x0 || cfg.objective.name == "bowl") kv["x0"] = join(cfg.initial_point());
  kv["steps"] = std::to_string(cfg.steps);
  kv["seed"] = std::to_string(cfg.seed);
  kv["noise_sigma"] = format_real(cfg.noise_sigma);
  kv["record_every"] = std::to_string(cfg.record_every);
  if (!cfg.output_path.empty()) kv["output"] = cfg.output_path;
  if (cfg.escape_radius) kv["escape_radius"] = format_real(*cfg.escape_radius);
  return kv;
}

}  // namespace adafix
