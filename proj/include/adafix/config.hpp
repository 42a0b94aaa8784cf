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

#ifndef ADAFIX_CONFIG_HPP_
#define ADAFIX_CONFIG_HPP_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "adafix/numerics.hpp"
#include "adafix/objectives.hpp"
#include "adafix/optimizers.hpp"

namespace adafix {

struct ObjectiveSpec {
  std::string name = "bowl";  // bowl | opc_quadratic | aniso_quadratic
  double bowl_delta = 0.5;
  double opc_c = 1.0;
  std::optional<ParamVector> x_star;      // opc_quadratic, default origin of x0's dim
  std::optional<ParamVector> aniso_diag;  // aniso_quadratic, required
};

/// Throws ConfigError for an unknown name or missing parameters.
Objective make_objective(const ObjectiveSpec& spec, std::size_t dim_hint = 2);

struct ExperimentConfig {
  ObjectiveSpec objective;
  OptimizerKind optimizer = OptimizerKind::Adam;
  HyperParams hyper;
  std::optional<ParamVector> x0;  // defaults to (1.0, 0.3) for the bowl
  std::int64_t steps = 5000;
  std::uint64_t seed = 0;
  double noise_sigma = 0.0;
  std::int64_t record_every = 1;
  std::string output_path;
  std::optional<double> escape_radius;  // defaults to the objective's region edge

  /// Throws ConfigError describing the first invalid field.
  void validate() const;
  ParamVector initial_point() const;
  Objective build_objective() const;
};

using KeyValues = std::map<std::string, std::string, std::less<>>;

/// Every key understood by config_from_key_values.
std::span<const std::string_view> config_keys();

/// Reads `key = value` lines; blank lines and `#` comments are skipped.
/// Throws IoError if the file cannot be read, ConfigError on a bad line.
KeyValues read_key_values(const std::filesystem::path& path);

/// Starts from the defaults and applies every entry. Vectors are
/// comma-separated, booleans are true/false/1/0. Throws ConfigError on an
/// unknown key or unparsable value.
ExperimentConfig config_from_key_values(const KeyValues& kv);
ExperimentConfig config_from_key_values(const KeyValues& kv,
                                        ExperimentConfig base);

/// Canonical flat form of a config, suitable for reports.
KeyValues to_key_values(const ExperimentConfig& cfg);

double parse_real(std::string_view key, std::string_view text);
ParamVector parse_vector(std::string_view key, std::string_view text);

}  // namespace adafix

#endif  // ADAFIX_CONFIG_HPP_
