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

#ifndef ADAFIX_EXPERIMENT_HPP_
#define ADAFIX_EXPERIMENT_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "adafix/config.hpp"
#include "adafix/trajectory.hpp"

namespace adafix {

/// Runs cfg.steps optimizer steps and, when cfg.output_path is set, writes
/// the record as CSV. Rows are kept at t = 0, every multiple of
/// record_every, and the final step. A NaN/Inf iterate ends the run with
/// record.divergence set instead of throwing. Throws ConfigError for an
/// invalid config.
TrajectoryRecord run_experiment(const ExperimentConfig& cfg);

/// Radius used for escape detection: the explicit config value, else the
/// outer edge of the objective's one-point-convex region (infinite when the
/// region is unbounded).
double escape_radius_for(const ExperimentConfig& cfg, const Objective& f);

struct RunSummary {
  std::string optimizer;
  std::int64_t steps_completed = 0;
  bool diverged = false;
  double final_distance = 0.0;
  double min_distance = 0.0;
  std::int64_t min_distance_step = 0;
  bool escaped = false;
  std::optional<std::int64_t> first_escape_step;
  double max_effective_lr = 0.0;
};

RunSummary summarize(const ExperimentConfig& cfg, const TrajectoryRecord& record);

/// Runs every config and summarizes each. Throws ConfigError with fewer than
/// two configs or when objectives / starting points differ.
std::vector<RunSummary> compare_optimizers(const std::vector<ExperimentConfig>& cfgs);

nlohmann::json to_json(const RunSummary& summary);
nlohmann::json to_json(const std::vector<RunSummary>& summaries);

}  // namespace adafix

#endif  // ADAFIX_EXPERIMENT_HPP_
