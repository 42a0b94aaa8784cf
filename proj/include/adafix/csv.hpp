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

#ifndef ADAFIX_CSV_HPP_
#define ADAFIX_CSV_HPP_

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "adafix/trajectory.hpp"

namespace adafix {

/// Columns: t, f, grad_norm, v_norm, sqrt_vmax_hat, max_eff_lr, dist_to_opt,
/// gate_open, L_est, diverged, then x0..x{d-1} when dim <= 16. Absent values
/// are empty fields; reals use the shortest text that parses back exactly.
std::string to_csv(const TrajectoryRecord& record);

/// Throws InsufficientData for an empty record, IoError on write failure.
void export_csv(const TrajectoryRecord& record, const std::filesystem::path& path);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::optional<double>>> rows;

  std::size_t column(std::string_view name) const;
};

/// Parses a file written by export_csv. Throws IoError.
CsvTable read_csv(const std::filesystem::path& path);
CsvTable parse_csv(const std::string& text);

/// Shortest round-trip representation of a double.
std::string format_real(double value);

}  // namespace adafix

#endif  // ADAFIX_CSV_HPP_
