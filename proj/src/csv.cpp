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

#include "adafix/csv.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <sstream>

#include "adafix/error.hpp"

namespace adafix {

namespace {

constexpr std::size_t kMaxInlineDim = 16;
constexpr std::array<const char*, 10> kColumns = {
    "t",          "f",           "grad_norm", "v_norm", "sqrt_vmax_hat",
    "max_eff_lr", "dist_to_opt", "gate_open", "L_est",  "diverged"};

void put(std::string& out, const std::optional<double>& v) {
  out += ',';
  if (v) out += format_real(*v);
}

}  // namespace

std::string format_real(double value) {
  std::array<char, 64> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  if (ec != std::errc()) {
    throw Error(ErrorKind::IoError, "cannot format real");
  }
  return std::string(buf.data(), ptr);
}

std::string to_csv(const TrajectoryRecord& record) {
  const bool inline_x = record.dim <= kMaxInlineDim;
  std::string out;
  for (std::size_t i = 0; i < kColumns.size(); ++i) {
    if (i) out += ',';
    out += kColumns[i];
  }
  if (inline_x) {
    for (std::size_t i = 0; i < record.dim; ++i) out += ",x" + std::to_string(i);
  }
  out += '\n';

  for (const auto& row : record.rows) {
    out += std::to_string(row.t);
    put(out, row.f);
    put(out, row.grad_norm);
    put(out, row.v_norm);
    put(out, row.sqrt_vmax_hat);
    put(out, row.max_eff_lr);
    put(out, row.dist_to_opt);
    out += ',';
    if (row.gate_open) out += *row.gate_open ? '1' : '0';
    put(out, row.L_est);
    out += ",0";
    if (inline_x) {
      for (double xi : row.x) put(out, xi);
    }
    out += '\n';
  }
  if (record.divergence) {
    out += std::to_string(record.divergence->t);
    out += ",,,,,,,,,1";
    if (inline_x) out += std::string(record.dim, ',');
    out += '\n';
  }
  return out;
}

void export_csv(const TrajectoryRecord& record, const std::filesystem::path& path) {
  if (record.rows.empty() && !record.divergence) {
    throw Error(ErrorKind::InsufficientData, "empty trajectory record");
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::IoError, "cannot open " + path.string());
  const std::string text = to_csv(record);
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw Error(ErrorKind::IoError, "write failed for " + path.string());
}

std::size_t CsvTable::column(std::string_view name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  throw Error(ErrorKind::InsufficientData, "no column " + std::string(name));
}

CsvTable parse_csv(const std::string& text) {
  CsvTable table;
  std::istringstream in(text);
  std::string line;
  auto split = [](const std::string& s) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
      const auto comma = s.find(',', start);
      fields.push_back(s.substr(start, comma - start));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    return fields;
  };
  if (!std::getline(in, line)) {
    throw Error(ErrorKind::IoError, "missing CSV header");
  }
  table.header = split(line);
  while (std::getline(in, line)) {
    const auto fields = split(line);
    if (fields.size() != table.header.size()) {
      throw Error(ErrorKind::IoError, "CSV row has wrong field count");
    }
    std::vector<std::optional<double>> row;
    row.reserve(fields.size());
    for (const auto& field : fields) {
      if (field.empty()) {
        row.emplace_back();
        continue;
      }
      double v = 0.0;
      const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
      if (ec != std::errc() || ptr != field.data() + field.size()) {
        throw Error(ErrorKind::IoError, "bad CSV number '" + field + "'");
      }
      row.emplace_back(v);
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

CsvTable read_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::IoError, "cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_csv(buf.str());
}

}  // namespace adafix
