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

#include "adafix/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "adafix/error.hpp"

namespace adafix {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::NonFiniteEvaluation: return "NonFiniteEvaluation";
    case ErrorKind::NonFiniteIterate: return "NonFiniteIterate";
    case ErrorKind::InvalidParameter: return "InvalidParameter";
    case ErrorKind::InvalidSchedule: return "InvalidSchedule";
    case ErrorKind::DegenerateInput: return "DegenerateInput";
    case ErrorKind::HypothesisViolated: return "HypothesisViolated";
    case ErrorKind::InvalidRegion: return "InvalidRegion";
    case ErrorKind::InsufficientData: return "InsufficientData";
    case ErrorKind::ConfigError: return "ConfigError";
    case ErrorKind::IoError: return "IoError";
  }
  return "Unknown";
}

namespace {

void check_construct(const std::vector<double>& data) {
  if (data.empty()) {
    throw Error(ErrorKind::InvalidParameter, "ParamVector needs dim >= 1");
  }
  if (!all_finite(data)) {
    throw Error(ErrorKind::InvalidParameter, "ParamVector entries must be finite");
  }
}

void require_same_dim(const ParamVector& a, const ParamVector& b) {
  if (a.dim() != b.dim()) {
    throw Error(ErrorKind::DimensionMismatch,
                std::to_string(a.dim()) + " vs " + std::to_string(b.dim()));
  }
}

}  // namespace

ParamVector::ParamVector(std::size_t dim, double fill) : data_(dim, fill) {
  check_construct(data_);
}

ParamVector::ParamVector(std::initializer_list<double> values) : data_(values) {
  check_construct(data_);
}

ParamVector::ParamVector(std::vector<double> values) : data_(std::move(values)) {
  check_construct(data_);
}

double ParamVector::max() const {
  return *std::max_element(data_.begin(), data_.end());
}

double ParamVector::max_abs() const {
  double out = 0.0;
  for (double v : data_) out = std::max(out, std::abs(v));
  return out;
}

bool all_finite(std::span<const double> values) {
  return std::all_of(values.begin(), values.end(),
                     [](double v) { return std::isfinite(v); });
}

ParamVector elementwise(ElementwiseOp op, const ParamVector& a,
                        const ParamVector& b) {
  require_same_dim(a, b);
  std::vector<double> out(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) {
    switch (op) {
      case ElementwiseOp::Add: out[i] = a[i] + b[i]; break;
      case ElementwiseOp::Sub: out[i] = a[i] - b[i]; break;
      case ElementwiseOp::Mul: out[i] = a[i] * b[i]; break;
      case ElementwiseOp::Div:
        if (b[i] == 0.0) {
          throw Error(ErrorKind::DivisionByZero,
                      "zero denominator at index " + std::to_string(i));
        }
        out[i] = a[i] / b[i];
        break;
      case ElementwiseOp::Max: out[i] = std::max(a[i], b[i]); break;
    }
  }
  if (!all_finite(out)) {
    throw Error(ErrorKind::NonFiniteEvaluation, "elementwise result overflowed");
  }
  return ParamVector(std::move(out));
}

ParamVector operator+(const ParamVector& a, const ParamVector& b) {
  return elementwise(ElementwiseOp::Add, a, b);
}

ParamVector operator-(const ParamVector& a, const ParamVector& b) {
  return elementwise(ElementwiseOp::Sub, a, b);
}

ParamVector operator*(double scale, const ParamVector& a) {
  std::vector<double> out(a.begin(), a.end());
  for (double& v : out) v *= scale;
  if (!all_finite(out)) {
    throw Error(ErrorKind::NonFiniteEvaluation, "scaled vector overflowed");
  }
  return ParamVector(std::move(out));
}

double dot(const ParamVector& a, const ParamVector& b) {
  require_same_dim(a, b);
  double acc = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) acc += a[i] * b[i];
  return acc;
}

double norm2(const ParamVector& a) {
  // Scaled accumulation so that tiny or huge entries do not under/overflow.
  const double scale = a.max_abs();
  if (scale == 0.0) return 0.0;
  double acc = 0.0;
  for (double v : a) {
    const double r = v / scale;
    acc += r * r;
  }
  return scale * std::sqrt(acc);
}

double distance(const ParamVector& a, const ParamVector& b) {
  require_same_dim(a, b);
  std::vector<double> diff(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) diff[i] = a[i] - b[i];
  if (!all_finite(diff)) {
    throw Error(ErrorKind::NonFiniteEvaluation, "distance overflowed");
  }
  return norm2(ParamVector(std::move(diff)));
}

double Rng::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::normal() {
  // 1 - u lies in (0, 1], keeping the log finite.
  const double u1 = 1.0 - uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

ParamVector Rng::unit_vector(std::size_t dim) {
  std::vector<double> out(dim);
  double n2 = 0.0;
  while (n2 == 0.0) {
    n2 = 0.0;
    for (double& v : out) {
      v = normal();
      n2 += v * v;
    }
  }
  const double n = std::sqrt(n2);
  for (double& v : out) v /= n;
  return ParamVector(std::move(out));
}

ParamVector fd_gradient(const ScalarFn& f, const ParamVector& x,
                        std::optional<double> step) {
  if (step && !(*step > 0.0)) {
    throw Error(ErrorKind::InvalidParameter, "finite-difference step must be > 0");
  }
  std::vector<double> probe(x.begin(), x.end());
  std::vector<double> grad(x.dim());
  auto eval = [&f](const std::vector<double>& p) {
    const double value = f(ParamVector(p));
    if (!std::isfinite(value)) {
      throw Error(ErrorKind::NonFiniteEvaluation, "objective returned NaN/Inf");
    }
    return value;
  };
  for (std::size_t i = 0; i < x.dim(); ++i) {
    const double h = step ? *step : 1e-6 * std::max(1.0, std::abs(x[i]));
    const double plus = x[i] + h;
    const double minus = x[i] - h;
    probe[i] = plus;
    const double f_plus = eval(probe);
    probe[i] = minus;
    const double f_minus = eval(probe);
    probe[i] = x[i];
    // Divide by the representable spacing rather than 2h.
    grad[i] = (f_plus - f_minus) / (plus - minus);
  }
  return ParamVector(std::move(grad));
}

}  // namespace adafix
