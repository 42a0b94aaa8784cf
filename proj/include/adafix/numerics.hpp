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

#ifndef ADAFIX_NUMERICS_HPP_
#define ADAFIX_NUMERICS_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <optional>
#include <random>
#include <span>
#include <vector>

namespace adafix {

/// Dense vector of doubles used for parameters, gradients and momenta.
///
/// Construction rejects an empty vector and non-finite entries, so a
/// ParamVector obtained through the public API is always finite. The
/// mutable accessors exist for optimizer internals; callers that write
/// through them are responsible for keeping entries finite.
class ParamVector {
 public:
  explicit ParamVector(std::size_t dim, double fill = 0.0);
  ParamVector(std::initializer_list<double> values);
  explicit ParamVector(std::vector<double> values);

  std::size_t dim() const noexcept { return data_.size(); }

  double operator[](std::size_t i) const { return data_[i]; }
  double& operator[](std::size_t i) { return data_[i]; }

  std::span<const double> values() const noexcept { return data_; }
  std::span<double> values() noexcept { return data_; }
  const std::vector<double>& raw() const noexcept { return data_; }

  auto begin() const noexcept { return data_.begin(); }
  auto end() const noexcept { return data_.end(); }

  double max() const;
  double max_abs() const;

  bool operator==(const ParamVector& other) const = default;

 private:
  std::vector<double> data_;
};

/// True when every entry of `values` is finite.
bool all_finite(std::span<const double> values);

enum class ElementwiseOp { Add, Sub, Mul, Div, Max };

/// result[i] = op(a[i], b[i]).
/// Throws DimensionMismatch, DivisionByZero, or NonFiniteEvaluation when the
/// result overflows.
ParamVector elementwise(ElementwiseOp op, const ParamVector& a,
                        const ParamVector& b);

ParamVector operator+(const ParamVector& a, const ParamVector& b);
ParamVector operator-(const ParamVector& a, const ParamVector& b);
ParamVector operator*(double scale, const ParamVector& a);

double dot(const ParamVector& a, const ParamVector& b);
double norm2(const ParamVector& a);
double distance(const ParamVector& a, const ParamVector& b);

/// Seeded 64-bit Mersenne twister. Uniform and normal draws are derived
/// from the raw 64-bit stream by fixed formulas (not the
/// implementation-defined std distributions), so one seed yields the same
/// samples on every conforming toolchain.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Standard normal via Box-Muller.
  double normal();
  /// Uniformly distributed unit vector.
  ParamVector unit_vector(std::size_t dim);

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

using ScalarFn = std::function<double(const ParamVector&)>;

/// Central-difference gradient. With `step` unset, coordinate i uses
/// h_i = 1e-6 * max(1, |x_i|); otherwise h_i = step for every coordinate.
/// Throws NonFiniteEvaluation if f is NaN/Inf at any probe point.
ParamVector fd_gradient(const ScalarFn& f, const ParamVector& x,
                        std::optional<double> step = std::nullopt);

}  // namespace adafix

#endif  // ADAFIX_NUMERICS_HPP_
