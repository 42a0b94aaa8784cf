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

#include <cmath>
#include <numbers>

#include <doctest.h>

#include "adafix/error.hpp"
#include "adafix/objectives.hpp"

using namespace adafix;

namespace {

double rel_err(const ParamVector& a, const ParamVector& b) {
  return distance(a, b) / norm2(a);
}

ParamVector random_point(Rng& rng, std::size_t dim, double half_width) {
  std::vector<double> p(dim);
  for (double& v : p) v = rng.uniform(-half_width, half_width);
  return ParamVector(p);
}

}  // namespace

TEST_CASE("bowl values") {
  const Objective f = bowl();
  CHECK(f.dim() == 2);
  CHECK(f.eval({0, 0}) == 0.0);
  CHECK(f.grad({0, 0}) == ParamVector{0, 0});
  // 1 - cos(1.09) and 2 x_i sin(1.09) at 40 digits.
  CHECK(f.eval({1.0, 0.3}) == doctest::Approx(0.5375146331246991).epsilon(1e-14));
  const ParamVector g = f.grad({1.0, 0.3});
  CHECK(g[0] == doctest::Approx(1.773253828898974463).epsilon(1e-14));
  CHECK(g[1] == doctest::Approx(0.531976148669692339).epsilon(1e-14));
  CHECK_THROWS_AS(f.eval({1.0}), Error);
}

TEST_CASE("bowl gradient matches central differences") {
  const Objective f = bowl();
  Rng rng(21);
  for (int k = 0; k < 100; ++k) {
    const ParamVector x = (2.0 * std::sqrt(rng.uniform())) * rng.unit_vector(2);
    CHECK(rel_err(f.grad(x), fd_gradient(f.eval_fn(), x)) < 1e-6);
  }
}

TEST_CASE("bowl one-point-convex annulus") {
  for (double delta : {0.1, 0.5, 1.0, 1.9}) {
    const Objective f = bowl(delta);
    REQUIRE(f.opc_region());
    const OpcRegion& region = *f.opc_region();
    CHECK(region.delta == delta);
    // 2 sin(r^2) = delta on both edges.
    CHECK(2.0 * std::sin(region.r_min * region.r_min) == doctest::Approx(delta));
    CHECK(2.0 * std::sin(region.r_max * region.r_max) == doctest::Approx(delta));
    CHECK(region.r_max < std::sqrt(std::numbers::pi));
  }
  CHECK_THROWS_AS(bowl(0.0), Error);
  CHECK_THROWS_AS(bowl(2.0), Error);
}

TEST_CASE("opc_quadratic examples") {
  CHECK(opc_quadratic(1.0, {0, 0}).grad({2, 0}) == ParamVector{2, 0});
  CHECK(opc_quadratic(4.0, {1, 0}).eval({3, 0}) == 8.0);
  const Objective f = opc_quadratic(2.0, {0, 0});
  const ParamVector x{1, 1};
  CHECK(dot(f.grad(x), x) / dot(x, x) == 2.0);
  CHECK(f.smoothness() == 2.0);
  CHECK_THROWS_AS(opc_quadratic(0.0, {0, 0}), Error);
  CHECK_THROWS_AS(opc_quadratic(-1.0, {0}), Error);
}

TEST_CASE("opc_quadratic satisfies the strict one-point condition for delta < c") {
  Rng rng(22);
  for (int k = 0; k < 1000; ++k) {
    const double c = rng.uniform(0.5, 5.0);
    const std::size_t dim = 1 + rng.next_u64() % 5;
    const ParamVector x_star = random_point(rng, dim, 2.0);
    const Objective f = opc_quadratic(c, x_star);
    const ParamVector x = random_point(rng, dim, 5.0);
    const ParamVector toward = x_star - x;
    const double lhs = -dot(f.grad(x), toward);
    REQUIRE(lhs > (c - 1e-9) * dot(toward, toward));
  }
}

TEST_CASE("anisotropic_quadratic examples") {
  const Objective f = anisotropic_quadratic({4, 1});
  CHECK(f.grad({1, 0}) == ParamVector{4, 0});
  CHECK(f.smoothness() == 4.0);
  const double l = distance(f.grad({2, 0}), f.grad({1, 0})) / distance({2, 0}, {1, 0});
  CHECK(l == 4.0);
  CHECK_THROWS_AS(anisotropic_quadratic({1, 0}), Error);
}

TEST_CASE("every objective has a stationary optimum") {
  const std::vector<Objective> all = {bowl(), opc_quadratic(3.0, {1, -2, 0.5}),
                                      anisotropic_quadratic({4, 1, 0.1})};
  for (const Objective& f : all) {
    REQUIRE(f.optimum());
    CHECK(norm2(f.grad(*f.optimum())) < 1e-9);
  }
}

TEST_CASE("quadratic gradients match central differences") {
  Rng rng(23);
  const std::vector<Objective> all = {opc_quadratic(3.0, {1, -2, 0.5}),
                                      anisotropic_quadratic({4, 1, 0.1, 7})};
  for (const Objective& f : all) {
    for (int k = 0; k < 100; ++k) {
      const ParamVector x = *f.optimum() + random_point(rng, f.dim(), 3.0);
      CHECK(rel_err(f.grad(x), fd_gradient(f.eval_fn(), x)) < 1e-6);
    }
  }
}

TEST_CASE("NoisyObjective with sigma 0 is bit-identical to its base") {
  const Objective base = bowl();
  NoisyObjective noisy(base, 0.0, 99);
  Rng rng(24);
  for (int k = 0; k < 100; ++k) {
    noisy.draw();
    const ParamVector x = random_point(rng, 2, 2.0);
    CHECK(noisy.grad(x) == base.grad(x));
    CHECK(noisy.eval(x) == base.eval(x));
  }
}

TEST_CASE("NoisyObjective shares one draw until the next") {
  const Objective base = opc_quadratic(1.0, {0, 0});
  NoisyObjective noisy(base, 0.5, 3);
  noisy.draw();
  const ParamVector x{1, 2};
  const ParamVector y{-1, 0.5};
  const ParamVector nx = noisy.grad(x) - base.grad(x);
  const ParamVector ny = noisy.grad(y) - base.grad(y);
  CHECK(nx[0] == doctest::Approx(ny[0]).epsilon(1e-12));
  CHECK(nx[1] == doctest::Approx(ny[1]).epsilon(1e-12));
  CHECK(noisy.eval(x) == base.eval(x));
  noisy.draw();
  CHECK(noisy.grad(x) != base.grad(x) + nx);
  CHECK_THROWS_AS(NoisyObjective(base, -1.0, 0), Error);
}

TEST_CASE("NoisyObjective noise has the requested spread") {
  const Objective base = opc_quadratic(1.0, {0});
  NoisyObjective noisy(base, 0.25, 5);
  double sum = 0.0;
  double sum2 = 0.0;
  constexpr int kN = 20000;
  for (int k = 0; k < kN; ++k) {
    noisy.draw();
    const double n = noisy.grad({0.0})[0];
    sum += n;
    sum2 += n * n;
  }
  const double mean = sum / kN;
  const double sd = std::sqrt(sum2 / kN - mean * mean);
  CHECK(std::abs(mean) < 0.01);
  CHECK(sd == doctest::Approx(0.25).epsilon(0.03));
}
