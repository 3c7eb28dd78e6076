// Copyright 2026 The dilatlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <doctest.h>

#include <cmath>

#include "dilatlab/error.hpp"
#include "dilatlab/euclidean.hpp"
#include "dilatlab/operations.hpp"

using namespace dilatlab;

namespace {

Scale eps(double v) { return Scale::continuous(v); }

// n = 1, c = 1, s = 1: psi(h) = h + eta h^2, so psi^-1(w) solves a quadratic.
ChartPerturbedStructure scalar_chart(double eta) {
  return ChartPerturbedStructure(1, eta, {{{1.0}}}, [](const Point&) { return 1.0; },
                                 "scalar", 2.0);
}

}  // namespace

TEST_CASE("affine closed forms") {
  auto f = affine_closed_forms({0.0}, {1.0}, {3.0});
  CHECK(f.sum[0] == 4.0);
  CHECK(f.difference[0] == 2.0);
  CHECK(f.inverse[0] == -1.0);
  f = affine_closed_forms({1, 1}, {2, 1}, {1, 2});
  CHECK(f.sum == Point{2, 2});
  CHECK(f.difference == Point{0, 2});
  CHECK(f.inverse == Point{0, 1});
  f = affine_closed_forms({1, 1}, {1, 1}, {3, -2});
  CHECK(f.sum == Point{3, -2});
  CHECK(f.difference == Point{3, -2});
  CHECK(f.inverse == Point{1, 1});
}

TEST_CASE("affine structure has exact closed-form operations at every scale") {
  const AffineStructure s(2);
  Rng rng(3);
  for (int i = 0; i < 200; ++i) {
    const Point x = s.sample_near({0, 0}, 0.2, rng);
    const Point u = s.sample_near(x, 0.3, rng), v = s.sample_near(x, 0.3, rng);
    const double e = rng.uniform(0.01, 1.0);
    Point want(2);
    for (int k = 0; k < 2; ++k) want[k] = x[k] + e * (u[k] - x[k]) + (v[k] - u[k]);
    CHECK(dist2(approx_difference(s, x, eps(e), u, v), want) < 1e-13);
    CHECK(lin_defect(s, x, u, v, eps(e), eps(0.5)) < 1e-15);
  }
}

TEST_CASE("scalar quadratic chart matches the quadratic formula") {
  const auto c = scalar_chart(0.1);
  CHECK(c.chart_forward({0.0}, {0.1})[0] == doctest::Approx(0.101).epsilon(1e-15));
  CHECK(std::abs(c.chart_inverse({0.0}, {0.101})[0] - 0.1) <= 1e-12);
  for (double w : {-0.9, -0.3, 0.01, 0.5, 0.95}) {
    const double oracle = (-1.0 + std::sqrt(1.0 + 4.0 * 0.1 * w)) / (2.0 * 0.1);
    CHECK(std::abs(c.chart_inverse({0.0}, {w})[0] - oracle) <= 1e-13);
  }
  // eta = 0 leaves the affine chart.
  const auto flat = scalar_chart(0.0);
  CHECK(flat.chart_forward({0.25}, {1.0})[0] == 0.75);
  CHECK(flat.chart_inverse({0.25}, {0.75})[0] == 1.0);
}

TEST_CASE("chart round trip on seeded samples") {
  const auto s = ChartPerturbedStructure::make_default();
  Rng rng(17);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const Point x = s->sample_near(s->default_center(), 0.5, rng);
    const Point y = s->sample_near(x, 1.0, rng);
    worst = std::max(worst, dist2(s->chart_inverse(x, s->chart_forward(x, y)), y));
  }
  CHECK(worst <= 1e-12);
  CHECK_THROWS_AS(s->chart_forward({0, 0}, {5, 0}), Error);
  CHECK_THROWS_AS(s->chart_inverse({0, 0}, {2.5, 0}), Error);
}

TEST_CASE("chart tangent operations agree with small-scale evaluation") {
  const auto s = ChartPerturbedStructure::make_default();
  const Point x = s->default_center();
  Rng rng(4);
  for (int i = 0; i < 50; ++i) {
    const Point u = s->sample_near(x, 0.4, rng), v = s->sample_near(x, 0.4, rng);
    const Point want = s->chart_inverse(x, add(s->chart_forward(x, u), s->chart_forward(x, v)));
    CHECK(dist2(*s->tangent_sum(x, u, v), want) == 0.0);
    // Sigma_eps = Sigma + O(eps); rounding costs ~1e-16 / eps.
    CHECK(dist2(approx_sum(*s, x, eps(1e-6), u, v), want) < 1e-5);
    const double dx = dist2(s->chart_forward(x, u), s->chart_forward(x, v));
    CHECK(std::abs(relative_distance(*s, x, eps(1e-6), u, v) - dx) < 1e-5);
  }
}

TEST_CASE("chart structure is nonlinear; extended precision agrees with double") {
  const auto s = ChartPerturbedStructure::make_default();
  const Point x = s->default_center();
  const ExtendedDilations* ext = s->extended();
  REQUIRE(ext != nullptr);
  Rng rng(8);
  double largest = 0.0;
  for (int i = 0; i < 100; ++i) {
    const Point y = s->sample_near(x, 0.4, rng), z = s->sample_near(x, 0.4, rng);
    largest = std::max(largest, lin_defect(*s, x, y, z, eps(0.5), eps(0.5)));
    const Point d = dilate(*s, x, eps(0.3), y);
    const Point e = to_double(ext->dilate(to_extended(x), Extended(0.3), to_extended(y)));
    CHECK(dist2(d, e) < 1e-14);
  }
  CHECK(largest > 1e-6);
}

TEST_CASE("chart construction rejects bad input") {
  auto field = [](const Point&) { return 1.0; };
  CHECK_THROWS_AS(ChartPerturbedStructure(1, 0.1, {{{1.0, 0.0}}}, field, "bad"), Error);
  CHECK_THROWS_AS(ChartPerturbedStructure(2, 0.1, {{{1, 1}, {0, 1}}, {{1, 0}, {0, 1}}},
                                          field, "asym"),
                  Error);
  CHECK_THROWS_AS(ChartPerturbedStructure(1, 0.1, {{{1.0}}}, field, "big", 3.0), Error);
}
