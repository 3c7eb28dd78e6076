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

#include <Eigen/Dense>
#include <cmath>

#include "dilatlab/carnot.hpp"
#include "dilatlab/error.hpp"

using namespace dilatlab;

namespace {

// (a, b, c) -> exp(aX + bY + cZ) with X = E12, Y = E23, Z = E13.
Eigen::Matrix3d to_matrix(const Point& g) {
  Eigen::Matrix3d m = Eigen::Matrix3d::Identity();
  m(0, 1) = g[0];
  m(1, 2) = g[1];
  m(0, 2) = g[2] + 0.5 * g[0] * g[1];
  return m;
}

Point from_matrix(const Eigen::Matrix3d& m) {
  return {m(0, 1), m(1, 2), m(0, 2) - 0.5 * m(0, 1) * m(1, 2)};
}

Eigen::Matrix4d nilpotent_exp(const Eigen::Matrix4d& n) {
  return Eigen::Matrix4d::Identity() + n + n * n / 2.0 + n * n * n / 6.0;
}

Eigen::Matrix4d unipotent_log(const Eigen::Matrix4d& u) {
  const Eigen::Matrix4d n = u - Eigen::Matrix4d::Identity();
  return n - n * n / 2.0 + n * n * n / 3.0;
}

Eigen::Matrix4d strictly_upper(Rng& rng) {
  Eigen::Matrix4d m = Eigen::Matrix4d::Zero();
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) m(i, j) = rng.uniform(-1.0, 1.0);
  return m;
}

std::vector<Rational> exact(const Point& p) {
  std::vector<Rational> r;
  for (double v : p) r.emplace_back(v);
  return r;
}

Point random_point(Rng& rng, std::size_t n, double r = 1.0) {
  Point p(n);
  for (auto& v : p) v = rng.uniform(-r, r);
  return p;
}

}  // namespace

TEST_CASE("brackets of the shipped algebras") {
  const auto h = builtin_group("heisenberg:1");
  CHECK(h.algebra().bracket(Point{1, 0, 0}, Point{0, 1, 0}) == Point{0, 0, 1});
  CHECK(h.algebra().bracket(Point{1, 2, 0}, Point{1, 2, 0}) == Point{0, 0, 0});
  CHECK(h.algebra().bracket(Point{0, 0, 3}, Point{0, 0, 5}) == Point{0, 0, 0});
  const auto e = builtin_group("engel");
  CHECK(e.algebra().bracket(Point{1, 0, 0, 0}, Point{0, 0, 1, 0}) == Point{0, 0, 0, 1});
  CHECK(e.algebra().bracket(Point{0, 0, 0, 1}, Point{1, 1, 1, 1}) == Point{0, 0, 0, 0});
}

TEST_CASE("Dynkin coefficients match log(exp X exp Y) up to degree 3") {
  // Strictly upper 4x4 matrices: words of length 4 vanish, so the degree-3
  // truncation is exact.
  const auto terms = dynkin_terms(3);
  Rng rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    const Eigen::Matrix4d x = strictly_upper(rng), y = strictly_upper(rng);
    Eigen::Matrix4d series = Eigen::Matrix4d::Zero();
    for (const auto& t : terms) {
      Eigen::Matrix4d v = t.letters.back() ? y : x;
      for (std::size_t p = t.letters.size() - 1; p-- > 0;) {
        const Eigen::Matrix4d& a = t.letters[p] ? y : x;
        v = a * v - v * a;
      }
      series += static_cast<double>(t.coefficient) * v;
    }
    const Eigen::Matrix4d oracle = unipotent_log(nilpotent_exp(x) * nilpotent_exp(y));
    CHECK((series - oracle).cwiseAbs().maxCoeff() < 1e-14);
  }
  CHECK_THROWS_AS(dynkin_terms(0), Error);
}

TEST_CASE("Heisenberg product agrees with the unitriangular matrix oracle") {
  const auto h = builtin_group("heisenberg:1");
  const Point p = h.product(Point{1, 0, 0}, Point{0, 1, 0});
  CHECK(p == Point{1, 1, 0.5});
  Rng rng(1);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const Point g = random_point(rng, 3, 2.0), k = random_point(rng, 3, 2.0);
    const Point oracle = from_matrix(to_matrix(g) * to_matrix(k));
    worst = std::max(worst, dist2(h.product(g, k), oracle));
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("group laws") {
  const auto h = builtin_group("heisenberg:1");
  const double s = 0.7;
  Point w = h.product(Point{s, 0, 0}, Point{0, s, 0});
  CHECK(w == Point{s, s, s * s / 2});
  w = h.product(w, Point{-s, 0, 0});
  w = h.product(w, Point{0, -s, 0});
  CHECK(dist2(w, Point{0, 0, s * s}) < 1e-16);

  for (const char* name : {"heisenberg:1", "engel", "heisenberg:2"}) {
    const auto g = builtin_group(name);
    Rng rng(2);
    for (int i = 0; i < 100; ++i) {
      const auto a = exact(random_point(rng, g.dim())), b = exact(random_point(rng, g.dim())),
                 c = exact(random_point(rng, g.dim()));
      CHECK(g.product(g.product(a, b), c) == g.product(a, g.product(b, c)));
      const std::vector<Rational> e(g.dim(), Rational(0));
      CHECK(g.product(a, g.inverse(a)) == e);
      CHECK(g.product(a, e) == a);
      const Rational half(1, 3);
      CHECK(g.product(g.dilation(a, half), g.dilation(b, half)) ==
            g.dilation(g.product(a, b), half));
    }
  }
}

TEST_CASE("dilations and homogeneous norms") {
  const auto h = builtin_group("heisenberg:1");
  CHECK(h.dilation(Point{1, 1, 1}, 0.5) == Point{0.5, 0.5, 0.25});
  CHECK(h.dilation(Point{1, 2, 3}, 1.0) == Point{1, 2, 3});
  CHECK(homogeneous_norm(h, {1, 0, 0}, NormVariant::koranyi) == 1.0);
  CHECK(homogeneous_norm(h, {0, 0, 1}, NormVariant::koranyi) == doctest::Approx(2.0));

  const auto e = builtin_group("engel");
  CHECK_THROWS_AS(homogeneous_norm(e, {0, 0, 0, 1}, NormVariant::koranyi), Error);
  Rng rng(6);
  for (int i = 0; i < 200; ++i) {
    const Point g = random_point(rng, 4);
    const double t = rng.uniform(0.01, 1.0);
    const double n = homogeneous_norm(e, g, NormVariant::layer_quasi);
    CHECK(homogeneous_norm(e, e.dilation(g, t), NormVariant::layer_quasi) ==
          doctest::Approx(t * n).epsilon(1e-12));
    CHECK(homogeneous_norm(e, e.inverse(g), NormVariant::layer_quasi) == n);
  }
  CHECK(parse_norm_variant("cc") == NormVariant::cc);
  CHECK_THROWS_AS(parse_norm_variant("l2"), Error);
}

TEST_CASE("builtin groups and their invariants") {
  const auto h = builtin_group("heisenberg:1");
  CHECK(h.dim() == 3);
  CHECK(h.algebra().weights() == std::vector<int>{1, 1, 2});
  CHECK(h.homogeneous_dimension() == 4);
  CHECK(builtin_group("abelian:2").homogeneous_dimension() == 2);
  const auto e = builtin_group("engel");
  CHECK(e.algebra().weights() == std::vector<int>{1, 1, 2, 3});
  CHECK(e.homogeneous_dimension() == 7);
  CHECK(e.step() == 3);
  try {
    builtin_group("heisenberg:x");
    FAIL("expected unknown_name");
  } catch (const Error& err) {
    CHECK(err.code() == ErrorCode::unknown_name);
  }
}

TEST_CASE("validate names the first violated identity") {
  auto message = [](const GradedLieAlgebra& a) -> std::string {
    try {
      validate(a);
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::invalid_algebra);
      return e.what();
    }
    return "";
  };
  // c_12^3 = c_21^3 = 1.
  const GradedLieAlgebra bad(3, {1, 1, 2}, {{0, 1, 2, 1}, {1, 0, 2, 1}});
  CHECK(message(bad).find("antisymmetry fails at (1,2,3)") != std::string::npos);

  const GradedLieAlgebra graded(3, {1, 1, 1}, {{0, 1, 2, 1}});
  CHECK(message(graded).find("grading") != std::string::npos);

  const GradedLieAlgebra jacobi(
      7, {1, 1, 1, 2, 2, 2, 3},
      {{0, 1, 3, 1}, {1, 2, 4, 1}, {2, 0, 5, 1}, {3, 2, 6, 1}});
  CHECK(message(jacobi).find("Jacobi identity fails at (1,2,3,7)") != std::string::npos);

  const GradedLieAlgebra ungenerated(3, {1, 1, 2}, {});
  CHECK(message(ungenerated).find("Carnot generation") != std::string::npos);

  const auto r = validate(GradedLieAlgebra(4, {1, 1, 1, 1}, {}));
  CHECK(r.step == 1);
  CHECK(r.homogeneous_dimension == 4);
}

TEST_CASE("algebra files") {
  const auto a = GradedLieAlgebra::from_json_text(
      R"({"dim": 3, "weights": [1, 1, 2], "brackets": [[1, 2, 3, 1, 2]]})");
  CHECK(a.constant(0, 1, 2) == Rational(1, 2));
  CHECK(a.constant(1, 0, 2) == Rational(-1, 2));
  CHECK_THROWS_AS(GradedLieAlgebra::from_json_text("{"), Error);
  try {
    GradedLieAlgebra::load_file("/nonexistent/algebra.json");
    FAIL("expected io");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::io);
  }
}
