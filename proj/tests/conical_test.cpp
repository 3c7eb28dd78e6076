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

#include "dilatlab/conical.hpp"
#include "dilatlab/error.hpp"
#include "dilatlab/euclidean.hpp"
#include "dilatlab/operations.hpp"
#include "dilatlab/registry.hpp"

using namespace dilatlab;

namespace {

Scale eps(double v) { return Scale::continuous(v); }

Point random_point(Rng& rng, std::size_t n, double r) {
  Point p(n);
  for (auto& v : p) v = rng.uniform(-r, r);
  return p;
}

std::vector<Rational> exact(const Point& p) {
  std::vector<Rational> r;
  for (double v : p) r.emplace_back(v);
  return r;
}

bool is_zero(const std::vector<Rational>& v) {
  for (const auto& c : v)
    if (c != 0) return false;
  return true;
}

}  // namespace

TEST_CASE("left dilatation on the Heisenberg group") {
  const auto h = make_group("conical:heisenberg:koranyi");
  const Point got = left_dilatation(*h, {1, 0, 0}, eps(0.5), {0, 1, 0});
  CHECK(dist2(got, Point{0.5, 0.5, 0.125}) < 1e-16);
  CHECK(left_dilatation(*h, {0, 0, 0}, eps(0.5), {0.2, 0.4, 0.1}) ==
        h->dilate({0.2, 0.4, 0.1}, eps(0.5)));
  CHECK(dist2(left_dilatation(*h, {1, 0, 0}, eps(1.0), {0.3, 0.2, 0.1}), Point{0.3, 0.2, 0.1}) <
        1e-15);
  CHECK_THROWS_AS(left_dilatation(*h, {0, 0, 0}, eps(0.5), {3, 0, 0}), Error);

  // Exact evaluation of the same composite.
  const CarnotGroup g = builtin_group("heisenberg:1");
  const auto r = carnot_left_dilatation<Rational>(g, {1, 0, 0}, Rational(1, 2), {0, 1, 0});
  CHECK(r == std::vector<Rational>{Rational(1, 2), Rational(1, 2), Rational(1, 8)});
}

TEST_CASE("norm distance is left invariant") {
  const auto h = make_group("conical:heisenberg:koranyi");
  CHECK(norm_distance(*h, {0, 0, 0}, {0, 0, 1}) == doctest::Approx(2.0));
  CHECK(norm_distance(*h, {0.3, 0.1, 0.2}, {0.3, 0.1, 0.2}) == 0.0);
  Rng rng(12);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const Point x = random_point(rng, 3, 1.0), y = random_point(rng, 3, 1.0),
                z = random_point(rng, 3, 1.0);
    worst = std::max(worst, std::abs(norm_distance(*h, h->product(z, x), h->product(z, y)) -
                                     norm_distance(*h, x, y)));
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("abelian conical group is the affine structure") {
  const auto s = make_structure("conical:abelian:2");
  const AffineStructure a(2);
  Rng rng(5);
  for (int i = 0; i < 100; ++i) {
    const Point x = random_point(rng, 2, 0.3), y = a.sample_near(x, 0.5, rng);
    const double e = rng.uniform(0.05, 1.0);
    CHECK(dist2(dilate(*s, x, eps(e), y), dilate(a, x, eps(e), y)) < 1e-15);
    CHECK(s->distance(x, y) == doctest::Approx(dist2(x, y)).epsilon(1e-14));
  }
}

TEST_CASE("H1 and H2 estimators on the isotropic Heisenberg group") {
  const IsotropicHeisenberg g;
  const auto grid = make_grid(GridSpec{0.5, 0.5, 16}, ScaleKind::continuous);
  const auto b = beta_limit(g, {1, 0, 0}, {0, 1, 0}, grid);
  CHECK(b.reference_closed_form);
  CHECK(dist2(b.value, Point{1, 1, 0}) < 1e-5);
  REQUIRE(b.defects.size() == grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    CHECK(b.defects[k] == doctest::Approx(0.5 * grid[k].value()).epsilon(0.01));
  }
  CHECK(b.order == doctest::Approx(1.0).epsilon(0.01));

  const auto beta_e = beta_limit(g, {0.2, -0.1, 0.3}, {0, 0, 0}, grid);
  CHECK(dist2(beta_e.value, Point{0.2, -0.1, 0.3}) < 1e-15);

  const auto inv = inverse_limit(g, {0.2, -0.1, 0.3}, grid);
  CHECK(dist2(inv.value, Point{-0.2, 0.1, -0.3}) == 0.0);
  CHECK(dist2(inverse_limit(g, {0, 0, 0}, grid).value, Point{0, 0, 0}) == 0.0);
}

TEST_CASE("H1 and H2 are exact for graded dilations") {
  const auto h = make_group("conical:heisenberg:koranyi");
  const auto grid = make_grid(GridSpec{}, ScaleKind::continuous);
  const Point x = {0.4, -0.2, 0.1}, y = {0.1, 0.3, -0.2};
  const auto b = beta_limit(*h, x, y, grid);
  for (double d : b.defects) CHECK(d < 1e-12);
  CHECK(dist2(b.value, h->product(x, y)) < 1e-12);
  const auto inv = inverse_limit(*h, x, grid);
  CHECK(dist2(inv.value, Point{-0.4, 0.2, -0.1}) < 1e-12);
}

TEST_CASE("norm limits") {
  const auto h = make_group("conical:heisenberg:koranyi");
  const auto grid = make_grid(GridSpec{}, ScaleKind::continuous);
  const auto n = norm_limit(*h, {0.3, 0.4, 0.2}, grid);
  CHECK(n.value == doctest::Approx(h->norm({0.3, 0.4, 0.2})).epsilon(1e-13));
  CHECK_FALSE(n.degenerate);
  CHECK(norm_limit(*h, {0, 0, 0}, grid).value == 0.0);

  // Scalar dilations with the Euclidean norm: |delta_eps x| / eps = |x|.
  const IsotropicHeisenberg iso;
  const auto ni = norm_limit(iso, {0, 0, 1}, grid);
  CHECK(ni.value == doctest::Approx(1.0));
  CHECK_FALSE(ni.degenerate);

  // Graded dilations with the Euclidean norm: the centre direction degenerates.
  const auto graded = from_contraction(
      ContractionGroup::from_conical(h), [](const Point& p) { return norm2(p); }, false);
  const auto dyadic = make_grid(GridSpec{}, ScaleKind::dyadic);
  const auto nd = norm_limit(*graded, {0, 0, 1}, dyadic);
  CHECK(nd.degenerate);
  CHECK_FALSE(norm_limit(*graded, {1, 0, 0}, dyadic).degenerate);
}

TEST_CASE("contraction groups") {
  Eigen::MatrixXd m(2, 2);
  m << 0.5, 0.0, 0.0, 0.25;
  const auto c = ContractionGroup::linear(m, "diag");
  const auto check = check_contraction(c, 1, 100, 1.0);
  CHECK(check.morphism_defect < 1e-15);
  CHECK(check.contraction_after < 1e-15);

  const auto g = from_contraction_matrix(m, "diag");
  CHECK(g->scale_kind() == ScaleKind::dyadic);
  CHECK(g->dilate({1, 1}, Scale::dyadic(-3)) == Point{0.125, 1.0 / 64.0});
  CHECK(g->dilate({1, 1}, Scale::dyadic(2)) == Point{4, 16});
  Rng rng(3);
  for (int i = 0; i < 100; ++i) {
    const Point x = random_point(rng, 2, 1.0);
    const int a = -static_cast<int>(rng.uniform(0, 5)), b = -static_cast<int>(rng.uniform(0, 5));
    CHECK(g->dilate(g->dilate(x, Scale::dyadic(a)), Scale::dyadic(b)) ==
          g->dilate(x, Scale::dyadic(a + b)));
  }
  CHECK(g->homogeneous_norm());

  // alpha = delta_{1/2} on Heisenberg gives back the graded dilations.
  const auto h = make_group("conical:heisenberg:koranyi");
  const auto hc = from_contraction(ContractionGroup::from_conical(h),
                                   [&](const Point& p) { return h->norm(p); }, true);
  CHECK(dist2(hc->dilate({1, 1, 1}, Scale::dyadic(-2)),
              h->dilate({1, 1, 1}, eps(0.25))) < 1e-16);
  CHECK(check_contraction(ContractionGroup::from_conical(h), 2, 100, 1.0).morphism_defect <
        1e-14);

  const auto loaded = load_matrix_file(DILATLAB_TEST_DATA "/diag.json");
  CHECK(loaded(1, 1) == 0.25);
  try {
    load_matrix_file(DILATLAB_TEST_DATA "/missing.json");
    FAIL("expected io");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::io);
  }
  CHECK_THROWS_AS(load_matrix_file(DILATLAB_TEST_DATA "/broken.json"), Error);
}

TEST_CASE("norm axioms") {
  const auto h = make_group("conical:heisenberg:koranyi");
  const auto r = check_norm_axioms(*h, 4, 500, 1.0);
  CHECK(r.identity_norm == 0.0);
  CHECK(r.min_nonzero_norm > 0.0);
  CHECK(r.symmetry_defect < 1e-15);
  CHECK(r.subadditivity_constant == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("linearity identities hold exactly in rational arithmetic") {
  for (const char* name : {"heisenberg:1", "engel"}) {
    const CarnotGroup g = builtin_group(name);
    Rng rng(19);
    for (int i = 0; i < 100; ++i) {
      const auto x = exact(random_point(rng, g.dim(), 0.5)),
                 y = exact(random_point(rng, g.dim(), 0.5)),
                 z = exact(random_point(rng, g.dim(), 0.5));
      const Rational e(1, 1 + static_cast<int>(rng.uniform(1, 40)));
      const Rational m(static_cast<int>(rng.uniform(1, 9)), 9);
      CHECK(is_zero(lin_residual(g, x, y, z, e, m)));
      CHECK(is_zero(swap_residual(g, x, y, z, e)));
      CHECK(is_zero(reconstruction_residual(g, x, y, z, m)));
    }
  }
}

TEST_CASE("tangent reconstruction") {
  const auto h = make_structure("conical:heisenberg:koranyi");
  const auto c = make_structure("chart:2");
  Rng rng(31);
  double chart_largest = 0.0;
  for (int i = 0; i < 100; ++i) {
    const Point u = h->sample_near({0, 0, 0}, 0.3, rng), v = h->sample_near({0, 0, 0}, 0.3, rng);
    CHECK(tangent_reconstruction_defect(*h, {0, 0, 0}, u, v, eps(0.5)) <= 1e-10);
    const Point x = c->default_center();
    const Point cu = c->sample_near(x, 0.3, rng), cv = c->sample_near(x, 0.3, rng);
    chart_largest = std::max(chart_largest,
                             tangent_reconstruction_defect(*c, x, cu, cv, eps(0.5)));
  }
  CHECK(chart_largest > 1e-6);
}
