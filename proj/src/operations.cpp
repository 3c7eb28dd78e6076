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

#include "dilatlab/operations.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

#include "dilatlab/convergence.hpp"
#include "dilatlab/error.hpp"

namespace dilatlab {
namespace {

constexpr double kRadiusSlack = 1e-12;
// Cauchy differences below this are treated as converged. They are taken in
// coordinates: metrics like the Koranyi norm turn rounding noise eta into
// eta^(1/2) and would hide convergence.
constexpr double kCauchyNoise = 1e-11;

void check_dims(const DilatationStructure& s, const Point& p) {
  if (p.size() != s.dim()) {
    throw Error(ErrorCode::invalid_argument,
                "point of dimension " + std::to_string(p.size()) +
                    " given to " + s.id());
  }
}

}  // namespace

Point dilate(const DilatationStructure& s, const Point& x, const Scale& eps,
             const Point& y) {
  check_dims(s, x);
  check_dims(s, y);
  if (eps.kind() != s.scale_kind()) {
    throw Error(ErrorCode::invalid_argument,
                "scale kind does not match structure " + s.id());
  }
  if (eps.contracting()) {
    if (s.distance(x, y) > s.radius_a() * (1.0 + kRadiusSlack)) {
      throw Error(ErrorCode::out_of_domain, "point outside U(x)");
    }
    return s.dilate_unchecked(x, eps, y);
  }
  Point out = s.dilate_unchecked(x, eps, y);
  if (!(s.distance(x, out) <= s.radius_b() * (1.0 + kRadiusSlack))) {
    throw Error(ErrorCode::out_of_domain, "expanding dilation leaves B(x, B)");
  }
  return out;
}

Point approx_difference(const DilatationStructure& s, const Point& x,
                        const Scale& eps, const Point& u, const Point& v) {
  const Point base = dilate(s, x, eps, u);
  return dilate(s, base, eps.inverse(), dilate(s, x, eps, v));
}

Point approx_sum(const DilatationStructure& s, const Point& x,
                 const Scale& eps, const Point& u, const Point& v) {
  const Point base = dilate(s, x, eps, u);
  return dilate(s, x, eps.inverse(), dilate(s, base, eps, v));
}

Point approx_inverse(const DilatationStructure& s, const Point& x,
                     const Scale& eps, const Point& u) {
  const Point base = dilate(s, x, eps, u);
  return dilate(s, base, eps.inverse(), x);
}

double relative_distance(const DilatationStructure& s, const Point& x,
                         const Scale& mu, const Point& u, const Point& v) {
  if (!mu.contracting()) {
    throw Error(ErrorCode::out_of_domain, "relative distance needs nu(mu) <= 1");
  }
  return s.distance(dilate(s, x, mu, u), dilate(s, x, mu, v)) / mu.value();
}

double lin_defect(const DilatationStructure& s, const Point& x, const Point& y,
                  const Point& z, const Scale& eps, const Scale& mu) {
  const Point left = dilate(s, x, eps, dilate(s, y, mu, z));
  const Point right =
      dilate(s, dilate(s, x, eps, y), mu, dilate(s, x, eps, z));
  return s.distance(left, right);
}

double linear_map_defect(const DilatationStructure& s,
                         const DilatationStructure& t, const PointMap& map,
                         const Point& x, const Scale& eps, const Point& y) {
  const Point left = map(dilate(s, x, eps, y));
  const Point right = dilate(t, map(x), eps, map(y));
  return t.distance(left, right);
}

double sum_diff_swap_defect(const DilatationStructure& s, const Point& x,
                            const Point& u, const Point& v, const Scale& eps) {
  return s.distance(approx_sum(s, x, eps, u, v),
                    approx_difference(s, u, eps, x, v));
}

// ---------------------------------------------------------------------------

namespace {

void check_grid(const std::vector<Scale>& grid) {
  if (grid.size() < 2) {
    throw Error(ErrorCode::invalid_argument, "grid needs at least two scales");
  }
  for (std::size_t k = 0; k < grid.size(); ++k) {
    if (!(grid[k].value() < 1.0) ||
        (k > 0 && !(grid[k].value() < grid[k - 1].value()))) {
      throw Error(ErrorCode::invalid_argument,
                  "grid must be strictly decreasing inside (0,1)");
    }
  }
}

template <class Op>
PointEstimate point_limit(const DilatationStructure&,
                          const std::vector<Scale>& grid, Op op) {
  check_grid(grid);
  std::vector<Point> values;
  values.reserve(grid.size());
  for (const auto& eps : grid) values.push_back(op(eps));

  PointEstimate est;
  est.value = values.back();
  std::vector<double> eps_values;
  for (std::size_t k = 0; k + 1 < values.size(); ++k) {
    est.cauchy.push_back(dist2(values[k], values[k + 1]));
    eps_values.push_back(grid[k].value());
  }
  // Cauchy differences must keep decreasing over the tail unless they have
  // already reached noise.
  const std::size_t half = est.cauchy.size() / 2;
  for (std::size_t k = half; k + 1 < est.cauchy.size(); ++k) {
    if (est.cauchy[k + 1] > est.cauchy[k] && est.cauchy[k + 1] > kCauchyNoise) {
      throw Error(ErrorCode::no_convergence,
                  "Cauchy differences grow on the tail of the grid");
    }
  }
  try {
    OrderFit fit = fit_order(eps_values, est.cauchy, kCauchyNoise);
    est.order = fit.order;
    est.residual = fit.residual;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::noise_floor) throw;
    est.noise = true;
    est.order = std::numeric_limits<double>::quiet_NaN();
  }
  return est;
}

}  // namespace

ScalarEstimate tangent_distance_estimate(const DilatationStructure& s,
                                         const Point& x, const Point& u,
                                         const Point& v,
                                         const std::vector<Scale>& grid) {
  check_grid(grid);
  std::vector<double> values;
  for (const auto& mu : grid) values.push_back(relative_distance(s, x, mu, u, v));
  ScalarEstimate est;
  est.value = values.back();
  std::vector<double> eps_values;
  for (std::size_t k = 0; k + 1 < values.size(); ++k) {
    est.defects.push_back(std::abs(values[k] - est.value));
    eps_values.push_back(grid[k].value());
  }
  try {
    OrderFit fit = fit_order(eps_values, est.defects, Tolerances{}.noise_floor);
    est.order = fit.order;
    est.residual = fit.residual;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::noise_floor) throw;
    est.noise = true;
    est.order = std::numeric_limits<double>::quiet_NaN();
  }
  const double d = s.distance(u, v);
  est.degenerate = d > 0.0 && est.value < Tolerances{}.degeneracy * d;
  return est;
}

PointEstimate tangent_sum_estimate(const DilatationStructure& s,
                                   const Point& x, const Point& u,
                                   const Point& v,
                                   const std::vector<Scale>& grid) {
  return point_limit(s, grid, [&](const Scale& eps) {
    return approx_sum(s, x, eps, u, v);
  });
}

PointEstimate tangent_difference_estimate(const DilatationStructure& s,
                                          const Point& x, const Point& u,
                                          const Point& v,
                                          const std::vector<Scale>& grid) {
  return point_limit(s, grid, [&](const Scale& eps) {
    return approx_difference(s, x, eps, u, v);
  });
}

PointEstimate tangent_inverse_estimate(const DilatationStructure& s,
                                       const Point& x, const Point& u,
                                       const std::vector<Scale>& grid) {
  return point_limit(s, grid, [&](const Scale& eps) {
    return approx_inverse(s, x, eps, u);
  });
}

// ---------------------------------------------------------------------------

namespace {

class ShiftedStructure final : public DilatationStructure {
 public:
  ShiftedStructure(StructurePtr base, Point x, Scale mu)
      : DilatationStructure(base->radius_a(), base->radius_b()),
        base_(std::move(base)),
        x_(std::move(x)),
        mu_(mu) {}

  std::string id() const override {
    char buf[64];
    std::snprintf(buf, sizeof buf, "shifted:%.17g:", mu_.value());
    return buf + base_->id();
  }
  std::size_t dim() const override { return base_->dim(); }
  ScaleKind scale_kind() const override { return base_->scale_kind(); }
  Point default_center() const override { return x_; }

  double distance(const Point& u, const Point& v) const override {
    return relative_distance(*base_, x_, mu_, u, v);
  }

  Point dilate_unchecked(const Point& u, const Scale& eps,
                         const Point& v) const override {
    const DilatationStructure& b = *base_;
    const Point moved = dilate(b, dilate(b, x_, mu_, u), eps, dilate(b, x_, mu_, v));
    return dilate(b, x_, mu_.inverse(), moved);
  }

  // d-hat^u(v, w) = d^{delta^x_mu u}(Delta^x_mu(u, v), Delta^x_mu(u, w)).
  std::optional<double> tangent_distance(const Point& u, const Point& v,
                                         const Point& w) const override {
    const DilatationStructure& b = *base_;
    const Point base_point = dilate(b, x_, mu_, u);
    return b.tangent_distance(base_point, approx_difference(b, x_, mu_, u, v),
                              approx_difference(b, x_, mu_, u, w));
  }

 private:
  StructurePtr base_;
  Point x_;
  Scale mu_;
};

}  // namespace

StructurePtr shifted_structure(StructurePtr base, const Point& x,
                               const Scale& mu) {
  if (!mu.contracting()) {
    throw Error(ErrorCode::out_of_domain, "shifted structure needs nu(mu) <= 1");
  }
  if (x.size() != base->dim()) {
    throw Error(ErrorCode::invalid_argument, "base point dimension mismatch");
  }
  return std::make_shared<ShiftedStructure>(std::move(base), x, mu);
}

}  // namespace dilatlab
