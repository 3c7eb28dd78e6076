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

#include "dilatlab/euclidean.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <cstdio>

#include "dilatlab/error.hpp"

namespace dilatlab {
namespace {

Extended extended_dist2(const ExtendedPoint& u, const ExtendedPoint& v) {
  Extended s = 0;
  for (std::size_t i = 0; i < u.size(); ++i) s += (u[i] - v[i]) * (u[i] - v[i]);
  return sqrt(s);
}

class AffineExtended final : public ExtendedDilations {
 public:
  ExtendedPoint dilate(const ExtendedPoint& x, const Extended& eps,
                       const ExtendedPoint& y) const override {
    ExtendedPoint r(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) r[i] = x[i] + eps * (y[i] - x[i]);
    return r;
  }
  Extended distance(const ExtendedPoint& u, const ExtendedPoint& v) const override {
    return extended_dist2(u, v);
  }
};

// Same chart as ChartPerturbedStructure, with Newton run to ~1e-45.
class ChartExtended final : public ExtendedDilations {
 public:
  ChartExtended(std::size_t n, double eta, const QuadraticCoefficients& c,
                ChartPerturbedStructure::ExtendedField field)
      : n_(n), eta_(eta), field_(std::move(field)) {
    c_.resize(n * n * n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) c_[(i * n + j) * n + k] = c[i][j][k];
  }

  ExtendedPoint dilate(const ExtendedPoint& x, const Extended& eps,
                       const ExtendedPoint& y) const override {
    const Extended scale = eta_ * field_(x);
    ExtendedPoint h(n_);
    for (std::size_t i = 0; i < n_; ++i) h[i] = y[i] - x[i];
    ExtendedPoint w = forward(scale, h);
    for (auto& c : w) c *= eps;
    h = inverse(scale, w);
    for (std::size_t i = 0; i < n_; ++i) h[i] += x[i];
    return h;
  }

  Extended distance(const ExtendedPoint& u, const ExtendedPoint& v) const override {
    return extended_dist2(u, v);
  }

 private:
  const Extended& c(std::size_t i, std::size_t j, std::size_t k) const {
    return c_[(i * n_ + j) * n_ + k];
  }

  ExtendedPoint forward(const Extended& scale, const ExtendedPoint& h) const {
    ExtendedPoint w(h);
    for (std::size_t i = 0; i < n_; ++i) {
      Extended s = 0;
      for (std::size_t j = 0; j < n_; ++j)
        for (std::size_t k = 0; k < n_; ++k) s += c(i, j, k) * h[j] * h[k];
      w[i] += scale * s;
    }
    return w;
  }

  ExtendedPoint inverse(const Extended& scale, const ExtendedPoint& w) const {
    ExtendedPoint h(w);
    Extended wn = 0;
    for (const auto& v : w) wn += abs(v);
    const Extended tol = Extended("1e-45") * (1 + wn);
    std::vector<ExtendedPoint> jac(n_, ExtendedPoint(n_));
    ExtendedPoint r(n_);
    for (int iter = 0; iter < 100; ++iter) {
      Extended rn = 0;
      for (std::size_t i = 0; i < n_; ++i) {
        Extended s = 0;
        for (std::size_t j = 0; j < n_; ++j) {
          Extended row = 0;
          for (std::size_t k = 0; k < n_; ++k) row += c(i, j, k) * h[k];
          s += row * h[j];
          jac[i][j] = (i == j ? Extended(1) : Extended(0)) + 2 * scale * row;
        }
        r[i] = h[i] + scale * s - w[i];
        rn += abs(r[i]);
      }
      if (rn <= tol) return h;
      const ExtendedPoint step = solve(jac, r);
      for (std::size_t i = 0; i < n_; ++i) h[i] -= step[i];
    }
    throw Error(ErrorCode::no_invert, "extended chart inverse did not converge");
  }

  // Gaussian elimination with partial pivoting; n is small.
  ExtendedPoint solve(std::vector<ExtendedPoint> a, ExtendedPoint b) const {
    for (std::size_t col = 0; col < n_; ++col) {
      std::size_t piv = col;
      for (std::size_t r = col + 1; r < n_; ++r)
        if (abs(a[r][col]) > abs(a[piv][col])) piv = r;
      std::swap(a[col], a[piv]);
      std::swap(b[col], b[piv]);
      if (a[col][col] == 0) throw Error(ErrorCode::no_invert, "singular chart Jacobian");
      for (std::size_t r = col + 1; r < n_; ++r) {
        const Extended f = a[r][col] / a[col][col];
        for (std::size_t k = col; k < n_; ++k) a[r][k] -= f * a[col][k];
        b[r] -= f * b[col];
      }
    }
    ExtendedPoint x(n_);
    for (std::size_t i = n_; i-- > 0;) {
      Extended s = b[i];
      for (std::size_t k = i + 1; k < n_; ++k) s -= a[i][k] * x[k];
      x[i] = s / a[i][i];
    }
    return x;
  }

  std::size_t n_;
  Extended eta_;
  std::vector<Extended> c_;
  ChartPerturbedStructure::ExtendedField field_;
};

// s(x) = sin(x_1) + cos(2 x_n), generic over the scalar.
template <class P>
auto default_field(const P& x) {
  using std::cos;
  using std::sin;
  return sin(x[0]) + cos(2 * x[x.size() - 1]);
}

}  // namespace

// ---------------------------------------------------------------------------
// AffineStructure

AffineStructure::AffineStructure(std::size_t n, double radius_a, double radius_b)
    : DilatationStructure(radius_a, radius_b),
      n_(n),
      extended_(std::make_shared<AffineExtended>()) {
  if (n == 0) throw Error(ErrorCode::invalid_argument, "dimension must be >= 1");
}

std::string AffineStructure::id() const {
  return "euclidean:" + std::to_string(n_);
}

double AffineStructure::distance(const Point& u, const Point& v) const {
  return dist2(u, v);
}

Point AffineStructure::dilate_unchecked(const Point& x, const Scale& eps,
                                        const Point& y) const {
  Point r(n_);
  for (std::size_t i = 0; i < n_; ++i) r[i] = x[i] + eps.value() * (y[i] - x[i]);
  return r;
}

AffineForms affine_closed_forms(const Point& x, const Point& u, const Point& v) {
  AffineForms f;
  f.sum.resize(x.size());
  f.difference.resize(x.size());
  f.inverse.resize(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    f.sum[i] = u[i] + (-x[i] + v[i]);
    f.difference[i] = x[i] + (-u[i] + v[i]);
    f.inverse[i] = x[i] - u[i] + x[i];
  }
  return f;
}

std::optional<double> AffineStructure::tangent_distance(const Point&,
                                                        const Point& u,
                                                        const Point& v) const {
  return dist2(u, v);
}

std::optional<Point> AffineStructure::tangent_sum(const Point& x,
                                                  const Point& u,
                                                  const Point& v) const {
  return affine_closed_forms(x, u, v).sum;
}

std::optional<Point> AffineStructure::tangent_difference(const Point& x,
                                                         const Point& u,
                                                         const Point& v) const {
  return affine_closed_forms(x, u, v).difference;
}

std::optional<Point> AffineStructure::tangent_inverse(const Point& x,
                                                      const Point& u) const {
  return affine_closed_forms(x, u, u).inverse;
}

// ---------------------------------------------------------------------------
// ChartPerturbedStructure

std::shared_ptr<const ChartPerturbedStructure>
ChartPerturbedStructure::make_default() {
  QuadraticCoefficients c = {
      {{0.5, 0.25}, {0.25, -0.125}},
      {{-0.25, 0.125}, {0.125, 0.375}},
  };
  return std::make_shared<ChartPerturbedStructure>(
      2, 0.05, std::move(c), default_field<Point>, "chart:2", 4.0, 2.0, 1.5,
      default_field<ExtendedPoint>);
}

std::shared_ptr<const ChartPerturbedStructure>
ChartPerturbedStructure::make_seeded(std::size_t n, double eta,
                                     std::uint64_t seed) {
  Rng rng(seed);
  QuadraticCoefficients c(n, std::vector<std::vector<double>>(n, std::vector<double>(n)));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = j; k < n; ++k) {
        const double q = std::floor(rng.uniform() * 9.0) - 4.0;  // -4..4
        c[i][j][k] = c[i][k][j] = q / 8.0;
      }
    }
  }
  char buf[96];
  std::snprintf(buf, sizeof buf, "chart:%zu:%.17g:%llu", n, eta,
                static_cast<unsigned long long>(seed));
  return std::make_shared<ChartPerturbedStructure>(
      n, eta, std::move(c), default_field<Point>, buf, 4.0, 2.0, 1.5,
      default_field<ExtendedPoint>);
}

ChartPerturbedStructure::ChartPerturbedStructure(
    std::size_t n, double eta, QuadraticCoefficients coefficients,
    ScalarField field, std::string id, double chart_radius, double radius_a,
    double radius_b, ExtendedField extended_field)
    : DilatationStructure(radius_a, radius_b),
      n_(n),
      eta_(eta),
      c_(std::move(coefficients)),
      field_(std::move(field)),
      id_(std::move(id)),
      chart_radius_(chart_radius) {
  if (n == 0 || c_.size() != n) {
    throw Error(ErrorCode::invalid_argument, "coefficient tensor shape mismatch");
  }
  for (const auto& m : c_) {
    if (m.size() != n) throw Error(ErrorCode::invalid_argument, "coefficient shape");
    for (std::size_t j = 0; j < n; ++j) {
      if (m[j].size() != n) throw Error(ErrorCode::invalid_argument, "coefficient shape");
      for (std::size_t k = 0; k < n; ++k) {
        if (m[j][k] != m[k][j]) {
          throw Error(ErrorCode::invalid_argument,
                      "quadratic coefficients must be symmetric in (j, k)");
        }
      }
    }
  }
  if (!(std::abs(eta) * chart_radius < 0.25)) {
    throw Error(ErrorCode::invalid_argument, "chart needs eta * rho < 1/4");
  }
  if (extended_field) {
    extended_ = std::make_shared<ChartExtended>(n_, eta_, c_, std::move(extended_field));
  }
}

Point ChartPerturbedStructure::default_center() const {
  Point c(n_, 0.0);
  c[0] = 0.3;
  if (n_ > 1) c[1] = -0.2;
  return c;
}

double ChartPerturbedStructure::distance(const Point& u, const Point& v) const {
  return dist2(u, v);
}

Point ChartPerturbedStructure::quadratic(const Point& x, const Point& h) const {
  const double scale = eta_ * field_(x);
  Point q(n_, 0.0);
  for (std::size_t i = 0; i < n_; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < n_; ++j) {
      for (std::size_t k = 0; k < n_; ++k) s += c_[i][j][k] * h[j] * h[k];
    }
    q[i] = scale * s;
  }
  return q;
}

Point ChartPerturbedStructure::chart_forward(const Point& x, const Point& y) const {
  const Point h = sub(y, x);
  if (norm2(h) > chart_radius_) {
    throw Error(ErrorCode::out_of_domain, "chart_forward outside chart radius");
  }
  return add(h, quadratic(x, h));
}

Point ChartPerturbedStructure::chart_inverse(const Point& x, const Point& w) const {
  const double wn = norm2(w);
  if (wn > 0.5 * chart_radius_) {
    throw Error(ErrorCode::out_of_domain, "chart_inverse outside chart radius");
  }
  const double scale = eta_ * field_(x);
  const auto n = static_cast<Eigen::Index>(n_);
  Eigen::VectorXd h = Eigen::Map<const Eigen::VectorXd>(w.data(), n);
  const Eigen::VectorXd target = h;
  Eigen::MatrixXd jac(n, n);
  Eigen::VectorXd residual(n);

  auto eval = [&](const Eigen::VectorXd& hh) {
    for (Eigen::Index i = 0; i < n; ++i) {
      double s = 0.0;
      for (Eigen::Index j = 0; j < n; ++j) {
        double row = 0.0;
        for (Eigen::Index k = 0; k < n; ++k) row += c_[i][j][k] * hh[k];
        s += row * hh[j];
        jac(i, j) = (i == j ? 1.0 : 0.0) + 2.0 * scale * row;
      }
      residual[i] = hh[i] + scale * s - target[i];
    }
  };

  auto to_point = [&] {
    Point out(n_);
    for (std::size_t i = 0; i < n_; ++i) out[i] = x[i] + h[static_cast<Eigen::Index>(i)];
    return out;
  };

  const double tol = 1e-15 * (1.0 + wn);
  for (int iter = 0; iter < 100; ++iter) {
    eval(h);
    if (residual.norm() <= tol) {
      return to_point();
    }
    const Eigen::VectorXd step = jac.partialPivLu().solve(residual);
    h -= step;
    if (!h.allFinite()) break;
    // Rounding can stall just above tol; accept once the step is negligible.
    if (step.norm() <= 1e-17 * (1.0 + h.norm())) {
      eval(h);
      if (residual.norm() <= 1e-13) {
        return to_point();
      }
      break;
    }
  }
  eval(h);
  if (h.allFinite() && residual.norm() <= 1e-13) {
    return to_point();
  }
  throw Error(ErrorCode::no_invert, "chart inverse did not converge");
}

Point ChartPerturbedStructure::dilate_unchecked(const Point& x, const Scale& eps,
                                                const Point& y) const {
  return chart_inverse(x, scaled(chart_forward(x, y), eps.value()));
}

std::optional<double> ChartPerturbedStructure::tangent_distance(
    const Point& x, const Point& u, const Point& v) const {
  return dist2(chart_forward(x, u), chart_forward(x, v));
}

std::optional<Point> ChartPerturbedStructure::tangent_sum(const Point& x,
                                                          const Point& u,
                                                          const Point& v) const {
  return chart_inverse(x, add(chart_forward(x, u), chart_forward(x, v)));
}

std::optional<Point> ChartPerturbedStructure::tangent_difference(
    const Point& x, const Point& u, const Point& v) const {
  return chart_inverse(x, sub(chart_forward(x, v), chart_forward(x, u)));
}

std::optional<Point> ChartPerturbedStructure::tangent_inverse(
    const Point& x, const Point& u) const {
  return chart_inverse(x, scaled(chart_forward(x, u), -1.0));
}

}  // namespace dilatlab
