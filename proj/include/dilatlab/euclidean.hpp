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

#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "dilatlab/extended.hpp"
#include "dilatlab/structure.hpp"

namespace dilatlab {

/// R^n with delta^x_eps y = x + eps (y - x) and the Euclidean distance.
class AffineStructure final : public DilatationStructure {
 public:
  explicit AffineStructure(std::size_t n, double radius_a = 2.0,
                           double radius_b = 1.5);

  std::string id() const override;
  std::size_t dim() const override { return n_; }
  /// The origin; every center is equivalent under translation.
  Point default_center() const override { return Point(n_, 0.0); }
  double distance(const Point& u, const Point& v) const override;
  Point dilate_unchecked(const Point& x, const Scale& eps,
                         const Point& y) const override;

  std::optional<double> tangent_distance(const Point& x, const Point& u,
                                         const Point& v) const override;
  std::optional<Point> tangent_sum(const Point& x, const Point& u,
                                   const Point& v) const override;
  std::optional<Point> tangent_difference(const Point& x, const Point& u,
                                          const Point& v) const override;
  std::optional<Point> tangent_inverse(const Point& x,
                                       const Point& u) const override;
  const ExtendedDilations* extended() const override { return extended_.get(); }

 private:
  std::size_t n_;
  std::shared_ptr<const ExtendedDilations> extended_;
};

struct AffineForms {
  Point sum;         // u + (-x + v)
  Point difference;  // x + (-u + v)
  Point inverse;     // x - u + x
};

AffineForms affine_closed_forms(const Point& x, const Point& u, const Point& v);

/// Coefficients c[i][j][k] of the quadratic term, symmetric in (j, k).
using QuadraticCoefficients = std::vector<std::vector<std::vector<double>>>;

/// R^n with dilations conjugated by a base-point dependent chart
///   psi_x(y) = (y - x) + eta s(x) c[y - x, y - x],
///   delta^x_eps y = psi_x^{-1}(eps psi_x(y)).
/// A1 and A2 hold exactly, the tangent spaces are Euclidean, but the
/// structure is not linear when s varies: the negative control for linearity.
class ChartPerturbedStructure final : public DilatationStructure {
 public:
  using ScalarField = std::function<double(const Point&)>;
  /// The same field in extended precision; optional.
  using ExtendedField = std::function<Extended(const ExtendedPoint&)>;

  /// The registered default: n = 2, fixed coefficients, s = sin(x1) + cos(2 x2).
  static std::shared_ptr<const ChartPerturbedStructure> make_default();
  /// Coefficients drawn from `seed`, entries multiples of 1/8 in [-1/2, 1/2].
  static std::shared_ptr<const ChartPerturbedStructure> make_seeded(
      std::size_t n, double eta, std::uint64_t seed);

  ChartPerturbedStructure(std::size_t n, double eta,
                          QuadraticCoefficients coefficients,
                          ScalarField field, std::string id,
                          double chart_radius = 4.0, double radius_a = 2.0,
                          double radius_b = 1.5, ExtendedField extended_field = {});

  std::string id() const override { return id_; }
  std::size_t dim() const override { return n_; }
  double distance(const Point& u, const Point& v) const override;
  Point dilate_unchecked(const Point& x, const Scale& eps,
                         const Point& y) const override;
  Point default_center() const override;

  /// psi_x(y); throws out_of_domain when |y - x| exceeds the chart radius.
  Point chart_forward(const Point& x, const Point& y) const;
  /// psi_x^{-1}(w) as a point; throws out_of_domain when |w| exceeds half the
  /// chart radius and no_invert when Newton fails within 100 steps.
  Point chart_inverse(const Point& x, const Point& w) const;

  std::optional<double> tangent_distance(const Point& x, const Point& u,
                                         const Point& v) const override;
  std::optional<Point> tangent_sum(const Point& x, const Point& u,
                                   const Point& v) const override;
  std::optional<Point> tangent_difference(const Point& x, const Point& u,
                                          const Point& v) const override;
  std::optional<Point> tangent_inverse(const Point& x,
                                       const Point& u) const override;
  /// Present when an extended field was given.
  const ExtendedDilations* extended() const override { return extended_.get(); }

  double eta() const noexcept { return eta_; }
  double chart_radius() const noexcept { return chart_radius_; }

 private:
  // eta s(x) c[h, h]
  Point quadratic(const Point& x, const Point& h) const;

  std::size_t n_;
  double eta_;
  QuadraticCoefficients c_;
  ScalarField field_;
  std::string id_;
  double chart_radius_;
  std::shared_ptr<const ExtendedDilations> extended_;
};

}  // namespace dilatlab
