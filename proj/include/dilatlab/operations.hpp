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
#include <vector>

#include "dilatlab/structure.hpp"

namespace dilatlab {

// Induced operations of a dilatation structure. All of them check the working
// domain and throw Error(out_of_domain) when a sample leaves it.

Point dilate(const DilatationStructure& s, const Point& x, const Scale& eps,
             const Point& y);

/// Delta^x_eps(u, v) = delta^{delta^x_eps u}_{1/eps} delta^x_eps v.
Point approx_difference(const DilatationStructure& s, const Point& x,
                        const Scale& eps, const Point& u, const Point& v);

/// Sigma^x_eps(u, v) = delta^x_{1/eps} delta^{delta^x_eps u}_eps v.
Point approx_sum(const DilatationStructure& s, const Point& x,
                 const Scale& eps, const Point& u, const Point& v);

/// inv^x_eps(u) = delta^{delta^x_eps u}_{1/eps} x.
Point approx_inverse(const DilatationStructure& s, const Point& x,
                     const Scale& eps, const Point& u);

/// (delta^x, mu)(u, v) = d(delta^x_mu u, delta^x_mu v) / mu.
double relative_distance(const DilatationStructure& s, const Point& x,
                         const Scale& mu, const Point& u, const Point& v);

/// Distance between the two sides of the linearity identity
/// delta^x_eps delta^y_mu z = delta^{delta^x_eps y}_mu delta^x_eps z.
double lin_defect(const DilatationStructure& s, const Point& x, const Point& y,
                  const Point& z, const Scale& eps, const Scale& mu);

using PointMap = std::function<Point(const Point&)>;

/// d_T(A delta^x_eps y, delta^{A x}_eps A y); zero for linear maps.
double linear_map_defect(const DilatationStructure& s,
                         const DilatationStructure& t, const PointMap& map,
                         const Point& x, const Scale& eps, const Point& y);

/// d(Sigma^x_eps(u, v), Delta^u_eps(x, v)); zero on linear structures.
double sum_diff_swap_defect(const DilatationStructure& s, const Point& x,
                            const Point& u, const Point& v, const Scale& eps);

// ---------------------------------------------------------------------------
// Limits along a scale grid.

struct ScalarEstimate {
  double value = 0.0;
  /// Fitted convergence order of |f(mu) - value|; NaN when the defects sit at
  /// floating-point noise.
  double order = 0.0;
  double residual = 0.0;
  bool noise = false;
  bool degenerate = false;
  std::vector<double> defects;
};

struct PointEstimate {
  Point value;
  double order = 0.0;
  double residual = 0.0;
  bool noise = false;
  /// d(op_mu_k, op_mu_{k+1}) along the grid.
  std::vector<double> cauchy;
};

/// Estimates d^x(u, v). The value at the smallest scale is returned; the
/// degenerate flag is raised instead of an error when the estimate vanishes
/// while d(u, v) does not.
ScalarEstimate tangent_distance_estimate(const DilatationStructure& s,
                                         const Point& x, const Point& u,
                                         const Point& v,
                                         const std::vector<Scale>& grid);

PointEstimate tangent_sum_estimate(const DilatationStructure& s,
                                   const Point& x, const Point& u,
                                   const Point& v,
                                   const std::vector<Scale>& grid);
PointEstimate tangent_difference_estimate(const DilatationStructure& s,
                                          const Point& x, const Point& u,
                                          const Point& v,
                                          const std::vector<Scale>& grid);
PointEstimate tangent_inverse_estimate(const DilatationStructure& s,
                                       const Point& x, const Point& u,
                                       const std::vector<Scale>& grid);

/// The structure seen from x at scale mu: dilations
/// u, eps, v -> delta^x_{1/mu} delta^{delta^x_mu u}_eps delta^x_mu v with the
/// distance (delta^x, mu).
StructurePtr shifted_structure(StructurePtr base, const Point& x,
                               const Scale& mu);

struct Tolerances {
  double exact = 1e-10;
  double degeneracy = 1e-9;
  double noise_floor = 1e-13;
  /// Rounding noise of a (1/eps)-normalized defect grows like this / eps.
  double amplified_noise = 1e-14;
};

}  // namespace dilatlab
