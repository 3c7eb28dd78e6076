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

#include <Eigen/Dense>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "dilatlab/carnot.hpp"
#include "dilatlab/extended.hpp"
#include "dilatlab/structure.hpp"

namespace dilatlab {

/// A group with an identity-based dilation family delta_eps and a norm.
///
/// Points are coordinates in which the identity is the zero vector. The
/// optional tangent hooks return the limit law beta, its inverse and the
/// limit norm when they are known in closed form.
class GroupWithDilatations {
 public:
  virtual ~GroupWithDilatations() = default;

  virtual std::string name() const = 0;
  virtual std::size_t dim() const = 0;
  virtual ScaleKind scale_kind() const { return ScaleKind::continuous; }

  virtual Point product(const Point& g, const Point& h) const = 0;
  virtual Point inverse(const Point& g) const = 0;
  Point identity() const { return Point(dim(), 0.0); }

  virtual Point dilate(const Point& g, const Scale& eps) const = 0;
  virtual double norm(const Point& g) const = 0;

  /// Every delta_eps is a group morphism.
  virtual bool automorphic() const = 0;
  /// |delta_eps g| = nu(eps) |g| exactly.
  virtual bool homogeneous_norm() const = 0;

  virtual std::optional<Point> tangent_product(const Point& g, const Point& h) const;
  virtual std::optional<Point> tangent_inverse(const Point& g) const;
  virtual std::optional<double> tangent_norm(const Point& g) const;

  /// Half widths of a coordinate box containing the norm ball of radius r.
  virtual Point box_half_widths(double r) const;

  /// x delta_eps(x^-1 y) and |x^-1 y| in extended precision, when available.
  virtual std::shared_ptr<const ExtendedDilations> extended() const { return nullptr; }
};

using GroupPtr = std::shared_ptr<const GroupWithDilatations>;

/// Carnot group with graded dilations and a homogeneous norm.
class CarnotConicalGroup final : public GroupWithDilatations {
 public:
  CarnotConicalGroup(std::shared_ptr<const CarnotGroup> group, NormVariant variant);

  std::string name() const override;
  std::size_t dim() const override { return group_->dim(); }
  Point product(const Point& g, const Point& h) const override;
  Point inverse(const Point& g) const override;
  Point dilate(const Point& g, const Scale& eps) const override;
  double norm(const Point& g) const override;
  bool automorphic() const override { return true; }
  bool homogeneous_norm() const override { return true; }
  Point box_half_widths(double r) const override;
  /// Null for the cc norm.
  std::shared_ptr<const ExtendedDilations> extended() const override { return extended_; }

  const CarnotGroup& group() const noexcept { return *group_; }

 private:
  std::shared_ptr<const CarnotGroup> group_;
  NormVariant variant_;
  std::shared_ptr<const ExtendedDilations> extended_;
};

/// Heisenberg group law with scalar dilations on all three coordinates and
/// the Euclidean norm. The dilations are not morphisms; the limit law beta is
/// vector addition.
class IsotropicHeisenberg final : public GroupWithDilatations {
 public:
  IsotropicHeisenberg();

  std::string name() const override { return "heisenberg-isotropic"; }
  std::size_t dim() const override { return 3; }
  Point product(const Point& g, const Point& h) const override;
  Point inverse(const Point& g) const override;
  Point dilate(const Point& g, const Scale& eps) const override;
  double norm(const Point& g) const override;
  bool automorphic() const override { return false; }
  bool homogeneous_norm() const override { return true; }
  std::optional<Point> tangent_product(const Point& g, const Point& h) const override;
  std::optional<Point> tangent_inverse(const Point& g) const override;

 private:
  CarnotGroup heisenberg_;
};

/// A group with a contracting automorphism alpha.
struct ContractionGroup {
  std::string name;
  std::size_t dim = 0;
  std::function<Point(const Point&, const Point&)> product;
  std::function<Point(const Point&)> inverse;
  std::function<Point(const Point&)> alpha;
  std::function<Point(const Point&)> alpha_inverse;

  /// (R^n, +) with alpha(x) = M x; M must be invertible.
  static ContractionGroup linear(const Eigen::MatrixXd& m, std::string name);
  /// alpha = delta_{1/2} of a group with dilatations.
  static ContractionGroup from_conical(GroupPtr group);
};

struct ContractionCheck {
  double morphism_defect = 0.0;   // max |alpha(xy) - alpha(x) alpha(y)|
  double contraction_after = 0.0; // max |alpha^n(x)| after `steps` steps
  int steps = 0;
};

/// Samples alpha(xy) = alpha(x) alpha(y) and alpha^n(x) -> e on the box of
/// half width `radius`.
ContractionCheck check_contraction(const ContractionGroup& c, std::uint64_t seed,
                                   int samples, double radius, int steps = 60);

/// Dyadic dilations delta_{2^-n} = alpha^n. `homogeneous` states whether
/// `norm` satisfies |alpha x| = |x| / 2.
GroupPtr from_contraction(ContractionGroup c,
                          std::function<double(const Point&)> norm,
                          bool homogeneous,
                          std::function<Point(double)> box = nullptr);

/// from_contraction for a linear alpha = M. When M is diagonal with entries
/// 2^{-k_i}, k_i >= 1, the norm is sum_i |x_i|^{1/k_i}, which is homogeneous
/// and subadditive; otherwise the Euclidean norm is used.
GroupPtr from_contraction_matrix(const Eigen::MatrixXd& m, std::string name);

/// Reads a JSON matrix, either [[...], ...] or {"matrix": [[...], ...]}.
Eigen::MatrixXd load_matrix_file(const std::string& path);

// ---------------------------------------------------------------------------

/// delta^x_eps u = x delta_eps(x^{-1} u).
Point left_dilatation(const GroupWithDilatations& g, const Point& x,
                      const Scale& eps, const Point& u);

/// d(x, y) = |x^{-1} y|.
double norm_distance(const GroupWithDilatations& g, const Point& x, const Point& y);

/// The dilatation structure (G, delta^x_eps, d) of a normed group with
/// dilatations. Tangent data comes from the group's tangent hooks.
StructurePtr as_dilatation_structure(GroupPtr group, std::string id,
                                     double radius_a = 2.0, double radius_b = 1.5);

struct GroupLimit {
  Point value;
  /// d(op_eps, reference) per grid scale; the reference is the closed-form
  /// limit when known, otherwise the smallest-scale value.
  std::vector<double> defects;
  bool reference_closed_form = false;
  double order = 0.0;
  double residual = 0.0;
  bool noise = false;
};

/// beta(x, y) = lim delta_eps^{-1}((delta_eps x)(delta_eps y)).
GroupLimit beta_limit(const GroupWithDilatations& g, const Point& x,
                      const Point& y, const std::vector<Scale>& grid);
/// lim delta_eps^{-1}((delta_eps x)^{-1}).
GroupLimit inverse_limit(const GroupWithDilatations& g, const Point& x,
                         const std::vector<Scale>& grid);

struct NormLimit {
  double value = 0.0;
  std::vector<double> defects;
  bool reference_closed_form = false;
  double order = 0.0;
  bool noise = false;
  /// Limit norm vanishes at x != e.
  bool degenerate = false;
};

/// lim |delta_eps x| / nu(eps).
NormLimit norm_limit(const GroupWithDilatations& g, const Point& x,
                     const std::vector<Scale>& grid);

struct NormAxiomReport {
  double identity_norm = 0.0;         // |e|
  double min_nonzero_norm = 0.0;      // min |x| over samples x != e
  double symmetry_defect = 0.0;       // max ||x^{-1}| - |x||
  double subadditivity_constant = 0.0;  // max |xy| / (|x| + |y|)
};

/// Sampled norm axioms. Pairs along the first coordinate axis are included,
/// where a homogeneous subadditive norm attains the constant 1.
NormAxiomReport check_norm_axioms(const GroupWithDilatations& g,
                                  std::uint64_t seed, int samples, double radius);

/// d(delta^u_mu v, Sigma^x(u, delta^x_mu Delta^x(u, v))) using the tangent
/// operations at x (closed form, else estimated on the default grid).
double tangent_reconstruction_defect(const DilatationStructure& s, const Point& x,
                                     const Point& u, const Point& v,
                                     const Scale& mu);

// ---------------------------------------------------------------------------
// Linearity identities on a Carnot group with graded dilations, generic over
// the scalar so they can run in exact rational arithmetic. Each returns
// left^{-1} right, which is e exactly when the identity holds. Floating
// evaluation with a homogeneous norm turns rounding eta in the top layer into
// eta^{1/m}, which the exact form avoids.

/// x delta_eps(x^{-1} u).
template <class T>
std::vector<T> carnot_left_dilatation(const CarnotGroup& g, const std::vector<T>& x,
                                      const T& eps, const std::vector<T>& u);

/// delta^x_eps delta^y_mu z against delta^{delta^x_eps y}_mu delta^x_eps z.
template <class T>
std::vector<T> lin_residual(const CarnotGroup& g, const std::vector<T>& x,
                            const std::vector<T>& y, const std::vector<T>& z,
                            const T& eps, const T& mu);

/// Sigma^x_eps(u, v) against Delta^u_eps(x, v).
template <class T>
std::vector<T> swap_residual(const CarnotGroup& g, const std::vector<T>& x,
                             const std::vector<T>& u, const std::vector<T>& v,
                             const T& eps);

/// delta^u_mu v against Sigma^x(u, delta^x_mu Delta^x(u, v)) with the
/// conical tangent operations Sigma^x(a, b) = a x^{-1} b, Delta^x(a, b) = x a^{-1} b.
template <class T>
std::vector<T> reconstruction_residual(const CarnotGroup& g, const std::vector<T>& x,
                                       const std::vector<T>& u, const std::vector<T>& v,
                                       const T& mu);

}  // namespace dilatlab
