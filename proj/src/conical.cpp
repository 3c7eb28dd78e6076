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

#include "dilatlab/conical.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <json.hpp>
#include <sstream>

#include "dilatlab/ccdist.hpp"
#include "dilatlab/convergence.hpp"
#include "dilatlab/error.hpp"
#include "dilatlab/operations.hpp"

namespace dilatlab {

namespace {

constexpr double kWorkingRadius = 2.0;

void check_dim(const GroupWithDilatations& g, const Point& p) {
  if (p.size() != g.dim()) {
    throw Error(ErrorCode::invalid_argument, "group element of wrong dimension");
  }
}

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

// Defects must not grow on the second half of the grid unless they are noise.
void check_tail(const std::vector<double>& defects) {
  const double floor = Tolerances{}.noise_floor;
  for (std::size_t k = defects.size() / 2; k + 1 < defects.size(); ++k) {
    if (defects[k + 1] > defects[k] && defects[k + 1] > floor) {
      throw Error(ErrorCode::no_convergence, "defects grow on the tail of the grid");
    }
  }
}

template <class Limit>
void fit_defects(Limit& out, const std::vector<Scale>& grid) {
  std::vector<double> eps;
  for (std::size_t k = 0; k < out.defects.size(); ++k) eps.push_back(grid[k].value());
  try {
    const OrderFit fit = fit_order(eps, out.defects, Tolerances{}.noise_floor);
    out.order = fit.order;
    if constexpr (requires { out.residual; }) out.residual = fit.residual;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::noise_floor) throw;
    out.noise = true;
    out.order = std::numeric_limits<double>::quiet_NaN();
  }
}

template <class Op>
GroupLimit group_limit(const GroupWithDilatations& g, const std::vector<Scale>& grid,
                       std::optional<Point> reference, Op op) {
  check_grid(grid);
  std::vector<Point> values;
  for (const Scale& eps : grid) values.push_back(op(eps));
  GroupLimit out;
  out.value = values.back();
  out.reference_closed_form = reference.has_value();
  const Point ref = reference ? *reference : values.back();
  const std::size_t n = reference ? values.size() : values.size() - 1;
  for (std::size_t k = 0; k < n; ++k) out.defects.push_back(norm_distance(g, ref, values[k]));
  check_tail(out.defects);
  fit_defects(out, grid);
  return out;
}

// Rejection sample of the norm ball of radius r about e.
Point sample_ball(const GroupWithDilatations& g, double r, Rng& rng) {
  const Point half = g.box_half_widths(r);
  Point p(g.dim());
  for (int attempt = 0; attempt < 100000; ++attempt) {
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = rng.uniform(-half[i], half[i]);
    if (g.norm(p) <= r) return p;
  }
  throw Error(ErrorCode::out_of_domain, "rejection sampling found no point in ball");
}

class ConicalStructure final : public DilatationStructure {
 public:
  ConicalStructure(GroupPtr group, std::string id, double a, double b)
      : DilatationStructure(a, b), group_(std::move(group)), id_(std::move(id)) {}

  std::string id() const override { return id_; }
  std::size_t dim() const override { return group_->dim(); }
  ScaleKind scale_kind() const override { return group_->scale_kind(); }
  // Left translations are isometries commuting with the dilations, so e
  // loses nothing and keeps points near the center free of cancellation.
  Point default_center() const override { return group_->identity(); }

  double distance(const Point& u, const Point& v) const override {
    return norm_distance(*group_, u, v);
  }

  Point dilate_unchecked(const Point& x, const Scale& eps, const Point& y) const override {
    const GroupWithDilatations& g = *group_;
    return g.product(x, g.dilate(g.product(g.inverse(x), y), eps));
  }

  Point sample_near(const Point& center, double r, Rng& rng) const override {
    return group_->product(center, sample_ball(*group_, r, rng));
  }

  std::optional<double> tangent_distance(const Point& x, const Point& u,
                                         const Point& v) const override {
    const auto gu = local(x, u), gv = local(x, v);
    const auto iu = group_->tangent_inverse(gu);
    if (!iu) return std::nullopt;
    const auto diff = group_->tangent_product(*iu, gv);
    if (!diff) return std::nullopt;
    return group_->tangent_norm(*diff);
  }

  std::optional<Point> tangent_sum(const Point& x, const Point& u,
                                   const Point& v) const override {
    const auto s = group_->tangent_product(local(x, u), local(x, v));
    if (!s) return std::nullopt;
    return group_->product(x, *s);
  }

  std::optional<Point> tangent_difference(const Point& x, const Point& u,
                                          const Point& v) const override {
    const auto iu = group_->tangent_inverse(local(x, u));
    if (!iu) return std::nullopt;
    const auto s = group_->tangent_product(*iu, local(x, v));
    if (!s) return std::nullopt;
    return group_->product(x, *s);
  }

  std::optional<Point> tangent_inverse(const Point& x, const Point& u) const override {
    const auto iu = group_->tangent_inverse(local(x, u));
    if (!iu) return std::nullopt;
    return group_->product(x, *iu);
  }

  const ExtendedDilations* extended() const override { return group_->extended().get(); }

 private:
  Point local(const Point& x, const Point& u) const {
    return group_->product(group_->inverse(x), u);
  }

  GroupPtr group_;
  std::string id_;
};

class DyadicGroup final : public GroupWithDilatations {
 public:
  DyadicGroup(ContractionGroup c, std::function<double(const Point&)> norm,
              bool homogeneous, std::function<Point(double)> box)
      : c_(std::move(c)), norm_(std::move(norm)), homogeneous_(homogeneous),
        box_(std::move(box)) {}

  std::string name() const override { return c_.name; }
  std::size_t dim() const override { return c_.dim; }
  ScaleKind scale_kind() const override { return ScaleKind::dyadic; }
  Point product(const Point& g, const Point& h) const override { return c_.product(g, h); }
  Point inverse(const Point& g) const override { return c_.inverse(g); }

  // delta_{2^-n} = alpha^n.
  Point dilate(const Point& g, const Scale& eps) const override {
    if (eps.kind() != ScaleKind::dyadic) {
      throw Error(ErrorCode::invalid_argument, "dyadic group needs dyadic scales");
    }
    Point p = g;
    const int n = eps.exponent();
    for (int k = 0; k < -n; ++k) p = c_.alpha(p);
    for (int k = 0; k < n; ++k) p = c_.alpha_inverse(p);
    return p;
  }

  double norm(const Point& g) const override { return norm_(g); }
  bool automorphic() const override { return true; }
  bool homogeneous_norm() const override { return homogeneous_; }
  Point box_half_widths(double r) const override {
    return box_ ? box_(r) : GroupWithDilatations::box_half_widths(r);
  }

 private:
  ContractionGroup c_;
  std::function<double(const Point&)> norm_;
  bool homogeneous_;
  std::function<Point(double)> box_;
};

Eigen::VectorXd to_vector(const Point& p) {
  return Eigen::Map<const Eigen::VectorXd>(p.data(), static_cast<Eigen::Index>(p.size()));
}

Point to_point(const Eigen::VectorXd& v) { return Point(v.data(), v.data() + v.size()); }

}  // namespace

// ---------------------------------------------------------------------------

std::optional<Point> GroupWithDilatations::tangent_product(const Point& g,
                                                           const Point& h) const {
  if (automorphic()) return product(g, h);
  return std::nullopt;
}

std::optional<Point> GroupWithDilatations::tangent_inverse(const Point& g) const {
  if (automorphic()) return inverse(g);
  return std::nullopt;
}

std::optional<double> GroupWithDilatations::tangent_norm(const Point& g) const {
  if (homogeneous_norm()) return norm(g);
  return std::nullopt;
}

Point GroupWithDilatations::box_half_widths(double r) const { return Point(dim(), r); }

namespace {

class CarnotExtended final : public ExtendedDilations {
 public:
  CarnotExtended(std::shared_ptr<const CarnotGroup> group, NormVariant variant)
      : group_(std::move(group)), variant_(variant) {}

  ExtendedPoint dilate(const ExtendedPoint& x, const Extended& eps,
                       const ExtendedPoint& y) const override {
    const CarnotGroup& g = *group_;
    return g.product(x, g.dilation(g.product(g.inverse(x), y), eps));
  }

  Extended distance(const ExtendedPoint& u, const ExtendedPoint& v) const override {
    const CarnotGroup& g = *group_;
    const ExtendedPoint d = g.product(g.inverse(u), v);
    if (variant_ == NormVariant::koranyi) {
      const Extended r2 = d[0] * d[0] + d[1] * d[1];
      return sqrt(sqrt(r2 * r2 + 16 * d[2] * d[2]));
    }
    std::vector<Extended> sq(static_cast<std::size_t>(g.step()), Extended(0));
    const auto& w = g.algebra().weights();
    for (std::size_t i = 0; i < d.size(); ++i) sq[static_cast<std::size_t>(w[i] - 1)] += d[i] * d[i];
    Extended total = 0;
    for (std::size_t layer = 0; layer < sq.size(); ++layer) {
      if (sq[layer] > 0) total += pow(sqrt(sq[layer]), Extended(1) / (layer + 1));
    }
    return total;
  }

 private:
  std::shared_ptr<const CarnotGroup> group_;
  NormVariant variant_;
};

}  // namespace

CarnotConicalGroup::CarnotConicalGroup(std::shared_ptr<const CarnotGroup> group,
                                       NormVariant variant)
    : group_(std::move(group)), variant_(variant) {
  if (variant_ == NormVariant::koranyi && !group_->is_heisenberg()) {
    throw Error(ErrorCode::unsupported_variant,
                "the Koranyi norm is only defined on heisenberg:1");
  }
  if (variant_ != NormVariant::cc) {
    extended_ = std::make_shared<CarnotExtended>(group_, variant_);
  }
}

std::string CarnotConicalGroup::name() const {
  return group_->name() + "/" + to_string(variant_);
}

Point CarnotConicalGroup::product(const Point& g, const Point& h) const {
  return group_->product(g, h);
}

Point CarnotConicalGroup::inverse(const Point& g) const { return group_->inverse(g); }

Point CarnotConicalGroup::dilate(const Point& g, const Scale& eps) const {
  return group_->dilation(g, eps.value());
}

double CarnotConicalGroup::norm(const Point& g) const {
  return dilatlab::homogeneous_norm(*group_, g, variant_);
}

Point CarnotConicalGroup::box_half_widths(double r) const {
  const auto& w = group_->algebra().weights();
  Point half(dim());
  for (std::size_t i = 0; i < half.size(); ++i) {
    const double p = std::pow(r, w[i]);
    switch (variant_) {
      case NormVariant::koranyi: half[i] = w[i] == 1 ? r : r * r / 4.0; break;
      case NormVariant::layer_quasi: half[i] = p; break;
      // The cc ball sits inside the layer-quasi ball of a few times the radius.
      case NormVariant::cc: half[i] = w[i] == 1 ? r : 4.0 * p; break;
    }
  }
  return half;
}

IsotropicHeisenberg::IsotropicHeisenberg() : heisenberg_(builtin_group("heisenberg:1")) {}

Point IsotropicHeisenberg::product(const Point& g, const Point& h) const {
  return heisenberg_.product(g, h);
}

Point IsotropicHeisenberg::inverse(const Point& g) const { return heisenberg_.inverse(g); }

Point IsotropicHeisenberg::dilate(const Point& g, const Scale& eps) const {
  return scaled(g, eps.value());
}

double IsotropicHeisenberg::norm(const Point& g) const { return norm2(g); }

std::optional<Point> IsotropicHeisenberg::tangent_product(const Point& g,
                                                          const Point& h) const {
  return add(g, h);
}

std::optional<Point> IsotropicHeisenberg::tangent_inverse(const Point& g) const {
  return scaled(g, -1.0);
}

// ---------------------------------------------------------------------------

ContractionGroup ContractionGroup::linear(const Eigen::MatrixXd& m, std::string name) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw Error(ErrorCode::invalid_argument, "contraction matrix must be square");
  }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(m);
  if (!lu.isInvertible()) {
    throw Error(ErrorCode::invalid_argument, "contraction matrix must be invertible");
  }
  const Eigen::MatrixXd inv = lu.inverse();
  ContractionGroup c;
  c.name = std::move(name);
  c.dim = static_cast<std::size_t>(m.rows());
  c.product = [](const Point& g, const Point& h) { return add(g, h); };
  c.inverse = [](const Point& g) { return scaled(g, -1.0); };
  c.alpha = [m](const Point& g) { return to_point(m * to_vector(g)); };
  c.alpha_inverse = [inv](const Point& g) { return to_point(inv * to_vector(g)); };
  return c;
}

ContractionGroup ContractionGroup::from_conical(GroupPtr group) {
  ContractionGroup c;
  c.name = group->name();
  c.dim = group->dim();
  c.product = [group](const Point& g, const Point& h) { return group->product(g, h); };
  c.inverse = [group](const Point& g) { return group->inverse(g); };
  c.alpha = [group](const Point& g) { return group->dilate(g, Scale::continuous(0.5)); };
  c.alpha_inverse = [group](const Point& g) {
    return group->dilate(g, Scale::continuous(2.0));
  };
  return c;
}

ContractionCheck check_contraction(const ContractionGroup& c, std::uint64_t seed,
                                   int samples, double radius, int steps) {
  Rng rng(stream_seed(seed, 0xa1fa));
  ContractionCheck out;
  out.steps = steps;
  auto draw = [&] {
    Point p(c.dim);
    for (double& v : p) v = rng.uniform(-radius, radius);
    return p;
  };
  for (int s = 0; s < samples; ++s) {
    const Point x = draw(), y = draw();
    out.morphism_defect = std::max(
        out.morphism_defect, dist2(c.alpha(c.product(x, y)), c.product(c.alpha(x), c.alpha(y))));
    Point p = x;
    for (int k = 0; k < steps; ++k) p = c.alpha(p);
    out.contraction_after = std::max(out.contraction_after, norm2(p));
  }
  return out;
}

GroupPtr from_contraction(ContractionGroup c, std::function<double(const Point&)> norm,
                          bool homogeneous, std::function<Point(double)> box) {
  return std::make_shared<DyadicGroup>(std::move(c), std::move(norm), homogeneous,
                                       std::move(box));
}

GroupPtr from_contraction_matrix(const Eigen::MatrixXd& m, std::string name) {
  ContractionGroup c = ContractionGroup::linear(m, std::move(name));
  const auto n = static_cast<std::size_t>(m.rows());
  bool graded = m.isDiagonal(0.0);
  std::vector<double> k(n);
  for (std::size_t i = 0; graded && i < n; ++i) {
    const double d = m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i));
    k[i] = d > 0.0 ? -std::log2(d) : 0.0;
    graded = k[i] >= 1.0;
  }
  if (!graded) {
    return from_contraction(std::move(c), [](const Point& g) { return norm2(g); }, false);
  }
  auto norm = [k](const Point& g) {
    double s = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) s += std::pow(std::abs(g[i]), 1.0 / k[i]);
    return s;
  };
  auto box = [k](double r) {
    Point half(k.size());
    for (std::size_t i = 0; i < k.size(); ++i) half[i] = std::pow(r, k[i]);
    return half;
  };
  return from_contraction(std::move(c), norm, true, box);
}

Eigen::MatrixXd load_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::io, "cannot read " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(buf.str());
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::invalid_argument, path + ": " + e.what());
  }
  if (j.is_object() && j.contains("matrix")) j = j["matrix"];
  if (!j.is_array() || j.empty()) {
    throw Error(ErrorCode::invalid_argument, path + ": expected a row-major matrix");
  }
  const auto rows = static_cast<Eigen::Index>(j.size());
  Eigen::MatrixXd m(rows, rows);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const auto& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != rows) {
      throw Error(ErrorCode::invalid_argument, path + ": matrix must be square");
    }
    for (Eigen::Index c = 0; c < rows; ++c) {
      if (!row[static_cast<std::size_t>(c)].is_number()) {
        throw Error(ErrorCode::invalid_argument, path + ": non-numeric entry");
      }
      m(r, c) = row[static_cast<std::size_t>(c)].get<double>();
    }
  }
  return m;
}

// ---------------------------------------------------------------------------

Point left_dilatation(const GroupWithDilatations& g, const Point& x, const Scale& eps,
                      const Point& u) {
  check_dim(g, x);
  check_dim(g, u);
  const Point local = g.product(g.inverse(x), u);
  if (g.norm(local) > kWorkingRadius) {
    throw Error(ErrorCode::out_of_domain, "u outside the working ball of x");
  }
  return g.product(x, g.dilate(local, eps));
}

double norm_distance(const GroupWithDilatations& g, const Point& x, const Point& y) {
  return g.norm(g.product(g.inverse(x), y));
}

StructurePtr as_dilatation_structure(GroupPtr group, std::string id, double radius_a,
                                     double radius_b) {
  return std::make_shared<ConicalStructure>(std::move(group), std::move(id), radius_a,
                                            radius_b);
}

GroupLimit beta_limit(const GroupWithDilatations& g, const Point& x, const Point& y,
                      const std::vector<Scale>& grid) {
  check_dim(g, x);
  check_dim(g, y);
  return group_limit(g, grid, g.tangent_product(x, y), [&](const Scale& eps) {
    return g.dilate(g.product(g.dilate(x, eps), g.dilate(y, eps)), eps.inverse());
  });
}

GroupLimit inverse_limit(const GroupWithDilatations& g, const Point& x,
                         const std::vector<Scale>& grid) {
  check_dim(g, x);
  return group_limit(g, grid, g.tangent_inverse(x), [&](const Scale& eps) {
    return g.dilate(g.inverse(g.dilate(x, eps)), eps.inverse());
  });
}

NormLimit norm_limit(const GroupWithDilatations& g, const Point& x,
                     const std::vector<Scale>& grid) {
  check_dim(g, x);
  check_grid(grid);
  std::vector<double> values;
  for (const Scale& eps : grid) values.push_back(g.norm(g.dilate(x, eps)) / eps.value());
  NormLimit out;
  out.value = values.back();
  const auto reference = g.tangent_norm(x);
  out.reference_closed_form = reference.has_value();
  const double ref = reference ? *reference : values.back();
  const std::size_t n = reference ? values.size() : values.size() - 1;
  for (std::size_t k = 0; k < n; ++k) out.defects.push_back(std::abs(values[k] - ref));
  check_tail(out.defects);
  fit_defects(out, grid);

  if (norm2(x) > 0.0) {
    const double nx = g.norm(x);
    bool vanishing = out.value <= Tolerances{}.degeneracy * nx;
    // A power-law decay of |delta_eps x| / eps also means the limit is 0,
    // even when the grid stops before the value is tiny.
    if (!vanishing && values.front() > 0.0 && out.value > 0.0) {
      bool decreasing = true;
      for (std::size_t k = values.size() / 2; k + 1 < values.size(); ++k) {
        decreasing = decreasing && values[k + 1] < values[k];
      }
      std::vector<double> eps = grid_values(grid);
      const OrderFit fit = fit_order(eps, values, 0.0);
      vanishing = decreasing && fit.order >= 0.5 && fit.residual < 0.1;
    }
    out.degenerate = vanishing;
  }
  return out;
}

NormAxiomReport check_norm_axioms(const GroupWithDilatations& g, std::uint64_t seed,
                                  int samples, double radius) {
  Rng rng(stream_seed(seed, 0x6e6f726d));
  NormAxiomReport out;
  out.identity_norm = g.norm(g.identity());
  out.min_nonzero_norm = std::numeric_limits<double>::infinity();
  auto ratio = [&](const Point& a, const Point& b) {
    const double denom = g.norm(a) + g.norm(b);
    if (denom > 0.0) {
      out.subadditivity_constant =
          std::max(out.subadditivity_constant, g.norm(g.product(a, b)) / denom);
    }
  };
  for (int s = 0; s < samples; ++s) {
    const Point a = sample_ball(g, radius, rng);
    const Point b = sample_ball(g, radius, rng);
    if (norm2(a) > 0.0) out.min_nonzero_norm = std::min(out.min_nonzero_norm, g.norm(a));
    out.symmetry_defect = std::max(out.symmetry_defect, std::abs(g.norm(g.inverse(a)) - g.norm(a)));
    ratio(a, b);
    Point axis(g.dim(), 0.0);
    axis[0] = a[0];
    ratio(axis, axis);
  }
  return out;
}

double tangent_reconstruction_defect(const DilatationStructure& s, const Point& x,
                                     const Point& u, const Point& v, const Scale& mu) {
  const auto grid = make_grid(GridSpec{}, s.scale_kind());
  auto diff = s.tangent_difference(x, u, v);
  const Point d = diff ? *diff : tangent_difference_estimate(s, x, u, v, grid).value;
  const Point w = dilate(s, x, mu, d);
  auto sum = s.tangent_sum(x, u, w);
  const Point rhs = sum ? *sum : tangent_sum_estimate(s, x, u, w, grid).value;
  return s.distance(dilate(s, u, mu, v), rhs);
}

// ---------------------------------------------------------------------------

template <class T>
std::vector<T> carnot_left_dilatation(const CarnotGroup& g, const std::vector<T>& x,
                                      const T& eps, const std::vector<T>& u) {
  return g.product(x, g.dilation(g.product(g.inverse(x), u), eps));
}

template <class T>
std::vector<T> lin_residual(const CarnotGroup& g, const std::vector<T>& x,
                            const std::vector<T>& y, const std::vector<T>& z,
                            const T& eps, const T& mu) {
  const auto left = carnot_left_dilatation(g, x, eps, carnot_left_dilatation(g, y, mu, z));
  const auto right = carnot_left_dilatation(g, carnot_left_dilatation(g, x, eps, y), mu,
                                            carnot_left_dilatation(g, x, eps, z));
  return g.product(g.inverse(left), right);
}

template <class T>
std::vector<T> swap_residual(const CarnotGroup& g, const std::vector<T>& x,
                             const std::vector<T>& u, const std::vector<T>& v,
                             const T& eps) {
  const T inv = T(1) / eps;
  // Sigma^x_eps(u, v) = delta^x_{1/eps} delta^{delta^x_eps u}_eps v.
  const auto xu = carnot_left_dilatation(g, x, eps, u);
  const auto sum = carnot_left_dilatation(g, x, inv, carnot_left_dilatation(g, xu, eps, v));
  // Delta^u_eps(x, v) = delta^{delta^u_eps x}_{1/eps} delta^u_eps v.
  const auto ux = carnot_left_dilatation(g, u, eps, x);
  const auto diff = carnot_left_dilatation(g, ux, inv, carnot_left_dilatation(g, u, eps, v));
  return g.product(g.inverse(sum), diff);
}

template <class T>
std::vector<T> reconstruction_residual(const CarnotGroup& g, const std::vector<T>& x,
                                       const std::vector<T>& u, const std::vector<T>& v,
                                       const T& mu) {
  const auto xi = g.inverse(x);
  const auto delta = g.product(x, g.product(g.inverse(u), v));
  const auto moved = carnot_left_dilatation(g, x, mu, delta);
  const auto sum = g.product(u, g.product(xi, moved));
  const auto direct = carnot_left_dilatation(g, u, mu, v);
  return g.product(g.inverse(direct), sum);
}

#define DILATLAB_INSTANTIATE(T)                                                        \
  template std::vector<T> carnot_left_dilatation(const CarnotGroup&,                    \
                                                 const std::vector<T>&, const T&,       \
                                                 const std::vector<T>&);                \
  template std::vector<T> lin_residual(const CarnotGroup&, const std::vector<T>&,       \
                                       const std::vector<T>&, const std::vector<T>&,    \
                                       const T&, const T&);                             \
  template std::vector<T> swap_residual(const CarnotGroup&, const std::vector<T>&,      \
                                        const std::vector<T>&, const std::vector<T>&,   \
                                        const T&);                                      \
  template std::vector<T> reconstruction_residual(                                      \
      const CarnotGroup&, const std::vector<T>&, const std::vector<T>&,                 \
      const std::vector<T>&, const T&);

DILATLAB_INSTANTIATE(double)
DILATLAB_INSTANTIATE(Rational)

#undef DILATLAB_INSTANTIATE

}  // namespace dilatlab
