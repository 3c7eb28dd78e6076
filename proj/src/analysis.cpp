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

#include "dilatlab/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

#include "dilatlab/convergence.hpp"
#include "dilatlab/error.hpp"
#include "dilatlab/extended.hpp"

namespace dilatlab {

namespace {

constexpr double kConvergedRatio = 0.1;
constexpr int kLandmarks = 4;

struct Setup {
  Point x;
  double radius;
  std::vector<Scale> grid;
  // Finer continuation of the grid for tangent references that have no
  // closed form.
  std::vector<Scale> reference_grid;
};

Setup make_setup(const DilatationStructure& s, const SweepConfig& cfg) {
  Setup st;
  st.x = cfg.center.empty() ? s.default_center() : cfg.center;
  if (st.x.size() != s.dim()) {
    throw Error(ErrorCode::invalid_argument, "center has the wrong dimension");
  }
  st.radius = cfg.radius > 0.0 ? cfg.radius : 0.2 * s.radius_a();
  if (st.radius > 0.2 * s.radius_a() * (1.0 + 1e-12)) {
    throw Error(ErrorCode::invalid_argument, "sample radius must be at most 0.2 A");
  }
  if (cfg.samples < 1) throw Error(ErrorCode::invalid_argument, "need at least one sample");
  st.grid = make_grid(cfg.grid, s.scale_kind());
  GridSpec fine = cfg.grid;
  fine.start = cfg.grid.start * std::pow(cfg.grid.ratio, cfg.grid.count);
  fine.count = 8;
  st.reference_grid = make_grid(fine, s.scale_kind());
  return st;
}

SweepReport start_report(const DilatationStructure& s, const SweepConfig& cfg,
                         const Setup& st, Defect d) {
  SweepReport r;
  r.suite = to_string(d);
  r.structure = s.id();
  r.seed = cfg.seed;
  r.grid = grid_values(st.grid);
  r.defects.assign(st.grid.size(), 0.0);
  return r;
}

// Draws `n` points (or tuples) with domain failures counted, not fatal.
template <class Draw>
auto draw_samples(int n, Draw draw, int& skipped) {
  using T = decltype(draw());
  std::vector<T> out;
  for (int i = 0; i < n; ++i) {
    try {
      out.push_back(draw());
    } catch (const Error& e) {
      if (!e.is_domain_error()) throw;
      ++skipped;
    }
  }
  return out;
}

// Runs `eval` and folds the result into `slot` with max; domain failures
// are counted as skipped.
template <class Eval>
void fold_max(double& slot, int& skipped, Eval eval) {
  try {
    const double v = eval();
    if (v > slot || std::isnan(v)) slot = v;
  } catch (const Error& e) {
    if (!e.is_domain_error()) throw;
    ++skipped;
  }
}

// d^x(u, v): closed form or the finest-scale estimate.
double reference_distance(const DilatationStructure& s, const Point& x, const Point& u,
                          const Point& v, const std::vector<Scale>& grid) {
  if (auto d = s.tangent_distance(x, u, v)) return *d;
  return tangent_distance_estimate(s, x, u, v, grid).value;
}

bool tail_decreasing(const std::vector<double>& d, double floor, bool strict) {
  for (std::size_t k = d.size() / 2; k + 1 < d.size(); ++k) {
    if (d[k + 1] <= floor && !strict) continue;
    if (strict ? !(d[k + 1] < d[k]) : d[k + 1] > d[k]) return false;
  }
  return true;
}

void fit_report(SweepReport& r, const Tolerances& tol) {
  try {
    const OrderFit fit = fit_order(r.grid, r.defects, tol.noise_floor);
    r.order = fit.order;
    r.residual = fit.residual;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::noise_floor) throw;
    r.noise = true;
    r.order = std::numeric_limits<double>::quiet_NaN();
    r.residual = 0.0;
  }
}

}  // namespace

Defect parse_defect(const std::string& name) {
  if (name == "a3") return Defect::a3;
  if (name == "a4") return Defect::a4;
  if (name == "cone") return Defect::cone;
  if (name == "tangent-metric") return Defect::tangent_metric;
  if (name == "inflin") return Defect::inflin;
  if (name == "embed") return Defect::embed;
  if (name == "diff") return Defect::diff;
  throw Error(ErrorCode::invalid_argument, "unknown defect '" + name + "'");
}

const char* to_string(Defect d) {
  switch (d) {
    case Defect::a3: return "a3";
    case Defect::a4: return "a4";
    case Defect::cone: return "cone";
    case Defect::tangent_metric: return "tangent-metric";
    case Defect::inflin: return "inflin";
    case Defect::embed: return "embed";
    case Defect::diff: return "diff";
  }
  return "?";
}

GridSpec default_grid(Defect d) {
  if (d == Defect::inflin) return GridSpec{0.015625, 0.5, 9};
  return GridSpec{};
}

void finish_report(SweepReport& r, const Tolerances& tol) {
  fit_report(r, tol);
  bool exact = true;
  for (std::size_t k = 0; k < r.defects.size(); ++k) {
    exact = exact && r.defects[k] <= tol.exact + tol.amplified_noise / r.grid[k];
  }
  if (exact) {
    r.verdict = "exact";
    return;
  }
  // Homogeneous norms turn O(eps) coordinate defects into O(eps^(1/m)), so
  // the last defect is judged against the largest one, not an absolute bound.
  const double largest = *std::max_element(r.defects.begin(), r.defects.end());
  const bool converging = tail_decreasing(r.defects, tol.noise_floor, false) &&
                          !r.noise && r.order > 0.0 &&
                          r.defects.back() <= kConvergedRatio * largest;
  r.verdict = converging ? "convergent" : "fail";
}

SweepReport axiom3_sweep(const DilatationStructure& s, const SweepConfig& cfg) {
  const Setup st = make_setup(s, cfg);
  SweepReport r = start_report(s, cfg, st, Defect::a3);
  Rng rng(stream_seed(cfg.seed, 3));
  struct Sample { Point u, v; double ref; };
  const auto samples = draw_samples(cfg.samples, [&] {
    Sample p{s.sample_near(st.x, st.radius, rng), s.sample_near(st.x, st.radius, rng), 0.0};
    p.ref = reference_distance(s, st.x, p.u, p.v, st.reference_grid);
    return p;
  }, r.skipped);
  for (const Sample& p : samples) {
    const double d = s.distance(p.u, p.v);
    if (d > 0.0 && p.ref < cfg.tol.degeneracy * d) ++r.degenerate;
  }
  for (std::size_t k = 0; k < st.grid.size(); ++k) {
    for (const Sample& p : samples) {
      fold_max(r.defects[k], r.skipped, [&] {
        return std::abs(relative_distance(s, st.x, st.grid[k], p.u, p.v) - p.ref);
      });
    }
  }
  finish_report(r, cfg.tol);
  return r;
}

SweepReport axiom4_sweep(const DilatationStructure& s, const SweepConfig& cfg) {
  const Setup st = make_setup(s, cfg);
  SweepReport r = start_report(s, cfg, st, Defect::a4);
  Rng rng(stream_seed(cfg.seed, 4));
  struct Sample { Point u, v, ref; };
  const auto samples = draw_samples(cfg.samples, [&] {
    Sample p{s.sample_near(st.x, st.radius, rng), s.sample_near(st.x, st.radius, rng), {}};
    auto closed = s.tangent_difference(st.x, p.u, p.v);
    p.ref = closed ? *closed
                   : tangent_difference_estimate(s, st.x, p.u, p.v, st.reference_grid).value;
    return p;
  }, r.skipped);
  for (std::size_t k = 0; k < st.grid.size(); ++k) {
    for (const Sample& p : samples) {
      fold_max(r.defects[k], r.skipped, [&] {
        return s.distance(approx_difference(s, st.x, st.grid[k], p.u, p.v), p.ref);
      });
    }
  }
  finish_report(r, cfg.tol);
  return r;
}

SweepReport cone_sweep(const DilatationStructure& s, const SweepConfig& cfg) {
  const Setup st = make_setup(s, cfg);
  SweepReport r = start_report(s, cfg, st, Defect::cone);
  Rng rng(stream_seed(cfg.seed, 5));
  struct Sample { Point u, v; double ref; };
  const auto samples = draw_samples(cfg.samples, [&] {
    Sample p{s.sample_near(st.x, st.radius, rng), s.sample_near(st.x, st.radius, rng), 0.0};
    p.ref = reference_distance(s, st.x, p.u, p.v, st.reference_grid);
    return p;
  }, r.skipped);
  for (std::size_t k = 0; k < st.grid.size(); ++k) {
    const Scale& mu = st.grid[k];
    for (const Sample& p : samples) {
      fold_max(r.defects[k], r.skipped, [&] {
        const Point a = dilate(s, st.x, mu, p.u);
        const Point b = dilate(s, st.x, mu, p.v);
        return std::abs(p.ref - reference_distance(s, st.x, a, b, st.reference_grid) / mu.value());
      });
    }
  }
  finish_report(r, cfg.tol);
  return r;
}

SweepReport tangent_metric_sweep(const DilatationStructure& s, const SweepConfig& cfg) {
  const Setup st = make_setup(s, cfg);
  SweepReport r = start_report(s, cfg, st, Defect::tangent_metric);
  for (std::size_t k = 0; k < st.grid.size(); ++k) {
    const double eps = st.grid[k].value();
    // The sup runs over the shrinking ball d(x, .) <= eps.
    Rng rng(stream_seed(cfg.seed, 600 + k));
    const double ball = std::min(eps, st.radius);
    for (int i = 0; i < cfg.samples; ++i) {
      fold_max(r.defects[k], r.skipped, [&] {
        const Point u = s.sample_near(st.x, ball, rng);
        const Point v = s.sample_near(st.x, ball, rng);
        return std::abs(s.distance(u, v) -
                        reference_distance(s, st.x, u, v, st.reference_grid)) / eps;
      });
    }
  }
  finish_report(r, cfg.tol);
  return r;
}

SweepReport inflin_sweep(const DilatationStructure& s, const SweepConfig& cfg) {
  const Setup st = make_setup(s, cfg);
  SweepReport r = start_report(s, cfg, st, Defect::inflin);
  Rng rng(stream_seed(cfg.seed, 7));
  struct Sample { Point y, z; };
  const auto samples = draw_samples(cfg.samples, [&] {
    return Sample{s.sample_near(st.x, st.radius, rng), s.sample_near(st.x, st.radius, rng)};
  }, r.skipped);
  // Lin / eps^2 divides rounding by eps^2; use extended precision when the
  // structure has it. The double dilations still run for the domain checks.
  const ExtendedDilations* ext = s.extended();
  if (ext) r.precision = "extended";
  const ExtendedPoint xe = to_extended(st.x);
  for (std::size_t k = 0; k < st.grid.size(); ++k) {
    const Scale& eps = st.grid[k];
    const Extended e(eps.value());
    for (const Sample& p : samples) {
      fold_max(r.defects[k], r.skipped, [&] {
        const Point y = dilate(s, st.x, eps, p.y);
        const Point z = dilate(s, st.x, eps, p.z);
        if (!ext) return lin_defect(s, st.x, y, z, eps, eps) / (eps.value() * eps.value());
        const ExtendedPoint ye = ext->dilate(xe, e, to_extended(p.y));
        const ExtendedPoint ze = ext->dilate(xe, e, to_extended(p.z));
        return static_cast<double>(lin_defect(*ext, xe, ye, ze, e, e) / (e * e));
      });
    }
  }
  fit_report(r, cfg.tol);
  // In double, exactness is judged on the raw Lin values since dividing by
  // eps^2 inflates rounding noise.
  bool exact = true;
  for (std::size_t k = 0; k < r.defects.size(); ++k) {
    const double scale = ext ? 1.0 : r.grid[k] * r.grid[k];
    exact = exact && r.defects[k] * scale <= cfg.tol.exact;
  }
  if (exact) {
    r.verdict = "exact";
  } else {
    const bool ok = tail_decreasing(r.defects, 0.0, true) &&
                    r.defects.back() <= 0.1 * r.defects.front();
    r.verdict = ok ? "convergent" : "fail";
  }
  return r;
}

double embedding_defect(const DilatationStructure& s, const Point& x,
                        const std::vector<Point>& landmarks, const Scale& eps,
                        const Point& u) {
  const auto grid = make_grid(GridSpec{}, s.scale_kind());
  const Point du = dilate(s, x, eps, u);
  double worst = 0.0;
  for (const Point& l : landmarks) {
    const Point dl = dilate(s, x, eps, l);
    const double approx = (s.distance(du, dl) - s.distance(x, dl)) / eps.value();
    const double exact = reference_distance(s, x, u, l, grid) - reference_distance(s, x, x, l, grid);
    worst = std::max(worst, std::abs(approx - exact));
  }
  return worst;
}

SweepReport embed_sweep(const DilatationStructure& s, const SweepConfig& cfg) {
  const Setup st = make_setup(s, cfg);
  SweepReport r = start_report(s, cfg, st, Defect::embed);
  Rng rng(stream_seed(cfg.seed, 8));
  const auto landmarks =
      draw_samples(kLandmarks, [&] { return s.sample_near(st.x, st.radius, rng); }, r.skipped);
  const auto us =
      draw_samples(cfg.samples, [&] { return s.sample_near(st.x, st.radius, rng); }, r.skipped);
  // phi(u) does not depend on eps; evaluate it once per sample.
  std::vector<std::vector<double>> phi(us.size());
  for (std::size_t i = 0; i < us.size(); ++i) {
    for (const Point& l : landmarks) {
      phi[i].push_back(reference_distance(s, st.x, us[i], l, st.reference_grid) -
                       reference_distance(s, st.x, st.x, l, st.reference_grid));
    }
  }
  for (std::size_t k = 0; k < st.grid.size(); ++k) {
    const Scale& eps = st.grid[k];
    for (std::size_t i = 0; i < us.size(); ++i) {
      fold_max(r.defects[k], r.skipped, [&] {
        const Point du = dilate(s, st.x, eps, us[i]);
        double worst = 0.0;
        for (std::size_t n = 0; n < landmarks.size(); ++n) {
          const Point dl = dilate(s, st.x, eps, landmarks[n]);
          const double approx = (s.distance(du, dl) - s.distance(st.x, dl)) / eps.value();
          worst = std::max(worst, std::abs(approx - phi[i][n]));
        }
        return worst;
      });
    }
  }
  finish_report(r, cfg.tol);
  return r;
}

SweepReport diff_sweep(const PointMap& f, const PointMap& q, const DilatationStructure& s,
                       const DilatationStructure& t, const SweepConfig& cfg,
                       DiffOptions options) {
  const Setup st = make_setup(s, cfg);
  SweepReport r = start_report(s, cfg, st, Defect::diff);
  const Point fx = f(st.x);
  Rng rng(stream_seed(cfg.seed, 9));
  const auto fixed = options.shrink_ball
      ? std::vector<Point>{}
      : draw_samples(cfg.samples, [&] { return s.sample_near(st.x, st.radius, rng); }, r.skipped);
  for (std::size_t k = 0; k < st.grid.size(); ++k) {
    const Scale& eps = st.grid[k];
    std::vector<Point> local;
    if (options.shrink_ball) {
      Rng shrink(stream_seed(cfg.seed, 900 + k));
      const double ball = std::min(eps.value(), st.radius);
      local = draw_samples(cfg.samples, [&] { return s.sample_near(st.x, ball, shrink); },
                           r.skipped);
    }
    for (const Point& u : options.shrink_ball ? local : fixed) {
      fold_max(r.defects[k], r.skipped, [&] {
        const Point left = f(dilate(s, st.x, eps, u));
        const Point right = dilate(t, fx, eps, q(u));
        return t.distance(left, right) / eps.value();
      });
    }
  }
  finish_report(r, cfg.tol);
  return r;
}

TestMap builtin_test_map(const DilatationStructure& s, const Point& center) {
  const std::string id = s.id();
  if (id.rfind("euclidean:", 0) == 0) {
    auto f = [](const Point& u) {
      Point out(u.size());
      for (std::size_t i = 0; i < u.size(); ++i) out[i] = u[i] + u[i] * u[i];
      return out;
    };
    const Point fx = f(center);
    auto q = [center, fx](const Point& u) {
      Point out(u.size());
      for (std::size_t i = 0; i < u.size(); ++i) {
        out[i] = fx[i] + (1.0 + 2.0 * center[i]) * (u[i] - center[i]);
      }
      return out;
    };
    return {"u+u^2 with its affine part", f, q};
  }
  if (id.rfind("conical:heisenberg", 0) == 0) {
    auto rot = [](const Point& u) { return Point{u[1], -u[0], u[2]}; };
    return {"rotation automorphism", rot, rot};
  }
  auto identity = [](const Point& u) { return u; };
  return {"identity", identity, identity};
}

SweepReport run_sweep(const DilatationStructure& s, Defect d, const SweepConfig& cfg) {
  switch (d) {
    case Defect::a3: return axiom3_sweep(s, cfg);
    case Defect::a4: return axiom4_sweep(s, cfg);
    case Defect::cone: return cone_sweep(s, cfg);
    case Defect::tangent_metric: return tangent_metric_sweep(s, cfg);
    case Defect::inflin: return inflin_sweep(s, cfg);
    case Defect::embed: return embed_sweep(s, cfg);
    case Defect::diff: {
      const Point center = cfg.center.empty() ? s.default_center() : cfg.center;
      const TestMap m = builtin_test_map(s, center);
      return diff_sweep(m.f, m.q, s, s, cfg);
    }
  }
  throw Error(ErrorCode::invalid_argument, "unknown defect");
}

// ---------------------------------------------------------------------------

double IdentityReport::max_residual() const {
  double m = 0.0;
  for (const auto& [name, v] : residuals) m = std::max(m, v);
  return m;
}

IdentityReport identity_suite(const DilatationStructure& s, std::uint64_t seed, int count,
                              double radius) {
  IdentityReport rep;
  rep.structure = s.id();
  rep.seed = seed;
  const double r = radius > 0.0 ? radius : 0.2 * s.radius_a();
  const Point center = s.default_center();
  static const char* const names[] = {
      "A1",           "A2",           "A0-inverse",   "sum-base",
      "sum-diff-inverse", "inverse-involution", "sum-associativity", "diff-via-sum",
      "diff-dilation", "metric-identity", "metric-symmetry", "metric-triangle",
      "shift-isometry", "shift-fixed"};
  std::vector<double> worst(std::size(names), 0.0);
  Rng rng(stream_seed(seed, 1));
  auto draw_scale = [&]() {
    if (s.scale_kind() == ScaleKind::dyadic) {
      return Scale::dyadic(-1 - static_cast<int>(rng.next() % 3));
    }
    return Scale::continuous(rng.uniform(0.1, 0.9));
  };
  for (int i = 0; i < count; ++i) {
    try {
      const Point x = s.sample_near(center, 0.5 * r, rng);
      const Point u = s.sample_near(x, r, rng);
      const Point v = s.sample_near(x, r, rng);
      const Point w = s.sample_near(x, r, rng);
      const Scale eps = draw_scale();
      const Scale mu = draw_scale();
      const Scale one = Scale::one(s.scale_kind());
      const Point y = dilate(s, x, eps, u);

      double res[std::size(names)];
      res[0] = std::max(dist2(dilate(s, x, eps, x), x), dist2(dilate(s, x, one, u), u));
      res[1] = dist2(dilate(s, x, eps, dilate(s, x, mu, u)), dilate(s, x, eps * mu, u));
      res[2] = dist2(dilate(s, x, eps.inverse(), y), u);
      res[3] = dist2(approx_sum(s, x, eps, x, u), u);
      res[4] = std::max(
          dist2(approx_difference(s, x, eps, u, approx_sum(s, x, eps, u, v)), v),
          dist2(approx_sum(s, x, eps, u, approx_difference(s, x, eps, u, v)), v));
      res[5] = dist2(approx_inverse(s, y, eps, approx_inverse(s, x, eps, u)), u);
      res[6] = dist2(approx_sum(s, x, eps, u, approx_sum(s, y, eps, v, w)),
                     approx_sum(s, x, eps, approx_sum(s, x, eps, u, v), w));
      res[7] = dist2(approx_difference(s, x, eps, u, v),
                     approx_sum(s, y, eps, approx_inverse(s, x, eps, u), v));
      res[8] = dist2(
          approx_difference(s, x, eps, dilate(s, x, mu, u), dilate(s, x, mu, v)),
          dilate(s, dilate(s, x, eps * mu, u), mu, approx_difference(s, x, eps * mu, u, v)));
      res[9] = s.distance(u, u);
      res[10] = std::abs(s.distance(u, v) - s.distance(v, u));
      res[11] = std::max(0.0, s.distance(u, w) - s.distance(u, v) - s.distance(v, w));
      const Point ymu = dilate(s, x, mu, u);
      res[12] = std::abs(relative_distance(s, x, mu, approx_sum(s, x, mu, u, v),
                                           approx_sum(s, x, mu, u, w)) -
                         relative_distance(s, ymu, mu, v, w));
      res[13] = dist2(approx_sum(s, x, mu, u, ymu), u);
      for (std::size_t k = 0; k < std::size(names); ++k) worst[k] = std::max(worst[k], res[k]);
      ++rep.samples;
    } catch (const Error& e) {
      if (!e.is_domain_error()) throw;
      ++rep.skipped;
    }
  }
  for (std::size_t k = 0; k < std::size(names); ++k) rep.residuals.emplace_back(names[k], worst[k]);
  return rep;
}

// ---------------------------------------------------------------------------

nlohmann::json to_json(const SweepReport& r) {
  nlohmann::json j;
  j["suite"] = r.suite;
  j["structure"] = r.structure;
  j["seed"] = r.seed;
  j["grid"] = r.grid;
  j["defects"] = r.defects;
  if (std::isnan(r.order)) {
    j["order"] = nullptr;
  } else {
    j["order"] = r.order;
  }
  j["residual"] = r.residual;
  j["verdict"] = r.verdict;
  j["skipped"] = r.skipped;
  j["degenerate"] = r.degenerate;
  j["precision"] = r.precision;
  return j;
}

nlohmann::json to_json(const IdentityReport& r) {
  nlohmann::json j;
  j["suite"] = "identities";
  j["structure"] = r.structure;
  j["seed"] = r.seed;
  j["samples"] = r.samples;
  j["skipped"] = r.skipped;
  nlohmann::json res = nlohmann::json::object();
  for (const auto& [name, v] : r.residuals) res[name] = v;
  j["residuals"] = res;
  return j;
}

void write_csv(std::ostream& out, const SweepReport& r) {
  out << "epsilon,defect\n";
  char line[64];
  for (std::size_t k = 0; k < r.grid.size(); ++k) {
    std::snprintf(line, sizeof line, "%.17g,%.17g\n", r.grid[k], r.defects[k]);
    out << line;
  }
}

}  // namespace dilatlab
