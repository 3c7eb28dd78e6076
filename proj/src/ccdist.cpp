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

#include "dilatlab/ccdist.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "dilatlab/convergence.hpp"
#include "dilatlab/error.hpp"

namespace dilatlab {

namespace {

// Feasibility and projection targets, in normalized coordinates.
constexpr double kFeasible = 1e-10;
constexpr double kProjectTol = 1e-12;
constexpr double kFdStep = 1e-6;
// Smoothing of |u| inside the penalty objective.
constexpr double kSmooth = 1e-3;

Point exp_horizontal(const CarnotGroup& g, const double* u, double h) {
  Point p(g.dim(), 0.0);
  const auto& hor = g.horizontal();
  for (std::size_t a = 0; a < hor.size(); ++a) p[hor[a]] = h * u[a];
  return p;
}

double layer_quasi(const CarnotGroup& g, const Point& p) {
  return homogeneous_norm(g, p, NormVariant::layer_quasi);
}

// Controls are kept flat: segment j occupies [j*m, (j+1)*m).
class PathProblem {
 public:
  PathProblem(const CarnotGroup& g, Point target)
      : g_(g), target_(std::move(target)), m_(g.horizontal().size()) {}

  std::size_t m() const { return m_; }
  const Point& target() const { return target_; }

  Point end(const Eigen::VectorXd& z) const {
    const std::size_t k = static_cast<std::size_t>(z.size()) / m_;
    const double h = 1.0 / static_cast<double>(k);
    Point p(g_.dim(), 0.0);
    for (std::size_t j = 0; j < k; ++j) {
      p = g_.product(p, exp_horizontal(g_, z.data() + j * m_, h));
    }
    return p;
  }

  Eigen::VectorXd residual(const Eigen::VectorXd& z) const {
    const Point p = end(z);
    Eigen::VectorXd r(static_cast<Eigen::Index>(p.size()));
    for (std::size_t i = 0; i < p.size(); ++i) r[static_cast<Eigen::Index>(i)] = p[i] - target_[i];
    return r;
  }

  // Forward differences; prefix and suffix products make each column cost
  // two group products.
  Eigen::MatrixXd jacobian(const Eigen::VectorXd& z) const {
    const std::size_t k = static_cast<std::size_t>(z.size()) / m_;
    const double h = 1.0 / static_cast<double>(k);
    std::vector<Point> prefix(k + 1), suffix(k + 1);
    prefix[0] = Point(g_.dim(), 0.0);
    for (std::size_t j = 0; j < k; ++j) {
      prefix[j + 1] = g_.product(prefix[j], exp_horizontal(g_, z.data() + j * m_, h));
    }
    suffix[k] = Point(g_.dim(), 0.0);
    for (std::size_t j = k; j-- > 0;) {
      suffix[j] = g_.product(exp_horizontal(g_, z.data() + j * m_, h), suffix[j + 1]);
    }
    const Point& base = prefix[k];
    Eigen::MatrixXd jac(static_cast<Eigen::Index>(g_.dim()), z.size());
    std::vector<double> u(m_);
    for (std::size_t j = 0; j < k; ++j) {
      for (std::size_t a = 0; a < m_; ++a) {
        std::copy_n(z.data() + j * m_, m_, u.begin());
        u[a] += kFdStep;
        const Point moved = g_.product(
            g_.product(prefix[j], exp_horizontal(g_, u.data(), h)), suffix[j + 1]);
        for (std::size_t i = 0; i < g_.dim(); ++i) {
          jac(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j * m_ + a)) =
              (moved[i] - base[i]) / kFdStep;
        }
      }
    }
    return jac;
  }

  double smooth_length(const Eigen::VectorXd& z, Eigen::VectorXd* grad) const {
    const std::size_t k = static_cast<std::size_t>(z.size()) / m_;
    const double h = 1.0 / static_cast<double>(k);
    double total = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
      const auto seg = z.segment(static_cast<Eigen::Index>(j * m_), static_cast<Eigen::Index>(m_));
      const double n = std::sqrt(seg.squaredNorm() + kSmooth * kSmooth);
      total += h * n;
      if (grad) grad->segment(static_cast<Eigen::Index>(j * m_), static_cast<Eigen::Index>(m_)) = h * seg / n;
    }
    return total;
  }

  double penalty(const Eigen::VectorXd& z, double w) const {
    return smooth_length(z, nullptr) + w * residual(z).squaredNorm();
  }

  Eigen::VectorXd penalty_gradient(const Eigen::VectorXd& z, double w) const {
    Eigen::VectorXd grad(z.size());
    smooth_length(z, &grad);
    grad += 2.0 * w * jacobian(z).transpose() * residual(z);
    return grad;
  }

  // Gauss-Newton steps along the minimum-norm correction.
  bool project(Eigen::VectorXd& z) const {
    for (int it = 0; it < 40; ++it) {
      const Eigen::VectorXd r = residual(z);
      if (r.norm() <= kProjectTol) return true;
      const Eigen::MatrixXd jac = jacobian(z);
      const Eigen::MatrixXd normal = jac * jac.transpose();
      Eigen::FullPivLU<Eigen::MatrixXd> lu(normal);
      if (!lu.isInvertible()) return r.norm() <= kFeasible;
      const Eigen::VectorXd step = jac.transpose() * lu.solve(r);
      if (!step.allFinite()) return false;
      // Damped: far from the constraint a full step can overshoot badly.
      double t = 1.0;
      Eigen::VectorXd trial = z - step;
      while (t > 1e-4 && residual(trial).norm() >= r.norm()) {
        t *= 0.5;
        trial = z - t * step;
      }
      if (t <= 1e-4) return r.norm() <= kFeasible;
      z = trial;
    }
    return residual(z).norm() <= kFeasible;
  }

  void descend(Eigen::VectorXd& z, double w, int iterations) const {
    double alpha = 1e-2;
    double value = penalty(z, w);
    for (int it = 0; it < iterations; ++it) {
      const Eigen::VectorXd grad = penalty_gradient(z, w);
      const double g2 = grad.squaredNorm();
      if (g2 == 0.0) return;
      alpha *= 2.0;
      bool moved = false;
      for (int halving = 0; halving < 50; ++halving) {
        const Eigen::VectorXd trial = z - alpha * grad;
        const double v = penalty(trial, w);
        if (v <= value - 1e-4 * alpha * g2) {
          z = trial;
          value = v;
          moved = true;
          break;
        }
        alpha *= 0.5;
      }
      if (!moved || alpha * std::sqrt(g2) < 1e-13) return;
    }
  }

 private:
  const CarnotGroup& g_;
  Point target_;
  std::size_t m_;
};

double flat_length(const Eigen::VectorXd& z, std::size_t m) {
  const std::size_t k = static_cast<std::size_t>(z.size()) / m;
  double total = 0.0;
  for (std::size_t j = 0; j < k; ++j) {
    total += z.segment(static_cast<Eigen::Index>(j * m), static_cast<Eigen::Index>(m)).norm();
  }
  return total / static_cast<double>(k);
}

Eigen::VectorXd repeat_segments(const Eigen::VectorXd& z, std::size_t m, std::size_t factor) {
  const std::size_t k = static_cast<std::size_t>(z.size()) / m;
  Eigen::VectorXd out(static_cast<Eigen::Index>(k * factor * m));
  for (std::size_t j = 0; j < k; ++j) {
    for (std::size_t f = 0; f < factor; ++f) {
      out.segment(static_cast<Eigen::Index>((j * factor + f) * m), static_cast<Eigen::Index>(m)) =
          z.segment(static_cast<Eigen::Index>(j * m), static_cast<Eigen::Index>(m));
    }
  }
  return out;
}

// Letters spread over k segments, each letter getting at least one segment
// and the rest handed out by largest remainder of |t|.
Eigen::VectorXd word_controls(const GeneratorWord& word, std::size_t m, std::size_t k) {
  const std::size_t n = word.size();
  std::vector<std::size_t> count(n, 1);
  const double total = word_length(word);
  const std::size_t spare = k - n;
  std::vector<double> remainder(n, 0.0);
  std::size_t given = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double share = static_cast<double>(spare) * std::abs(word[i].t) / total;
    const auto whole = static_cast<std::size_t>(std::floor(share));
    count[i] += whole;
    given += whole;
    remainder[i] = share - static_cast<double>(whole);
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return remainder[a] > remainder[b]; });
  for (std::size_t i = 0; given < spare; ++i, ++given) ++count[order[i % n]];

  const double h = 1.0 / static_cast<double>(k);
  Eigen::VectorXd z = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(k * m));
  std::size_t seg = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double speed = word[i].t / (static_cast<double>(count[i]) * h);
    for (std::size_t c = 0; c < count[i]; ++c, ++seg) {
      z[static_cast<Eigen::Index>(seg * m + word[i].generator)] = speed;
    }
  }
  return z;
}

HorizontalPath to_path(const Eigen::VectorXd& z, std::size_t m, double scale) {
  HorizontalPath path;
  const std::size_t k = static_cast<std::size_t>(z.size()) / m;
  path.controls.resize(k);
  for (std::size_t j = 0; j < k; ++j) {
    path.controls[j].resize(m);
    for (std::size_t a = 0; a < m; ++a) {
      path.controls[j][a] = scale * z[static_cast<Eigen::Index>(j * m + a)];
    }
  }
  return path;
}

}  // namespace

Point endpoint(const CarnotGroup& g, const HorizontalPath& path) {
  Point p(g.dim(), 0.0);
  if (path.controls.empty()) return p;
  const double h = path.step();
  for (const Point& u : path.controls) {
    if (u.size() != g.horizontal().size()) {
      throw Error(ErrorCode::invalid_argument, "control of wrong dimension");
    }
    p = g.product(p, exp_horizontal(g, u.data(), h));
  }
  return p;
}

double path_length(const HorizontalPath& path) {
  if (path.controls.empty()) return 0.0;
  double total = 0.0;
  for (const Point& u : path.controls) total += norm2(u);
  return total * path.step();
}

Point evaluate_word(const CarnotGroup& g, const GeneratorWord& word) {
  Point p(g.dim(), 0.0);
  for (const WordLetter& l : word) {
    if (l.generator >= g.horizontal().size()) {
      throw Error(ErrorCode::invalid_argument, "generator index out of range");
    }
    Point step(g.dim(), 0.0);
    step[g.horizontal()[l.generator]] = l.t;
    p = g.product(p, step);
  }
  return p;
}

double word_length(const GeneratorWord& word) {
  double total = 0.0;
  for (const WordLetter& l : word) total += std::abs(l.t);
  return total;
}

GeneratorWord word_decomposition(const CarnotGroup& g, const Point& x) {
  if (x.size() != g.dim()) {
    throw Error(ErrorCode::invalid_argument, "group element of wrong dimension");
  }
  if (g.step() > 2) {
    throw Error(ErrorCode::unsupported_step,
                "no generator word for step " + std::to_string(g.step()) + " groups");
  }
  const auto& hor = g.horizontal();
  GeneratorWord word;
  for (std::size_t a = 0; a < hor.size(); ++a) {
    if (x[hor[a]] != 0.0) word.push_back({a, x[hor[a]]});
  }
  if (g.step() < 2) return word;

  // What the layer-1 letters leave over is central.
  const Point partial = evaluate_word(g, word);
  const Point rest = g.product(g.inverse(partial), x);
  std::vector<std::size_t> center;
  for (std::size_t i = 0; i < g.dim(); ++i) {
    if (g.algebra().weights()[i] == 2) center.push_back(i);
  }
  Eigen::VectorXd r(static_cast<Eigen::Index>(center.size()));
  for (std::size_t c = 0; c < center.size(); ++c) r[static_cast<Eigen::Index>(c)] = rest[center[c]];
  if (r.norm() == 0.0) return word;

  // Greedy basis of V_2 among the brackets [X_a, X_b], a < b.
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  Eigen::MatrixXd basis(static_cast<Eigen::Index>(center.size()), 0);
  for (std::size_t a = 0; a < hor.size() && pairs.size() < center.size(); ++a) {
    for (std::size_t b = a + 1; b < hor.size() && pairs.size() < center.size(); ++b) {
      std::vector<double> ea(g.dim(), 0.0), eb(g.dim(), 0.0);
      ea[hor[a]] = 1.0;
      eb[hor[b]] = 1.0;
      const auto br = g.algebra().bracket(ea, eb);
      Eigen::VectorXd col(static_cast<Eigen::Index>(center.size()));
      for (std::size_t c = 0; c < center.size(); ++c) col[static_cast<Eigen::Index>(c)] = br[center[c]];
      Eigen::MatrixXd trial(basis.rows(), basis.cols() + 1);
      trial << basis, col;
      if (Eigen::FullPivLU<Eigen::MatrixXd>(trial).rank() == trial.cols()) {
        basis = trial;
        pairs.emplace_back(a, b);
      }
    }
  }
  const Eigen::VectorXd lambda = basis.fullPivLu().solve(r);
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    const double l = lambda[static_cast<Eigen::Index>(p)];
    if (l == 0.0) continue;
    const double s = std::sqrt(std::abs(l));
    // Orientation picks the sign of the enclosed bracket.
    auto [a, b] = pairs[p];
    if (l < 0) std::swap(a, b);
    word.push_back({a, s});
    word.push_back({b, s});
    word.push_back({a, -s});
    word.push_back({b, -s});
  }
  return word;
}

TBoundReport t_bound_check(const CarnotGroup& g, const Point& x0,
                           const std::vector<double>& eps) {
  TBoundReport report;
  report.eps = eps;
  for (double e : eps) {
    const Point x = g.dilation(x0, e);
    double mt = 0.0;
    for (const WordLetter& l : word_decomposition(g, x)) mt = std::max(mt, std::abs(l.t));
    report.max_t.push_back(mt);
    const double n = layer_quasi(g, x);
    if (n > 0.0) report.constant = std::max(report.constant, mt / n);
  }
  const OrderFit fit = fit_order(report.eps, report.max_t);
  report.exponent = fit.order;
  report.residual = fit.residual;
  return report;
}

CcResult cc_upper(const CarnotGroup& g, const Point& x, const Point& y,
                  const CcOptions& options) {
  if (options.segments < 1) {
    throw Error(ErrorCode::invalid_argument, "segment count must be positive");
  }
  if (x.size() != g.dim() || y.size() != g.dim()) {
    throw Error(ErrorCode::invalid_argument, "group element of wrong dimension");
  }
  const std::size_t m = g.horizontal().size();
  const auto k_final = static_cast<std::size_t>(options.segments);
  const Point raw = g.product(g.inverse(x), y);
  CcResult result;

  const double scale = layer_quasi(g, raw);
  if (scale == 0.0) {
    result.path.controls.assign(k_final, Point(m, 0.0));
    if (g.step() <= 2) {
      result.word = GeneratorWord{};
      result.word_bound = 0.0;
    }
    return result;
  }
  // Work on the unit-size target delta_{1/s}(x^{-1} y); paths scale back
  // linearly, which keeps the estimate exactly homogeneous.
  PathProblem problem(g, g.dilation(raw, 1.0 / scale));

  std::optional<GeneratorWord> unit_word;
  try {
    unit_word = word_decomposition(g, problem.target());
  } catch (const Error& e) {
    if (e.code() != ErrorCode::unsupported_step) throw;
  }
  if (unit_word) {
    GeneratorWord w = *unit_word;
    for (WordLetter& l : w) l.t *= scale;
    result.word_bound = word_length(w);
    result.word = std::move(w);
  }

  // Coarse-to-fine: K, K/2, ... down to the first level that fits the word.
  const std::size_t letters = unit_word ? unit_word->size() : 0;
  std::vector<std::size_t> levels{k_final};
  while (levels.back() % 2 == 0 && levels.back() / 2 >= std::max<std::size_t>(4, letters)) {
    levels.push_back(levels.back() / 2);
  }
  std::reverse(levels.begin(), levels.end());
  const std::size_t k0 = levels.front();

  double best = std::numeric_limits<double>::infinity();
  Eigen::VectorXd best_z;
  auto record = [&](const Eigen::VectorXd& z) {
    if (problem.residual(z).norm() > kFeasible) return;
    const double len = flat_length(z, m);
    if (len < best) {
      best = len;
      best_z = z;
    }
  };

  Eigen::VectorXd straight(static_cast<Eigen::Index>(k0 * m));
  for (std::size_t j = 0; j < k0; ++j) {
    for (std::size_t a = 0; a < m; ++a) {
      straight[static_cast<Eigen::Index>(j * m + a)] = problem.target()[g.horizontal()[a]];
    }
  }
  record(straight);
  // A feasible straight segment already meets the projection lower bound.
  const bool done = std::isfinite(best);

  Eigen::VectorXd z;
  if (unit_word && letters <= k0) {
    z = word_controls(*unit_word, m, k0);
    record(z);
  } else {
    Rng rng(stream_seed(options.seed, 0x63636463ULL));
    z = straight;
    for (Eigen::Index i = 0; i < z.size(); ++i) z[i] += rng.uniform(-0.5, 0.5);
  }

  for (std::size_t li = 0; li < levels.size() && !done; ++li) {
    if (li > 0) {
      const Eigen::VectorXd& from = std::isfinite(best) ? best_z : z;
      const std::size_t k_from = static_cast<std::size_t>(from.size()) / m;
      z = repeat_segments(from, m, levels[li] / k_from);
    }
    Eigen::VectorXd projected = z;
    if (problem.project(projected)) {
      record(projected);
      z = projected;
    }
    double w = 1.0;
    for (int round = 0; round < 5; ++round) {
      w *= 10.0;
      problem.descend(z, w, options.iterations);
      projected = z;
      if (problem.project(projected)) {
        record(projected);
        z = projected;
      }
    }
  }

  if (!std::isfinite(best)) {
    throw Error(ErrorCode::not_converged, "no feasible horizontal path found");
  }
  const std::size_t k_best = static_cast<std::size_t>(best_z.size()) / m;
  result.path = to_path(repeat_segments(best_z, m, k_final / k_best), m, scale);
  result.upper = path_length(result.path);
  result.residual = dist2(endpoint(g, result.path), raw);
  return result;
}

double cc_lower(const CarnotGroup& g, const Point& x, const Point& y) {
  const Point p = g.product(g.inverse(x), y);
  double s = 0.0;
  for (std::size_t i : g.horizontal()) s += p[i] * p[i];
  return std::sqrt(s);
}

double cc_norm(const CarnotGroup& g, const Point& x) {
  return cc_upper(g, Point(g.dim(), 0.0), x).upper;
}

}  // namespace dilatlab
