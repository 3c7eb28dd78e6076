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

#include "dilatlab/lie_algebra.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <json.hpp>
#include <sstream>
#include <tuple>
#include <type_traits>

#include "dilatlab/error.hpp"
#include "dilatlab/extended.hpp"

namespace dilatlab {

GradedLieAlgebra::GradedLieAlgebra(std::size_t dim, std::vector<int> weights,
                                   const std::vector<BracketConstant>& constants,
                                   bool complete_antisymmetry)
    : dim_(dim), weights_(std::move(weights)) {
  if (dim_ == 0) throw Error(ErrorCode::invalid_algebra, "dimension must be >= 1");
  if (weights_.size() != dim_) {
    throw Error(ErrorCode::invalid_algebra, "need one weight per basis vector");
  }
  for (int w : weights_) {
    if (w < 1) throw Error(ErrorCode::invalid_algebra, "weights must be >= 1");
    step_ = std::max(step_, w);
  }
  exact_.assign(dim_ * dim_ * dim_, Rational(0));

  std::map<std::tuple<std::size_t, std::size_t, std::size_t>, Rational> given;
  for (const auto& c : constants) {
    if (c.i >= dim_ || c.j >= dim_ || c.k >= dim_) {
      throw Error(ErrorCode::invalid_algebra, "bracket index out of range");
    }
    given[{c.i, c.j, c.k}] += c.value;
  }
  for (const auto& [key, value] : given) {
    const auto [i, j, k] = key;
    exact_[(i * dim_ + j) * dim_ + k] = value;
    if (complete_antisymmetry && i != j && !given.contains({j, i, k})) {
      exact_[(j * dim_ + i) * dim_ + k] = -value;
    }
  }
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t j = 0; j < dim_; ++j) {
      for (std::size_t k = 0; k < dim_; ++k) {
        const Rational& v = constant(i, j, k);
        if (v != 0) entries_.push_back({i, j, k, static_cast<double>(v), v});
      }
    }
  }
}

GradedLieAlgebra GradedLieAlgebra::from_json_text(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::invalid_algebra, std::string("bad algebra JSON: ") + e.what());
  }
  try {
    const auto dim = doc.at("dim").get<std::size_t>();
    auto weights = doc.at("weights").get<std::vector<int>>();
    std::vector<BracketConstant> constants;
    if (doc.contains("brackets")) {
      for (const auto& row : doc.at("brackets")) {
        if (!row.is_array() || row.size() != 5) {
          throw Error(ErrorCode::invalid_algebra,
                      "bracket rows are [i, j, k, numerator, denominator]");
        }
        const auto i = row[0].get<long long>();
        const auto j = row[1].get<long long>();
        const auto k = row[2].get<long long>();
        const auto num = row[3].get<long long>();
        const auto den = row[4].get<long long>();
        if (i < 1 || j < 1 || k < 1 || den == 0) {
          throw Error(ErrorCode::invalid_algebra,
                      "bracket indices are 1-based and denominators nonzero");
        }
        constants.push_back({static_cast<std::size_t>(i - 1),
                             static_cast<std::size_t>(j - 1),
                             static_cast<std::size_t>(k - 1),
                             Rational(num) / Rational(den)});
      }
    }
    return GradedLieAlgebra(dim, std::move(weights), constants);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::invalid_algebra, std::string("bad algebra JSON: ") + e.what());
  }
}

GradedLieAlgebra GradedLieAlgebra::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::io, "cannot read " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return from_json_text(buf.str());
}

std::vector<int> GradedLieAlgebra::layer_dims() const {
  std::vector<int> dims(static_cast<std::size_t>(step_), 0);
  for (int w : weights_) ++dims[static_cast<std::size_t>(w - 1)];
  return dims;
}

int GradedLieAlgebra::homogeneous_dimension() const {
  int q = 0;
  for (int w : weights_) q += w;
  return q;
}

template <class T>
std::vector<T> GradedLieAlgebra::bracket(const std::vector<T>& x,
                                         const std::vector<T>& y) const {
  std::vector<T> r(dim_, T(0));
  for (const auto& e : entries_) {
    if (x[e.i] == 0 || y[e.j] == 0) continue;
    if constexpr (std::is_same_v<T, double>) {
      r[e.k] += e.value * x[e.i] * y[e.j];
    } else if constexpr (std::is_same_v<T, Rational>) {
      r[e.k] += e.exact * x[e.i] * y[e.j];
    } else {
      r[e.k] += T(numerator(e.exact)) / T(denominator(e.exact)) * x[e.i] * y[e.j];
    }
  }
  return r;
}

template std::vector<double> GradedLieAlgebra::bracket(const std::vector<double>&,
                                                       const std::vector<double>&) const;
template std::vector<Rational> GradedLieAlgebra::bracket(
    const std::vector<Rational>&, const std::vector<Rational>&) const;
template std::vector<Extended> GradedLieAlgebra::bracket(
    const std::vector<Extended>&, const std::vector<Extended>&) const;

namespace {

std::string indices(std::initializer_list<std::size_t> idx) {
  std::string s = "(";
  bool first = true;
  for (auto i : idx) {
    if (!first) s += ",";
    s += std::to_string(i + 1);
    first = false;
  }
  return s + ")";
}

int rational_rank(std::vector<std::vector<Rational>> rows) {
  int rank = 0;
  if (rows.empty()) return 0;
  const std::size_t cols = rows.front().size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t pivot = r;
    while (pivot < rows.size() && rows[pivot][c] == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[r], rows[pivot]);
    for (std::size_t q = 0; q < rows.size(); ++q) {
      if (q == r || rows[q][c] == 0) continue;
      const Rational f = rows[q][c] / rows[r][c];
      for (std::size_t cc = c; cc < cols; ++cc) rows[q][cc] -= f * rows[r][cc];
    }
    ++r;
    ++rank;
  }
  return rank;
}

}  // namespace

AlgebraReport validate(const GradedLieAlgebra& a) {
  const std::size_t n = a.dim();
  const auto& w = a.weights();

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        if (a.constant(i, j, k) != -a.constant(j, i, k)) {
          throw Error(ErrorCode::invalid_algebra,
                      "antisymmetry fails at " + indices({i, j, k}));
        }
      }
    }
  }
  for (const auto& e : a.entries()) {
    if (w[e.k] != w[e.i] + w[e.j]) {
      throw Error(ErrorCode::invalid_algebra,
                  "grading fails at " + indices({e.i, e.j, e.k}));
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      for (std::size_t k = j + 1; k < n; ++k) {
        for (std::size_t p = 0; p < n; ++p) {
          Rational s = 0;
          for (std::size_t l = 0; l < n; ++l) {
            s += a.constant(i, j, l) * a.constant(l, k, p) +
                 a.constant(j, k, l) * a.constant(l, i, p) +
                 a.constant(k, i, l) * a.constant(l, j, p);
          }
          if (s != 0) {
            throw Error(ErrorCode::invalid_algebra,
                        "Jacobi identity fails at " + indices({i, j, k, p}));
          }
        }
      }
    }
  }

  const auto dims = a.layer_dims();
  for (std::size_t layer = 0; layer < dims.size(); ++layer) {
    if (dims[layer] == 0) {
      throw Error(ErrorCode::invalid_algebra,
                  "layer " + std::to_string(layer + 1) + " is empty");
    }
  }
  // V_{t+1} must be spanned by [V_1, V_t].
  for (int t = 1; t < a.step(); ++t) {
    std::vector<std::size_t> target;
    for (std::size_t k = 0; k < n; ++k) {
      if (w[k] == t + 1) target.push_back(k);
    }
    std::vector<std::vector<Rational>> rows;
    for (std::size_t i = 0; i < n; ++i) {
      if (w[i] != 1) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (w[j] != t) continue;
        std::vector<Rational> row;
        for (auto k : target) row.push_back(a.constant(i, j, k));
        rows.push_back(std::move(row));
      }
    }
    if (rational_rank(rows) != static_cast<int>(target.size())) {
      throw Error(ErrorCode::invalid_algebra,
                  "Carnot generation fails: [V1, V" + std::to_string(t) +
                      "] does not span V" + std::to_string(t + 1));
    }
  }

  AlgebraReport report;
  report.dim = n;
  report.step = a.step();
  report.layer_dims = dims;
  report.homogeneous_dimension = a.homogeneous_dimension();
  return report;
}

}  // namespace dilatlab
