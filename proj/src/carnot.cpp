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

#include "dilatlab/carnot.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "dilatlab/ccdist.hpp"
#include "dilatlab/error.hpp"
#include "dilatlab/extended.hpp"
#include "engel_data.hpp"

namespace dilatlab {
namespace {

Rational factorial(int n) {
  Rational f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

// Enumerates the Dynkin index sets (r_1, s_1, ..., r_n, s_n) with
// r_i + s_i >= 1 and total degree <= max_degree.
void enumerate(int max_degree, int blocks, int degree, Rational denom,
               std::vector<bool>& word,
               std::map<std::vector<bool>, Rational>& acc) {
  if (blocks > 0) {
    const Rational sign = (blocks % 2 == 1) ? Rational(1) : Rational(-1);
    acc[word] += sign / (Rational(blocks) * Rational(degree) * denom);
  }
  for (int r = 0; degree + r <= max_degree; ++r) {
    for (int s = 0; degree + r + s <= max_degree; ++s) {
      if (r + s == 0) continue;
      const std::size_t mark = word.size();
      word.insert(word.end(), static_cast<std::size_t>(r), false);
      word.insert(word.end(), static_cast<std::size_t>(s), true);
      enumerate(max_degree, blocks + 1, degree + r + s,
                denom * factorial(r) * factorial(s), word, acc);
      word.resize(mark);
    }
  }
}

}  // namespace

std::vector<DynkinTerm> dynkin_terms(int max_degree) {
  if (max_degree < 1 || max_degree > 8) {
    throw Error(ErrorCode::invalid_argument, "BCH degree must be in 1..8");
  }
  std::map<std::vector<bool>, Rational> acc;
  std::vector<bool> word;
  enumerate(max_degree, 0, 0, Rational(1), word, acc);
  std::vector<DynkinTerm> terms;
  for (auto& [letters, coeff] : acc) {
    if (coeff == 0 || letters.empty()) continue;
    const std::size_t n = letters.size();
    // [.., [a, a]] vanishes.
    if (n >= 2 && letters[n - 1] == letters[n - 2]) continue;
    terms.push_back({letters, coeff});
  }
  return terms;
}

CarnotGroup::CarnotGroup(std::string name, GradedLieAlgebra algebra)
    : name_(std::move(name)), algebra_(std::move(algebra)) {
  validate(algebra_);
  terms_ = dynkin_terms(algebra_.step());
  for (const auto& t : terms_) term_coefficients_.push_back(static_cast<double>(t.coefficient));
  for (std::size_t i = 0; i < algebra_.dim(); ++i) {
    if (algebra_.weights()[i] == 1) horizontal_.push_back(i);
  }
  const auto& w = algebra_.weights();
  heisenberg_ = algebra_.dim() == 3 && w[0] == 1 && w[1] == 1 && w[2] == 2 &&
                algebra_.entries().size() == 2 && algebra_.constant(0, 1, 2) == 1;
}

template <class T>
std::vector<T> CarnotGroup::product(const std::vector<T>& g,
                                    const std::vector<T>& h) const {
  const std::size_t n = dim();
  if (g.size() != n || h.size() != n) {
    throw Error(ErrorCode::invalid_argument, "group element of wrong dimension");
  }
  std::vector<T> r(n, T(0));
  for (std::size_t t = 0; t < terms_.size(); ++t) {
    const auto& letters = terms_[t].letters;
    std::vector<T> v = letters.back() ? h : g;
    bool zero = false;
    for (std::size_t p = letters.size() - 1; p-- > 0;) {
      v = algebra_.bracket(letters[p] ? h : g, v);
      zero = std::all_of(v.begin(), v.end(), [](const T& c) { return c == 0; });
      if (zero) break;
    }
    if (zero) continue;
    if constexpr (std::is_same_v<T, double>) {
      for (std::size_t k = 0; k < n; ++k) r[k] += term_coefficients_[t] * v[k];
    } else if constexpr (std::is_same_v<T, Rational>) {
      for (std::size_t k = 0; k < n; ++k) r[k] += terms_[t].coefficient * v[k];
    } else {
      const T c = T(numerator(terms_[t].coefficient)) / T(denominator(terms_[t].coefficient));
      for (std::size_t k = 0; k < n; ++k) r[k] += c * v[k];
    }
  }
  return r;
}

template <class T>
std::vector<T> CarnotGroup::inverse(const std::vector<T>& g) const {
  std::vector<T> r(g);
  for (auto& c : r) c = -c;
  return r;
}

template <class T>
std::vector<T> CarnotGroup::dilation(const std::vector<T>& g, const T& eps) const {
  std::vector<T> r(g);
  const auto& w = algebra_.weights();
  for (std::size_t i = 0; i < r.size(); ++i) {
    T f = eps;
    for (int p = 1; p < w[i]; ++p) f *= eps;
    r[i] *= f;
  }
  return r;
}

template std::vector<double> CarnotGroup::product(const std::vector<double>&,
                                                  const std::vector<double>&) const;
template std::vector<Rational> CarnotGroup::product(const std::vector<Rational>&,
                                                    const std::vector<Rational>&) const;
template std::vector<double> CarnotGroup::inverse(const std::vector<double>&) const;
template std::vector<Rational> CarnotGroup::inverse(const std::vector<Rational>&) const;
template std::vector<double> CarnotGroup::dilation(const std::vector<double>&,
                                                   const double&) const;
template std::vector<Rational> CarnotGroup::dilation(const std::vector<Rational>&,
                                                     const Rational&) const;
template std::vector<Extended> CarnotGroup::product(const std::vector<Extended>&,
                                                    const std::vector<Extended>&) const;
template std::vector<Extended> CarnotGroup::inverse(const std::vector<Extended>&) const;
template std::vector<Extended> CarnotGroup::dilation(const std::vector<Extended>&,
                                                     const Extended&) const;

NormVariant parse_norm_variant(std::string_view name) {
  if (name == "layer-quasi") return NormVariant::layer_quasi;
  if (name == "koranyi") return NormVariant::koranyi;
  if (name == "cc") return NormVariant::cc;
  throw Error(ErrorCode::unsupported_variant, "unknown norm '" + std::string(name) + "'");
}

const char* to_string(NormVariant v) {
  switch (v) {
    case NormVariant::layer_quasi: return "layer-quasi";
    case NormVariant::koranyi: return "koranyi";
    case NormVariant::cc: return "cc";
  }
  return "?";
}

double homogeneous_norm(const CarnotGroup& group, const Point& g,
                        NormVariant variant) {
  if (g.size() != group.dim()) {
    throw Error(ErrorCode::invalid_argument, "group element of wrong dimension");
  }
  switch (variant) {
    case NormVariant::layer_quasi: {
      std::vector<double> sq(static_cast<std::size_t>(group.step()), 0.0);
      const auto& w = group.algebra().weights();
      for (std::size_t i = 0; i < g.size(); ++i) {
        sq[static_cast<std::size_t>(w[i] - 1)] += g[i] * g[i];
      }
      double total = 0.0;
      for (std::size_t layer = 0; layer < sq.size(); ++layer) {
        total += std::pow(std::sqrt(sq[layer]), 1.0 / static_cast<double>(layer + 1));
      }
      return total;
    }
    case NormVariant::koranyi: {
      if (!group.is_heisenberg()) {
        throw Error(ErrorCode::unsupported_variant,
                    "the Koranyi norm is only defined on heisenberg:1");
      }
      const double r2 = g[0] * g[0] + g[1] * g[1];
      return std::pow(r2 * r2 + 16.0 * g[2] * g[2], 0.25);
    }
    case NormVariant::cc:
      return cc_norm(group, g);
  }
  throw Error(ErrorCode::unsupported_variant, "unknown norm variant");
}

CarnotGroup builtin_group(std::string_view name) {
  const std::string s(name);
  auto parse_count = [&](std::string_view prefix) -> std::size_t {
    const std::string rest = s.substr(prefix.size());
    std::size_t used = 0;
    long long n = 0;
    try {
      n = std::stoll(rest, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != rest.size() || n < 1 || n > 64) {
      throw Error(ErrorCode::unknown_name, "bad group name '" + s + "'");
    }
    return static_cast<std::size_t>(n);
  };

  if (s.rfind("heisenberg:", 0) == 0) {
    const std::size_t n = parse_count("heisenberg:");
    std::vector<int> weights(2 * n, 1);
    weights.push_back(2);
    std::vector<BracketConstant> c;
    for (std::size_t i = 0; i < n; ++i) c.push_back({i, n + i, 2 * n, Rational(1)});
    return CarnotGroup(s, GradedLieAlgebra(2 * n + 1, std::move(weights), c));
  }
  if (s.rfind("abelian:", 0) == 0) {
    const std::size_t n = parse_count("abelian:");
    return CarnotGroup(s, GradedLieAlgebra(n, std::vector<int>(n, 1), {}));
  }
  if (s == "engel") {
    return CarnotGroup(s, GradedLieAlgebra::from_json_text(detail::kEngelJson));
  }
  if (s.rfind("file:", 0) == 0) {
    return CarnotGroup(s, GradedLieAlgebra::load_file(s.substr(5)));
  }
  throw Error(ErrorCode::unknown_name, "unknown group '" + s + "'");
}

}  // namespace dilatlab
