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

#include <string>
#include <string_view>
#include <vector>

#include "dilatlab/lie_algebra.hpp"
#include "dilatlab/point.hpp"

namespace dilatlab {

/// One term of the Dynkin series: coefficient times the right-nested bracket
/// [w_1, [w_2, ... [w_{N-1}, w_N]]] of the letters (false = X, true = Y).
struct DynkinTerm {
  std::vector<bool> letters;
  Rational coefficient;
};

/// log(exp X exp Y) truncated at total degree `max_degree`, with terms that
/// share a letter sequence merged and vanishing ones dropped.
std::vector<DynkinTerm> dynkin_terms(int max_degree);

/// A Carnot group in exponential coordinates of the first kind.
class CarnotGroup {
 public:
  /// Validates the algebra (throws Error(invalid_algebra)).
  CarnotGroup(std::string name, GradedLieAlgebra algebra);

  const std::string& name() const noexcept { return name_; }
  const GradedLieAlgebra& algebra() const noexcept { return algebra_; }
  std::size_t dim() const noexcept { return algebra_.dim(); }
  int step() const noexcept { return algebra_.step(); }
  int homogeneous_dimension() const { return algebra_.homogeneous_dimension(); }
  /// Coordinates spanning V_1.
  const std::vector<std::size_t>& horizontal() const noexcept { return horizontal_; }
  bool is_heisenberg() const noexcept { return heisenberg_; }

  /// Truncated BCH product; exact because the algebra is nilpotent.
  template <class T>
  std::vector<T> product(const std::vector<T>& g, const std::vector<T>& h) const;
  template <class T>
  std::vector<T> inverse(const std::vector<T>& g) const;
  /// Layer i scaled by eps^i.
  template <class T>
  std::vector<T> dilation(const std::vector<T>& g, const T& eps) const;

 private:
  std::string name_;
  GradedLieAlgebra algebra_;
  std::vector<DynkinTerm> terms_;
  std::vector<double> term_coefficients_;
  std::vector<std::size_t> horizontal_;
  bool heisenberg_ = false;
};

enum class NormVariant { layer_quasi, koranyi, cc };

NormVariant parse_norm_variant(std::string_view name);
const char* to_string(NormVariant v);

/// Homogeneous norms: layer_quasi is sum_i |g_i|^{1/i}; koranyi is
/// ((a^2 + b^2)^2 + 16 c^2)^{1/4} on the Heisenberg group only; cc is the
/// Carnot-Caratheodory upper bound from ccdist.
double homogeneous_norm(const CarnotGroup& group, const Point& g,
                        NormVariant variant);

/// "heisenberg:1", "abelian:<n>", "engel", or "file:<path>".
CarnotGroup builtin_group(std::string_view name);

}  // namespace dilatlab
