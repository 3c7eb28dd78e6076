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

#include <boost/multiprecision/cpp_int.hpp>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace dilatlab {

using Rational = boost::multiprecision::cpp_rational;

struct BracketConstant {
  // 0-based basis indices: [e_i, e_j] has coefficient `value` on e_k.
  std::size_t i, j, k;
  Rational value;
};

/// A graded nilpotent Lie algebra given by structure constants in a basis
/// adapted to the grading (basis vector i has weight w_i in 1..m).
///
/// Constants are stored exactly; the double copy is derived from them.
class GradedLieAlgebra {
 public:
  /// When `complete_antisymmetry` is set, every [e_i, e_j] given without its
  /// [e_j, e_i] partner gets the negated partner. Entries given both ways are
  /// kept as-is so that validate() can report inconsistent input.
  GradedLieAlgebra(std::size_t dim, std::vector<int> weights,
                   const std::vector<BracketConstant>& constants,
                   bool complete_antisymmetry = true);

  /// {"dim": n, "weights": [...], "brackets": [[i, j, k, num, den], ...]}
  /// with 1-based indices.
  static GradedLieAlgebra from_json_text(std::string_view text);
  static GradedLieAlgebra load_file(const std::string& path);

  std::size_t dim() const noexcept { return dim_; }
  const std::vector<int>& weights() const noexcept { return weights_; }
  int step() const noexcept { return step_; }
  /// dim V_1, ..., dim V_m.
  std::vector<int> layer_dims() const;
  /// Sum of i dim V_i.
  int homogeneous_dimension() const;

  const Rational& constant(std::size_t i, std::size_t j, std::size_t k) const {
    return exact_[(i * dim_ + j) * dim_ + k];
  }

  struct Entry {
    std::size_t i, j, k;
    double value;
    Rational exact;
  };
  /// Nonzero constants, all orderings included.
  const std::vector<Entry>& entries() const noexcept { return entries_; }

  template <class T>
  std::vector<T> bracket(const std::vector<T>& x, const std::vector<T>& y) const;

 private:
  std::size_t dim_;
  std::vector<int> weights_;
  int step_ = 0;
  std::vector<Rational> exact_;
  std::vector<Entry> entries_;
};

struct AlgebraReport {
  std::size_t dim = 0;
  int step = 0;
  std::vector<int> layer_dims;
  int homogeneous_dimension = 0;
};

/// Checks antisymmetry, the Jacobi identity, compatibility with the grading
/// and Carnot generation V_{i+1} = [V_1, V_i], exactly. Throws
/// Error(invalid_algebra) naming the first violated identity and its 1-based
/// indices.
AlgebraReport validate(const GradedLieAlgebra& algebra);

}  // namespace dilatlab
