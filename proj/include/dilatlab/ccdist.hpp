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

#include <cstdint>
#include <optional>
#include <vector>

#include "dilatlab/carnot.hpp"
#include "dilatlab/point.hpp"

namespace dilatlab {

/// Piecewise-constant horizontal curve on [0, 1]. Segment j moves by
/// exp(h u_j) with u_j in V_1 (given in horizontal coordinates).
struct HorizontalPath {
  std::vector<Point> controls;

  std::size_t segments() const noexcept { return controls.size(); }
  double step() const noexcept { return 1.0 / static_cast<double>(controls.size()); }
};

Point endpoint(const CarnotGroup& g, const HorizontalPath& path);
/// h * sum_j |u_j|.
double path_length(const HorizontalPath& path);

/// exp(t X_k), k indexing the horizontal generators.
struct WordLetter {
  std::size_t generator = 0;
  double t = 0.0;
};
using GeneratorWord = std::vector<WordLetter>;

Point evaluate_word(const CarnotGroup& g, const GeneratorWord& word);
double word_length(const GeneratorWord& word);

/// Layer-1 letters followed by one commutator square per needed bracket.
/// Step <= 2 only; throws Error(unsupported_step) otherwise.
GeneratorWord word_decomposition(const CarnotGroup& g, const Point& x);

struct TBoundReport {
  std::vector<double> eps;
  std::vector<double> max_t;
  /// Fitted exponent of max|t_i| against eps.
  double exponent = 0.0;
  double residual = 0.0;
  /// max over the grid of max|t_i| / |x|, |x| the layer-quasi norm.
  double constant = 0.0;
};

/// Word parameter scaling along x = delta_eps x0.
TBoundReport t_bound_check(const CarnotGroup& g, const Point& x0,
                           const std::vector<double>& eps);

struct CcOptions {
  int segments = 64;
  /// Gradient steps per penalty round.
  int iterations = 200;
  std::uint64_t seed = 0;
};

struct CcResult {
  double upper = 0.0;
  /// |endpoint(path) - x^{-1} y| of the reported path.
  double residual = 0.0;
  HorizontalPath path;
  std::optional<GeneratorWord> word;
  /// Length of the word path, when a word exists.
  std::optional<double> word_bound;
};

/// Upper bound on d_cc(x, y): best feasible path length found by a penalty
/// method on a coarse-to-fine segment schedule.
CcResult cc_upper(const CarnotGroup& g, const Point& x, const Point& y,
                  const CcOptions& options = {});

/// |layer-1 part of x^{-1} y|.
double cc_lower(const CarnotGroup& g, const Point& x, const Point& y);

/// cc_upper(e, g) with default options.
double cc_norm(const CarnotGroup& g, const Point& x);

}  // namespace dilatlab
