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

#include <vector>

namespace dilatlab {

enum class ScaleKind { continuous, dyadic };

/// An element of the scale group, represented by its valuation.
///
/// Every formula only uses the valuation, so the abstract group collapses to
/// positive reals (continuous) or powers of two (dyadic). Dyadic scales keep
/// the integer exponent so products and inverses stay exact.
class Scale {
 public:
  static Scale continuous(double value);
  static Scale dyadic(int exponent);
  static Scale one(ScaleKind kind = ScaleKind::continuous);

  double value() const noexcept { return value_; }
  ScaleKind kind() const noexcept { return kind_; }
  // Only meaningful for dyadic scales.
  int exponent() const noexcept { return exponent_; }

  bool contracting() const noexcept { return value_ <= 1.0; }
  Scale inverse() const;
  Scale operator*(const Scale& other) const;

 private:
  Scale(double value, ScaleKind kind, int exponent)
      : value_(value), kind_(kind), exponent_(exponent) {}

  double value_;
  ScaleKind kind_;
  int exponent_;
};

class ScaleGroup {
 public:
  explicit ScaleGroup(ScaleKind kind) : kind_(kind) {}

  ScaleKind kind() const noexcept { return kind_; }
  /// Builds the element of valuation `value`; dyadic groups require a power
  /// of two.
  Scale make(double value) const;
  bool contains(const Scale& s) const noexcept { return s.kind() == kind_; }

 private:
  ScaleKind kind_;
};

/// Decreasing geometric grid start, start*ratio, ..., with `count` entries.
struct GridSpec {
  double start = 0.5;
  double ratio = 0.5;
  int count = 16;
};

std::vector<Scale> make_grid(const GridSpec& spec, ScaleKind kind);
std::vector<double> grid_values(const std::vector<Scale>& grid);

}  // namespace dilatlab
