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

#include <memory>
#include <optional>
#include <string>

#include "dilatlab/point.hpp"
#include "dilatlab/scale.hpp"

namespace dilatlab {

class ExtendedDilations;

/// A metric space with base-pointed dilations x, eps, y -> delta^x_eps y.
///
/// Implementations supply the raw dilation and distance; the free functions in
/// operations.hpp add the domain checks. The working domain U(x) is the closed
/// ball of radius A about x; dilations with valuation above 1 must land in the
/// ball of radius B. Structures are immutable and safe to share across
/// threads.
class DilatationStructure {
 public:
  virtual ~DilatationStructure() = default;

  virtual std::string id() const = 0;
  virtual std::size_t dim() const = 0;
  virtual ScaleKind scale_kind() const { return ScaleKind::continuous; }

  virtual double distance(const Point& u, const Point& v) const = 0;
  /// The dilation without domain checks.
  virtual Point dilate_unchecked(const Point& x, const Scale& eps,
                                 const Point& y) const = 0;

  double radius_a() const noexcept { return radius_a_; }
  double radius_b() const noexcept { return radius_b_; }

  /// A point where sweeps are centred by default.
  virtual Point default_center() const;

  /// Uniform sample in the closed d-ball of radius r about `center`, by
  /// rejection from a coordinate box.
  virtual Point sample_near(const Point& center, double r, Rng& rng) const;

  // Closed-form tangent data at x, when the instance knows it.
  virtual std::optional<double> tangent_distance(const Point& x, const Point& u,
                                                 const Point& v) const;
  virtual std::optional<Point> tangent_sum(const Point& x, const Point& u,
                                           const Point& v) const;
  virtual std::optional<Point> tangent_difference(const Point& x,
                                                  const Point& u,
                                                  const Point& v) const;
  virtual std::optional<Point> tangent_inverse(const Point& x,
                                               const Point& u) const;

  /// Extended-precision dilations, when the instance provides them.
  virtual const ExtendedDilations* extended() const { return nullptr; }

 protected:
  DilatationStructure(double radius_a, double radius_b);

  /// Half widths of a coordinate box containing the d-ball of radius r.
  virtual Point box_half_widths(const Point& center, double r) const;

 private:
  double radius_a_;
  double radius_b_;
};

using StructurePtr = std::shared_ptr<const DilatationStructure>;

}  // namespace dilatlab
