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

#include "dilatlab/structure.hpp"

#include "dilatlab/error.hpp"

namespace dilatlab {

DilatationStructure::DilatationStructure(double radius_a, double radius_b)
    : radius_a_(radius_a), radius_b_(radius_b) {
  if (!(radius_a > 1.0) || !(radius_b > 1.0) || radius_b > radius_a) {
    throw Error(ErrorCode::invalid_argument, "radii must satisfy 1 < B <= A");
  }
}

Point DilatationStructure::default_center() const {
  Point c(dim());
  for (std::size_t i = 0; i < c.size(); ++i) {
    c[i] = (i % 2 == 0 ? 0.1 : -0.1) * static_cast<double>(i + 1);
  }
  return c;
}

Point DilatationStructure::box_half_widths(const Point& /*center*/,
                                           double r) const {
  return Point(dim(), r);
}

Point DilatationStructure::sample_near(const Point& center, double r,
                                       Rng& rng) const {
  const Point half = box_half_widths(center, r);
  Point p(center.size());
  for (int attempt = 0; attempt < 100000; ++attempt) {
    for (std::size_t i = 0; i < p.size(); ++i) {
      p[i] = center[i] + rng.uniform(-half[i], half[i]);
    }
    if (distance(center, p) <= r) return p;
  }
  throw Error(ErrorCode::out_of_domain, "rejection sampling found no point in ball");
}

std::optional<double> DilatationStructure::tangent_distance(
    const Point&, const Point&, const Point&) const {
  return std::nullopt;
}

std::optional<Point> DilatationStructure::tangent_sum(const Point&,
                                                      const Point&,
                                                      const Point&) const {
  return std::nullopt;
}

std::optional<Point> DilatationStructure::tangent_difference(
    const Point&, const Point&, const Point&) const {
  return std::nullopt;
}

std::optional<Point> DilatationStructure::tangent_inverse(const Point&,
                                                          const Point&) const {
  return std::nullopt;
}

}  // namespace dilatlab
