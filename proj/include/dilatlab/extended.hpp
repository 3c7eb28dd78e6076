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

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <vector>

#include "dilatlab/point.hpp"

namespace dilatlab {

/// 50 significant decimal digits.
using Extended = boost::multiprecision::cpp_bin_float_50;
using ExtendedPoint = std::vector<Extended>;

ExtendedPoint to_extended(const Point& p);
Point to_double(const ExtendedPoint& p);

/// Dilations and distance of a structure evaluated in extended precision.
///
/// Lin(x, delta^x_eps y, delta^x_eps z; eps, eps) / eps^2 divides rounding by
/// eps^2, so in double it is swamped long before the defect itself vanishes.
/// No domain checks are made here.
class ExtendedDilations {
 public:
  virtual ~ExtendedDilations() = default;
  virtual ExtendedPoint dilate(const ExtendedPoint& x, const Extended& eps,
                               const ExtendedPoint& y) const = 0;
  virtual Extended distance(const ExtendedPoint& u,
                            const ExtendedPoint& v) const = 0;
};

Extended lin_defect(const ExtendedDilations& s, const ExtendedPoint& x,
                    const ExtendedPoint& y, const ExtendedPoint& z,
                    const Extended& eps, const Extended& mu);

}  // namespace dilatlab
