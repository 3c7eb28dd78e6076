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


#include "dilatlab/extended.hpp"

namespace dilatlab {

ExtendedPoint to_extended(const Point& p) {
  return ExtendedPoint(p.begin(), p.end());
}

Point to_double(const ExtendedPoint& p) {
  Point out;
  out.reserve(p.size());
  for (const auto& c : p) out.push_back(static_cast<double>(c));
  return out;
}

Extended lin_defect(const ExtendedDilations& s, const ExtendedPoint& x,
                    const ExtendedPoint& y, const ExtendedPoint& z,
                    const Extended& eps, const Extended& mu) {
  const ExtendedPoint left = s.dilate(x, eps, s.dilate(y, mu, z));
  const ExtendedPoint right = s.dilate(s.dilate(x, eps, y), mu, s.dilate(x, eps, z));
  return s.distance(left, right);
}

}  // namespace dilatlab
