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

#include "dilatlab/scale.hpp"

#include <cmath>

#include "dilatlab/error.hpp"

namespace dilatlab {

Scale Scale::continuous(double value) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw Error(ErrorCode::invalid_argument, "scale valuation must be positive");
  }
  return Scale(value, ScaleKind::continuous, 0);
}

Scale Scale::dyadic(int exponent) {
  return Scale(std::ldexp(1.0, exponent), ScaleKind::dyadic, exponent);
}

Scale Scale::one(ScaleKind kind) {
  return kind == ScaleKind::dyadic ? dyadic(0) : continuous(1.0);
}

Scale Scale::inverse() const {
  if (kind_ == ScaleKind::dyadic) return dyadic(-exponent_);
  return continuous(1.0 / value_);
}

Scale Scale::operator*(const Scale& other) const {
  if (kind_ != other.kind_) {
    throw Error(ErrorCode::invalid_argument, "mixing dyadic and continuous scales");
  }
  if (kind_ == ScaleKind::dyadic) return dyadic(exponent_ + other.exponent_);
  return continuous(value_ * other.value_);
}

Scale ScaleGroup::make(double value) const {
  if (kind_ == ScaleKind::continuous) return Scale::continuous(value);
  if (!(value > 0.0)) {
    throw Error(ErrorCode::invalid_argument, "scale valuation must be positive");
  }
  int exponent = 0;
  double mantissa = std::frexp(value, &exponent);
  if (mantissa != 0.5) {
    throw Error(ErrorCode::invalid_argument,
                "dyadic scale must be a power of two");
  }
  return Scale::dyadic(exponent - 1);
}

std::vector<Scale> make_grid(const GridSpec& spec, ScaleKind kind) {
  if (spec.count < 1 || !(spec.ratio > 0.0 && spec.ratio < 1.0) ||
      !(spec.start > 0.0)) {
    throw Error(ErrorCode::invalid_argument,
                "grid needs count >= 1, ratio in (0,1) and start > 0");
  }
  ScaleGroup group(kind);
  std::vector<Scale> grid;
  grid.reserve(static_cast<std::size_t>(spec.count));
  Scale step = group.make(spec.ratio);
  Scale current = group.make(spec.start);
  for (int k = 0; k < spec.count; ++k) {
    grid.push_back(current);
    current = current * step;
  }
  return grid;
}

std::vector<double> grid_values(const std::vector<Scale>& grid) {
  std::vector<double> out;
  out.reserve(grid.size());
  for (const auto& s : grid) out.push_back(s.value());
  return out;
}

}  // namespace dilatlab
