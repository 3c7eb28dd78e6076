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

#include "dilatlab/convergence.hpp"

#include <cmath>
#include <vector>

#include "dilatlab/error.hpp"

namespace dilatlab {

OrderFit fit_order(std::span<const double> eps, std::span<const double> defects,
                   double noise_floor) {
  if (eps.size() != defects.size()) {
    throw Error(ErrorCode::invalid_argument, "fit_order: size mismatch");
  }
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < eps.size(); ++i) {
    if (defects[i] > noise_floor && eps[i] > 0.0) {
      xs.push_back(std::log(eps[i]));
      ys.push_back(std::log(defects[i]));
    }
  }
  if (xs.size() < 2) {
    throw Error(ErrorCode::noise_floor, "fewer than two defects above noise");
  }
  const double n = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  OrderFit fit;
  fit.points = static_cast<int>(xs.size());
  fit.order = sxx > 0.0 ? sxy / sxx : 0.0;
  const double intercept = my - fit.order * mx;
  double ss = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double r = ys[i] - (intercept + fit.order * xs[i]);
    ss += r * r;
  }
  fit.residual = std::sqrt(ss / n);
  return fit;
}

}  // namespace dilatlab
