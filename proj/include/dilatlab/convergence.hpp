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

#include <span>

namespace dilatlab {

struct OrderFit {
  /// Least-squares slope of log D against log eps.
  double order = 0.0;
  /// RMS of the log-space fit errors.
  double residual = 0.0;
  int points = 0;
};

/// Fits D(eps) ~ C eps^p over the samples whose defect exceeds `noise_floor`.
/// Throws Error(noise_floor) when fewer than two samples are above it.
OrderFit fit_order(std::span<const double> eps, std::span<const double> defects,
                   double noise_floor = 1e-13);

}  // namespace dilatlab
