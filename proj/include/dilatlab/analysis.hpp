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
#include <iosfwd>
#include <json.hpp>
#include <string>
#include <utility>
#include <vector>

#include "dilatlab/operations.hpp"

namespace dilatlab {

/// Defect sweeps over a geometric scale grid.
enum class Defect { a3, a4, cone, tangent_metric, inflin, embed, diff };

Defect parse_defect(const std::string& name);
const char* to_string(Defect d);

struct SweepConfig {
  /// Empty means the structure's default center.
  Point center;
  /// 0 means 0.2 A.
  double radius = 0.0;
  int samples = 64;
  std::uint64_t seed = 0;
  GridSpec grid;
  Tolerances tol;
};

/// Grid used when the caller does not pick one: 0.5^k, k = 1..16, except
/// for inflin where k = 6..14.
GridSpec default_grid(Defect d);

struct SweepReport {
  std::string suite;
  std::string structure;
  std::uint64_t seed = 0;
  std::vector<double> grid;
  std::vector<double> defects;
  /// NaN when every defect sits below the noise floor.
  double order = 0.0;
  double residual = 0.0;
  bool noise = false;
  /// "exact", "convergent" or "fail".
  std::string verdict;
  int skipped = 0;
  /// Samples whose tangent distance estimate was flagged degenerate.
  int degenerate = 0;
  /// "double", or "extended" when the structure's extended dilations were used.
  std::string precision = "double";

  bool pass() const { return verdict != "fail"; }
};

/// Least-squares fit plus verdict: exact when every defect is within the
/// exact tolerance (widened by the 1/eps rounding amplification), convergent
/// when the tail does not increase, the order is positive and the last
/// defect is at most 0.1 of the largest.
void finish_report(SweepReport& r, const Tolerances& tol);

SweepReport axiom3_sweep(const DilatationStructure& s, const SweepConfig& cfg);
SweepReport axiom4_sweep(const DilatationStructure& s, const SweepConfig& cfg);
SweepReport cone_sweep(const DilatationStructure& s, const SweepConfig& cfg);
SweepReport tangent_metric_sweep(const DilatationStructure& s, const SweepConfig& cfg);
/// Verdict: exact, or strictly decreasing over the last half of the grid
/// with the last value at most 0.1 of the first.
SweepReport inflin_sweep(const DilatationStructure& s, const SweepConfig& cfg);
SweepReport embed_sweep(const DilatationStructure& s, const SweepConfig& cfg);

/// Sweep by name; diff uses the structure's built-in test map.
SweepReport run_sweep(const DilatationStructure& s, Defect d, const SweepConfig& cfg);

/// sup_n |phi_eps,n(u) - phi_n(u)| for the landmark embedding.
double embedding_defect(const DilatationStructure& s, const Point& x,
                        const std::vector<Point>& landmarks, const Scale& eps,
                        const Point& u);

struct DiffOptions {
  /// Sample u in the ball of radius eps instead of the fixed working ball.
  bool shrink_ball = false;
};

/// D(eps) = sup_u (1/eps) d_T(f(delta^x_eps u), delta^{f(x)}_eps Q(u)).
SweepReport diff_sweep(const PointMap& f, const PointMap& q,
                       const DilatationStructure& s, const DilatationStructure& t,
                       const SweepConfig& cfg, DiffOptions options = {});

struct TestMap {
  std::string name;
  PointMap f;
  PointMap q;
};

/// The map `sweep --defect diff` uses on a structure: a smooth non-affine map
/// with its affine part at the center on euclidean:n, the rotation
/// automorphism on Heisenberg, the identity elsewhere.
TestMap builtin_test_map(const DilatationStructure& s, const Point& center);

struct IdentityReport {
  std::string structure;
  std::uint64_t seed = 0;
  int samples = 0;
  int skipped = 0;
  /// Max residual per identity, in a fixed order.
  std::vector<std::pair<std::string, double>> residuals;

  double max_residual() const;
  bool pass(double tol) const { return max_residual() <= tol; }
};

/// A0-A2, the six algebraic identities of the induced operations, metric
/// axioms and the shift isometry, over seeded samples. Point residuals are
/// coordinate distances.
IdentityReport identity_suite(const DilatationStructure& s, std::uint64_t seed,
                              int count, double radius = 0.0);

nlohmann::json to_json(const SweepReport& r);
nlohmann::json to_json(const IdentityReport& r);
void write_csv(std::ostream& out, const SweepReport& r);

}  // namespace dilatlab
