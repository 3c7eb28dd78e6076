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
#include <optional>
#include <string>

#include "dilatlab/scale.hpp"

namespace dilatlab::cli {

enum ExitCode { kPass = 0, kFail = 1, kBadArgs = 2, kIo = 3, kUnsupported = 4 };

struct Common {
  std::uint64_t seed = 0;
  int samples = 256;
  /// 0 means 0.2 A.
  double radius = 0.0;
  bool json = false;
  bool quiet = false;
};

/// DILATLAB_SEED, or 0 when unset.
std::uint64_t default_seed();

int cmd_list(const Common& c, std::ostream& out);
int cmd_verify(const std::string& id, const Common& c, std::ostream& out, std::ostream& err);

struct SweepArgs {
  std::string defect = "a3";
  std::optional<GridSpec> grid;
  /// Writes <out>.csv and <out>.json when set.
  std::string out;
};
int cmd_sweep(const std::string& id, const SweepArgs& a, const Common& c, std::ostream& out,
              std::ostream& err);

struct TangentArgs {
  std::string at, u, v;
  std::optional<GridSpec> grid;
};
int cmd_tangent(const std::string& id, const TangentArgs& a, const Common& c,
                std::ostream& out, std::ostream& err);

struct CcArgs {
  std::string from, to;
  int segments = 64;
  int iterations = 200;
};
int cmd_ccdist(const std::string& group, const CcArgs& a, const Common& c, std::ostream& out,
               std::ostream& err);

int cmd_bch(const std::string& group, const std::string& x, const std::string& y,
            bool rational, const Common& c, std::ostream& out, std::ostream& err);
int cmd_decompose(const std::string& group, const std::string& x, const Common& c,
                  std::ostream& out, std::ostream& err);

/// "start,ratio,count".
GridSpec parse_grid(const std::string& text);

}  // namespace dilatlab::cli
