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

#include <CLI11.hpp>
#include <iostream>

#include "commands.hpp"
#include "dilatlab/error.hpp"

using namespace dilatlab::cli;

namespace {

void add_common(CLI::App* app, Common& c) {
  app->add_option("--seed", c.seed, "Sampling seed (default: $DILATLAB_SEED or 0)");
  app->add_option("--samples", c.samples, "Samples per check")->check(CLI::PositiveNumber);
  app->add_option("--radius", c.radius, "Sample radius (default 0.2 A)");
  app->add_flag("--json", c.json, "Machine-readable output");
  app->add_flag("--quiet", c.quiet, "Only the exit code");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dilatlab: dilatation structures, conical groups and their defects"};
  app.require_subcommand(1);

  Common common;
  try {
    common.seed = default_seed();
  } catch (const dilatlab::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kBadArgs;
  }

  std::string id, defect = "a3", grid, out, at, u, v, from, to, x, y;
  int segments = 64, iterations = 200;
  bool rational = false;

  auto* list = app.add_subcommand("list", "Registered structures and groups");
  add_common(list, common);

  auto* verify = app.add_subcommand("verify", "Identity suite and axiom sweeps");
  verify->add_option("id", id, "Structure id")->required();
  add_common(verify, common);

  auto* sweep = app.add_subcommand("sweep", "One defect over an epsilon grid");
  sweep->add_option("id", id, "Structure id")->required();
  sweep->add_option("--defect", defect, "a3, a4, cone, tangent-metric, inflin, embed or diff");
  sweep->add_option("--grid", grid, "start,ratio,count");
  sweep->add_option("--out", out, "Write OUT.csv and OUT.json");
  add_common(sweep, common);

  auto* tangent = app.add_subcommand("tangent", "Tangent distance and operations at a point");
  tangent->add_option("id", id, "Structure id")->required();
  tangent->add_option("--at", at, "Base point (default: the structure's center)");
  tangent->add_option("--u", u, "First point")->required();
  tangent->add_option("--v", v, "Second point")->required();
  tangent->add_option("--grid", grid, "start,ratio,count");
  add_common(tangent, common);

  auto* ccdist = app.add_subcommand("ccdist", "Carnot-Caratheodory distance bounds");
  ccdist->add_option("group", id, "Carnot group id")->required();
  ccdist->add_option("--from", from, "Start point (default e)");
  ccdist->add_option("--to", to, "End point")->required();
  ccdist->add_option("--K", segments, "Path segments")->check(CLI::PositiveNumber);
  ccdist->add_option("--iterations", iterations, "Gradient steps per penalty round")
      ->check(CLI::PositiveNumber);
  add_common(ccdist, common);

  auto* bch = app.add_subcommand("bch", "Group product in exponential coordinates");
  bch->add_option("group", id, "Carnot group id")->required();
  bch->add_option("--x", x, "Left factor")->required();
  bch->add_option("--y", y, "Right factor")->required();
  bch->add_flag("--rational", rational, "Exact rational arithmetic");
  add_common(bch, common);

  auto* decompose = app.add_subcommand("decompose", "Generator word for a group element");
  decompose->add_option("group", id, "Carnot group id")->required();
  decompose->add_option("--x", x, "Group element")->required();
  add_common(decompose, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kBadArgs;
  }

  std::optional<dilatlab::GridSpec> grid_spec;
  if (!grid.empty()) {
    try {
      grid_spec = parse_grid(grid);
    } catch (const dilatlab::Error& e) {
      std::cerr << "error: " << e.what() << '\n';
      return kBadArgs;
    }
  }

  if (*list) return cmd_list(common, std::cout);
  if (*verify) return cmd_verify(id, common, std::cout, std::cerr);
  if (*sweep) return cmd_sweep(id, SweepArgs{defect, grid_spec, out}, common, std::cout, std::cerr);
  if (*tangent) {
    return cmd_tangent(id, TangentArgs{at, u, v, grid_spec}, common, std::cout, std::cerr);
  }
  if (*ccdist) {
    return cmd_ccdist(id, CcArgs{from, to, segments, iterations}, common, std::cout, std::cerr);
  }
  if (*bch) return cmd_bch(id, x, y, rational, common, std::cout, std::cerr);
  if (*decompose) return cmd_decompose(id, x, common, std::cout, std::cerr);
  return kBadArgs;
}
