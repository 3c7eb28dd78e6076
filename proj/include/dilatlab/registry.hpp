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

#include <string>
#include <string_view>
#include <vector>

#include "dilatlab/carnot.hpp"
#include "dilatlab/conical.hpp"
#include "dilatlab/structure.hpp"

namespace dilatlab {

/// Builds a registered structure from its id; throws Error(unknown_name)
/// for ids that do not parse.
///
///   euclidean:N                      affine R^N
///   chart:2, chart:N:ETA:SEED        chart-perturbed R^N
///   conical:heisenberg[:NORM]        Heisenberg, Koranyi norm by default
///   conical:abelian:N[:NORM]
///   conical:engel[:NORM]             layer-quasi norm by default
///   gwd:heisenberg-isotropic
///   contraction:diag:A,B,...         dyadic, alpha = diag(A, B, ...)
///   contraction:matrix:FILE          dyadic, alpha read from JSON
///   shifted:MU:BASE                  shifted structure of BASE at its
///                                    default center
StructurePtr make_structure(std::string_view id);

/// Group behind a conical or gwd id, for the group-level estimators.
GroupPtr make_group(std::string_view id);

/// Representative ids for `list`.
std::vector<std::string> registered_examples();

}  // namespace dilatlab
