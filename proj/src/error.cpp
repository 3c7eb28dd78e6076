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

#include "dilatlab/error.hpp"

namespace dilatlab {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::out_of_domain: return "OutOfDomain";
    case ErrorCode::degenerate_tangent: return "DegenerateTangent";
    case ErrorCode::no_convergence: return "NoConvergence";
    case ErrorCode::no_invert: return "NoInvert";
    case ErrorCode::unsupported_variant: return "UnsupportedVariant";
    case ErrorCode::invalid_algebra: return "InvalidAlgebra";
    case ErrorCode::unknown_name: return "UnknownName";
    case ErrorCode::unsupported_step: return "UnsupportedStep";
    case ErrorCode::noise_floor: return "NoiseFloor";
    case ErrorCode::not_converged: return "NotConverged";
    case ErrorCode::invalid_argument: return "InvalidArgument";
    case ErrorCode::io: return "IOError";
  }
  return "Error";
}

}  // namespace dilatlab
