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

#include <stdexcept>
#include <string>

namespace dilatlab {

enum class ErrorCode {
  out_of_domain,
  degenerate_tangent,
  no_convergence,
  no_invert,
  unsupported_variant,
  invalid_algebra,
  unknown_name,
  unsupported_step,
  noise_floor,
  not_converged,
  invalid_argument,
  io,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

  /// True for errors that mean "this sample left the working domain".
  bool is_domain_error() const noexcept {
    return code_ == ErrorCode::out_of_domain || code_ == ErrorCode::no_invert;
  }

 private:
  ErrorCode code_;
};

}  // namespace dilatlab
