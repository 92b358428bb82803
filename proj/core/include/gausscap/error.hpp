// Copyright 2026 The gausscap Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gausscap {

enum class ErrorCode {
  domain,              // argument outside the function's domain
  invalid_symplectic,  // |det S - 1| above tolerance
  degenerate,          // rank condition not met for the requested decomposition
  zero_matrix,
  invalid_channel,     // fails complete positivity
  unreducible,         // canonical reduction residual above tolerance
  class_mismatch,
  infeasible_energy,   // E below the vacuum floor
  infeasible_encoding,
  unsupported_class,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  [[nodiscard]] ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace gausscap
