// Copyright 2026 The rabistat Authors
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

namespace rabistat {

enum class ErrorCode {
  invalid_truncation,
  invalid_parameter,
  dimension_mismatch,
  not_hermitian,
  labeling_ambiguity,
  unknown_label,
  non_unique_steady_state,
  positivity_violation,
  no_emission,
  empty_truncation,
  missing_labels,
  degenerate_parameters,
  thermal_normalization,
  eigensolver_failure,
  invalid_spec,
  io,
};

const char* to_string(ErrorCode code) noexcept;

// Numerical failures (exit code 2 at the CLI) as opposed to bad input.
bool is_numerical(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace rabistat
