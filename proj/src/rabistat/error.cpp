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

#include "rabistat/error.hpp"

namespace rabistat {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::invalid_truncation: return "invalid-truncation";
    case ErrorCode::invalid_parameter: return "invalid-parameter";
    case ErrorCode::dimension_mismatch: return "dimension-mismatch";
    case ErrorCode::not_hermitian: return "not-hermitian";
    case ErrorCode::labeling_ambiguity: return "labeling-ambiguity";
    case ErrorCode::unknown_label: return "unknown-label";
    case ErrorCode::non_unique_steady_state: return "non-unique-steady-state";
    case ErrorCode::positivity_violation: return "positivity-violation";
    case ErrorCode::no_emission: return "no-emission";
    case ErrorCode::empty_truncation: return "empty-truncation";
    case ErrorCode::missing_labels: return "missing-labels";
    case ErrorCode::degenerate_parameters: return "degenerate-parameters";
    case ErrorCode::thermal_normalization: return "thermal-normalization";
    case ErrorCode::eigensolver_failure: return "eigensolver-failure";
    case ErrorCode::invalid_spec: return "invalid-spec";
    case ErrorCode::io: return "io";
  }
  return "unknown";
}

bool is_numerical(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::labeling_ambiguity:
    case ErrorCode::non_unique_steady_state:
    case ErrorCode::positivity_violation:
    case ErrorCode::no_emission:
    case ErrorCode::degenerate_parameters:
    case ErrorCode::thermal_normalization:
    case ErrorCode::eigensolver_failure:
      return true;
    default:
      return false;
  }
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

}  // namespace rabistat
