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

#include <doctest.h>

#include <random>

#include "rabistat/error.hpp"
#include "rabistat/qstate.hpp"

#define CHECK_ERROR_CODE(expr, expected)                      \
  do {                                                        \
    bool thrown_ = false;                                     \
    try {                                                     \
      (void)(expr);                                           \
    } catch (const rabistat::Error& e) {                      \
      thrown_ = true;                                         \
      CHECK_MESSAGE(e.code() == (expected), e.what());        \
    }                                                         \
    CHECK_MESSAGE(thrown_, "expected an error from " #expr); \
  } while (false)

namespace testutil {

inline rabistat::Matrix random_matrix(std::mt19937_64& rng, int d) {
  std::normal_distribution<double> n;
  rabistat::Matrix m(d, d);
  for (int j = 0; j < d; ++j)
    for (int i = 0; i < d; ++i) m(i, j) = {n(rng), n(rng)};
  return m;
}

// Random full-rank density matrix.
inline rabistat::Matrix random_density(std::mt19937_64& rng, int d) {
  const rabistat::Matrix g = random_matrix(rng, d);
  rabistat::Matrix rho = g * g.adjoint();
  return rho / rho.trace();
}

inline double relative(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace testutil
