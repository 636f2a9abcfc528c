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

// Dressed (positive-frequency) jump operators built in the energy eigenbasis.

#include "rabistat/models.hpp"

namespace rabistat {

// Transition weight w(omega_nu - omega_mu) applied to each lowering element.
enum class GapWeight { one, gap, gap_squared };

// Energy gaps closer than this count as degenerate and are dropped.
inline constexpr double kDressingGapTolerance = 1e-12;

// X = sum_{w_nu > w_mu} w(gap) |mu><mu|O|nu><nu|, returned in Frame::energy
// of `es`. weight: 1, -i*gap, -gap^2. O may be given in either frame.
Operator dress_positive_frequency(const Operator& op, const EigenSystem& es, GapWeight weight = GapWeight::one);

struct DressedOperators {
  EigenSystemPtr eigensystem;
  Operator x_a;       // from i(a^dag - a)
  Operator x_sigma;   // from sigma^dag + sigma
  Operator x_a_dot;
  Operator x_a_ddot;
};

DressedOperators dress(EigenSystemPtr es);

enum class Direction { forward, adjoint };

// |<to| X |from>|^2, or with X^dag for Direction::adjoint.
double transition_strength(const Operator& x, const PolaritonLabel& from, const PolaritonLabel& to,
                           const EigenSystem& es, Direction direction = Direction::forward);

}  // namespace rabistat
