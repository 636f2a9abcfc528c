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

// Liouvillian superoperators on column-stacked density matrices,
// vec(A X B) = (B^T (x) A) vec(X), their steady states and two-time correlators.

#include <span>
#include <vector>

#include "rabistat/dressed.hpp"

namespace rabistat {

struct SuperOperator {
  HilbertDims dims;
  Matrix data;  // total^2 x total^2
  Frame frame = Frame::bare;

  int hilbert_dim() const { return dims.total(); }
};

Vector vec(const Matrix& m);
Matrix unvec(const Vector& v, int d);

// rho -> 2 O rho O^dag - O^dag O rho - rho O^dag O, without the rate/2 factor.
SuperOperator dissipator(const Operator& op);

// -i[H, .]
SuperOperator commutator_part(const Operator& h);

struct Channel {
  double rate;
  Operator jump;
};

// -i[H, .] + sum rate/2 D_O.
SuperOperator liouvillian(const Operator& h, std::span<const Channel> channels);

// Energy frame: H diagonal, jumps (Gamma, x_sigma^dag), (gamma, x_sigma), (kappa, x_a).
SuperOperator liouvillian_qrm(const SystemParams& p, const DressedOperators& d);
// Bare frame: H_JC, jumps (Gamma, sigma^dag), (gamma, sigma), (kappa, a).
SuperOperator liouvillian_jcm(const SystemParams& p);

Matrix apply(const SuperOperator& l, const Matrix& rho);

// Row functional (ones at the diagonal slots) annihilating trace-preserving L.
double trace_preservation_defect(const SuperOperator& l);

struct SteadyStateOptions {
  bool check_uniqueness = true;
  double uniqueness_ratio = 1e3;     // sigma_2 / sigma_1 below this is degenerate
  double positivity_floor = -1e-8;
};

// LU solve of L rho = 0 with the first row replaced by the trace functional.
// Throws non_unique_steady_state, positivity_violation.
DensityMatrix steady_state(const SuperOperator& l, const SteadyStateOptions& options = {});

// Two smallest singular values of L, ascending.
std::pair<double, double> smallest_singular_values(const SuperOperator& l);

// Right eigenvectors R, L = R diag(lambda) R^{-1}.
struct ModeDecomposition {
  Vector lambda;
  Matrix right;
  Matrix right_inverse;
  double condition = 0.0;  // 2-norm condition estimate of `right`
  int zero_mode = 0;       // index of the eigenvalue of least magnitude
};

inline constexpr double kDefectiveCondition = 1e12;

ModeDecomposition decompose(const SuperOperator& l);

enum class CorrelatorPath { eigen, propagation, resolvent };

const char* to_string(CorrelatorPath path) noexcept;

struct Correlator {
  std::vector<Complex> values;
  CorrelatorPath path = CorrelatorPath::eigen;
};

// C(tau) = tr{A e^{L tau}(B rho)} for ascending tau >= 0.
Correlator two_time_correlator(const SuperOperator& l, const Operator& a, const Operator& b,
                               const DensityMatrix& rho, std::span<const double> taus);

// Same, reusing a decomposition (must be well conditioned).
std::vector<Complex> two_time_correlator(const ModeDecomposition& modes, const Operator& a, const Operator& b,
                                         const DensityMatrix& rho, std::span<const double> taus);

// Changes the basis of L with the eigensystem: energy <-> bare.
SuperOperator to_bare(const SuperOperator& l, const EigenSystem& es);
SuperOperator to_energy(const SuperOperator& l, const EigenSystem& es);

}  // namespace rabistat
