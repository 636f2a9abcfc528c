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

// Truncated cavity (x) two-level-system state space and the dense operator
// algebra on it. Factor ordering is cavity (x) TLS everywhere: the composite
// basis index is 2*n + t with n the photon number and t = 0 (g), 1 (e).

#include <complex>
#include <functional>

#include <Eigen/Dense>

namespace rabistat {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr Complex kI{0.0, 1.0};

// Frobenius-norm tolerance for accepting an input as Hermitian.
inline constexpr double kHermitianTolerance = 1e-10;

struct HilbertDims {
  int n_fock = 10;
  static constexpr int n_tls = 2;

  constexpr int total() const { return n_fock * n_tls; }

  // Throws invalid_truncation for n_fock < 2.
  static HilbertDims make(int n_fock);

  friend bool operator==(const HilbertDims&, const HilbertDims&) = default;
};

// Which orthonormal basis a matrix is written in. `energy` is the eigenbasis
// of a specific EigenSystem; converting requires that EigenSystem.
enum class Frame { bare, energy };

struct Operator {
  HilbertDims dims;
  Matrix data;
  Frame frame = Frame::bare;

  Operator adjoint() const { return {dims, data.adjoint(), frame}; }
};

Operator operator*(const Operator& lhs, const Operator& rhs);
Operator operator+(const Operator& lhs, const Operator& rhs);
Operator operator-(const Operator& lhs, const Operator& rhs);
Operator operator*(Complex scale, const Operator& op);

struct DensityMatrix {
  HilbertDims dims;
  Matrix data;
  Frame frame = Frame::bare;
  double residual = 0.0;        // ||L rho|| of the producing solve, 0 if not solved
  double min_eigenvalue = 0.0;  // of the Hermitized matrix

  Complex element(int row, int col) const { return data(row, col); }
};

// Cavity-factor annihilation operator, n_fock x n_fock.
Matrix annihilation(int n_fock);

enum class Pauli { z, y, lower };

// TLS-factor operator in the (g, e) basis with sigma = |g><e|,
// sigma_z = sigma^dag sigma - sigma sigma^dag, sigma_y = i (sigma^dag - sigma).
Matrix pauli(Pauli which);

Matrix kron(const Matrix& lhs, const Matrix& rhs);

// cavity (x) tls, validated against the factor sizes.
Operator tensor(const Matrix& cavity, const Matrix& tls);

Matrix identity(int n);

enum class HermitianFn { cos, sin, exp_scaled };

// f(A) through the eigendecomposition of a Hermitian A. exp_scaled is
// exp(scale * x). Throws not_hermitian when ||A - A^dag||_F > 1e-10.
Matrix hermitian_function(const Matrix& a, HermitianFn f, double scale = 1.0);
Matrix hermitian_function(const Matrix& a, const std::function<double(double)>& f);

double hermiticity_defect(const Matrix& a);

// trace(O rho); both must be written in the same frame.
Complex expect(const Operator& op, const DensityMatrix& rho);

DensityMatrix pure_state(HilbertDims dims, const Vector& psi, Frame frame = Frame::bare);
Vector basis_state(HilbertDims dims, int photons, int tls);

// Embedded bare operators used throughout.
struct BareOperators {
  Operator a;        // a (x) I
  Operator sigma;    // I (x) sigma
  Operator number;   // a^dag a (x) I
  Operator sigma_z;  // I (x) sigma_z
  Operator sigma_y;  // I (x) sigma_y
  Operator identity;
};

BareOperators bare_operators(HilbertDims dims);

}  // namespace rabistat
