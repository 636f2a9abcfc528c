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

#include "rabistat/qstate.hpp"

#include <cmath>
#include <string>

#include "rabistat/error.hpp"

namespace rabistat {

namespace {

void require_compatible(const Operator& lhs, const Operator& rhs, const char* what) {
  if (!(lhs.dims == rhs.dims) || lhs.data.rows() != rhs.data.rows()) {
    throw Error(ErrorCode::dimension_mismatch, std::string(what) + ": operand dimensions differ");
  }
  if (lhs.frame != rhs.frame) {
    throw Error(ErrorCode::dimension_mismatch, std::string(what) + ": operands live in different frames");
  }
}

}  // namespace

HilbertDims HilbertDims::make(int n_fock) {
  if (n_fock < 2) {
    throw Error(ErrorCode::invalid_truncation,
                "cavity truncation must be at least 2, got " + std::to_string(n_fock));
  }
  return HilbertDims{n_fock};
}

Operator operator*(const Operator& lhs, const Operator& rhs) {
  require_compatible(lhs, rhs, "operator product");
  return {lhs.dims, lhs.data * rhs.data, lhs.frame};
}

Operator operator+(const Operator& lhs, const Operator& rhs) {
  require_compatible(lhs, rhs, "operator sum");
  return {lhs.dims, lhs.data + rhs.data, lhs.frame};
}

Operator operator-(const Operator& lhs, const Operator& rhs) {
  require_compatible(lhs, rhs, "operator difference");
  return {lhs.dims, lhs.data - rhs.data, lhs.frame};
}

Operator operator*(Complex scale, const Operator& op) { return {op.dims, scale * op.data, op.frame}; }

Matrix annihilation(int n_fock) {
  HilbertDims::make(n_fock);
  Matrix a = Matrix::Zero(n_fock, n_fock);
  for (int n = 1; n < n_fock; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

Matrix pauli(Pauli which) {
  Matrix lower = Matrix::Zero(2, 2);
  lower(0, 1) = 1.0;
  switch (which) {
    case Pauli::lower:
      return lower;
    case Pauli::z:
      return lower.adjoint() * lower - lower * lower.adjoint();
    case Pauli::y:
      return kI * (lower.adjoint() - lower);
  }
  return lower;
}

Matrix kron(const Matrix& lhs, const Matrix& rhs) {
  const Eigen::Index rr = rhs.rows();
  const Eigen::Index rc = rhs.cols();
  Matrix out(lhs.rows() * rr, lhs.cols() * rc);
  for (Eigen::Index i = 0; i < lhs.rows(); ++i) {
    for (Eigen::Index j = 0; j < lhs.cols(); ++j) {
      out.block(i * rr, j * rc, rr, rc) = lhs(i, j) * rhs;
    }
  }
  return out;
}

Operator tensor(const Matrix& cavity, const Matrix& tls) {
  if (cavity.rows() != cavity.cols() || tls.rows() != tls.cols()) {
    throw Error(ErrorCode::dimension_mismatch, "tensor factors must be square");
  }
  if (tls.rows() != HilbertDims::n_tls) {
    throw Error(ErrorCode::dimension_mismatch,
                "TLS factor must be 2x2, got " + std::to_string(tls.rows()));
  }
  const auto dims = HilbertDims::make(static_cast<int>(cavity.rows()));
  return {dims, kron(cavity, tls), Frame::bare};
}

Matrix identity(int n) { return Matrix::Identity(n, n); }

double hermiticity_defect(const Matrix& a) { return (a - a.adjoint()).norm(); }

Matrix hermitian_function(const Matrix& a, const std::function<double(double)>& f) {
  if (a.rows() != a.cols()) throw Error(ErrorCode::dimension_mismatch, "matrix function needs a square input");
  const double defect = hermiticity_defect(a);
  if (defect > kHermitianTolerance) {
    throw Error(ErrorCode::not_hermitian,
                "matrix function input deviates from Hermitian by " + std::to_string(defect));
  }
  const Matrix sym = 0.5 * (a + a.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(sym);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::eigensolver_failure, "Hermitian eigensolver did not converge");
  }
  const Eigen::VectorXd& w = solver.eigenvalues();
  Eigen::VectorXd fw(w.size());
  for (Eigen::Index i = 0; i < w.size(); ++i) fw(i) = f(w(i));
  const Matrix& v = solver.eigenvectors();
  return v * fw.cast<Complex>().asDiagonal() * v.adjoint();
}

Matrix hermitian_function(const Matrix& a, HermitianFn f, double scale) {
  switch (f) {
    case HermitianFn::cos:
      return hermitian_function(a, [](double x) { return std::cos(x); });
    case HermitianFn::sin:
      return hermitian_function(a, [](double x) { return std::sin(x); });
    case HermitianFn::exp_scaled:
      return hermitian_function(a, [scale](double x) { return std::exp(scale * x); });
  }
  return a;
}

Complex expect(const Operator& op, const DensityMatrix& rho) {
  if (!(op.dims == rho.dims) || op.data.rows() != rho.data.rows()) {
    throw Error(ErrorCode::dimension_mismatch, "expectation value: operator and state dimensions differ");
  }
  if (op.frame != rho.frame) {
    throw Error(ErrorCode::dimension_mismatch, "expectation value: operator and state live in different frames");
  }
  // trace(O rho) without forming the product.
  return (op.data.transpose().cwiseProduct(rho.data)).sum();
}

DensityMatrix pure_state(HilbertDims dims, const Vector& psi, Frame frame) {
  if (psi.size() != dims.total()) throw Error(ErrorCode::dimension_mismatch, "state vector size");
  const Vector unit = psi / psi.norm();
  return {dims, unit * unit.adjoint(), frame, 0.0, 0.0};
}

Vector basis_state(HilbertDims dims, int photons, int tls) {
  if (photons < 0 || photons >= dims.n_fock || tls < 0 || tls > 1) {
    throw Error(ErrorCode::dimension_mismatch, "basis state outside the truncated space");
  }
  Vector psi = Vector::Zero(dims.total());
  psi(2 * photons + tls) = 1.0;
  return psi;
}

BareOperators bare_operators(HilbertDims dims) {
  const Matrix a = annihilation(dims.n_fock);
  const Matrix i_cav = identity(dims.n_fock);
  const Matrix i_tls = identity(2);
  return BareOperators{
      tensor(a, i_tls),
      tensor(i_cav, pauli(Pauli::lower)),
      tensor(a.adjoint() * a, i_tls),
      tensor(i_cav, pauli(Pauli::z)),
      tensor(i_cav, pauli(Pauli::y)),
      tensor(i_cav, i_tls),
  };
}

}  // namespace rabistat
