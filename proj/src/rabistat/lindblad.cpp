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

#include "rabistat/lindblad.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>
#include <string>

#include <unsupported/Eigen/MatrixFunctions>

#include "rabistat/error.hpp"

namespace rabistat {

namespace {

void require_same_space(const SuperOperator& l, const Operator& op, const char* what) {
  if (!(op.dims == l.dims) || op.frame != l.frame) {
    throw Error(ErrorCode::dimension_mismatch, std::string(what) + ": operator does not match the Liouvillian space");
  }
}

Matrix basis_change(const Matrix& v) { return kron(v.conjugate(), v); }

}  // namespace

Vector vec(const Matrix& m) { return Eigen::Map<const Vector>(m.data(), m.size()); }

Matrix unvec(const Vector& v, int d) {
  if (v.size() != static_cast<Eigen::Index>(d) * d) throw Error(ErrorCode::dimension_mismatch, "unvec: size");
  return Eigen::Map<const Matrix>(v.data(), d, d);
}

SuperOperator dissipator(const Operator& op) {
  const int d = op.dims.total();
  const Matrix id = identity(d);
  const Matrix odo = op.data.adjoint() * op.data;
  Matrix data = 2.0 * kron(op.data.conjugate(), op.data) - kron(id, odo) - kron(odo.transpose(), id);
  return {op.dims, std::move(data), op.frame};
}

SuperOperator commutator_part(const Operator& h) {
  const int d = h.dims.total();
  const Matrix id = identity(d);
  Matrix data = -kI * (kron(id, h.data) - kron(h.data.transpose(), id));
  return {h.dims, std::move(data), h.frame};
}

SuperOperator liouvillian(const Operator& h, std::span<const Channel> channels) {
  SuperOperator l = commutator_part(h);
  for (const auto& ch : channels) {
    if (!(ch.jump.dims == h.dims) || ch.jump.frame != h.frame) {
      throw Error(ErrorCode::dimension_mismatch, "jump operator does not match the Hamiltonian space");
    }
    if (ch.rate < 0.0) throw Error(ErrorCode::invalid_parameter, "negative dissipation rate");
    if (ch.rate == 0.0) continue;
    l.data += 0.5 * ch.rate * dissipator(ch.jump).data;
  }
  return l;
}

SuperOperator liouvillian_qrm(const SystemParams& p, const DressedOperators& d) {
  p.validate();
  if (!d.eigensystem) throw Error(ErrorCode::invalid_parameter, "dressed operators carry no eigensystem");
  if (!(d.eigensystem->dims == p.dims())) {
    throw Error(ErrorCode::dimension_mismatch, "dressed operators built for a different truncation");
  }
  const Operator h = d.eigensystem->hamiltonian();
  const Channel channels[] = {{p.Gamma, d.x_sigma.adjoint()}, {p.gamma, d.x_sigma}, {p.kappa, d.x_a}};
  return liouvillian(h, channels);
}

SuperOperator liouvillian_jcm(const SystemParams& p) {
  const auto ops = bare_operators(p.dims());
  const Channel channels[] = {{p.Gamma, ops.sigma.adjoint()}, {p.gamma, ops.sigma}, {p.kappa, ops.a}};
  return liouvillian(build_jcm(p), channels);
}

Matrix apply(const SuperOperator& l, const Matrix& rho) {
  const int d = l.hilbert_dim();
  if (rho.rows() != d || rho.cols() != d) throw Error(ErrorCode::dimension_mismatch, "apply: state size");
  return unvec(l.data * vec(rho), d);
}

double trace_preservation_defect(const SuperOperator& l) {
  const int d = l.hilbert_dim();
  Eigen::RowVectorXcd row = Eigen::RowVectorXcd::Zero(d * d);
  for (int i = 0; i < d; ++i) row(i * d + i) = 1.0;
  return (row * l.data).norm();
}

std::pair<double, double> smallest_singular_values(const SuperOperator& l) {
  Eigen::BDCSVD<Matrix> svd(l.data);
  const auto& s = svd.singularValues();
  const Eigen::Index n = s.size();
  if (n < 2) return {s(n - 1), s(n - 1)};
  return {s(n - 1), s(n - 2)};
}

DensityMatrix steady_state(const SuperOperator& l, const SteadyStateOptions& options) {
  const int d = l.hilbert_dim();
  const int dd = d * d;
  if (l.data.rows() != dd || l.data.cols() != dd) throw Error(ErrorCode::dimension_mismatch, "Liouvillian size");

  if (options.check_uniqueness) {
    const auto [s1, s2] = smallest_singular_values(l);
    // A second null direction at rounding level hides behind an exactly zero s1.
    const double floor = 1e3 * std::numeric_limits<double>::epsilon() * l.data.norm();
    if (s2 < options.uniqueness_ratio * s1 || s2 <= floor) {
      std::ostringstream msg;
      msg << "Liouvillian null space looks degenerate (singular values " << s1 << ", " << s2 << ")";
      throw Error(ErrorCode::non_unique_steady_state, msg.str());
    }
  }

  Matrix a = l.data;
  a.row(0).setZero();
  for (int i = 0; i < d; ++i) a(0, i * d + i) = 1.0;
  Vector rhs = Vector::Zero(dd);
  rhs(0) = 1.0;
  const Vector v = Eigen::PartialPivLU<Matrix>(a).solve(rhs);
  if (!v.allFinite()) throw Error(ErrorCode::non_unique_steady_state, "steady-state system is singular");

  Matrix rho = unvec(v, d);
  rho = 0.5 * (rho + rho.adjoint()).eval();
  rho /= rho.trace();

  DensityMatrix out{l.dims, rho, l.frame, 0.0, 0.0};
  out.residual = (l.data * vec(rho)).norm();
  Eigen::SelfAdjointEigenSolver<Matrix> eig(rho, Eigen::EigenvaluesOnly);
  out.min_eigenvalue = eig.eigenvalues()(0);
  if (out.min_eigenvalue < options.positivity_floor) {
    throw Error(ErrorCode::positivity_violation,
                "steady state has eigenvalue " + std::to_string(out.min_eigenvalue));
  }
  return out;
}

ModeDecomposition decompose(const SuperOperator& l) {
  Eigen::ComplexEigenSolver<Matrix> solver(l.data);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::eigensolver_failure, "Liouvillian eigendecomposition did not converge");
  }
  ModeDecomposition m;
  m.lambda = solver.eigenvalues();
  m.right = solver.eigenvectors();
  Eigen::PartialPivLU<Matrix> lu(m.right);
  m.right_inverse = lu.inverse();
  m.condition = m.right.cwiseAbs().colwise().sum().maxCoeff() * m.right_inverse.cwiseAbs().colwise().sum().maxCoeff();
  if (!m.right_inverse.allFinite()) m.condition = std::numeric_limits<double>::infinity();
  m.lambda.cwiseAbs().minCoeff(&m.zero_mode);
  return m;
}

const char* to_string(CorrelatorPath path) noexcept {
  switch (path) {
    case CorrelatorPath::eigen:
      return "eigen";
    case CorrelatorPath::propagation:
      return "propagation";
    case CorrelatorPath::resolvent:
      return "resolvent";
  }
  return "unknown";
}

std::vector<Complex> two_time_correlator(const ModeDecomposition& modes, const Operator& a, const Operator& b,
                                         const DensityMatrix& rho, std::span<const double> taus) {
  const Vector coef = modes.right_inverse * vec(b.data * rho.data);
  const Eigen::RowVectorXcd weights = vec(a.data.transpose()).transpose() * modes.right;
  const Vector p = weights.transpose().cwiseProduct(coef);
  std::vector<Complex> out;
  out.reserve(taus.size());
  for (const double tau : taus) {
    out.push_back((p.array() * (modes.lambda.array() * tau).exp()).sum());
  }
  return out;
}

Correlator two_time_correlator(const SuperOperator& l, const Operator& a, const Operator& b,
                               const DensityMatrix& rho, std::span<const double> taus) {
  require_same_space(l, a, "correlator");
  require_same_space(l, b, "correlator");
  if (rho.frame != l.frame || !(rho.dims == l.dims)) {
    throw Error(ErrorCode::dimension_mismatch, "correlator: state does not match the Liouvillian space");
  }
  for (std::size_t k = 0; k < taus.size(); ++k) {
    if (taus[k] < 0.0 || (k > 0 && taus[k] < taus[k - 1])) {
      throw Error(ErrorCode::invalid_parameter, "correlator delays must be nonnegative and ascending");
    }
  }
  const ModeDecomposition modes = decompose(l);
  if (modes.condition <= kDefectiveCondition) {
    return {two_time_correlator(modes, a, b, rho, taus), CorrelatorPath::eigen};
  }

  // Piecewise exact propagation; propagators cached by step length.
  const Eigen::RowVectorXcd f = vec(a.data.transpose()).transpose();
  Vector state = vec(b.data * rho.data);
  std::map<double, Matrix> propagators;
  Correlator out{{}, CorrelatorPath::propagation};
  double now = 0.0;
  for (const double tau : taus) {
    const double step = tau - now;
    if (step > 0.0) {
      auto it = propagators.find(step);
      if (it == propagators.end()) it = propagators.emplace(step, Matrix((l.data * step).exp())).first;
      state = it->second * state;
      now = tau;
    }
    out.values.push_back((f * state)(0));
  }
  return out;
}

SuperOperator to_bare(const SuperOperator& l, const EigenSystem& es) {
  if (l.frame == Frame::bare) return l;
  const Matrix u = basis_change(es.vectors);
  return {l.dims, u * l.data * u.adjoint(), Frame::bare};
}

SuperOperator to_energy(const SuperOperator& l, const EigenSystem& es) {
  if (l.frame == Frame::energy) return l;
  const Matrix u = basis_change(es.vectors);
  return {l.dims, u.adjoint() * l.data * u, Frame::energy};
}

}  // namespace rabistat
