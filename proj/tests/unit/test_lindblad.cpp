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

#include <unsupported/Eigen/MatrixFunctions>

#include <memory>

#include "rabistat/dressed.hpp"
#include "rabistat/observables.hpp"
#include "support.hpp"

using namespace rabistat;

namespace {

SystemParams params(double eta, double ratio, int n_fock = 10) {
  SystemParams p;
  p.eta = eta;
  p.n_fock = n_fock;
  p.Gamma = ratio * p.gamma;
  return p;
}

struct QrmCase {
  SystemParams p;
  DressedOperators d;
  SuperOperator l;
};

QrmCase qrm_case(double eta, double ratio, int n_fock = 10) {
  const SystemParams p = params(eta, ratio, n_fock);
  auto es = std::make_shared<const EigenSystem>(labeled_eigensystem(Model::qrm, p));
  DressedOperators d = dress(es);
  SuperOperator l = liouvillian_qrm(p, d);
  return {p, std::move(d), std::move(l)};
}

Matrix direct_rhs(const Matrix& h, std::span<const std::pair<double, Matrix>> channels, const Matrix& rho) {
  Matrix out = -kI * (h * rho - rho * h);
  for (const auto& [rate, o] : channels) {
    const Matrix od = o.adjoint();
    out += 0.5 * rate * (2.0 * o * rho * od - od * o * rho - rho * od * o);
  }
  return out;
}

Matrix sqrtm_psd(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(m);
  const Eigen::VectorXd w = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * w.asDiagonal() * es.eigenvectors().adjoint();
}

double fidelity(const Matrix& a, const Matrix& b) {
  const Matrix s = sqrtm_psd(a);
  const Matrix inner = s * b * s;
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (inner + inner.adjoint()));
  const double t = es.eigenvalues().cwiseMax(0.0).cwiseSqrt().sum();
  return t * t;
}

// Commutation matrix taking column-stacked vectors to row-stacked ones.
Matrix stacking_swap(int d) {
  Matrix k = Matrix::Zero(d * d, d * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) k(i * d + j, j * d + i) = 1.0;
  return k;
}

}  // namespace

TEST_SUITE("lindblad") {

TEST_CASE("column stacking convention") {
  std::mt19937_64 rng(3);
  const Matrix a = testutil::random_matrix(rng, 4), x = testutil::random_matrix(rng, 4), b = testutil::random_matrix(rng, 4);
  CHECK((vec(a * x * b) - kron(b.transpose(), a) * vec(x)).norm() < 1e-12);
  CHECK(vec(x)(1) == x(1, 0));
  CHECK((unvec(vec(x), 4) - x).norm() == 0.0);
}

TEST_CASE("superoperator matches the master equation on random states") {
  for (const double eta : {0.05, 0.5}) {
    const QrmCase c = qrm_case(eta, 1e-2, 6);
    const std::pair<double, Matrix> channels[] = {
        {c.p.Gamma, c.d.x_sigma.adjoint().data}, {c.p.gamma, c.d.x_sigma.data}, {c.p.kappa, c.d.x_a.data}};
    const Matrix h = c.d.eigensystem->hamiltonian().data;
    std::mt19937_64 rng(17);
    for (int i = 0; i < 20; ++i) {
      const Matrix rho = testutil::random_density(rng, 12);
      CHECK((apply(c.l, rho) - direct_rhs(h, channels, rho)).norm() < 1e-12);
    }
  }
  SystemParams p = params(0.3, 1.0, 6);
  const SuperOperator l = liouvillian_jcm(p);
  const BareOperators ops = bare_operators(p.dims());
  const std::pair<double, Matrix> channels[] = {
      {p.Gamma, ops.sigma.adjoint().data}, {p.gamma, ops.sigma.data}, {p.kappa, ops.a.data}};
  std::mt19937_64 rng(23);
  for (int i = 0; i < 20; ++i) {
    const Matrix rho = testutil::random_density(rng, 12);
    CHECK((apply(l, rho) - direct_rhs(build_jcm(p).data, channels, rho)).norm() < 1e-12);
  }
}

TEST_CASE("trace preservation") {
  CHECK(trace_preservation_defect(qrm_case(0.7, 1.0, 8).l) < 1e-10);
  CHECK(trace_preservation_defect(liouvillian_jcm(params(0.7, 1.0, 8))) < 1e-10);
}

TEST_CASE("steady states are physical") {
  for (const double eta : {1e-3, 0.05, 0.3, 1.0}) {
    for (const double ratio : {1e-6, 1e-3, 10.0}) {
      CAPTURE(eta);
      CAPTURE(ratio);
      const QrmCase c = qrm_case(eta, ratio);
      const DensityMatrix rho = steady_state(c.l);
      CHECK(rho.frame == Frame::energy);
      CHECK(hermiticity_defect(rho.data) < 1e-10);
      CHECK(std::abs(rho.data.trace() - 1.0) < 1e-12);
      CHECK(rho.min_eigenvalue > -1e-8);
      CHECK(apply(c.l, rho.data).norm() < 1e-10 * c.l.data.norm());
      const DensityMatrix j = steady_state(liouvillian_jcm(c.p));
      CHECK(j.frame == Frame::bare);
      CHECK(std::abs(j.data.trace() - 1.0) < 1e-12);
      CHECK(j.min_eigenvalue > -1e-8);
    }
  }
}

TEST_CASE("residual at the reference point") {
  const QrmCase c = qrm_case(0.3, 1e-3);
  const DensityMatrix rho = steady_state(c.l);
  CHECK(rho.residual < 1e-10 * c.l.data.norm());
}

TEST_CASE("row-stacked re-solve gives the same state") {
  for (const double eta : {0.01, 0.3}) {
    const QrmCase c = qrm_case(eta, 1e-3, 8);
    const DensityMatrix rho = steady_state(c.l);
    const int d = c.l.hilbert_dim();
    const Matrix k = stacking_swap(d);
    Matrix lr = k * c.l.data * k.transpose();
    Vector rhs = Vector::Zero(d * d);
    for (int j = 0; j < d * d; ++j) lr(0, j) = 0.0;
    for (int i = 0; i < d; ++i) lr(0, i * d + i) = 1.0;
    rhs(0) = 1.0;
    const Vector v = lr.fullPivLu().solve(rhs);
    Matrix other(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) other(i, j) = v(i * d + j);
    other = 0.5 * (other + other.adjoint());
    CHECK(fidelity(rho.data, other) > 1.0 - 1e-8);
  }
}

TEST_CASE("closed system has no unique steady state") {
  const Operator h = build_jcm(params(0.1, 0.0, 4));
  CHECK_ERROR_CODE(steady_state(liouvillian(h, {})), ErrorCode::non_unique_steady_state);
}

TEST_CASE("models converge at vanishing coupling") {
  const QrmCase c = qrm_case(1e-5, 1e-3, 6);
  const SuperOperator j = to_energy(liouvillian_jcm(c.p), *c.d.eigensystem);
  const SuperOperator q = c.l;
  // Compare the dissipative steady states, which are basis independent.
  const DensityMatrix rq = c.d.eigensystem->to_bare(steady_state(q));
  const DensityMatrix rj = steady_state(liouvillian_jcm(c.p));
  CHECK((rq.data - rj.data).norm() < 1e-3);
  CHECK((q.data - j.data).norm() / q.data.norm() < 1e-3);
}

TEST_CASE("superoperator frame change round trip") {
  const QrmCase c = qrm_case(0.4, 1.0, 5);
  const SuperOperator bare = to_bare(c.l, *c.d.eigensystem);
  CHECK(bare.frame == Frame::bare);
  CHECK((to_energy(bare, *c.d.eigensystem).data - c.l.data).norm() < 1e-10 * c.l.data.norm());
}

TEST_CASE("damped cavity correlator") {
  const int n0 = 3;
  const HilbertDims dims = HilbertDims::make(8);
  const BareOperators ops = bare_operators(dims);
  const double kappa = 0.05;
  const Channel channels[] = {{kappa, ops.a}};
  const SuperOperator l = liouvillian(ops.number, channels);
  const DensityMatrix rho = pure_state(dims, basis_state(dims, n0, 0));
  const std::vector<double> taus = {0.0, 1.0, 5.0, 20.0, 60.0};
  const Correlator c = two_time_correlator(l, ops.a.adjoint(), ops.a, rho, taus);
  for (std::size_t i = 0; i < taus.size(); ++i) {
    CHECK(std::abs(std::abs(c.values[i]) - n0 * std::exp(-0.5 * kappa * taus[i])) < 1e-10);
  }
}

TEST_CASE("mode expansion matches the matrix exponential") {
  const QrmCase c = qrm_case(0.3, 1e-1, 5);
  const DensityMatrix rho = steady_state(c.l);
  const std::vector<double> taus = {0.0, 3.0, 40.0};
  const Correlator fast = two_time_correlator(c.l, c.d.x_a.adjoint(), c.d.x_a, rho, taus);
  CHECK(fast.path == CorrelatorPath::eigen);
  const Vector b = vec(c.d.x_a.data * rho.data);
  for (std::size_t i = 0; i < taus.size(); ++i) {
    const Matrix prop = (c.l.data * taus[i]).exp();
    const Matrix out = unvec(prop * b, 10);
    const Complex ref = (c.d.x_a.adjoint().data * out).trace();
    CHECK(std::abs(fast.values[i] - ref) < 1e-10 * std::max(1.0, std::abs(ref)));
  }
}

TEST_CASE("high-precision reference steady states") {
  // Values from tests/oracles/steady_state_mp.py at 60 digits.
  struct Ref {
    Model model;
    int n;
    double eta, Gamma, g2;
  };
  const Ref refs[] = {
      {Model::jcm, 3, 1e-3, 1e-9, 0.014282245389260955},
      {Model::jcm, 4, 1e-6, 1e-8, 0.013245165724576529},
      {Model::jcm, 4, 0.5, 1e-8, 0.673812346319746},
      {Model::qrm, 4, 0.3, 1e-9, 139664.69192997121},
      {Model::qrm, 4, 0.025, 1e-9, 4.9850105350037009},
  };
  for (const Ref& r : refs) {
    CAPTURE(r.eta);
    SystemParams p = params(r.eta, 0.0, r.n);
    p.Gamma = r.Gamma;
    double g2 = 0.0;
    if (r.model == Model::jcm) {
      g2 = g2_zero(steady_state(liouvillian_jcm(p)), bare_operators(p.dims()).a);
    } else {
      const auto es = std::make_shared<const EigenSystem>(labeled_eigensystem(Model::qrm, p));
      const DressedOperators d = dress(es);
      g2 = g2_zero(steady_state(liouvillian_qrm(p, d)), d.x_a);
    }
    CHECK(testutil::relative(g2, r.g2) < 1e-8);
  }
  SystemParams p = params(1e-3, 0.0, 3);
  p.Gamma = 1e-9;
  const auto m = emission_moments(steady_state(liouvillian_jcm(p)), bare_operators(p.dims()).a);
  CHECK(testutil::relative(m.n1, 1.4524314517414754e-9) < 1e-8);
}

}
