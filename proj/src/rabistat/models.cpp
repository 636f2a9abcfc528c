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

#include "rabistat/models.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "rabistat/error.hpp"

namespace rabistat {

namespace {

constexpr double kDegenerateGap = 1e-9;

void require_param(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::invalid_parameter, what);
}

// Relabels `next` from `prev` by maximal eigenvector overlap.
void inherit_labels(const EigenSystem& prev, EigenSystem& next, double margin) {
  const Eigen::MatrixXd overlap = (prev.vectors.adjoint() * next.vectors).cwiseAbs();
  const int d = next.size();
  std::vector<bool> taken(d, false);
  next.labels.assign(d, PolaritonLabel::ground());
  for (int j = 0; j < d; ++j) {
    int best = 0;
    double top = -1.0;
    double second = -1.0;
    for (int i = 0; i < d; ++i) {
      const double o = overlap(i, j);
      if (o > top) {
        second = top;
        top = o;
        best = i;
      } else if (o > second) {
        second = o;
      }
    }
    if (top - second < margin || taken[best]) {
      throw Error(ErrorCode::labeling_ambiguity,
                  "cannot track state " + std::to_string(j) + " at eta=" + std::to_string(next.eta) +
                      " (overlaps " + std::to_string(top) + " vs " + std::to_string(second) + ")");
    }
    taken[best] = true;
    next.labels[j] = prev.labels[best];
  }
}

}  // namespace

void SystemParams::validate() const {
  HilbertDims::make(n_fock);
  require_param(std::isfinite(omega0) && omega0 > 0.0, "omega0 must be positive");
  require_param(std::isfinite(eta) && eta >= 0.0, "eta must be nonnegative");
  require_param(std::isfinite(kappa) && kappa >= 0.0, "kappa must be nonnegative");
  require_param(std::isfinite(gamma) && gamma >= 0.0, "gamma must be nonnegative");
  require_param(std::isfinite(Gamma) && Gamma >= 0.0, "Gamma must be nonnegative");
}

Model parse_model(std::string_view name) {
  if (name == "qrm") return Model::qrm;
  if (name == "jcm") return Model::jcm;
  throw Error(ErrorCode::invalid_parameter, "unknown model '" + std::string(name) + "'");
}

const char* to_string(Model model) noexcept { return model == Model::qrm ? "qrm" : "jcm"; }

PolaritonLabel PolaritonLabel::branch(int n, char sign) {
  if (n < 1 || (sign != '+' && sign != '-')) {
    throw Error(ErrorCode::unknown_label, "invalid polariton label " + std::to_string(n) + sign);
  }
  return {Kind::branch, n, sign};
}

PolaritonLabel PolaritonLabel::parse(std::string_view text) {
  const std::string original(text);
  if (text == "0" || text == "G" || text == "g") return ground();
  char sign = 0;
  if (text.ends_with("−")) {
    sign = '-';
    text.remove_suffix(std::string_view("−").size());
  } else if (!text.empty() && (text.back() == '-' || text.back() == '+')) {
    sign = text.back();
    text.remove_suffix(1);
  }
  if (sign == 0 || text.empty() || !std::all_of(text.begin(), text.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    throw Error(ErrorCode::unknown_label, "cannot parse polariton label '" + original + "'");
  }
  return branch(std::stoi(std::string(text)), sign);
}

std::string PolaritonLabel::str() const {
  if (kind == Kind::ground) return "0";
  return std::to_string(n) + sign;
}

int EigenSystem::index_of(const PolaritonLabel& label) const {
  const auto it = std::find(labels.begin(), labels.end(), label);
  if (it == labels.end()) {
    throw Error(ErrorCode::unknown_label,
                "label " + label.str() + (labeled() ? " not present in eigensystem" : ": eigensystem is unlabeled"));
  }
  return static_cast<int>(it - labels.begin());
}

Operator EigenSystem::hamiltonian() const {
  return {dims, energies.cast<Complex>().asDiagonal(), Frame::energy};
}

Operator EigenSystem::to_energy(const Operator& op) const {
  if (op.frame != Frame::bare) throw Error(ErrorCode::dimension_mismatch, "operator is not in the bare frame");
  if (!(op.dims == dims)) throw Error(ErrorCode::dimension_mismatch, "operator and eigensystem dimensions differ");
  return {dims, vectors.adjoint() * op.data * vectors, Frame::energy};
}

Operator EigenSystem::to_bare(const Operator& op) const {
  if (op.frame != Frame::energy) throw Error(ErrorCode::dimension_mismatch, "operator is not in the energy frame");
  if (!(op.dims == dims)) throw Error(ErrorCode::dimension_mismatch, "operator and eigensystem dimensions differ");
  return {dims, vectors * op.data * vectors.adjoint(), Frame::bare};
}

DensityMatrix EigenSystem::to_energy(const DensityMatrix& rho) const {
  if (rho.frame == Frame::energy) return rho;
  if (!(rho.dims == dims)) throw Error(ErrorCode::dimension_mismatch, "state and eigensystem dimensions differ");
  DensityMatrix out = rho;
  out.data = vectors.adjoint() * rho.data * vectors;
  out.frame = Frame::energy;
  return out;
}

DensityMatrix EigenSystem::to_bare(const DensityMatrix& rho) const {
  if (rho.frame == Frame::bare) return rho;
  if (!(rho.dims == dims)) throw Error(ErrorCode::dimension_mismatch, "state and eigensystem dimensions differ");
  DensityMatrix out = rho;
  out.data = vectors * rho.data * vectors.adjoint();
  out.frame = Frame::bare;
  return out;
}

Operator build_qrm(const SystemParams& p) {
  p.validate();
  const int n = p.n_fock;
  const Matrix a = annihilation(n);
  const Matrix quad = 2.0 * p.eta * (a + a.adjoint());
  const Matrix c = hermitian_function(quad, HermitianFn::cos);
  const Matrix s = hermitian_function(quad, HermitianFn::sin);
  Operator h = tensor(p.omega0 * a.adjoint() * a, identity(2));
  h.data += 0.5 * p.omega0 * (kron(c, pauli(Pauli::z)) + kron(s, pauli(Pauli::y)));
  return h;
}

Operator build_jcm(const SystemParams& p) {
  p.validate();
  const auto ops = bare_operators(p.dims());
  Operator h = p.omega0 * ops.number + (0.5 * p.omega0) * ops.sigma_z;
  h.data += kI * p.omega0 * p.eta * (ops.sigma.data.adjoint() * ops.a.data - ops.a.data.adjoint() * ops.sigma.data);
  return h;
}

Operator build_hamiltonian(Model model, const SystemParams& p) {
  return model == Model::qrm ? build_qrm(p) : build_jcm(p);
}

Operator parity_operator(HilbertDims dims) {
  Matrix cav = Matrix::Zero(dims.n_fock, dims.n_fock);
  for (int n = 0; n < dims.n_fock; ++n) cav(n, n) = (n % 2 == 0) ? 1.0 : -1.0;
  return tensor(cav, pauli(Pauli::z));
}

Operator excitation_number(HilbertDims dims) {
  const auto ops = bare_operators(dims);
  return ops.number + ops.sigma.adjoint() * ops.sigma;
}

EigenSystem eigensystem(const Operator& h, double eta) {
  if (h.frame != Frame::bare) throw Error(ErrorCode::dimension_mismatch, "Hamiltonian must be in the bare frame");
  const double defect = hermiticity_defect(h.data);
  if (defect > kHermitianTolerance) {
    throw Error(ErrorCode::not_hermitian, "Hamiltonian deviates from Hermitian by " + std::to_string(defect));
  }
  const int d = static_cast<int>(h.data.rows());
  EigenSystem es;
  es.dims = h.dims;
  es.eta = eta;

  Eigen::VectorXd w(d);
  Matrix v(d, d);
  const Matrix off = h.data - Matrix(h.data.diagonal().asDiagonal());
  if (off.norm() == 0.0) {
    std::vector<int> order(d);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int i, int j) { return h.data(i, i).real() < h.data(j, j).real(); });
    v.setZero();
    for (int k = 0; k < d; ++k) {
      w(k) = h.data(order[k], order[k]).real();
      v(order[k], k) = 1.0;
    }
  } else {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(0.5 * (h.data + h.data.adjoint()));
    if (solver.info() != Eigen::Success) {
      throw Error(ErrorCode::eigensolver_failure, "Hamiltonian diagonalization did not converge");
    }
    w = solver.eigenvalues();
    v = solver.eigenvectors();
    for (int k = 0; k < d; ++k) {
      auto col = v.col(k);
      const double peak = col.cwiseAbs().maxCoeff();
      int anchor = 0;
      while (std::abs(col(anchor)) < peak * (1.0 - 1e-8)) ++anchor;
      col *= std::conj(col(anchor)) / std::abs(col(anchor));
      col(anchor) = std::abs(col(anchor));
    }
  }
  es.ground_energy = w(0);
  es.energies = w.array() - w(0);
  es.vectors = std::move(v);
  return es;
}

std::vector<PolaritonLabel> energy_order_labels(const EigenSystem& es) {
  const int d = es.size();
  const Operator sz = bare_operators(es.dims).sigma_z;
  std::vector<int> order(d);
  std::iota(order.begin(), order.end(), 0);
  auto sigma_z = [&](int k) { return (es.vectors.col(k).adjoint() * sz.data * es.vectors.col(k))(0, 0).real(); };
  for (int start = 0; start < d;) {
    int stop = start + 1;
    while (stop < d && es.energies(stop) - es.energies(start) < kDegenerateGap) ++stop;
    std::stable_sort(order.begin() + start, order.begin() + stop,
                     [&](int i, int j) { return sigma_z(i) < sigma_z(j); });
    start = stop;
  }
  std::vector<PolaritonLabel> labels(d);
  for (int rank = 0; rank < d; ++rank) {
    const int n = (rank + 1) / 2;
    labels[order[rank]] = rank == 0 ? PolaritonLabel::ground()
                                    : PolaritonLabel::branch(n, rank % 2 == 1 ? '-' : '+');
  }
  return labels;
}

void label_polaritons(std::vector<EigenSystem>& sweep, double ambiguity_margin) {
  if (sweep.empty()) return;
  sweep.front().labels = energy_order_labels(sweep.front());
  for (std::size_t k = 1; k < sweep.size(); ++k) {
    if (sweep[k].eta < sweep[k - 1].eta) {
      throw Error(ErrorCode::invalid_parameter, "label continuation needs ascending eta");
    }
    inherit_labels(sweep[k - 1], sweep[k], ambiguity_margin);
  }
}

EigenSystem labeled_eigensystem(Model model, const SystemParams& p, const ContinuationOptions& options) {
  p.validate();
  require_param(options.start_eta > 0.0, "continuation start must be positive");
  require_param(options.steps >= 2, "continuation needs at least two steps");
  SystemParams q = p;
  if (p.eta <= options.start_eta) {
    EigenSystem es = eigensystem(build_hamiltonian(model, p), p.eta);
    es.labels = energy_order_labels(es);
    return es;
  }
  const double lo = std::log(options.start_eta);
  const double hi = std::log(p.eta);
  q.eta = options.start_eta;
  EigenSystem prev = eigensystem(build_hamiltonian(model, q), q.eta);
  prev.labels = energy_order_labels(prev);
  for (int k = 1; k < options.steps; ++k) {
    q.eta = (k == options.steps - 1) ? p.eta : std::exp(lo + (hi - lo) * k / (options.steps - 1));
    EigenSystem next = eigensystem(build_hamiltonian(model, q), q.eta);
    inherit_labels(prev, next, options.ambiguity_margin);
    prev = std::move(next);
  }
  return prev;
}

}  // namespace rabistat
