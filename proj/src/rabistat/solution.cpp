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

#include "rabistat/solution.hpp"

#include <cmath>
#include <vector>

#include "rabistat/error.hpp"

namespace rabistat {

namespace {

std::vector<std::string_view> split_colon(std::string_view name) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = name.find(':', start);
    parts.push_back(name.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

bool is_jump_name(std::string_view op) {
  return op == "x_a" || op == "x_a_dag" || op == "x_sigma" || op == "x_sigma_dag";
}

[[noreturn]] void unknown_observable(std::string_view name) {
  throw Error(ErrorCode::invalid_spec, "unknown observable '" + std::string(name) + "'");
}

}  // namespace

void validate_observable_name(std::string_view name, Model model) {
  static constexpr std::string_view scalars[] = {"g2", "g2_diag", "g2_diag_full", "g2_single", "n_photon",
                                                 "residual", "residual_rel", "min_eig"};
  for (const auto s : scalars) {
    if (name == s) return;
  }
  if (name == "g2_xdot" || name == "g2_xddot") {
    if (model != Model::qrm) {
      throw Error(ErrorCode::invalid_spec, "derivative detectors are defined for the qrm only");
    }
    return;
  }
  const auto parts = split_colon(name);
  if (parts.size() == 2 && (parts[0] == "pop" || parts[0] == "energy")) {
    PolaritonLabel::parse(parts[1]);
    return;
  }
  if (parts.size() == 3 && (parts[0] == "dm_abs" || parts[0] == "dm_re" || parts[0] == "dm_im")) {
    PolaritonLabel::parse(parts[1]);
    PolaritonLabel::parse(parts[2]);
    return;
  }
  if (parts.size() == 4 && parts[0] == "strength" && is_jump_name(parts[1])) {
    PolaritonLabel::parse(parts[2]);
    PolaritonLabel::parse(parts[3]);
    return;
  }
  unknown_observable(name);
}

Solution::Solution(Model model, const SystemParams& p, const ContinuationOptions& continuation)
    : model_(model), params_(p), continuation_(continuation) {
  params_.validate();
}

const EigenSystem& Solution::eigensystem() {
  if (!es_) {
    es_ = std::make_shared<EigenSystem>(rabistat::eigensystem(build_hamiltonian(model_, params_), params_.eta));
  }
  return *es_;
}

const EigenSystem& Solution::labeled() {
  eigensystem();
  if (!es_->labeled()) {
    const EigenSystem tracked = labeled_eigensystem(model_, params_, continuation_);
    // The last continuation step repeats the same diagonalization.
    if ((tracked.energies - es_->energies).cwiseAbs().maxCoeff() > 1e-12) {
      throw Error(ErrorCode::eigensolver_failure, "label continuation ended on a different spectrum");
    }
    es_->labels = tracked.labels;
  }
  return *es_;
}

const DressedOperators& Solution::dressed() {
  if (model_ != Model::qrm) throw Error(ErrorCode::invalid_parameter, "dressed operators belong to the qrm");
  if (!dressed_) {
    eigensystem();
    dressed_ = dress(es_);
  }
  return *dressed_;
}

const SuperOperator& Solution::liouvillian() {
  if (!liouvillian_) {
    liouvillian_ = model_ == Model::qrm ? liouvillian_qrm(params_, dressed()) : liouvillian_jcm(params_);
  }
  return *liouvillian_;
}

const DensityMatrix& Solution::steady_state() {
  if (!rho_) rho_ = rabistat::steady_state(liouvillian());
  return *rho_;
}

double Solution::liouvillian_norm() {
  if (!l_norm_) l_norm_ = liouvillian().data.norm();
  return *l_norm_;
}

Operator Solution::emission_operator(Detector detector) {
  if (model_ == Model::jcm) {
    if (detector != Detector::x) {
      throw Error(ErrorCode::invalid_parameter, "derivative detectors are defined for the qrm only");
    }
    return bare_operators(params_.dims()).a;
  }
  const auto& d = dressed();
  switch (detector) {
    case Detector::x:
      return d.x_a;
    case Detector::x_dot:
      return d.x_a_dot;
    case Detector::x_ddot:
      return d.x_a_ddot;
  }
  return d.x_a;
}

Operator Solution::jump(std::string_view name) {
  if (!is_jump_name(name)) throw Error(ErrorCode::invalid_parameter, "unknown jump operator '" + std::string(name) + "'");
  const bool cavity = name.starts_with("x_a");
  const bool dagger = name.ends_with("_dag");
  Operator op = [&] {
    if (model_ == Model::qrm) return cavity ? dressed().x_a : dressed().x_sigma;
    const auto ops = bare_operators(params_.dims());
    return cavity ? ops.a : ops.sigma;
  }();
  return dagger ? op.adjoint() : op;
}

double Solution::observable(std::string_view name) {
  validate_observable_name(name, model_);
  if (name == "g2") return g2_zero(steady_state(), emission_operator(Detector::x));
  if (name == "g2_xdot") return g2_zero(steady_state(), emission_operator(Detector::x_dot));
  if (name == "g2_xddot") return g2_zero(steady_state(), emission_operator(Detector::x_ddot));
  if (name == "n_photon") return emission_moments(steady_state(), emission_operator()).n1;
  if (name == "residual") return steady_state().residual;
  if (name == "residual_rel") return steady_state().residual / liouvillian_norm();
  if (name == "min_eig") return steady_state().min_eigenvalue;
  if (name == "g2_diag" || name == "g2_diag_full" || name == "g2_single") {
    const auto& es = labeled();
    const auto pops = populations(steady_state(), es, params_.Gamma);
    const Operator x = emission_operator();
    if (name == "g2_single") return g2_single_pathway(pops, x, es);
    if (name == "g2_diag") return g2_diagonal(pops, x, es);
    return g2_diagonal(pops, x, es, std::nullopt);
  }
  const auto parts = split_colon(name);
  if (parts[0] == "energy") return labeled().energy(PolaritonLabel::parse(parts[1]));
  if (parts[0] == "pop") {
    const auto& es = labeled();
    const int k = es.index_of(PolaritonLabel::parse(parts[1]));
    return es.to_energy(steady_state()).data(k, k).real();
  }
  if (parts[0] == "strength") {
    const auto& es = labeled();
    return transition_strength(jump(parts[1]), PolaritonLabel::parse(parts[2]), PolaritonLabel::parse(parts[3]), es);
  }
  // dm_*
  const auto& es = labeled();
  const DensityMatrix re = es.to_energy(steady_state());
  const Complex v = re.data(es.index_of(PolaritonLabel::parse(parts[1])), es.index_of(PolaritonLabel::parse(parts[2])));
  if (parts[0] == "dm_abs") return std::abs(v);
  if (parts[0] == "dm_re") return v.real();
  return v.imag();
}

Spectrum Solution::spectrum(std::span<const double> omegas) {
  return emission_spectrum(liouvillian(), emission_operator(), steady_state(), omegas);
}

ConvergenceReport convergence_check(Model model, const SystemParams& p, std::string_view observable, int extra,
                                    double tolerance) {
  if (extra < 1) throw Error(ErrorCode::invalid_parameter, "convergence check needs a larger truncation");
  validate_observable_name(observable, model);
  ConvergenceReport r;
  r.observable = std::string(observable);
  r.tolerance = tolerance;
  r.base_n_fock = p.n_fock;
  r.extended_n_fock = p.n_fock + extra;
  r.base_value = Solution(model, p).observable(observable);
  SystemParams q = p;
  q.n_fock = r.extended_n_fock;
  r.extended_value = Solution(model, q).observable(observable);
  const double scale = std::abs(r.extended_value);
  r.relative_change = scale > 0.0 ? std::abs(r.base_value - r.extended_value) / scale
                                  : std::abs(r.base_value - r.extended_value);
  r.converged = r.relative_change < tolerance;
  return r;
}

}  // namespace rabistat
