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

#include "rabistat/analytic.hpp"

#include <cmath>
#include <limits>

#include "rabistat/dressed.hpp"
#include "rabistat/observables.hpp"

namespace rabistat {

Eigen::Matrix<double, 8, 8> moment_matrix(const SystemParams& p) {
  const double g = p.eta * p.omega0;
  const double k = p.kappa;
  const double y = p.gamma;
  const double G = p.Gamma;
  const double c1 = -0.5 * (G + k + y);
  const double c3 = -0.5 * (G + y + 3.0 * k);
  Eigen::Matrix<double, 8, 8> m;
  // clang-format off
  m <<  -k,  0,  -g,  -g,  0,         0,      0,      0,
         0, -y,   g,   g,  0,         0,      0,      0,
         g, -g,  c1,   0, -g,         0,      0,      0,
         g, -g,   0,  c1, -g,         0,      0,      0,
         G,  0,   0,   0, -(y + k),   g,      g,      0,
         0,  0,   0,   0, -2 * g,     c3,     0,      g,
         0,  0,   0,   0, -2 * g,     0,      c3,     g,
         0,  0,   0,   0,  0,        -2 * g, -2 * g, -2 * k;
  // clang-format on
  return m;
}

MomentVector jcm_weak_pump_moments(const SystemParams& p) {
  p.validate();
  const auto m = moment_matrix(p);
  Eigen::Matrix<double, 8, 1> b = Eigen::Matrix<double, 8, 1>::Zero();
  b(1) = p.Gamma;
  const Eigen::FullPivLU<Eigen::Matrix<double, 8, 8>> lu(m);
  if (!lu.isInvertible()) {
    throw Error(ErrorCode::degenerate_parameters, "moment matrix is singular for these rates");
  }
  const Eigen::Matrix<double, 8, 1> v = -lu.solve(b);
  MomentVector out;
  for (int i = 0; i < 8; ++i) out.values[i] = v(i);
  out.outside_validity = p.gamma > 0.0 && p.Gamma / p.gamma > kWeakPumpLimit;
  if (std::abs(v(0)) > 1e-300) out.g2 = v(7) / (v(0) * v(0));
  return out;
}

LimitFormulas jcm_limit_formulas(const SystemParams& p) {
  const double g = p.eta * p.omega0;
  const double g2 = g * g;
  const double k = p.kappa;
  const double y = p.gamma;
  const double G = p.Gamma;
  LimitFormulas f{};
  f.cooperativity = 4.0 * g2 / (k * y);
  f.n_approx = 4.0 * g2 * (4.0 * g2 + k * k) * G / (k * k * k * (4.0 * g2 + y * k));
  f.n2_approx = 32.0 * g2 * g2 * G * G / (3.0 * k * k * (16.0 * g2 * g2 + y * k * k * k));
  return f;
}

ThermalParams ThermalParams::make(double kelvin) {
  if (!(std::isfinite(kelvin) && kelvin > 0.0)) {
    throw Error(ErrorCode::invalid_parameter, "temperature must be positive, got " + std::to_string(kelvin));
  }
  return ThermalParams{kelvin};
}

ThermalMode parse_thermal_mode(std::string_view name) {
  if (name == "gibbs") return ThermalMode::gibbs;
  if (name == "bose_weights" || name == "bose") return ThermalMode::bose_weights;
  throw Error(ErrorCode::invalid_parameter, "unknown thermal mode '" + std::string(name) + "'");
}

const char* to_string(ThermalMode mode) noexcept {
  return mode == ThermalMode::gibbs ? "gibbs" : "bose_weights";
}

DensityMatrix thermal_state(const EigenSystem& es, const ThermalParams& tp, ThermalMode mode) {
  ThermalParams::make(tp.T);
  const double kt = tp.kT_over_hw0();
  const int d = es.size();
  Eigen::VectorXd w(d);
  if (mode == ThermalMode::gibbs) {
    for (int k = 0; k < d; ++k) w(k) = std::exp(-es.energies(k) / kt);
    w /= w.sum();
  } else {
    double excited = 0.0;
    for (int k = 1; k < d; ++k) {
      if (!(es.energies(k) > 0.0)) {
        throw Error(ErrorCode::thermal_normalization, "Bose weight diverges for a state degenerate with the ground state");
      }
      w(k) = 1.0 / std::expm1(es.energies(k) / kt);
      excited += w(k);
    }
    if (!(excited < 1.0)) {
      throw Error(ErrorCode::thermal_normalization,
                  "excited Bose weights sum to " + std::to_string(excited) + " at T=" + std::to_string(tp.T) +
                      " K; use the gibbs mode");
    }
    w(0) = 1.0 - excited;
  }
  return {es.dims, w.cast<Complex>().asDiagonal(), Frame::energy, 0.0, w.minCoeff()};
}

double ThermalMap::max_valid() const {
  double best = -std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < g2.size(); ++i) {
    if (std::isfinite(g2.data()[i])) best = std::max(best, g2.data()[i]);
  }
  return best;
}

ThermalMap thermal_g2_map(std::span<const double> etas, std::span<const double> temperatures, ThermalMode mode,
                          int n_fock) {
  if (etas.empty() || temperatures.empty()) throw Error(ErrorCode::invalid_spec, "thermal map grids must be nonempty");
  ThermalMap map;
  map.etas.assign(etas.begin(), etas.end());
  map.temperatures.assign(temperatures.begin(), temperatures.end());
  const auto rows = static_cast<Eigen::Index>(temperatures.size());
  const auto cols = static_cast<Eigen::Index>(etas.size());
  map.g2 = Eigen::MatrixXd::Constant(rows, cols, std::numeric_limits<double>::quiet_NaN());
  map.errors.assign(temperatures.size() * etas.size(), std::nullopt);
  for (Eigen::Index j = 0; j < cols; ++j) {
    SystemParams p;
    p.eta = etas[j];
    p.n_fock = n_fock;
    const auto es = std::make_shared<const EigenSystem>(eigensystem(build_qrm(p), p.eta));
    const DressedOperators d = dress(es);
    for (Eigen::Index i = 0; i < rows; ++i) {
      try {
        map.g2(i, j) = g2_zero(thermal_state(*es, ThermalParams::make(temperatures[i]), mode), d.x_a);
      } catch (const Error& e) {
        map.errors[i * cols + j] = e.code();
      }
    }
  }
  return map;
}

}  // namespace rabistat
