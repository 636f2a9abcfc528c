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

// Closed-form and semi-analytic references: the weak-pump JCM moment
// hierarchy and thermal mixtures of Rabi eigenstates.

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "rabistat/error.hpp"
#include "rabistat/models.hpp"

namespace rabistat {

// Order: <a^dag a>, <s^dag s>, <a^dag s>, <a s^dag>, <a^dag a s^dag s>,
// <a^dag a a s^dag>, <a^dag a^dag a s>, <a^dag a^dag a a>.
struct MomentVector {
  std::array<Complex, 8> values{};
  std::optional<double> g2;    // absent when <a^dag a> vanishes
  bool outside_validity = false;  // Gamma / gamma > 1e-2

  double photons() const { return values[0].real(); }
  double excitation() const { return values[1].real(); }
  double pair_correlation() const { return values[7].real(); }
};

inline constexpr double kWeakPumpLimit = 1e-2;

// The 8x8 matrix M with g = eta * omega0.
Eigen::Matrix<double, 8, 8> moment_matrix(const SystemParams& p);

// v = -M^{-1} b, b = (0, Gamma, 0, ..., 0). Throws degenerate_parameters.
MomentVector jcm_weak_pump_moments(const SystemParams& p);

struct LimitFormulas {
  double n_approx;
  double n2_approx;
  double cooperativity;
};

LimitFormulas jcm_limit_formulas(const SystemParams& p);

inline constexpr double kBoltzmannEvPerKelvin = 8.617333262e-5;
inline constexpr double kPhotonEnergyEv = 1.0;

struct ThermalParams {
  double T = 300.0;  // Kelvin

  // Throws invalid_parameter for T <= 0.
  static ThermalParams make(double kelvin);
  double kT_over_hw0() const { return kBoltzmannEvPerKelvin * T / kPhotonEnergyEv; }
};

enum class ThermalMode { bose_weights, gibbs };

ThermalMode parse_thermal_mode(std::string_view name);
const char* to_string(ThermalMode mode) noexcept;

// Diagonal mixture in Frame::energy of `es`. bose_weights: excited weights
// 1/(exp(E/kT) - 1), ground takes the remainder (thermal_normalization when
// that is not positive). gibbs: exp(-E/kT) normalized.
DensityMatrix thermal_state(const EigenSystem& es, const ThermalParams& tp, ThermalMode mode);

struct ThermalMap {
  std::vector<double> temperatures;
  std::vector<double> etas;
  Eigen::MatrixXd g2;                        // rows: temperature, cols: eta; NaN if invalid
  std::vector<std::optional<ErrorCode>> errors;  // row-major, same shape

  double max_valid() const;
};

// g2 of the dressed cavity quadrature in each thermal mixture.
ThermalMap thermal_g2_map(std::span<const double> etas, std::span<const double> temperatures,
                          ThermalMode mode = ThermalMode::gibbs, int n_fock = 10);

}  // namespace rabistat
