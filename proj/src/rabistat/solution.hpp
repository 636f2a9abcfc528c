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

// One solved parameter point: eigensystem, dressed operators, Liouvillian and
// steady state, computed on first use. Named scalar observables are the
// vocabulary shared by sweeps, convergence checks and the C API.
// Not thread-safe; use one instance per worker.

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "rabistat/observables.hpp"

namespace rabistat {

enum class Detector { x, x_dot, x_ddot };

class Solution {
 public:
  Solution(Model model, const SystemParams& p, const ContinuationOptions& continuation = {});

  Model model() const { return model_; }
  const SystemParams& params() const { return params_; }

  const EigenSystem& eigensystem();  // unlabeled unless labels were requested
  const EigenSystem& labeled();
  const DressedOperators& dressed();
  const SuperOperator& liouvillian();
  const DensityMatrix& steady_state();
  double liouvillian_norm();

  // QRM: dressed x_a and its derivatives (energy frame). JCM: bare a, x only.
  Operator emission_operator(Detector detector = Detector::x);
  // x_a, x_a_dag, x_sigma, x_sigma_dag; the JCM maps them to a, a^dag, sigma, sigma^dag.
  Operator jump(std::string_view name);

  // g2, g2_xdot, g2_xddot, g2_diag, g2_diag_full, g2_single, n_photon,
  // residual, residual_rel, min_eig, pop:<l>, energy:<l>,
  // strength:<op>:<from>:<to>, dm_abs|dm_re|dm_im:<mu>:<nu>.
  double observable(std::string_view name);

  Spectrum spectrum(std::span<const double> omegas);

 private:
  Model model_;
  SystemParams params_;
  ContinuationOptions continuation_;
  std::shared_ptr<EigenSystem> es_;
  std::optional<DressedOperators> dressed_;
  std::optional<SuperOperator> liouvillian_;
  std::optional<DensityMatrix> rho_;
  std::optional<double> l_norm_;
};

// Throws invalid_spec for names outside the vocabulary of observable().
void validate_observable_name(std::string_view name, Model model);

struct ConvergenceReport {
  std::string observable;
  int base_n_fock = 0;
  int extended_n_fock = 0;
  double base_value = 0.0;
  double extended_value = 0.0;
  double relative_change = 0.0;
  double tolerance = 0.01;
  bool converged = false;
};

// Recomputes `observable` at n_fock and n_fock + extra.
ConvergenceReport convergence_check(Model model, const SystemParams& p, std::string_view observable, int extra = 4,
                                    double tolerance = 0.01);

}  // namespace rabistat
