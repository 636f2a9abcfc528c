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

// Quantum Rabi (Coulomb gauge) and Jaynes-Cummings Hamiltonians, their
// diagonalization and polariton labeling by continuation in the coupling.

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "rabistat/qstate.hpp"

namespace rabistat {

// All quantities in units of omega0 (hbar = 1).
struct SystemParams {
  double omega0 = 1.0;
  double eta = 0.0;      // g / omega0
  double kappa = 0.05;   // cavity loss, Q = 20
  double gamma = 1e-3;   // TLS decay
  double Gamma = 0.0;    // incoherent pump
  int n_fock = 10;

  // Throws invalid_parameter / invalid_truncation.
  void validate() const;
  HilbertDims dims() const { return HilbertDims::make(n_fock); }
  double pump_ratio() const { return Gamma / gamma; }
};

enum class Model { qrm, jcm };

Model parse_model(std::string_view name);
const char* to_string(Model model) noexcept;

struct PolaritonLabel {
  enum class Kind { ground, branch };

  Kind kind = Kind::ground;
  int n = 0;
  char sign = '-';

  static PolaritonLabel ground() { return {}; }
  static PolaritonLabel branch(int n, char sign);
  // Accepts "0", "3-", "3+" and the Unicode minus sign.
  static PolaritonLabel parse(std::string_view text);

  std::string str() const;
  friend bool operator==(const PolaritonLabel&, const PolaritonLabel&) = default;
};

struct EigenSystem {
  HilbertDims dims;
  double eta = 0.0;
  double ground_energy = 0.0;
  Eigen::VectorXd energies;  // ascending, energies[0] == 0
  Matrix vectors;            // columns in the bare basis
  std::vector<PolaritonLabel> labels;  // empty when unlabeled

  bool labeled() const { return !labels.empty(); }
  int size() const { return static_cast<int>(energies.size()); }

  // Throws unknown_label.
  int index_of(const PolaritonLabel& label) const;
  double energy(const PolaritonLabel& label) const { return energies(index_of(label)); }

  // H - E_0 in its own eigenbasis.
  Operator hamiltonian() const;

  Operator to_energy(const Operator& op) const;
  Operator to_bare(const Operator& op) const;
  DensityMatrix to_energy(const DensityMatrix& rho) const;
  DensityMatrix to_bare(const DensityMatrix& rho) const;
};

using EigenSystemPtr = std::shared_ptr<const EigenSystem>;

Operator build_qrm(const SystemParams& p);
Operator build_jcm(const SystemParams& p);
Operator build_hamiltonian(Model model, const SystemParams& p);

// Parity exp(i pi a^dag a) (x) sigma_z and excitation number a^dag a + sigma^dag sigma.
Operator parity_operator(HilbertDims dims);
Operator excitation_number(HilbertDims dims);

// Unlabeled. Phase convention: the first component whose magnitude is within
// a relative 1e-8 of the column maximum is made real positive. Exactly
// degenerate bare-diagonal input keeps the bare basis vectors.
EigenSystem eigensystem(const Operator& h, double eta = 0.0);

// Energy-order labels 0, 1-, 1+, 2-, ..., with the uppermost unpaired state
// labeled "N_a-". Exactly degenerate pairs give "-" to the lower <sigma_z>.
std::vector<PolaritonLabel> energy_order_labels(const EigenSystem& es);

struct ContinuationOptions {
  double start_eta = 1e-3;
  int steps = 200;
  double ambiguity_margin = 0.05;
};

// Labels a sweep of eigensystems at ascending eta. The first entry receives
// energy-order labels; later ones inherit by maximal |overlap|.
// Throws labeling_ambiguity naming the offending step.
void label_polaritons(std::vector<EigenSystem>& sweep, double ambiguity_margin = 0.05);

// Diagonalizes `model` at p.eta and labels by continuation from
// options.start_eta on a log grid (energy order directly if p.eta <= start).
EigenSystem labeled_eigensystem(Model model, const SystemParams& p,
                                const ContinuationOptions& options = {});

}  // namespace rabistat
