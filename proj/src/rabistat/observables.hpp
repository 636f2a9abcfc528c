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

// Steady-state observables: g2(0) for several detectors, polariton
// populations and coherences, diagonal approximations and the emission spectrum.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rabistat/lindblad.hpp"

namespace rabistat {

struct EmissionMoments {
  double n1 = 0.0;  // <X^dag X>
  double n2 = 0.0;  // <X^dag X^dag X X>
};

// Throws no_emission when <X^dag X> <= 1e-300.
EmissionMoments emission_moments(const DensityMatrix& rho, const Operator& x);
double g2_zero(const DensityMatrix& rho, const Operator& x);

struct PopulationTable {
  std::vector<PolaritonLabel> labels;
  std::vector<double> values;  // R_nu, same order as labels
  double eta = 0.0;
  double Gamma = 0.0;

  double at(const PolaritonLabel& label) const;
  double total() const;
};

PopulationTable populations(const DensityMatrix& rho, const EigenSystem& es, double Gamma = 0.0);

// Canonical order 0, 1-, 1+, 2-, 2+, ...
std::vector<PolaritonLabel> canonical_labels(int count);

struct DMElementMap {
  std::vector<PolaritonLabel> labels;
  Matrix values;  // R^mu_nu = <mu|rho|nu>
};

DMElementMap dm_element_map(const DensityMatrix& rho, const EigenSystem& es, int k = 6);

std::vector<PolaritonLabel> default_diagonal_truncation();

// Numerator restricted to `truncation` (all labels when nullopt); the
// denominator always runs over every state. X may be in either frame.
double g2_diagonal(const PopulationTable& pops, const Operator& x, const EigenSystem& es,
                   const std::optional<std::vector<PolaritonLabel>>& truncation = default_diagonal_truncation());

// Only the <1-| X X |3-> term over the full denominator.
double g2_single_pathway(const PopulationTable& pops, const Operator& x, const EigenSystem& es);

struct Spectrum {
  std::vector<double> omegas;
  std::vector<double> values;       // max-normalized, clipped at zero
  std::string normalization = "max";
  double peak_raw = 0.0;            // unnormalized maximum
  double min_relative = 0.0;        // unnormalized minimum / peak_raw
  CorrelatorPath path = CorrelatorPath::eigen;
};

// S(w) = 2 Re int_0^inf <X^dag(tau) X(0)> e^{-i w tau} dtau, DC mode removed.
Spectrum emission_spectrum(const SuperOperator& l, const Operator& x, const DensityMatrix& rho,
                           std::span<const double> omegas);
Spectrum emission_spectrum(const SuperOperator& l, const DressedOperators& d, const DensityMatrix& rho,
                           std::span<const double> omegas);

struct Peak {
  std::size_t index;
  double omega;
  double value;
};

// Local maxima with value >= min_height.
std::vector<Peak> find_peaks(const Spectrum& s, double min_height);

}  // namespace rabistat
