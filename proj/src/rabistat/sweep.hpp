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

// Parameter sweeps over one or two axes with a worker pool.

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rabistat/analytic.hpp"
#include "rabistat/config.hpp"
#include "rabistat/solution.hpp"
#include "rabistat/table.hpp"

namespace rabistat {

enum class SweepModel { qrm, jcm, jcm_analytic, thermal };

SweepModel parse_sweep_model(std::string_view name);
const char* to_string(SweepModel model) noexcept;

struct GridSpec {
  enum class Kind { lin, log, list };

  Kind kind = Kind::list;
  double min = 0.0;
  double max = 0.0;
  int count = 0;
  std::vector<double> values;  // Kind::list

  static GridSpec linear(double lo, double hi, int count);
  static GridSpec logarithmic(double lo, double hi, int count);
  static GridSpec list(std::vector<double> values);

  // Throws invalid_spec: empty grid, nonpositive log bounds.
  void validate() const;
  std::vector<double> points() const;
  std::string describe() const;
};

// Axis names: eta, Gamma, pump_ratio, kappa, gamma, omega0, n_fock, T.
struct Axis {
  std::string name;
  GridSpec grid;
};

struct SweepSpec {
  SweepModel model = SweepModel::qrm;
  SystemParams params;
  std::optional<double> pump_ratio;  // overrides params.Gamma as ratio * gamma
  double temperature = 1500.0;       // thermal model, Kelvin
  ThermalMode thermal_mode = ThermalMode::gibbs;
  ContinuationOptions continuation;
  std::optional<Axis> axis1;  // outer
  std::optional<Axis> axis2;  // inner
  std::vector<std::string> outputs;
  int jobs = 1;

  // Throws invalid_spec before any computation.
  void validate() const;
  std::size_t cell_count() const;
};

// Keys: model, outputs, jobs; [params] omega0 eta kappa gamma Gamma pump_ratio
// n_fock T thermal_mode (also accepted unqualified); [axis1]/[axis2] name grid
// min max count values; [continuation] start_eta steps margin.
SweepSpec sweep_spec_from_config(const Config& cfg);

// Rows ordered axis1 outer, axis2 inner; columns are the axis names followed
// by the outputs. Failed cells hold NaN and the error code.
ResultTable run_sweep(const SweepSpec& spec);

// Same as run_sweep for one cell; throws instead of recording.
std::vector<double> evaluate_cell(const SweepSpec& spec, std::span<const std::pair<std::string, double>> point,
                                  double* residual = nullptr);

// Runs body(i) for i in [0, count) on `jobs` threads.
void parallel_for(std::size_t count, int jobs, const std::function<void(std::size_t)>& body);

std::string describe_params(const SystemParams& p);

}  // namespace rabistat
