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

#include "rabistat/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "rabistat/error.hpp"

#ifndef RABISTAT_VERSION
#define RABISTAT_VERSION "0.0.0"
#endif

namespace rabistat {

namespace {

constexpr std::string_view kAxisNames[] = {"eta", "Gamma", "pump_ratio", "kappa", "gamma", "omega0", "n_fock", "T"};
constexpr std::string_view kAnalyticOutputs[] = {"g2", "n_photon", "n_sigma", "n2", "n_approx", "n2_approx",
                                                 "cooperativity", "outside_validity"};
constexpr std::string_view kThermalOutputs[] = {"g2", "n_photon"};

[[noreturn]] void bad_spec(const std::string& what) { throw Error(ErrorCode::invalid_spec, what); }

template <std::size_t N>
bool contains(const std::string_view (&names)[N], std::string_view name) {
  return std::find(std::begin(names), std::end(names), name) != std::end(names);
}

std::string fmt(double v) { return format_double(v); }

struct CellParams {
  SystemParams p;
  double temperature;
};

CellParams apply_point(const SweepSpec& spec, std::span<const std::pair<std::string, double>> point) {
  CellParams c{spec.params, spec.temperature};
  std::optional<double> ratio = spec.pump_ratio;
  for (const auto& [name, value] : point) {
    if (name == "eta") c.p.eta = value;
    else if (name == "Gamma") {
      c.p.Gamma = value;
      ratio.reset();
    } else if (name == "pump_ratio") ratio = value;
    else if (name == "kappa") c.p.kappa = value;
    else if (name == "gamma") c.p.gamma = value;
    else if (name == "omega0") c.p.omega0 = value;
    else if (name == "n_fock") c.p.n_fock = static_cast<int>(std::lround(value));
    else if (name == "T") c.temperature = value;
  }
  if (ratio) c.p.Gamma = *ratio * c.p.gamma;
  return c;
}

bool needs_steady_state(const std::vector<std::string>& outputs) {
  return std::any_of(outputs.begin(), outputs.end(), [](const std::string& o) {
    return !(o.starts_with("energy:") || o.starts_with("strength:"));
  });
}

}  // namespace

SweepModel parse_sweep_model(std::string_view name) {
  if (name == "qrm") return SweepModel::qrm;
  if (name == "jcm") return SweepModel::jcm;
  if (name == "jcm_analytic" || name == "jcm-analytic") return SweepModel::jcm_analytic;
  if (name == "thermal") return SweepModel::thermal;
  bad_spec("unknown sweep model '" + std::string(name) + "'");
}

const char* to_string(SweepModel model) noexcept {
  switch (model) {
    case SweepModel::qrm:
      return "qrm";
    case SweepModel::jcm:
      return "jcm";
    case SweepModel::jcm_analytic:
      return "jcm_analytic";
    case SweepModel::thermal:
      return "thermal";
  }
  return "unknown";
}

GridSpec GridSpec::linear(double lo, double hi, int count) { return {Kind::lin, lo, hi, count, {}}; }
GridSpec GridSpec::logarithmic(double lo, double hi, int count) { return {Kind::log, lo, hi, count, {}}; }
GridSpec GridSpec::list(std::vector<double> values) {
  GridSpec g;
  g.kind = Kind::list;
  g.count = static_cast<int>(values.size());
  g.values = std::move(values);
  return g;
}

void GridSpec::validate() const {
  if (kind == Kind::list) {
    if (values.empty()) bad_spec("grid list is empty");
    for (const double v : values) {
      if (!std::isfinite(v)) bad_spec("grid list holds a non-finite value");
    }
    return;
  }
  if (count < 1) bad_spec("grid needs at least one point");
  if (!std::isfinite(min) || !std::isfinite(max)) bad_spec("grid bounds must be finite");
  if (count > 1 && min == max) bad_spec("grid bounds coincide");
  if (kind == Kind::log && (min <= 0.0 || max <= 0.0)) bad_spec("log grid requires positive bounds");
}

std::vector<double> GridSpec::points() const {
  validate();
  if (kind == Kind::list) return values;
  std::vector<double> out(count);
  if (count == 1) {
    out[0] = min;
    return out;
  }
  for (int i = 0; i < count; ++i) {
    const double t = static_cast<double>(i) / (count - 1);
    if (i == 0) out[i] = min;
    else if (i == count - 1) out[i] = max;
    else if (kind == Kind::lin) out[i] = min + (max - min) * t;
    else out[i] = std::exp(std::log(min) + (std::log(max) - std::log(min)) * t);
  }
  return out;
}

std::string GridSpec::describe() const {
  std::ostringstream s;
  if (kind == Kind::list) {
    s << "list";
    for (const double v : values) s << ' ' << fmt(v);
  } else {
    s << (kind == Kind::lin ? "lin " : "log ") << fmt(min) << ".." << fmt(max) << " x" << count;
  }
  return s.str();
}

void SweepSpec::validate() const {
  params.validate();
  if (jobs < 1) bad_spec("jobs must be at least 1");
  if (outputs.empty()) bad_spec("no outputs requested");
  if (axis2 && !axis1) bad_spec("axis2 given without axis1");
  std::set<std::string> seen;
  for (const auto* axis : {&axis1, &axis2}) {
    if (!*axis) continue;
    const auto& a = **axis;
    if (!contains(kAxisNames, a.name)) bad_spec("unknown axis '" + a.name + "'");
    if (a.name == "T" && model != SweepModel::thermal) bad_spec("temperature axis needs the thermal model");
    if (!seen.insert(a.name).second) bad_spec("axis '" + a.name + "' used twice");
    a.grid.validate();
  }
  if (model == SweepModel::thermal && !(temperature > 0.0)) bad_spec("temperature must be positive");
  if (pump_ratio && !(*pump_ratio >= 0.0)) bad_spec("pump_ratio must be nonnegative");
  std::set<std::string> unique;
  for (const auto& o : outputs) {
    if (!unique.insert(o).second) bad_spec("output '" + o + "' requested twice");
    switch (model) {
      case SweepModel::qrm:
        validate_observable_name(o, Model::qrm);
        break;
      case SweepModel::jcm:
        validate_observable_name(o, Model::jcm);
        break;
      case SweepModel::jcm_analytic:
        if (!contains(kAnalyticOutputs, o)) bad_spec("output '" + o + "' not available for jcm_analytic");
        break;
      case SweepModel::thermal:
        if (!contains(kThermalOutputs, o)) bad_spec("output '" + o + "' not available for thermal");
        break;
    }
  }
}

std::size_t SweepSpec::cell_count() const {
  std::size_t n = 1;
  if (axis1) n *= axis1->grid.points().size();
  if (axis2) n *= axis2->grid.points().size();
  return n;
}

SweepSpec sweep_spec_from_config(const Config& cfg) {
  static const std::set<std::string> param_keys = {"omega0", "eta",   "kappa", "gamma",       "Gamma",
                                                   "pump_ratio", "n_fock", "T", "thermal_mode"};
  SweepSpec spec;
  std::map<std::string, std::string> axis_fields[2];
  for (const auto& [raw_key, value] : cfg.entries()) {
    std::string key = raw_key;
    if (param_keys.count(key)) key = "params." + key;
    const auto dot = key.find('.');
    const std::string section = dot == std::string::npos ? "" : key.substr(0, dot);
    const std::string name = dot == std::string::npos ? key : key.substr(dot + 1);
    if (section.empty()) {
      if (name == "model") spec.model = parse_sweep_model(value);
      else if (name == "outputs") spec.outputs = split_list(value);
      else if (name == "jobs") spec.jobs = parse_int(value, key);
      else if (name == "name" || name == "title") continue;
      else bad_spec("unknown config key '" + raw_key + "'");
    } else if (section == "params") {
      if (!param_keys.count(name)) bad_spec("unknown parameter '" + name + "'");
      if (name == "n_fock") spec.params.n_fock = parse_int(value, key);
      else if (name == "thermal_mode") spec.thermal_mode = parse_thermal_mode(value);
      else {
        const double v = parse_double(value, key);
        if (name == "omega0") spec.params.omega0 = v;
        else if (name == "eta") spec.params.eta = v;
        else if (name == "kappa") spec.params.kappa = v;
        else if (name == "gamma") spec.params.gamma = v;
        else if (name == "Gamma") spec.params.Gamma = v;
        else if (name == "pump_ratio") spec.pump_ratio = v;
        else if (name == "T") spec.temperature = v;
      }
    } else if (section == "axis1" || section == "axis2") {
      axis_fields[section == "axis1" ? 0 : 1][name] = value;
    } else if (section == "continuation") {
      if (name == "start_eta") spec.continuation.start_eta = parse_double(value, key);
      else if (name == "steps") spec.continuation.steps = parse_int(value, key);
      else if (name == "margin") spec.continuation.ambiguity_margin = parse_double(value, key);
      else bad_spec("unknown config key '" + raw_key + "'");
    } else {
      bad_spec("unknown config section '" + section + "'");
    }
  }
  for (int i = 0; i < 2; ++i) {
    auto& f = axis_fields[i];
    if (f.empty()) continue;
    const std::string where = i == 0 ? "axis1" : "axis2";
    for (const auto& [k, v] : f) {
      if (k != "name" && k != "grid" && k != "min" && k != "max" && k != "count" && k != "values") {
        bad_spec("unknown config key '" + where + "." + k + "'");
      }
    }
    if (!f.count("name")) bad_spec(where + " needs a name");
    Axis axis{f["name"], {}};
    const std::string kind = f.count("grid") ? f["grid"] : (f.count("values") ? "list" : "lin");
    if (kind == "list") {
      std::vector<double> values;
      for (const auto& item : split_list(f["values"])) values.push_back(parse_double(item, where + ".values"));
      axis.grid = GridSpec::list(std::move(values));
    } else if (kind == "lin" || kind == "log") {
      for (const char* k : {"min", "max", "count"}) {
        if (!f.count(k)) bad_spec(where + " needs " + k);
      }
      const double lo = parse_double(f["min"], where + ".min");
      const double hi = parse_double(f["max"], where + ".max");
      const int n = parse_int(f["count"], where + ".count");
      axis.grid = kind == "lin" ? GridSpec::linear(lo, hi, n) : GridSpec::logarithmic(lo, hi, n);
    } else {
      bad_spec(where + ": unknown grid kind '" + kind + "'");
    }
    (i == 0 ? spec.axis1 : spec.axis2) = std::move(axis);
  }
  spec.validate();
  return spec;
}

std::vector<double> evaluate_cell(const SweepSpec& spec, std::span<const std::pair<std::string, double>> point,
                                  double* residual) {
  const CellParams c = apply_point(spec, point);
  std::vector<double> out;
  out.reserve(spec.outputs.size());
  switch (spec.model) {
    case SweepModel::qrm:
    case SweepModel::jcm: {
      Solution sol(spec.model == SweepModel::qrm ? Model::qrm : Model::jcm, c.p, spec.continuation);
      for (const auto& o : spec.outputs) out.push_back(sol.observable(o));
      if (residual && needs_steady_state(spec.outputs)) *residual = sol.steady_state().residual;
      break;
    }
    case SweepModel::jcm_analytic: {
      const MomentVector m = jcm_weak_pump_moments(c.p);
      const LimitFormulas lim = jcm_limit_formulas(c.p);
      for (const auto& o : spec.outputs) {
        if (o == "g2") {
          if (!m.g2) throw Error(ErrorCode::no_emission, "analytic photon number vanishes");
          out.push_back(*m.g2);
        } else if (o == "n_photon") out.push_back(m.photons());
        else if (o == "n_sigma") out.push_back(m.excitation());
        else if (o == "n2") out.push_back(m.pair_correlation());
        else if (o == "n_approx") out.push_back(lim.n_approx);
        else if (o == "n2_approx") out.push_back(lim.n2_approx);
        else if (o == "cooperativity") out.push_back(lim.cooperativity);
        else out.push_back(m.outside_validity ? 1.0 : 0.0);
      }
      break;
    }
    case SweepModel::thermal: {
      c.p.validate();
      const auto es = std::make_shared<const EigenSystem>(eigensystem(build_qrm(c.p), c.p.eta));
      const DressedOperators d = dress(es);
      const DensityMatrix rho = thermal_state(*es, ThermalParams::make(c.temperature), spec.thermal_mode);
      for (const auto& o : spec.outputs) {
        out.push_back(o == "g2" ? g2_zero(rho, d.x_a) : emission_moments(rho, d.x_a).n1);
      }
      break;
    }
  }
  return out;
}

void parallel_for(std::size_t count, int jobs, const std::function<void(std::size_t)>& body) {
  const std::size_t workers = std::min<std::size_t>(std::max(jobs, 1), std::max<std::size_t>(count, 1));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < count; i = next++) {
          try {
            body(i);
          } catch (...) {
            const std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
          }
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
}

std::string describe_params(const SystemParams& p) {
  return "omega0=" + fmt(p.omega0) + " eta=" + fmt(p.eta) + " kappa=" + fmt(p.kappa) + " gamma=" + fmt(p.gamma) +
         " Gamma=" + fmt(p.Gamma) + " n_fock=" + std::to_string(p.n_fock);
}

ResultTable run_sweep(const SweepSpec& spec) {
  spec.validate();
  std::vector<std::pair<std::string, std::vector<double>>> axes;
  for (const auto* axis : {&spec.axis1, &spec.axis2}) {
    if (*axis) axes.emplace_back((*axis)->name, (*axis)->grid.points());
  }
  const std::size_t n1 = axes.size() > 0 ? axes[0].second.size() : 1;
  const std::size_t n2 = axes.size() > 1 ? axes[1].second.size() : 1;
  const std::size_t cells = n1 * n2;
  const std::size_t width = axes.size() + spec.outputs.size();

  std::vector<std::vector<double>> rows(cells, std::vector<double>(width, std::numeric_limits<double>::quiet_NaN()));
  std::vector<std::string> errors(cells);
  std::vector<double> residuals(cells, 0.0);

  parallel_for(cells, spec.jobs, [&](std::size_t cell) {
    std::vector<std::pair<std::string, double>> point;
    if (axes.size() > 0) point.emplace_back(axes[0].first, axes[0].second[cell / n2]);
    if (axes.size() > 1) point.emplace_back(axes[1].first, axes[1].second[cell % n2]);
    for (std::size_t a = 0; a < point.size(); ++a) rows[cell][a] = point[a].second;
    try {
      const auto values = evaluate_cell(spec, point, &residuals[cell]);
      std::copy(values.begin(), values.end(), rows[cell].begin() + static_cast<std::ptrdiff_t>(point.size()));
    } catch (const Error& e) {
      errors[cell] = to_string(e.code());
    } catch (const std::exception&) {
      errors[cell] = "internal";
    }
  });

  ResultTable table;
  for (const auto& [name, grid] : axes) table.columns.push_back(name);
  for (const auto& o : spec.outputs) table.columns.push_back(o);
  for (std::size_t i = 0; i < cells; ++i) table.append(std::move(rows[i]), std::move(errors[i]));

  table.add_meta("tool", std::string("rabistat ") + RABISTAT_VERSION);
  table.add_meta("model", to_string(spec.model));
  table.add_meta("params", describe_params(spec.params));
  if (spec.pump_ratio) table.add_meta("pump_ratio", fmt(*spec.pump_ratio));
  if (spec.model == SweepModel::thermal) {
    table.add_meta("thermal", std::string("mode=") + to_string(spec.thermal_mode) + " T=" + fmt(spec.temperature) +
                                  " kB=" + fmt(kBoltzmannEvPerKelvin) + "eV/K hbar_omega0=1eV");
  }
  if (spec.model == SweepModel::qrm || spec.model == SweepModel::jcm) {
    table.add_meta("continuation", "start_eta=" + fmt(spec.continuation.start_eta) +
                                       " steps=" + std::to_string(spec.continuation.steps) +
                                       " margin=" + fmt(spec.continuation.ambiguity_margin));
  }
  if (spec.axis1) table.add_meta("axis1", spec.axis1->name + " " + spec.axis1->grid.describe());
  if (spec.axis2) table.add_meta("axis2", spec.axis2->name + " " + spec.axis2->grid.describe());
  table.add_meta("max_residual", fmt(*std::max_element(residuals.begin(), residuals.end())));
  const auto invalid = std::count_if(table.errors.begin(), table.errors.end(), [](const auto& e) { return !e.empty(); });
  table.add_meta("invalid_cells", std::to_string(invalid));
  return table;
}

}  // namespace rabistat
