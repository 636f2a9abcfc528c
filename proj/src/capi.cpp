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

#include "rabistat.h"

#include <cmath>
#include <cstring>
#include <iostream>
#include <limits>
#include <memory>
#include <new>
#include <stdexcept>
#include <string>
#include <vector>

#include "rabistat/analytic.hpp"
#include "rabistat/error.hpp"
#include "rabistat/recipes.hpp"
#include "rabistat/solution.hpp"
#include "rabistat/sweep.hpp"
#include "rabistat/table.hpp"

struct rabi_system {
  rabistat::Solution solution;
};

struct rabi_table {
  rabistat::ResultTable table;
};

namespace {

thread_local std::string last_error;

struct NullArgument : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

rabi_status status_of(rabistat::ErrorCode code) { return static_cast<rabi_status>(static_cast<int>(code) + 1); }

template <typename F>
rabi_status guarded(F&& body) {
  try {
    body();
    last_error.clear();
    return RABI_OK;
  } catch (const rabistat::Error& e) {
    last_error = e.what();
    return status_of(e.code());
  } catch (const NullArgument& e) {
    last_error = e.what();
    return RABI_ERR_NULL_ARGUMENT;
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return RABI_ERR_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return RABI_ERR_INTERNAL;
  }
}

void require(const void* p, const char* what) {
  if (p == nullptr) throw NullArgument(std::string("null argument: ") + what);
}

rabistat::SystemParams to_params(const rabi_params* p) {
  require(p, "params");
  rabistat::SystemParams out;
  out.omega0 = p->omega0;
  out.eta = p->eta;
  out.kappa = p->kappa;
  out.gamma = p->gamma;
  out.Gamma = p->Gamma;
  out.n_fock = p->n_fock;
  out.validate();
  return out;
}

rabistat::Model to_model(rabi_model m) {
  if (m == RABI_MODEL_QRM) return rabistat::Model::qrm;
  if (m == RABI_MODEL_JCM) return rabistat::Model::jcm;
  throw rabistat::Error(rabistat::ErrorCode::invalid_parameter, "unknown model");
}

void set_if(double* out, double v) {
  if (out) *out = v;
}

}  // namespace

#define RABI_NULL_GUARD(ptr)                                       \
  do {                                                             \
    if ((ptr) == nullptr) {                                        \
      last_error = "null argument: " #ptr;                         \
      return RABI_ERR_NULL_ARGUMENT;                               \
    }                                                              \
  } while (0)

extern "C" {

RABI_API const char* rabi_version(void) { return RABISTAT_VERSION; }

RABI_API const char* rabi_last_error(void) { return last_error.c_str(); }

RABI_API const char* rabi_status_name(rabi_status status) {
  if (status == RABI_OK) return "ok";
  if (status == RABI_ERR_NULL_ARGUMENT) return "null-argument";
  if (status == RABI_ERR_INTERNAL) return "internal";
  if (status >= RABI_ERR_INVALID_TRUNCATION && status <= RABI_ERR_IO) {
    return rabistat::to_string(static_cast<rabistat::ErrorCode>(status - 1));
  }
  return "unknown";
}

RABI_API int rabi_status_is_numerical(rabi_status status) {
  if (status >= RABI_ERR_INVALID_TRUNCATION && status <= RABI_ERR_IO) {
    return rabistat::is_numerical(static_cast<rabistat::ErrorCode>(status - 1)) ? 1 : 0;
  }
  return status == RABI_ERR_INTERNAL ? 1 : 0;
}

RABI_API void rabi_params_default(rabi_params* params) {
  if (!params) return;
  const rabistat::SystemParams d;
  *params = rabi_params{d.omega0, d.eta, d.kappa, d.gamma, d.Gamma, d.n_fock};
}

RABI_API rabi_status rabi_system_create(rabi_model model, const rabi_params* params, rabi_system** out) {
  RABI_NULL_GUARD(params);
  RABI_NULL_GUARD(out);
  *out = nullptr;
  return guarded([&] { *out = new rabi_system{rabistat::Solution(to_model(model), to_params(params))}; });
}

RABI_API void rabi_system_destroy(rabi_system* system) { delete system; }

RABI_API rabi_status rabi_system_dimension(rabi_system* system, int* out) {
  RABI_NULL_GUARD(system);
  RABI_NULL_GUARD(out);
  return guarded([&] { *out = system->solution.params().dims().total(); });
}

RABI_API rabi_status rabi_system_state(rabi_system* system, int index, double* energy, char* label,
                                       size_t label_size) {
  RABI_NULL_GUARD(system);
  return guarded([&] {
    const auto& es = system->solution.labeled();
    if (index < 0 || index >= es.size()) {
      throw rabistat::Error(rabistat::ErrorCode::invalid_parameter, "state index out of range");
    }
    set_if(energy, es.energies(index));
    if (label && label_size > 0) {
      const std::string s = es.labels[index].str();
      if (s.size() + 1 > label_size) throw rabistat::Error(rabistat::ErrorCode::invalid_parameter, "label buffer too small");
      std::memcpy(label, s.c_str(), s.size() + 1);
    }
  });
}

RABI_API rabi_status rabi_system_energy(rabi_system* system, const char* label, double* out) {
  RABI_NULL_GUARD(system);
  RABI_NULL_GUARD(label);
  RABI_NULL_GUARD(out);
  return guarded([&] { *out = system->solution.labeled().energy(rabistat::PolaritonLabel::parse(label)); });
}

RABI_API rabi_status rabi_system_steady_info(rabi_system* system, double* residual, double* liouvillian_norm,
                                             double* min_eigenvalue, double* trace) {
  RABI_NULL_GUARD(system);
  return guarded([&] {
    const auto& rho = system->solution.steady_state();
    set_if(residual, rho.residual);
    set_if(liouvillian_norm, system->solution.liouvillian_norm());
    set_if(min_eigenvalue, rho.min_eigenvalue);
    set_if(trace, rho.data.trace().real());
  });
}

RABI_API rabi_status rabi_system_g2(rabi_system* system, rabi_detector detector, double* g2, double* n_photon) {
  RABI_NULL_GUARD(system);
  return guarded([&] {
    rabistat::Detector d = rabistat::Detector::x;
    if (detector == RABI_DETECTOR_XDOT) d = rabistat::Detector::x_dot;
    else if (detector == RABI_DETECTOR_XDDOT) d = rabistat::Detector::x_ddot;
    else if (detector != RABI_DETECTOR_X) throw rabistat::Error(rabistat::ErrorCode::invalid_parameter, "unknown detector");
    const auto x = system->solution.emission_operator(d);
    const auto m = rabistat::emission_moments(system->solution.steady_state(), x);
    set_if(n_photon, m.n1);
    set_if(g2, rabistat::g2_zero(system->solution.steady_state(), x));
  });
}

RABI_API rabi_status rabi_system_g2_diagonal(rabi_system* system, int truncated, double* out) {
  RABI_NULL_GUARD(system);
  RABI_NULL_GUARD(out);
  return guarded([&] { *out = system->solution.observable(truncated ? "g2_diag" : "g2_diag_full"); });
}

RABI_API rabi_status rabi_system_g2_single_pathway(rabi_system* system, double* out) {
  RABI_NULL_GUARD(system);
  RABI_NULL_GUARD(out);
  return guarded([&] { *out = system->solution.observable("g2_single"); });
}

RABI_API rabi_status rabi_system_population(rabi_system* system, const char* label, double* out) {
  RABI_NULL_GUARD(system);
  RABI_NULL_GUARD(label);
  RABI_NULL_GUARD(out);
  return guarded([&] { *out = system->solution.observable(std::string("pop:") + label); });
}

RABI_API rabi_status rabi_system_dm_element(rabi_system* system, const char* mu, const char* nu, double* re,
                                            double* im) {
  RABI_NULL_GUARD(system);
  RABI_NULL_GUARD(mu);
  RABI_NULL_GUARD(nu);
  return guarded([&] {
    const std::string suffix = std::string(":") + mu + ":" + nu;
    set_if(re, system->solution.observable("dm_re" + suffix));
    set_if(im, system->solution.observable("dm_im" + suffix));
  });
}

RABI_API rabi_status rabi_system_transition_strength(rabi_system* system, const char* op, const char* from,
                                                     const char* to, double* out) {
  RABI_NULL_GUARD(system);
  RABI_NULL_GUARD(op);
  RABI_NULL_GUARD(from);
  RABI_NULL_GUARD(to);
  RABI_NULL_GUARD(out);
  return guarded([&] {
    *out = rabistat::transition_strength(system->solution.jump(op), rabistat::PolaritonLabel::parse(from),
                                         rabistat::PolaritonLabel::parse(to), system->solution.labeled());
  });
}

RABI_API rabi_status rabi_system_observable(rabi_system* system, const char* name, double* out) {
  RABI_NULL_GUARD(system);
  RABI_NULL_GUARD(name);
  RABI_NULL_GUARD(out);
  return guarded([&] { *out = system->solution.observable(name); });
}

RABI_API rabi_status rabi_system_spectrum(rabi_system* system, const double* omegas, size_t count, double* values,
                                          const char** path) {
  RABI_NULL_GUARD(system);
  RABI_NULL_GUARD(omegas);
  RABI_NULL_GUARD(values);
  return guarded([&] {
    const auto s = system->solution.spectrum(std::span<const double>(omegas, count));
    std::copy(s.values.begin(), s.values.end(), values);
    if (path) *path = rabistat::to_string(s.path);
  });
}

RABI_API rabi_status rabi_jcm_analytic(const rabi_params* params, double* moments, double* g2, int* outside_validity,
                                       double* n_approx, double* n2_approx, double* cooperativity) {
  RABI_NULL_GUARD(params);
  return guarded([&] {
    const auto p = to_params(params);
    const auto m = rabistat::jcm_weak_pump_moments(p);
    const auto lim = rabistat::jcm_limit_formulas(p);
    if (moments) {
      for (int i = 0; i < 8; ++i) moments[i] = m.values[i].real();
    }
    set_if(g2, m.g2 ? *m.g2 : std::numeric_limits<double>::quiet_NaN());
    if (outside_validity) *outside_validity = m.outside_validity ? 1 : 0;
    set_if(n_approx, lim.n_approx);
    set_if(n2_approx, lim.n2_approx);
    set_if(cooperativity, lim.cooperativity);
  });
}

RABI_API rabi_status rabi_thermal_g2(const rabi_params* params, double temperature, const char* mode, double* out) {
  RABI_NULL_GUARD(params);
  RABI_NULL_GUARD(out);
  return guarded([&] {
    const auto p = to_params(params);
    const auto m = mode ? rabistat::parse_thermal_mode(mode) : rabistat::ThermalMode::gibbs;
    const double etas[] = {p.eta};
    const double ts[] = {temperature};
    const auto map = rabistat::thermal_g2_map(etas, ts, m, p.n_fock);
    if (map.errors[0]) throw rabistat::Error(*map.errors[0], "thermal g2 failed at this point");
    *out = map.g2(0, 0);
  });
}

RABI_API rabi_status rabi_converge(rabi_model model, const rabi_params* params, const char* observable, int extra,
                                   double* base, double* extended, double* relative_change, int* converged) {
  RABI_NULL_GUARD(params);
  RABI_NULL_GUARD(observable);
  return guarded([&] {
    const auto r = rabistat::convergence_check(to_model(model), to_params(params), observable, extra);
    set_if(base, r.base_value);
    set_if(extended, r.extended_value);
    set_if(relative_change, r.relative_change);
    if (converged) *converged = r.converged ? 1 : 0;
  });
}

RABI_API rabi_status rabi_recipe_count(size_t* out) {
  RABI_NULL_GUARD(out);
  return guarded([&] { *out = rabistat::recipe_names().size(); });
}

RABI_API rabi_status rabi_recipe_name(size_t index, const char** out) {
  RABI_NULL_GUARD(out);
  return guarded([&] {
    static const std::vector<std::string> names = rabistat::recipe_names();
    if (index >= names.size()) throw rabistat::Error(rabistat::ErrorCode::invalid_parameter, "recipe index out of range");
    *out = names[index].c_str();
  });
}

RABI_API rabi_status rabi_recipe_run(const char* name, int jobs, int n_fock, rabi_table** out) {
  RABI_NULL_GUARD(name);
  RABI_NULL_GUARD(out);
  *out = nullptr;
  return guarded([&] {
    rabistat::RecipeOptions o;
    o.jobs = jobs;
    o.n_fock = n_fock > 0 ? n_fock : o.n_fock;
    auto t = std::make_unique<rabi_table>(rabi_table{rabistat::run_recipe(name, o)});
    *out = t.release();
  });
}

RABI_API rabi_status rabi_sweep_run(const char* config_text, const char* const* overrides, size_t n_overrides,
                                    int jobs, rabi_table** out) {
  RABI_NULL_GUARD(config_text);
  RABI_NULL_GUARD(out);
  *out = nullptr;
  return guarded([&] {
    auto cfg = rabistat::Config::parse(config_text);
    for (size_t i = 0; i < n_overrides; ++i) {
      require(overrides, "overrides");
      require(overrides[i], "override");
      cfg.set(std::string_view(overrides[i]));
    }
    if (jobs > 0) cfg.set("jobs", std::to_string(jobs));
    const auto spec = rabistat::sweep_spec_from_config(cfg);
    auto t = std::make_unique<rabi_table>(rabi_table{rabistat::run_sweep(spec)});
    *out = t.release();
  });
}

RABI_API rabi_status rabi_table_create(const char* const* columns, size_t n_columns, rabi_table** out) {
  RABI_NULL_GUARD(out);
  *out = nullptr;
  if (n_columns > 0) RABI_NULL_GUARD(columns);
  return guarded([&] {
    auto t = std::make_unique<rabi_table>();
    for (size_t i = 0; i < n_columns; ++i) {
      require(columns[i], "column name");
      t->table.columns.emplace_back(columns[i]);
    }
    *out = t.release();
  });
}

RABI_API void rabi_table_destroy(rabi_table* table) { delete table; }

RABI_API rabi_status rabi_table_add_meta(rabi_table* table, const char* key, const char* value) {
  RABI_NULL_GUARD(table);
  RABI_NULL_GUARD(key);
  RABI_NULL_GUARD(value);
  return guarded([&] { table->table.add_meta(key, value); });
}

RABI_API rabi_status rabi_table_append(rabi_table* table, const double* values, size_t count, const char* error) {
  RABI_NULL_GUARD(table);
  if (count > 0) RABI_NULL_GUARD(values);
  return guarded([&] { table->table.append(std::vector<double>(values, values + count), error ? error : ""); });
}

RABI_API size_t rabi_table_rows(const rabi_table* table) { return table ? table->table.rows.size() : 0; }

RABI_API size_t rabi_table_columns(const rabi_table* table) { return table ? table->table.columns.size() : 0; }

RABI_API const char* rabi_table_column_name(const rabi_table* table, size_t column) {
  if (!table || column >= table->table.columns.size()) return nullptr;
  return table->table.columns[column].c_str();
}

RABI_API double rabi_table_value(const rabi_table* table, size_t row, size_t column) {
  if (!table || row >= table->table.rows.size() || column >= table->table.columns.size()) {
    return std::numeric_limits<double>::quiet_NaN();
  }
  return table->table.rows[row][column];
}

RABI_API const char* rabi_table_row_error(const rabi_table* table, size_t row) {
  if (!table || row >= table->table.errors.size()) return nullptr;
  return table->table.errors[row].c_str();
}

RABI_API rabi_status rabi_table_write_csv(const rabi_table* table, const char* path) {
  RABI_NULL_GUARD(table);
  RABI_NULL_GUARD(path);
  return guarded([&] {
    if (std::string_view(path) == "-") {
      rabistat::write_csv(table->table, std::cout);
      std::cout.flush();
    } else {
      rabistat::write_csv(table->table, std::filesystem::path(path));
    }
  });
}

}  // extern "C"
