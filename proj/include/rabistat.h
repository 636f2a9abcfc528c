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

#ifndef RABISTAT_H
#define RABISTAT_H

/* C interface to the rabistat library. All handles are opaque; every call
 * returns a rabi_status and leaves a message for rabi_last_error() on
 * failure. Messages are per thread. Energies and rates are in units of
 * omega0, temperatures in Kelvin. */

#include <stddef.h>

#if defined(RABISTAT_BUILDING_LIBRARY)
#define RABI_API __attribute__((visibility("default")))
#else
#define RABI_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum rabi_status {
  RABI_OK = 0,
  RABI_ERR_INVALID_TRUNCATION = 1,
  RABI_ERR_INVALID_PARAMETER = 2,
  RABI_ERR_DIMENSION_MISMATCH = 3,
  RABI_ERR_NOT_HERMITIAN = 4,
  RABI_ERR_LABELING_AMBIGUITY = 5,
  RABI_ERR_UNKNOWN_LABEL = 6,
  RABI_ERR_NON_UNIQUE_STEADY_STATE = 7,
  RABI_ERR_POSITIVITY_VIOLATION = 8,
  RABI_ERR_NO_EMISSION = 9,
  RABI_ERR_EMPTY_TRUNCATION = 10,
  RABI_ERR_MISSING_LABELS = 11,
  RABI_ERR_DEGENERATE_PARAMETERS = 12,
  RABI_ERR_THERMAL_NORMALIZATION = 13,
  RABI_ERR_EIGENSOLVER_FAILURE = 14,
  RABI_ERR_INVALID_SPEC = 15,
  RABI_ERR_IO = 16,
  RABI_ERR_NULL_ARGUMENT = 17,
  RABI_ERR_INTERNAL = 18
} rabi_status;

typedef enum rabi_model { RABI_MODEL_QRM = 0, RABI_MODEL_JCM = 1 } rabi_model;

typedef enum rabi_detector { RABI_DETECTOR_X = 0, RABI_DETECTOR_XDOT = 1, RABI_DETECTOR_XDDOT = 2 } rabi_detector;

typedef struct rabi_params {
  double omega0;
  double eta;
  double kappa;
  double gamma;
  double Gamma;
  int n_fock;
} rabi_params;

typedef struct rabi_system rabi_system;
typedef struct rabi_table rabi_table;

RABI_API const char* rabi_version(void);
RABI_API const char* rabi_last_error(void);
RABI_API const char* rabi_status_name(rabi_status status);
/* Nonzero for failures of the numerics rather than of the request. */
RABI_API int rabi_status_is_numerical(rabi_status status);

/* omega0 1, eta 0, kappa 0.05, gamma 1e-3, Gamma 0, n_fock 10. */
RABI_API void rabi_params_default(rabi_params* params);

/* A solved parameter point. Work happens on first use of each quantity. */
RABI_API rabi_status rabi_system_create(rabi_model model, const rabi_params* params, rabi_system** out);
RABI_API void rabi_system_destroy(rabi_system* system);

RABI_API rabi_status rabi_system_dimension(rabi_system* system, int* out);
/* Ascending energy above the ground state and its label, e.g. "2-". */
RABI_API rabi_status rabi_system_state(rabi_system* system, int index, double* energy, char* label, size_t label_size);
RABI_API rabi_status rabi_system_energy(rabi_system* system, const char* label, double* out);
RABI_API rabi_status rabi_system_steady_info(rabi_system* system, double* residual, double* liouvillian_norm,
                                             double* min_eigenvalue, double* trace);
RABI_API rabi_status rabi_system_g2(rabi_system* system, rabi_detector detector, double* g2, double* n_photon);
/* truncated != 0 restricts the numerator to 0, 1-, 1+, 2-, 2+, 3-. */
RABI_API rabi_status rabi_system_g2_diagonal(rabi_system* system, int truncated, double* out);
RABI_API rabi_status rabi_system_g2_single_pathway(rabi_system* system, double* out);
RABI_API rabi_status rabi_system_population(rabi_system* system, const char* label, double* out);
RABI_API rabi_status rabi_system_dm_element(rabi_system* system, const char* mu, const char* nu, double* re, double* im);
/* op: x_a, x_a_dag, x_sigma, x_sigma_dag. Returns |<to|op|from>|^2. */
RABI_API rabi_status rabi_system_transition_strength(rabi_system* system, const char* op, const char* from,
                                                     const char* to, double* out);
/* Any observable name accepted by sweeps (g2, pop:3-, strength:x_a:1-:0, ...). */
RABI_API rabi_status rabi_system_observable(rabi_system* system, const char* name, double* out);
/* Max-normalized emission spectrum; path receives "eigen" or "resolvent". */
RABI_API rabi_status rabi_system_spectrum(rabi_system* system, const double* omegas, size_t count, double* values,
                                          const char** path);

/* moments: 8 values in the order a+a, s+s, Re a+s, Re as+, a+as+s, Re a+aas+,
 * Re a+a+as, a+a+aa. g2 is NaN when the photon number vanishes. */
RABI_API rabi_status rabi_jcm_analytic(const rabi_params* params, double* moments, double* g2,
                                       int* outside_validity, double* n_approx, double* n2_approx,
                                       double* cooperativity);
/* mode: "gibbs" or "bose_weights". */
RABI_API rabi_status rabi_thermal_g2(const rabi_params* params, double temperature, const char* mode, double* out);

RABI_API rabi_status rabi_converge(rabi_model model, const rabi_params* params, const char* observable, int extra,
                                   double* base, double* extended, double* relative_change, int* converged);

/* Tables. */
RABI_API rabi_status rabi_recipe_count(size_t* out);
RABI_API rabi_status rabi_recipe_name(size_t index, const char** out);
RABI_API rabi_status rabi_recipe_run(const char* name, int jobs, int n_fock, rabi_table** out);
/* config_text in key=value form; overrides are "section.key=value" strings applied after it. */
RABI_API rabi_status rabi_sweep_run(const char* config_text, const char* const* overrides, size_t n_overrides,
                                    int jobs, rabi_table** out);

RABI_API rabi_status rabi_table_create(const char* const* columns, size_t n_columns, rabi_table** out);
RABI_API void rabi_table_destroy(rabi_table* table);
RABI_API rabi_status rabi_table_add_meta(rabi_table* table, const char* key, const char* value);
/* error may be NULL or "" for a valid row. */
RABI_API rabi_status rabi_table_append(rabi_table* table, const double* values, size_t count, const char* error);
RABI_API size_t rabi_table_rows(const rabi_table* table);
RABI_API size_t rabi_table_columns(const rabi_table* table);
RABI_API const char* rabi_table_column_name(const rabi_table* table, size_t column);
RABI_API double rabi_table_value(const rabi_table* table, size_t row, size_t column);
RABI_API const char* rabi_table_row_error(const rabi_table* table, size_t row);
/* path "-" writes to standard output. */
RABI_API rabi_status rabi_table_write_csv(const rabi_table* table, const char* path);

#ifdef __cplusplus
}
#endif

#endif /* RABISTAT_H */
