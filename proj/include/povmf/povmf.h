// Copyright 2026 The povmf Authors
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

/* C interface to the povmf library. All handles are opaque; every function
 * that can fail returns a povmf_status and leaves a message retrievable with
 * povmf_last_error() on the calling thread. Strings returned through char**
 * are owned by the caller and released with povmf_string_free(). */
#ifndef POVMF_H
#define POVMF_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(POVMF_BUILDING_LIBRARY)
#    define POVMF_API __declspec(dllexport)
#  else
#    define POVMF_API __declspec(dllimport)
#  endif
#else
#  define POVMF_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum povmf_status {
    POVMF_OK = 0,
    POVMF_ERR_INVALID_ARGUMENT = 1,
    POVMF_ERR_DIMENSION_MISMATCH = 2,
    POVMF_ERR_NOT_HERMITIAN = 3,
    POVMF_ERR_NOT_POSITIVE = 4,
    POVMF_ERR_NOT_COMPLETE = 5,
    POVMF_ERR_NOT_NUMERIC = 6,
    POVMF_ERR_NOT_TRACE_PRESERVING = 7,
    POVMF_ERR_NOT_PROJECTIVE = 8,
    POVMF_ERR_NOT_COMMUTING = 9,
    POVMF_ERR_NOT_UNITARY = 10,
    POVMF_ERR_IMPOSSIBLE_OUTCOME = 11,
    POVMF_ERR_CAPACITY_EXCEEDED = 12,
    POVMF_ERR_PHASE_MISMATCH = 13,
    POVMF_ERR_UNKNOWN_LABEL = 14,
    POVMF_ERR_PARSE = 15,
    POVMF_ERR_IO = 16,
    POVMF_ERR_INTERNAL = 17
} povmf_status;

POVMF_API const char* povmf_version(void);
POVMF_API const char* povmf_status_name(povmf_status status);
/* Message of the most recent failure on this thread; "" if none. */
POVMF_API const char* povmf_last_error(void);
POVMF_API void povmf_string_free(char* s);

/* ---- POVMs ------------------------------------------------------------ */

typedef struct povmf_povm povmf_povm;

POVMF_API povmf_status povmf_povm_from_json(const char* json, povmf_povm** out);
POVMF_API povmf_status povmf_povm_qubit_phase(int m, povmf_povm** out);
POVMF_API povmf_status povmf_povm_to_json(const povmf_povm* povm, char** out);
POVMF_API size_t povmf_povm_outcomes(const povmf_povm* povm);
POVMF_API size_t povmf_povm_dim(const povmf_povm* povm);
/* Max over outcomes of the Frobenius distance between elements. */
POVMF_API povmf_status povmf_povm_distance(const povmf_povm* a, const povmf_povm* b, double* out);
POVMF_API void povmf_povm_free(povmf_povm* povm);

/* ---- Scenarios (chain models) ---------------------------------------- */

typedef struct povmf_scenario povmf_scenario;

/* Run parameters a scenario file may carry; has_* flags mark presence. */
typedef struct povmf_run_params {
    int has_seed;
    uint64_t seed;
    int has_steps;
    size_t steps;
    int has_trajectories;
    size_t trajectories;
    int has_tol;
    double tol;
} povmf_run_params;

POVMF_API povmf_status povmf_scenario_from_json(const char* json, povmf_scenario** out);
POVMF_API povmf_status povmf_scenario_load(const char* path, povmf_scenario** out);
POVMF_API povmf_status povmf_scenario_run_params(const povmf_scenario* scenario, povmf_run_params* out);
POVMF_API size_t povmf_scenario_horizon(const povmf_scenario* scenario);
POVMF_API size_t povmf_scenario_sys_dim(const povmf_scenario* scenario);
POVMF_API size_t povmf_scenario_probe_dim(const povmf_scenario* scenario);
POVMF_API void povmf_scenario_free(povmf_scenario* scenario);

/* ---- Trajectory simulation ------------------------------------------- */

typedef struct povmf_simulate_options {
    uint64_t seed;
    size_t steps;
    size_t trajectories;
    unsigned threads; /* 0: hardware concurrency; output is independent of it */
    double tol;       /* 0: library default */
} povmf_simulate_options;

typedef struct povmf_simulation povmf_simulation;

POVMF_API povmf_status povmf_simulate(const povmf_scenario* scenario, const povmf_simulate_options* options,
                                      povmf_simulation** out);
POVMF_API size_t povmf_simulation_count(const povmf_simulation* sim);
POVMF_API povmf_status povmf_simulation_trajectory_csv(const povmf_simulation* sim, size_t index, char** out);
POVMF_API povmf_status povmf_simulation_summary_json(const povmf_simulation* sim, char** out);
/* Writes trajectory_<k>.csv for every trajectory and summary.json into dir. */
POVMF_API povmf_status povmf_simulation_write(const povmf_simulation* sim, const char* dir);
POVMF_API void povmf_simulation_free(povmf_simulation* sim);

/* ---- Reports ---------------------------------------------------------- */

typedef struct povmf_report povmf_report;

POVMF_API int povmf_report_passed(const povmf_report* report);
POVMF_API povmf_status povmf_report_text(const povmf_report* report, char** out);
POVMF_API povmf_status povmf_report_json(const povmf_report* report, char** out);
POVMF_API void povmf_report_free(povmf_report* report);

typedef struct povmf_verify_options {
    uint64_t seed;
    int has_tol_override;
    double tol_override;
} povmf_verify_options;

/* Runs every verification check; the report passes iff all checks pass. */
POVMF_API povmf_status povmf_verify(const povmf_verify_options* options, povmf_report** out);

/* Conditions one interaction on outcome d of the qubit phase POVM for each M
 * in m_list. The interaction, system state and probe state come from the
 * scenario (first step) or, when scenario is NULL, are drawn from seed.
 * The report passes iff the largest pairwise trace distance is <= tol. */
POVMF_API povmf_status povmf_phase_demo(const povmf_scenario* scenario, const int* m_list, size_t m_count, int d,
                                        uint64_t seed, double tol, povmf_report** out);

typedef struct povmf_identify_options {
    const povmf_povm* target;    /* ground truth; required unless recorded_csv is set */
    const char* recorded_csv;    /* CSV text "probe_state_index,outcome_label,count" or NULL */
    const char* const* labels;   /* outcome labels for recorded data; NULL to take them from target */
    size_t label_count;
    size_t dim;                  /* for recorded data without target */
    uint64_t shots;              /* per probe state; 0 means exact probabilities */
    uint64_t seed;
    double error_bound;          /* report passes iff error <= bound (when a target is given) */
} povmf_identify_options;

POVMF_API povmf_status povmf_identify(const povmf_identify_options* options, povmf_report** report,
                                      povmf_povm** estimated);

#ifdef __cplusplus
}
#endif

#endif /* POVMF_H */
