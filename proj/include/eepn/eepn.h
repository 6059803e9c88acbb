/*
 * SPDX-License-Identifier: Apache-2.0
 *
 * eepn-lab: equalization-enhanced phase noise simulation and modelling
 * Copyright (C) 2026 The eepn-lab Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/*
 * C interface of libeepn.
 *
 * Objects are opaque handles created by eepn_*_create/load/parse functions and released
 * with the matching eepn_*_free. Every fallible call returns an eepn_status; on failure
 * eepn_last_error() describes the problem. The message is thread-local and stays valid
 * until the next failing call on the same thread.
 */

#ifndef EEPN_EEPN_H
#define EEPN_EEPN_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define EEPN_API __declspec(dllexport)
#else
#define EEPN_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum eepn_status {
    EEPN_OK = 0,
    EEPN_ERR_INVALID_ARGUMENT = 1,
    EEPN_ERR_OUT_OF_RANGE = 2,
    EEPN_ERR_FORMAT = 3,
    EEPN_ERR_NUMERIC = 4,
    EEPN_ERR_CONFIG = 5,
    EEPN_ERR_IO = 6,
    EEPN_ERR_INTERNAL = 99
} eepn_status;

EEPN_API const char* eepn_version(void);
EEPN_API const char* eepn_last_error(void);
EEPN_API const char* eepn_status_name(eepn_status status);

/* Run configuration (key = value text). */
typedef struct eepn_config eepn_config;

EEPN_API eepn_status eepn_config_parse(const char* text, eepn_config** out);
EEPN_API eepn_status eepn_config_load(const char* path, eepn_config** out);
EEPN_API void eepn_config_free(eepn_config* config);

/* LO phase traces (rad, unwrapped). */
typedef struct eepn_trace eepn_trace;

EEPN_API eepn_status eepn_trace_create(const double* phases, size_t n, double sample_rate, eepn_trace** out);
EEPN_API eepn_status eepn_trace_wiener(double linewidth_hz, size_t n, double rate_hz, uint64_t seed,
                                       eepn_trace** out);
EEPN_API eepn_status eepn_trace_load(const char* path, eepn_trace** out);
EEPN_API eepn_status eepn_trace_save(const eepn_trace* trace, const char* path);
EEPN_API size_t eepn_trace_length(const eepn_trace* trace);
EEPN_API double eepn_trace_sample_rate(const eepn_trace* trace);
EEPN_API const double* eepn_trace_data(const eepn_trace* trace);
EEPN_API eepn_status eepn_trace_detrend(const eepn_trace* trace, int degree, eepn_trace** out);
EEPN_API eepn_status eepn_trace_resample(const eepn_trace* trace, double target_rate, eepn_trace** out);
EEPN_API void eepn_trace_free(eepn_trace* trace);

/* Series keyed by sample/block index. */
typedef struct eepn_series eepn_series;

EEPN_API eepn_status eepn_series_load_csv(const char* path, eepn_series** out);
EEPN_API eepn_status eepn_series_save_csv(const eepn_series* series, const char* path);
EEPN_API size_t eepn_series_length(const eepn_series* series);
EEPN_API const double* eepn_series_values(const eepn_series* series);
EEPN_API const size_t* eepn_series_indices(const eepn_series* series);
EEPN_API void eepn_series_free(eepn_series* series);

/* Population variance over each full centered window; indices are trace sample indices. */
EEPN_API eepn_status eepn_moving_variance(const eepn_trace* trace, size_t window, eepn_series** out);
/* Temporal GN prediction on disjoint blocks of m + 1 symbols; trace at the symbol rate. */
EEPN_API eepn_status eepn_temporal_gn_predict(const eepn_trace* trace, size_t n_cd, size_t m, eepn_series** out);
/* rho_defined is 0 when either input has zero variance (rho is then 0). */
EEPN_API eepn_status eepn_pearson(const eepn_series* a, const eepn_series* b, double* rho, int* rho_defined);

/* Commands behind the eepn-lab CLI. */
typedef struct eepn_compare_result {
    double rho;
    int rho_defined;
    double mean_a;
    double mean_b;
    size_t n_blocks;
} eepn_compare_result;

EEPN_API eepn_status eepn_simulate(const eepn_config* config, const char* out_dir);
EEPN_API eepn_status eepn_predict(const eepn_config* config, const char* trace_path, const char* out_dir);
/* out_dir may be NULL; otherwise report.txt, hist_a.csv and hist_b.csv are written there. */
EEPN_API eepn_status eepn_compare(const char* series_a_path, const char* series_b_path, const char* out_dir,
                                  eepn_compare_result* out);
/* Renders the key=value report. Writes at most cap bytes including the terminator and
 * stores the full length (without terminator) in *needed when non-NULL. */
EEPN_API eepn_status eepn_format_compare_report(const eepn_compare_result* result, char* buf, size_t cap,
                                                size_t* needed);
EEPN_API eepn_status eepn_prep_trace(const char* raw_path, int degree, double target_rate, const char* out_path);

#ifdef __cplusplus
}
#endif

#endif /* EEPN_EEPN_H */
