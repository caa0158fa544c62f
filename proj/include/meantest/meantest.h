/*
   Copyright 2026 meantest developers

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

/* C interface of the meantest shared library.
 *
 * All functions return a meantest_status code; outputs are written through
 * pointer arguments. Objects come back as opaque handles that must be
 * released with the matching _free function. Strings returned through
 * char** are heap-allocated UTF-8 and must be released with
 * meantest_string_free. On failure, meantest_last_error() returns a
 * thread-local human-readable message.
 */

#ifndef MEANTEST_MEANTEST_H
#define MEANTEST_MEANTEST_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum meantest_status {
    MEANTEST_OK = 0,
    MEANTEST_ERR_INVALID_ARGUMENT = 1,
    MEANTEST_ERR_DIMENSION_MISMATCH = 2,
    MEANTEST_ERR_PARSE = 3,
    MEANTEST_ERR_IO = 4,
    MEANTEST_ERR_NONCONVERGENCE = 5,
    /* The experiment finished, some cells failed; the report was still
     * produced and carries per-cell error markers. */
    MEANTEST_ERR_PARTIAL = 6,
    MEANTEST_ERR_INTERNAL = 7
} meantest_status;

typedef struct meantest_sample meantest_sample;
typedef struct meantest_result meantest_result;

/* Library version string, e.g. "1.0.0". */
const char* meantest_version(void);

/* Message describing the last failure on the calling thread ("" if none). */
const char* meantest_last_error(void);

/* Human-readable name of a status code. */
const char* meantest_status_name(int status);

void meantest_string_free(char* s);

/* --- samples ----------------------------------------------------------- */

/* Copy a row-major n x d buffer of finite doubles. */
int meantest_sample_create(const double* data, size_t n, size_t d, meantest_sample** out);

/* Load a CSV file (one observation per row, optional header row). */
int meantest_sample_from_csv(const char* path, meantest_sample** out);

void meantest_sample_free(meantest_sample* sample);
size_t meantest_sample_rows(const meantest_sample* sample);
size_t meantest_sample_cols(const meantest_sample* sample);

/* --- the bootstrap test ------------------------------------------------ */

typedef struct meantest_test_config {
    double alpha;           /* significance level in (0,1) */
    uint64_t b_replicates;  /* bootstrap replicates, >= 1 */
    uint64_t seed;          /* master seed; replicate j uses derive(seed, j) */
    const double* mu0;      /* hypothesized mean of length mu0_len, or NULL for zeros */
    size_t mu0_len;
    unsigned threads;       /* worker threads; 0 = hardware default */
} meantest_test_config;

int meantest_run_test(const meantest_sample* sample, const meantest_test_config* config,
                      meantest_result** out);

double meantest_result_statistic(const meantest_result* result);
double meantest_result_quantile(const meantest_result* result);
double meantest_result_p_value(const meantest_result* result);
int meantest_result_reject(const meantest_result* result);
size_t meantest_result_replicate_count(const meantest_result* result);

/* Copy the first len replicate values (generation order) into buf;
 * len must not exceed the replicate count. */
int meantest_result_copy_replicates(const meantest_result* result, double* buf, size_t len);

/* The test report JSON document
 * {n, d, statistic, quantile, p_value, reject, alpha, B, seed, mu0, version}. */
int meantest_result_to_json(const meantest_result* result, const meantest_sample* sample,
                            const meantest_test_config* config, char** json_out);

void meantest_result_free(meantest_result* result);

/* --- diagnostics -------------------------------------------------------- */

/* DiagnosticsReport JSON for a sample. eps_grid may be NULL (default grid
 * 2^-4 .. 2^4); l_projection 0 means all columns. */
int meantest_diagnose(const meantest_sample* sample, const double* eps_grid, size_t eps_len,
                      size_t l_projection, char** json_out);

/* --- simulation harness ------------------------------------------------- */

typedef void (*meantest_progress_fn)(const char* line, void* user);

/* Run an experiment plan (flat key = value text; see the README for the
 * schema). Writes the report JSON even when the status is
 * MEANTEST_ERR_PARTIAL. progress may be NULL. */
int meantest_simulate_text(const char* plan_text, unsigned threads,
                           meantest_progress_fn progress, void* user, char** json_out);
int meantest_simulate_file(const char* plan_path, unsigned threads,
                           meantest_progress_fn progress, void* user, char** json_out);

/* Flatten a report JSON document into the cells CSV. */
int meantest_report_csv(const char* report_json, char** csv_out);

/* --- vectors ------------------------------------------------------------ */

/* Read a vector stored as a single CSV row or column; free with
 * meantest_vector_free. */
int meantest_vector_from_csv(const char* path, double** out, size_t* len);
void meantest_vector_free(double* v);

#ifdef __cplusplus
}
#endif

#endif /* MEANTEST_MEANTEST_H */
