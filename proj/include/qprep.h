/* Copyright 2026 The qprep Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C interface to the qprep amplitude-amplification simulator. All objects
 * are opaque handles; every fallible call returns a status code and leaves a
 * message readable through qprep_last_error() on failure. Handles are not
 * shared across threads without external synchronization, but independent
 * handles may be used from different threads concurrently.
 */

#ifndef QPREP_H
#define QPREP_H

#include <stddef.h>
#include <stdint.h>

#ifdef _WIN32
#define QPREP_API __declspec(dllexport)
#else
#define QPREP_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qprep_status {
  QPREP_OK = 0,
  QPREP_ERR_INVALID_ARGUMENT = 1, /* bad configuration, table or option */
  QPREP_ERR_VALIDATION = 2,       /* a numeric contract was violated */
  QPREP_ERR_POSTSELECT = 3,       /* impossible post-selection */
  QPREP_ERR_IO = 4,               /* file reading or parsing */
  QPREP_ERR_INTERNAL = 5
} qprep_status;

typedef struct qprep_table qprep_table;
typedef struct qprep_report qprep_report;

/* Message for the most recent failure on the calling thread. */
QPREP_API const char* qprep_last_error(void);

/* ---- oracle tables ----------------------------------------------------- */

/* Signed values, |values[i]| <= 2^(m-1)-1, count = 2^n, not all zero. */
QPREP_API qprep_status qprep_table_create(int n, int m, const int64_t* values,
                                          size_t count, qprep_table** out);
/* JSON object {"n":..,"m":..,"values":[..]} or plain text, one signed
 * integer per line. value_width_hint 0 takes the width from the file
 * (smallest fitting width for text). */
QPREP_API qprep_status qprep_table_load(const char* path, int value_width_hint,
                                        qprep_table** out);
/* Deterministic per seed; values uniform in [-(2^(m-1)-1), 2^(m-1)-1]. */
QPREP_API qprep_status qprep_table_random(int n, int m, uint64_t seed,
                                          qprep_table** out);
QPREP_API void qprep_table_free(qprep_table* table);

QPREP_API int qprep_table_n(const qprep_table* table);
QPREP_API int qprep_table_m(const qprep_table* table);
QPREP_API int64_t qprep_table_value(const qprep_table* table, uint64_t i);
/* Amplification angle theta = arcsin(sqrt(sum sin^2(phi_i) / N)). */
QPREP_API double qprep_table_theta(const qprep_table* table);
QPREP_API int qprep_table_equal(const qprep_table* a, const qprep_table* b);

/* ---- runs --------------------------------------------------------------- */

typedef struct qprep_run_options {
  const char* method;    /* "baseline" | "fast-rz" | "fast-kickback" */
  const char* exactness; /* NULL | "none" | "prakash" | "scaled" */
  const char* engine;    /* NULL | "dense" | "structured" */
  int iterations;        /* -1 = auto; exact variants require -1 */
  int phase_width;       /* kickback only; 0 = default m+4 */
  int collect_timing;    /* nonzero: record wall time in the report */
} qprep_run_options;

/* Executes one full state-preparation run. A failed final post-selection is
 * reported in the result, not as an error status. */
QPREP_API qprep_status qprep_run(const qprep_table* table,
                                 const qprep_run_options* options,
                                 qprep_report** out);
QPREP_API void qprep_report_free(qprep_report* report);

/* ---- report access ------------------------------------------------------ */

typedef struct qprep_iteration {
  int iteration;
  uint64_t queries_cumulative;
  double p_success;
  double overlap_omega;
  double fidelity;
} qprep_iteration;

QPREP_API const char* qprep_report_method(const qprep_report* report);
QPREP_API int qprep_report_phase_width(const qprep_report* report);
QPREP_API int qprep_report_iterations(const qprep_report* report);
QPREP_API int qprep_report_rows(const qprep_report* report);
QPREP_API qprep_status qprep_report_row(const qprep_report* report, int row,
                                        qprep_iteration* out);
QPREP_API uint64_t qprep_report_total_queries(const qprep_report* report);
QPREP_API double qprep_report_p_success(const qprep_report* report);
QPREP_API double qprep_report_fidelity(const qprep_report* report);
QPREP_API int qprep_report_postselect_failed(const qprep_report* report);
QPREP_API double qprep_report_wall_ms(const qprep_report* report);
/* Method-specific scalars: "theta"; exact variants add "theta_bar", "k_bar",
 * "scale_c", "fidelity_original_target", "fidelity_scaled_target" and the
 * "literal_*" comparison figures. */
QPREP_API qprep_status qprep_report_scalar(const qprep_report* report,
                                           const char* key, double* out);
/* Echo a random-oracle seed into serialized output. */
QPREP_API void qprep_report_set_seed(qprep_report* report, uint64_t seed);

/* Serialized forms; release with qprep_string_free. CSV floats carry 12
 * significant digits; JSON carries full doubles. */
QPREP_API char* qprep_csv_header(void);
QPREP_API char* qprep_report_csv(const qprep_report* report);
QPREP_API char* qprep_report_csv_summary(const qprep_report* report);
QPREP_API char* qprep_report_json(const qprep_report* report);
QPREP_API void qprep_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif /* QPREP_H */
