// Copyright 2026 The qmcast Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/*
 * C interface to the qmcast simulator.
 *
 * Every function that can fail returns a qmc_status; on failure the message
 * is available from qmc_last_error() until the next call on the same thread.
 * Strings returned through char** out-parameters are owned by the caller and
 * must be released with qmc_string_free().
 */
#ifndef QMCAST_QMCAST_H
#define QMCAST_QMCAST_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(QMC_BUILDING_LIBRARY)
#    define QMC_API __declspec(dllexport)
#  else
#    define QMC_API __declspec(dllimport)
#  endif
#else
#  define QMC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qmc_status {
    QMC_OK = 0,
    QMC_ERR_NON_PRIME = 1,
    QMC_ERR_SPEC_MISMATCH = 2,
    QMC_ERR_ZERO_INVERSE = 3,
    QMC_ERR_INCONSISTENT = 4,
    QMC_ERR_PARSE = 5,
    QMC_ERR_CYCLIC_GRAPH = 6,
    QMC_ERR_STRUCTURE_VIOLATION = 7,
    QMC_ERR_UNKNOWN_TARGET = 8,
    QMC_ERR_INFEASIBLE_RATE = 9,
    QMC_ERR_SEARCH_EXHAUSTED = 10,
    QMC_ERR_DIM_MISMATCH = 11,
    QMC_ERR_NON_ISOMETRY = 12,
    QMC_ERR_UNKNOWN_REGISTER = 13,
    QMC_ERR_INSUFFICIENT_EBITS = 14,
    QMC_ERR_CONSTRAINT_VIOLATED = 15,
    QMC_ERR_EDGE_NOT_AT_SOURCE = 16,
    QMC_ERR_UNSOLVABLE_CODE = 17,
    QMC_ERR_INDEX_OUT_OF_RANGE = 18,
    QMC_ERR_DEGENERATE_PARAMS = 19,
    QMC_ERR_MISSING_OUTCOME = 20,
    QMC_ERR_SUPPORT_VIOLATION = 21,
    QMC_ERR_INVALID_ARGUMENT = 22,
    QMC_ERR_IO = 23,
    QMC_ERR_INTERNAL = 99
} qmc_status;

typedef struct qmc_network qmc_network;
typedef struct qmc_code qmc_code;

QMC_API const char *qmc_version(void);
QMC_API const char *qmc_status_name(qmc_status status);
QMC_API const char *qmc_last_error(void);
QMC_API void qmc_string_free(char *s);

/* Networks: JSON {"nodes", "edges": [[tail, head], ...], "source", "targets"}. */
QMC_API qmc_status qmc_network_parse(const char *json, qmc_network **out);
QMC_API qmc_status qmc_network_load(const char *path, qmc_network **out);
QMC_API void qmc_network_free(qmc_network *net);
QMC_API qmc_status qmc_network_target_count(const qmc_network *net, size_t *out);
QMC_API qmc_status qmc_network_min_cut(const qmc_network *net, const char *target, size_t *out);
QMC_API qmc_status qmc_network_to_json(const qmc_network *net, char **out);

/* Linear multicast codes over GF(p^t). */
QMC_API qmc_status qmc_code_construct(
    const qmc_network *net, uint32_t p, uint32_t t, uint32_t rate, uint64_t seed, qmc_code **out);
QMC_API qmc_status qmc_code_from_json(const char *json, qmc_code **out);
QMC_API qmc_status qmc_code_to_json(const qmc_code *code, char **out);
QMC_API void qmc_code_free(qmc_code *code);
/* Writes x (rate field-element indices) through the code and decodes at every
 * target; *ok is 1 when all targets recover x. */
QMC_API qmc_status qmc_code_round_trip(const qmc_code *code, const uint64_t *message, size_t len, int *ok);

/* Min-cut table plus a constructed code when the rate is feasible. Returns
 * QMC_ERR_INFEASIBLE_RATE (with the table still written) when it is not. */
QMC_API qmc_status qmc_code_report(
    const qmc_network *net, uint32_t p, uint32_t t, uint32_t rate, uint64_t seed, char **report_out);

/* Runs a configuration document (see README). Relative paths inside the
 * configuration resolve against base_dir, which may be NULL. *passed is 1
 * when every verification passed. */
QMC_API qmc_status qmc_run(const char *config_json, const char *base_dir, char **report_out, int *passed);
QMC_API qmc_status qmc_sweep(const char *config_json, const char *base_dir, size_t points, char **csv_out);
QMC_API qmc_status qmc_verify_report(const char *report_json, char **verdict_out, int *passed);

#ifdef __cplusplus
}
#endif

#endif
