/* Copyright (c) the logfucik authors.
 * SPDX-License-Identifier: Apache-2.0 */

#ifndef LOGFUCIK_LOGFUCIK_H
#define LOGFUCIK_LOGFUCIK_H

#include <stddef.h>

#if defined(LFK_BUILDING_LIBRARY)
#define LFK_API __attribute__((visibility("default")))
#else
#define LFK_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Every fallible call returns a status; details of the last failure on the calling thread
 * are available from lfk_last_error(). */
typedef enum lfk_status
{
  LFK_OK = 0,
  LFK_ERR_ARGUMENT = 1,
  LFK_ERR_DOMAIN = 2,
  LFK_ERR_CONFIG = 3,
  LFK_ERR_NOT_CONVERGED = 4,
  LFK_ERR_NUMERIC = 5,
  LFK_ERR_IO = 6,
  LFK_ERR_INTERNAL = 7
} lfk_status;

/* Mesh plus assembled Galerkin matrices for one configuration. */
typedef struct lfk_problem lfk_problem;

LFK_API const char *lfk_version(void);
LFK_API const char *lfk_status_name(lfk_status status);
LFK_API const char *lfk_last_error(void);

/* Strings returned by the library are released with lfk_string_free. */
LFK_API void lfk_string_free(char *s);

/* Dimensional constants c_N, rho_N and d_N; any output pointer may be NULL. */
LFK_API lfk_status lfk_constants(int dim, double *c_n, double *rho_n, double *d_n);

/* Parses `text` then `overrides` (either may be NULL) and returns the canonical
 * configuration text. `source` names the first document in error messages. */
LFK_API lfk_status lfk_config_normalize(const char *text, const char *overrides,
                                        const char *source, char **canonical);

/* Runs a subcommand (constants, assemble, eig, curve, verify, fracexp, nonres) with the
 * same configuration inputs. The returned status doubles as the process exit code. */
LFK_API lfk_status lfk_run(const char *command, const char *text, const char *overrides,
                           const char *source);

LFK_API lfk_status lfk_problem_create(const char *config_text, lfk_problem **out);
LFK_API void lfk_problem_destroy(lfk_problem *problem);

/* Number of degrees of freedom n. */
LFK_API lfk_status lfk_problem_size(const lfk_problem *problem, size_t *n);

/* Node coordinates (radial for the disc); `out` holds n values. */
LFK_API lfk_status lfk_problem_nodes(const lfk_problem *problem, double *out, size_t len);

/* Bilinear form u^T A v of nodal vectors of length n. */
LFK_API lfk_status lfk_evaluate_form(const lfk_problem *problem, const double *u,
                                     const double *v, size_t len, double *out);

/* First k eigenvalues; `vectors` (may be NULL) receives k M-normalized eigenvectors, each
 * stored contiguously (n values per vector). */
LFK_API lfk_status lfk_eigenpairs(const lfk_problem *problem, size_t k, double *lambdas,
                                  double *vectors);

/* Minimax value c(r) with the critical point in `u` (may be NULL, n values). */
LFK_API lfk_status lfk_mountain_pass(const lfk_problem *problem, double r, double *c,
                                     double *u);

/* Residual of the pair (alpha, beta) after Newton refinement from `seed`; the refined
 * function goes to `u` (may be NULL). */
LFK_API lfk_status lfk_verify_pair(const lfk_problem *problem, double alpha, double beta,
                                   const double *seed, size_t len, double *residual, double *u);

#ifdef __cplusplus
}
#endif

#endif /* LOGFUCIK_LOGFUCIK_H */
