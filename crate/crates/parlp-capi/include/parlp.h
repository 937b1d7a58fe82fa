#ifndef PARLP_CAPI_H
#define PARLP_CAPI_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status code returned by every fallible call.
 */
typedef enum ParlpStatus {
  PARLP_STATUS_OK = 0,
  PARLP_STATUS_NULL_POINTER = 1,
  PARLP_STATUS_INVALID_UTF8 = 2,
  /**
   * Structural problem in an input document (missing field, ragged
   * matrix, dimension mismatch).
   */
  PARLP_STATUS_SCHEMA_ERROR = 3,
  /**
   * Malformed scalar (bad rational string, zero denominator, bad N).
   */
  PARLP_STATUS_VALUE_ERROR = 4,
  PARLP_STATUS_CAP_EXCEEDED = 5,
  /**
   * The operation needs an optimal problem and did not get one.
   */
  PARLP_STATUS_NOT_OPTIMAL = 6,
  /**
   * Any other domain error (singular basis, zero delta, rectangular
   * basis, infeasible member, ...).
   */
  PARLP_STATUS_DOMAIN_ERROR = 7,
  /**
   * A defect surfaced as a panic and was caught at the boundary.
   */
  PARLP_STATUS_INTERNAL = 8,
} ParlpStatus;

/**
 * Opaque handle to a parsed problem family.
 */
typedef struct ParlpFamily ParlpFamily;

/**
 * Opaque handle to a parsed problem.
 */
typedef struct ParlpProblem ParlpProblem;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses a problem JSON document into an opaque handle.
 *
 * # Safety
 * `json` must be a valid nul-terminated string; `out` must be a valid
 * location to write the handle to. The handle must be released with
 * [`parlp_problem_free`].
 */
enum ParlpStatus parlp_problem_parse(const char *json, struct ParlpProblem **out);

/**
 * Releases a handle returned by [`parlp_problem_parse`]. Null is a no-op.
 *
 * # Safety
 * `problem` must be null or a pointer previously returned by
 * [`parlp_problem_parse`] that has not been freed yet.
 */
void parlp_problem_free(struct ParlpProblem *problem);

/**
 * Canonical JSON serialization of the problem (round-trips bit-identically
 * through [`parlp_problem_parse`]).
 *
 * # Safety
 * `problem` must be a live handle; `out_json` must be a valid write target.
 */
enum ParlpStatus parlp_problem_to_json(const struct ParlpProblem *problem, char **out_json);

/**
 * Solves the problem; `out_json` receives the outcome document
 * (status, value, optimal basic points with certified duals).
 *
 * # Safety
 * `problem` must be a live handle; `out_json` must be a valid write target.
 */
enum ParlpStatus parlp_problem_solve(const struct ParlpProblem *problem, char **out_json);

/**
 * Classifies the problem (feasible, bounded, regular, strongly regular,
 * singleton-solvable, with witnesses).
 *
 * # Safety
 * `problem` must be a live handle; `out_json` must be a valid write target.
 */
enum ParlpStatus parlp_problem_classify(const struct ParlpProblem *problem, char **out_json);

/**
 * Rhs ranging at the representative optimal vertex: interval, slope, and a
 * verification table over the default theta grid. `delta_json` is a JSON
 * array of rationals.
 *
 * # Safety
 * `problem` must be a live handle; `delta_json` a valid nul-terminated
 * string; `out_json` a valid write target.
 */
enum ParlpStatus parlp_problem_rhs_interval(const struct ParlpProblem *problem,
                                            const char *delta_json,
                                            char **out_json);

/**
 * Objective ranging; see [`parlp_problem_rhs_interval`].
 *
 * # Safety
 * Same contract as [`parlp_problem_rhs_interval`].
 */
enum ParlpStatus parlp_problem_objective_interval(const struct ParlpProblem *problem,
                                                  const char *delta_json,
                                                  char **out_json);

/**
 * Parses a family JSON document into an opaque handle.
 *
 * # Safety
 * `json` must be a valid nul-terminated string; `out` a valid write target.
 * The handle must be released with [`parlp_family_free`].
 */
enum ParlpStatus parlp_family_parse(const char *json, struct ParlpFamily **out);

/**
 * Releases a handle returned by [`parlp_family_parse`]. Null is a no-op.
 *
 * # Safety
 * `family` must be null or a pointer previously returned by
 * [`parlp_family_parse`] that has not been freed yet.
 */
void parlp_family_free(struct ParlpFamily *family);

/**
 * Runs the full probe suite over the family members `ns[0..ns_len]`.
 *
 * # Safety
 * `family` must be a live handle; `ns` must point to `ns_len` readable
 * values; `out_json` must be a valid write target.
 */
enum ParlpStatus parlp_family_probe(const struct ParlpFamily *family,
                                    const uint64_t *ns,
                                    uintptr_t ns_len,
                                    char **out_json);

/**
 * Reproduces Example 1 over `ns[0..ns_len]` (pass `ns_len = 0` with any
 * pointer for the default 1..=100) and returns its report.
 *
 * # Safety
 * `ns` must point to `ns_len` readable values when `ns_len > 0`;
 * `out_json` must be a valid write target.
 */
enum ParlpStatus parlp_example1(const uint64_t *ns, uintptr_t ns_len, char **out_json);

/**
 * Frees a string returned through any `out_json` parameter. Null is a
 * no-op.
 *
 * # Safety
 * `s` must be null or a string returned by this library that has not been
 * freed yet.
 */
void parlp_string_free(char *s);

/**
 * The message of the most recent error on this thread, or null when the
 * last call succeeded. The caller owns the string and frees it with
 * [`parlp_string_free`].
 */
char *parlp_last_error_message(void);

/**
 * Static name of a status code ("ok", "schema_error", ...).
 */
const char *parlp_status_name(enum ParlpStatus status);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PARLP_CAPI_H */
