#ifndef LINKHOM_H
#define LINKHOM_H

/* Generated by cbindgen from linkhom-capi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by fallible entry points.
 */
typedef enum LinkhomStatus {
  LINKHOM_STATUS_OK = 0,
  LINKHOM_STATUS_NULL_POINTER = 1,
  LINKHOM_STATUS_INVALID_UTF8 = 2,
  LINKHOM_STATUS_PARSE_ERROR = 3,
  LINKHOM_STATUS_NON_GENERIC = 4,
  LINKHOM_STATUS_EMPTY_MODULI = 5,
  LINKHOM_STATUS_OUT_OF_RANGE = 6,
  LINKHOM_STATUS_COMPUTE_ERROR = 7,
} LinkhomStatus;

/**
 * Opaque analysis result; query it with the accessor functions and release
 * it with `linkhom_analysis_free`.
 */
typedef struct LinkhomAnalysis LinkhomAnalysis;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Analyzes a length vector given as comma-separated rationals. On success
 * writes a fresh handle into `out` and returns `Ok`; on failure leaves
 * `out` untouched.
 *
 * # Safety
 * `ell` must be a valid NUL-terminated string and `out` a valid pointer.
 */
enum LinkhomStatus linkhom_analyze(const char *ell, struct LinkhomAnalysis **out);

/**
 * Releases an analysis handle. Null is a no-op.
 *
 * # Safety
 * `analysis` must come from `linkhom_analyze` and not be freed twice.
 */
void linkhom_analysis_free(struct LinkhomAnalysis *analysis);

/**
 * Number of entries of the analyzed vector.
 *
 * # Safety
 * `analysis` must be a live handle from `linkhom_analyze`.
 */
uintptr_t linkhom_analysis_n(const struct LinkhomAnalysis *analysis);

/**
 * 1 if the vector is generic (no median subset), else 0.
 *
 * # Safety
 * `analysis` must be a live handle from `linkhom_analyze`.
 */
int32_t linkhom_analysis_is_generic(const struct LinkhomAnalysis *analysis);

/**
 * 1 if the moduli space is empty (`a_0 = 0`), else 0.
 *
 * # Safety
 * `analysis` must be a live handle from `linkhom_analyze`.
 */
int32_t linkhom_analysis_is_empty(const struct LinkhomAnalysis *analysis);

/**
 * Short-set count `a_k`, or 0 when out of range or not generic.
 *
 * # Safety
 * `analysis` must be a live handle from `linkhom_analyze`.
 */
uint64_t linkhom_analysis_a(const struct LinkhomAnalysis *analysis, uintptr_t k);

/**
 * Poincaré polynomial of `M_3(l)` in plain text; caller frees with
 * `linkhom_string_free`. Null when the vector is not generic.
 *
 * # Safety
 * `analysis` must be a live handle from `linkhom_analyze`.
 */
char *linkhom_analysis_p3(const struct LinkhomAnalysis *analysis);

/**
 * Poincaré polynomial of `M_5(l)` in plain text, or null when undefined
 * (not generic, empty moduli, or n < 5).
 *
 * # Safety
 * `analysis` must be a live handle from `linkhom_analyze`.
 */
char *linkhom_analysis_p5(const struct LinkhomAnalysis *analysis);

/**
 * Euler characteristic of `M_4(l)` through `out`; `Ok` only when defined.
 *
 * # Safety
 * `analysis` and `out` must be valid pointers.
 */
enum LinkhomStatus linkhom_analysis_chi_m4(const struct LinkhomAnalysis *analysis, int64_t *out);

/**
 * Euler characteristic of `M_6(l)` through `out`; `Ok` only when defined.
 *
 * # Safety
 * `analysis` and `out` must be valid pointers.
 */
enum LinkhomStatus linkhom_analysis_chi_m6(const struct LinkhomAnalysis *analysis, int64_t *out);

/**
 * Plain-text Poincaré polynomial of the pair `(X^k_d, dX^k_d)`; caller
 * frees with `linkhom_string_free`. Null for `d < 4` or `k < 0`.
 */
char *linkhom_pair_poincare(int64_t d, int64_t k);

/**
 * Runs one scope of the verification suite ("all", "p3", "p5", "pair",
 * "chi", "generators"); returns the number of failing checks, or -1 for an
 * unknown scope.
 *
 * # Safety
 * `scope` must be a valid NUL-terminated string.
 */
int64_t linkhom_verify(const char *scope, uint64_t seed);

/**
 * Releases a string returned by this library. Null is a no-op.
 *
 * # Safety
 * `s` must come from a `linkhom_*` function and not be freed twice.
 */
void linkhom_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LINKHOM_H */
