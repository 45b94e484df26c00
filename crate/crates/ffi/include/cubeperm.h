/* C interface to the cubeperm library. Generated by cbindgen; do not edit. */

#ifndef CUBEPERM_H
#define CUBEPERM_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Outcome of a call through the C interface.
 */
typedef enum {
  CP_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  CP_STATUS_NULL_POINTER = 1,
  /**
   * An argument was outside the domain of the operation.
   */
  CP_STATUS_INVALID_INPUT = 2,
  /**
   * The modulus argument is not prime.
   */
  CP_STATUS_NOT_PRIME = 3,
  /**
   * The prime is not in the residue class the operation needs.
   */
  CP_STATUS_WRONG_RESIDUE_CLASS = 4,
  /**
   * The generator argument does not generate the multiplicative group.
   */
  CP_STATUS_NOT_PRIMITIVE_ROOT = 5,
  /**
   * The requested quantity does not exist for this prime.
   */
  CP_STATUS_NOT_DEFINED = 6,
  /**
   * An internal invariant failed; report this as a bug.
   */
  CP_STATUS_INTERNAL_ERROR = 7,
} CpStatus;

/**
 * Opaque bundle of everything computed for one prime and generator.
 */
typedef struct CpContext CpContext;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Builds the context for prime p. Pass g = 0 to use the smallest
 * generator; otherwise g must be a primitive root mod p. On success the
 * handle is written to out and must be released with cp_context_free.
 *
 * # Safety
 * out must be null or valid for writing one pointer.
 */
CpStatus cp_context_new(uint64_t p, uint64_t g, CpContext **out);

/**
 * Releases a context handle. Null is allowed and ignored.
 *
 * # Safety
 * ctx must be null or a handle from cp_context_new that has not been
 * freed yet.
 */
void cp_context_free(CpContext *ctx);

/**
 * The prime of the context, or 0 when ctx is null.
 *
 * # Safety
 * ctx must be null or a live handle from cp_context_new.
 */
uint64_t cp_context_p(const CpContext *ctx);

/**
 * (p - 1) / 3, the number of cubes mod p, or 0 when ctx is null.
 *
 * # Safety
 * ctx must be null or a live handle from cp_context_new.
 */
uint64_t cp_context_n(const CpContext *ctx);

/**
 * The generator the context was built with, or 0 when ctx is null.
 *
 * # Safety
 * ctx must be null or a live handle from cp_context_new.
 */
uint64_t cp_context_generator(const CpContext *ctx);

/**
 * The cube root of unity mod p the chosen prime maps omega to, or 0
 * when ctx is null.
 *
 * # Safety
 * ctx must be null or a live handle from cp_context_new.
 */
uint64_t cp_context_omega(const CpContext *ctx);

/**
 * Coordinates a, b of the chosen prime a + b*omega above p.
 *
 * # Safety
 * ctx must be null or a live handle from cp_context_new; a and b must
 * be null or valid for writing one i64 each.
 */
CpStatus cp_context_prime_coords(const CpContext *ctx, int64_t *a, int64_t *b);

/**
 * Normalized (r, s) with r^2 + 3 s^2 = 4p for this context's generator.
 *
 * # Safety
 * ctx must be null or a live handle from cp_context_new; r and s must
 * be null or valid for writing one i64 each.
 */
CpStatus cp_context_form(const CpContext *ctx, int64_t *r, int64_t *s);

/**
 * The four residue counts delta, alpha, beta, gamma of the context.
 *
 * # Safety
 * ctx must be null or a live handle from cp_context_new; the four count
 * pointers must be null or valid for writing one u64 each.
 */
CpStatus cp_context_counts(const CpContext *ctx,
                           uint64_t *delta,
                           uint64_t *alpha,
                           uint64_t *beta,
                           uint64_t *gamma);

/**
 * Class number h(-p); defined only when p = 3 mod 4, otherwise
 * NotDefined.
 *
 * # Safety
 * ctx must be null or a live handle from cp_context_new; out must be
 * null or valid for writing one u64.
 */
CpStatus cp_context_class_number(const CpContext *ctx, uint64_t *out);

/**
 * Sign (+1 or -1) of the permutation taking the ascending cubes mod p
 * to the sequence of successive cube powers of g.
 *
 * # Safety
 * out must be null or valid for writing one i32.
 */
CpStatus cp_permutation_sign(uint64_t p, uint64_t g, int32_t *out);

/**
 * Sign of x -> x^3 on the nonzero residues, for p = 2 mod 3, p > 2.
 * The brute-force sign and the closed form are both computed and must
 * agree.
 *
 * # Safety
 * out must be null or valid for writing one i32.
 */
CpStatus cp_cube_map_sign(uint64_t p, int32_t *out);

/**
 * Class number h(-p) for p = 3 mod 4, p > 3.
 *
 * # Safety
 * out must be null or valid for writing one u64.
 */
CpStatus cp_class_number(uint64_t p, uint64_t *out);

/**
 * Whether 3 is a cube mod p, decided by the normalized form of 4p.
 * Pass g = 0 to use the smallest generator.
 *
 * # Safety
 * out must be null or valid for writing one bool.
 */
CpStatus cp_three_is_cube(uint64_t p, uint64_t g, bool *out);

/**
 * Full audit report for one prime as a JSON document. Pass g = 0 to use
 * the smallest generator. The returned string is released with
 * cp_string_free.
 *
 * # Safety
 * out must be null or valid for writing one pointer.
 */
CpStatus cp_report_json(uint64_t p, uint64_t g, char **out);

/**
 * Range audit up to max_p (suites and reports) as a JSON document.
 * jobs = 1 runs serially; higher values parallelize per prime without
 * changing the output bytes. The returned string is released with
 * cp_string_free.
 *
 * # Safety
 * out must be null or valid for writing one pointer.
 */
CpStatus cp_verify_json(uint64_t max_p, uint32_t jobs, char **out);

/**
 * Releases a string returned by this library. Null is allowed and
 * ignored.
 *
 * # Safety
 * s must be null or a string returned by this library that has not been
 * freed yet.
 */
void cp_string_free(char *s);

/**
 * Static name of a status code, e.g. "ok" or "not_prime".
 */
const char *cp_status_name(CpStatus status);

/**
 * Copies the calling thread's most recent error message into buf
 * (truncated to cap - 1 bytes, always NUL-terminated when cap > 0) and
 * returns the full message length in bytes, or 0 when there is none.
 * Call with buf = NULL to query the length alone.
 *
 * # Safety
 * buf must be null or valid for writing cap bytes.
 */
size_t cp_last_error_message(char *buf, size_t cap);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CUBEPERM_H */
