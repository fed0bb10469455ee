/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#ifndef SUFFIX_NSC_H
#define SUFFIX_NSC_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum SnscStatus {
  SNSC_STATUS_OK = 0,
  SNSC_STATUS_NULL_POINTER = 1,
  SNSC_STATUS_INVALID_UTF8 = 2,
  SNSC_STATUS_PARSE_ERROR = 3,
  SNSC_STATUS_PRECONDITION_VIOLATION = 4,
  SNSC_STATUS_PARAMETER_OUT_OF_RANGE = 5,
  SNSC_STATUS_BUDGET_EXCEEDED = 6,
  SNSC_STATUS_PANIC = 7,
} SnscStatus;

typedef enum SnscOperation {
  SNSC_OPERATION_UNION = 0,
  SNSC_OPERATION_CONCAT = 1,
  SNSC_OPERATION_INTERSECT = 2,
  SNSC_OPERATION_STAR = 3,
  SNSC_OPERATION_REVERSE = 4,
  SNSC_OPERATION_COMPLEMENT = 5,
} SnscOperation;

/**
 * Opaque automaton handle.
 */
typedef struct SnscNfa SnscNfa;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failure on this thread, or NULL. The
 * pointer stays valid until the next call into this library on the thread.
 */
const char *snsc_last_error_message(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *snsc_version(void);

/**
 * Parses canonical automaton JSON into a new handle.
 *
 * # Safety
 * `json` must be NULL or a NUL-terminated string; `out` must be NULL or
 * writable.
 */
enum SnscStatus snsc_nfa_from_json(const char *json, struct SnscNfa **out);

/**
 * Canonical JSON for `a`; release with `snsc_string_free`.
 *
 * # Safety
 * `a` must be NULL or a live handle; `out` must be NULL or writable.
 */
enum SnscStatus snsc_nfa_to_json(const struct SnscNfa *a, char **out);

/**
 * # Safety
 * `a` must be NULL or a handle from this library not yet freed.
 */
void snsc_nfa_free(struct SnscNfa *a);

/**
 * # Safety
 * `s` must be NULL or a string returned by this library not yet freed.
 */
void snsc_string_free(char *s);

/**
 * # Safety
 * `a` must be NULL or a live handle; `out` must be NULL or writable.
 */
enum SnscStatus snsc_nfa_state_count(const struct SnscNfa *a, size_t *out);

/**
 * Membership of `word`, written with the alphabet's labels ("" for λ).
 *
 * # Safety
 * `a` must be NULL or a live handle, `word` NULL or NUL-terminated, `out`
 * NULL or writable.
 */
enum SnscStatus snsc_nfa_accepts(const struct SnscNfa *a, const char *word, bool *out);

/**
 * Decides suffix-freeness. When the language is not suffix-free and
 * `witness_json` is non-NULL, it receives `["shorter","longer"]`;
 * otherwise it receives NULL.
 *
 * # Safety
 * `a` must be NULL or a live handle; out-pointers NULL or writable.
 */
enum SnscStatus snsc_check_suffix_free(const struct SnscNfa *a,
                                       bool *suffix_free,
                                       char **witness_json);

/**
 * Applies `op`. Binary operations need `b`; unary ones ignore it. With
 * `strict`, operands must be suffix-free, not only non-returning. The
 * complement is returned as a complete DFA in NFA form.
 *
 * # Safety
 * `a` and `b` must be NULL or live handles; `out` NULL or writable.
 */
enum SnscStatus snsc_apply(enum SnscOperation op,
                           const struct SnscNfa *a,
                           const struct SnscNfa *b,
                           bool strict,
                           struct SnscNfa **out);

/**
 * Builds a witness. `n = 0` means "no second parameter". Pair families
 * write the second automaton to `second`, which must then be non-NULL;
 * single families set `*second` to NULL when it is non-NULL.
 *
 * # Safety
 * `family` must be NULL or NUL-terminated; out-pointers NULL or writable.
 */
enum SnscStatus snsc_witness(const char *family,
                             size_t m,
                             size_t n,
                             struct SnscNfa **first,
                             struct SnscNfa **second);

/**
 * Checks a pairs document `[["x","w"], ...]` as a fooling set for L(a).
 *
 * # Safety
 * `a` must be NULL or a live handle, `pairs_json` NULL or NUL-terminated,
 * `out` NULL or writable.
 */
enum SnscStatus snsc_verify_fooling_set(const struct SnscNfa *a, const char *pairs_json, bool *out);

/**
 * Exact NSC up to `max_states`; writes 0 when no NFA that small exists.
 *
 * # Safety
 * `a` must be NULL or a live handle; `out` NULL or writable.
 */
enum SnscStatus snsc_nsc_exhaustive(const struct SnscNfa *a, size_t max_states, size_t *out);

/**
 * Certification report for `op` ("union", "concat", "intersect", "star",
 * "reverse", "complement") as JSON. `n = 0` means "no second parameter".
 *
 * # Safety
 * `op` must be NULL or NUL-terminated; `out` NULL or writable.
 */
enum SnscStatus snsc_certify_json(const char *op, size_t m, size_t n, uint64_t seed, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SUFFIX_NSC_H */
