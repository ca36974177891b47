#ifndef LIENIL_H
#define LIENIL_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of an FFI call.
 */
typedef enum LienilStatus {
  LIENIL_STATUS_OK = 0,
  /**
   * Null pointer or invalid UTF-8 argument.
   */
  LIENIL_STATUS_INVALID_ARGUMENT = 1,
  LIENIL_STATUS_INPUT = 2,
  LIENIL_STATUS_BUDGET = 3,
  LIENIL_STATUS_FIELD = 4,
  /**
   * A verifier reported a counterexample.
   */
  LIENIL_STATUS_VERIFICATION = 5,
  /**
   * Internal panic caught at the boundary.
   */
  LIENIL_STATUS_PANIC = 6,
} LienilStatus;

/**
 * Opaque algebra handle.
 */
typedef struct LienilAlgebra LienilAlgebra;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string.
 */
const char *lienil_version(void);

/**
 * Message of the last failed call on this thread, or an empty string.
 * The pointer stays valid until the next `lienil_*` call on this thread.
 */
const char *lienil_last_error(void);

/**
 * Builds an algebra from a JSON algebra spec.
 *
 * # Safety
 * `json` must be a valid NUL-terminated string and `out` a writable pointer.
 */
enum LienilStatus lienil_algebra_from_json(const char *json, struct LienilAlgebra **out);

/**
 * Block upper-triangular algebra for the composition `ks[0..len]`;
 * `p = 0` selects the rationals.
 *
 * # Safety
 * `ks` must point to `len` readable values and `out` must be writable.
 */
enum LienilStatus lienil_algebra_block(const size_t *ks,
                                       size_t len,
                                       bool unital,
                                       uint64_t p,
                                       struct LienilAlgebra **out);

/**
 * Grassmann algebra on `m` generators; `p = 0` selects the rationals.
 *
 * # Safety
 * `out` must be writable.
 */
enum LienilStatus lienil_algebra_grassmann(size_t m, uint64_t p, struct LienilAlgebra **out);

/**
 * Releases a handle. Null is ignored.
 *
 * # Safety
 * `a` must come from a `lienil_algebra_*` constructor and not be freed twice.
 */
void lienil_algebra_free(struct LienilAlgebra *a);

/**
 * Dimension of the algebra, or 0 for a null handle.
 *
 * # Safety
 * `a` must be null or a live handle.
 */
size_t lienil_algebra_dim(const struct LienilAlgebra *a);

/**
 * Decides L_n. On failure of the identity, `witness` (if non-null) receives
 * a string such as `(E12,E23,E34) ↦ E14`; otherwise it receives null.
 *
 * # Safety
 * `a` must be a live handle, `holds` writable, `witness` null or writable.
 */
enum LienilStatus lienil_satisfies_ln(const struct LienilAlgebra *a,
                                      size_t n,
                                      bool *holds,
                                      char **witness);

/**
 * Least n ≤ `n_max` with L_n, or 0 when there is none.
 *
 * # Safety
 * `a` must be a live handle and `index` writable.
 */
enum LienilStatus lienil_lie_index(const struct LienilAlgebra *a, size_t n_max, size_t *index);

/**
 * The n-th Lie center as JSON `{"dim": .., "basis": [..]}`.
 *
 * # Safety
 * `a` must be a live handle and `out` writable.
 */
enum LienilStatus lienil_lie_center_json(const struct LienilAlgebra *a, size_t n, char **out);

/**
 * The radical as JSON `{"dim": .., "nilpotency_index": .., "basis": [..]}`.
 *
 * # Safety
 * `a` must be a live handle and `out` writable.
 */
enum LienilStatus lienil_radical_json(const struct LienilAlgebra *a, char **out);

/**
 * Runs the identity verifiers on one algebra and writes the reports as a
 * JSON array. Returns `LIENIL_STATUS_VERIFICATION` (with `out` still set)
 * when any report fails.
 *
 * # Safety
 * `a` must be a live handle and `out` writable.
 */
enum LienilStatus lienil_verify_json(const struct LienilAlgebra *a, uint64_t seed, char **out);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from a `lienil_*` call and not be freed twice.
 */
void lienil_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LIENIL_H */
