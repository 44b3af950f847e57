#ifndef CYCLOMUL_H
#define CYCLOMUL_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

/*
 Result codes.
 */
typedef enum CmStatus {
  CM_STATUS_OK = 0,
  CM_STATUS_NULL_POINTER = 1,
  CM_STATUS_NOT_PRIME = 2,
  CM_STATUS_COORD_OUT_OF_RANGE = 3,
  CM_STATUS_DIMENSION_MISMATCH = 4,
  CM_STATUS_ODD_DIMENSION_REQUIRED = 5,
  CM_STATUS_WRONG_BASIS_TYPE = 6,
  CM_STATUS_INVALID_PARAMS = 7,
  CM_STATUS_UNKNOWN_NAME = 8,
  CM_STATUS_UNSUPPORTED = 9,
  CM_STATUS_ORACLE_UNAVAILABLE = 10,
  CM_STATUS_BUFFER_TOO_SMALL = 11,
  CM_STATUS_INTERNAL = 12,
} CmStatus;

/*
 An element of `GF(p)[x]/(x^n - 1)`.
 */
typedef struct CmElement CmElement;

/*
 A normal-basis element of GF(q^m).
 */
typedef struct CmOnbElement CmOnbElement;

/*
 Validated Gauss period parameters.
 */
typedef struct CmOnbParams CmOnbParams;

/*
 Operation tallies of one multiplication.
 */
typedef struct CmOpCount {
  uint64_t mult;
  uint64_t doub;
  uint64_t add;
} CmOpCount;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Message for the most recent failure on this thread, or NULL. The
 pointer stays valid until the next failing call on the same thread.
 */
const char *cm_last_error(void);

/*
 Static description of a status code.
 */
const char *cm_status_message(enum CmStatus status);

/*
 Creates an element of `GF(p)[x]/(x^n - 1)` from `n` coordinates.

 # Safety
 `values` must point to `n` readable integers and `out` must be writable.
 */
enum CmStatus cm_element_new(uint32_t p, const uint32_t *values, size_t n, struct CmElement **out);

/*
 Releases an element; NULL is ignored.

 # Safety
 `e` must come from this library and not be used afterwards.
 */
void cm_element_free(struct CmElement *e);

/*
 Number of coordinates, 0 for NULL.

 # Safety
 `e` must be NULL or a live element.
 */
size_t cm_element_len(const struct CmElement *e);

/*
 Copies the coordinates into `out`, which holds `capacity` values.

 # Safety
 `e` must be a live element and `out` writable for `capacity` values.
 */
enum CmStatus cm_element_coords(const struct CmElement *e, uint32_t *out, size_t capacity);

/*
 Multiplies with the named algorithm (`"direct"`, `"alg1"`, ...). When
 `counts` is not NULL it receives the operation tallies.

 # Safety
 Pointers must be valid; `counts` may be NULL.
 */
enum CmStatus cm_multiply(const char *algo,
                          const struct CmElement *a,
                          const struct CmElement *b,
                          struct CmElement **out,
                          struct CmOpCount *counts);

/*
 Validates Gauss period parameters of type `k` for GF(q^m).

 # Safety
 `out` must be writable.
 */
enum CmStatus cm_onb_params_new(uint32_t m, uint32_t k, uint32_t q, struct CmOnbParams **out);

/*
 Releases parameters; NULL is ignored.

 # Safety
 `p` must come from this library and not be used afterwards.
 */
void cm_onb_params_free(struct CmOnbParams *p);

/*
 The cyclotomic dimension `n = mk + 1`, 0 for NULL.

 # Safety
 `p` must be NULL or live.
 */
uint32_t cm_onb_params_n(const struct CmOnbParams *p);

/*
 Creates a normal-basis element from `len == m` coordinates.

 # Safety
 `params` must be live, `values` readable for `len` values, `out` writable.
 */
enum CmStatus cm_onb_element_new(const struct CmOnbParams *params,
                                 const uint32_t *values,
                                 size_t len,
                                 struct CmOnbElement **out);

/*
 Releases a normal-basis element; NULL is ignored.

 # Safety
 `e` must come from this library and not be used afterwards.
 */
void cm_onb_element_free(struct CmOnbElement *e);

/*
 Number of coordinates, 0 for NULL.

 # Safety
 `e` must be NULL or live.
 */
size_t cm_onb_element_len(const struct CmOnbElement *e);

/*
 Copies the coordinates into `out`, which holds `capacity` values.

 # Safety
 `e` must be live and `out` writable for `capacity` values.
 */
enum CmStatus cm_onb_element_coords(const struct CmOnbElement *e, uint32_t *out, size_t capacity);

/*
 Multiplies normal-basis elements with the named algorithm
 (`"onb1-eq24"`, `"onb2-simpli"`, ...).

 # Safety
 Pointers must be valid; `counts` may be NULL.
 */
enum CmStatus cm_onb_multiply(const char *algo,
                              const struct CmOnbElement *a,
                              const struct CmOnbElement *b,
                              struct CmOnbElement **out,
                              struct CmOpCount *counts);

/*
 Whether the type-(m, k) Gauss period generates a normal basis of GF(q^m).

 # Safety
 `out` must be writable.
 */
enum CmStatus cm_verify_normal_basis(uint32_t m, uint32_t k, uint32_t q, bool *out);

/*
 Closed-form counts of a table row (for example `"direct"`) at size `x >= 2`.

 # Safety
 `label` must be a NUL-terminated string and `out` writable.
 */
enum CmStatus cm_expected_counts(const char *label, uint64_t x, struct CmOpCount *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CYCLOMUL_H */
