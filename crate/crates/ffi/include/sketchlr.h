#ifndef SKETCHLR_H
#define SKETCHLR_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum SklrStatus {
  SKLR_STATUS_OK = 0,
  SKLR_STATUS_NULL_POINTER = 1,
  SKLR_STATUS_INVALID_ARGUMENT = 2,
  SKLR_STATUS_DIMENSION_MISMATCH = 3,
  SKLR_STATUS_NUMERICAL = 4,
  SKLR_STATUS_PANIC = 5,
} SklrStatus;

typedef enum SklrField {
  SKLR_FIELD_REAL = 0,
  SKLR_FIELD_COMPLEX = 1,
} SklrField;

typedef enum SklrSplitRule {
  SKLR_SPLIT_RULE_DEFAULT = 0,
  SKLR_SPLIT_RULE_FLAT = 1,
  SKLR_SPLIT_RULE_DECAY = 2,
  SKLR_SPLIT_RULE_RAPID = 3,
} SklrSplitRule;

/**
 * Opaque sketch handle. Create with [`sklr_sketch_new`], release with
 * [`sklr_sketch_free`].
 */
typedef struct SklrSketch SklrSketch;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Creates a sketch of the `m × n` zero matrix with Gaussian test
 * matrices of sizes `k` and `l`, drawn from stream `(seed, stream)`.
 *
 * # Safety
 * `out` must be a valid pointer to writable storage for one handle.
 */
enum SklrStatus sklr_sketch_new(size_t m,
                                size_t n,
                                size_t k,
                                size_t l,
                                enum SklrField field,
                                uint64_t seed,
                                uint64_t stream,
                                struct SklrSketch **out);

/**
 * Releases a handle. Null is ignored.
 *
 * # Safety
 * `s` must be null or a handle from [`sklr_sketch_new`] not yet freed.
 */
void sklr_sketch_free(struct SklrSketch *s);

/**
 * Writes the input dimensions.
 *
 * # Safety
 * `s` must be a live handle; `m` and `n` must be writable.
 */
enum SklrStatus sklr_sketch_dims(const struct SklrSketch *s, size_t *m, size_t *n);

/**
 * Applies `A ← θA + ηH` to the sketched matrix. `h` holds `H` row-major
 * with `len` doubles. Imaginary parts must be zero for real sketches.
 *
 * # Safety
 * `s` must be a live handle and `h` must point to `len` readable doubles.
 */
enum SklrStatus sklr_sketch_update(struct SklrSketch *s,
                                   const double *h,
                                   size_t len,
                                   double theta_re,
                                   double theta_im,
                                   double eta_re,
                                   double eta_im);

/**
 * Adds `value` to entry `(i, j)` of the sketched matrix.
 *
 * # Safety
 * `s` must be a live handle.
 */
enum SklrStatus sklr_sketch_add_entry(struct SklrSketch *s,
                                      size_t i,
                                      size_t j,
                                      double re,
                                      double im);

/**
 * Writes the rank-k reconstruction `QX` row-major into `out`.
 *
 * # Safety
 * `s` must be a live handle and `out` must point to `len` writable doubles.
 */
enum SklrStatus sklr_sketch_low_rank(struct SklrSketch *s, double *out, size_t len);

/**
 * Writes the rank-`r` truncation `Q[[X]]_r` row-major into `out`.
 *
 * # Safety
 * `s` must be a live handle and `out` must point to `len` writable doubles.
 */
enum SklrStatus sklr_sketch_fixed_rank(struct SklrSketch *s, size_t r, double *out, size_t len);

/**
 * Sketch sizes `(k, l)` for target rank `r` and budget `t = k + l`.
 * The default rule ignores `t`.
 *
 * # Safety
 * `k` and `l` must be writable.
 */
enum SklrStatus sklr_split(enum SklrSplitRule rule,
                           size_t r,
                           size_t t,
                           enum SklrField field,
                           size_t *k,
                           size_t *l);

/**
 * `f(s, t) = s / (t - s - α)`.
 *
 * # Safety
 * `out` must be writable.
 */
enum SklrStatus sklr_f_factor(size_t s, size_t t, enum SklrField field, double *out);

/**
 * Message for the last failure on this thread, or an empty string.
 * Valid until the next call into the library from the same thread.
 */
const char *sklr_last_error(void);

/**
 * Static name of a status code.
 */
const char *sklr_status_str(enum SklrStatus status);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SKETCHLR_H */
