#ifndef TORFILTER_H
#define TORFILTER_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status code returned by every fallible function.
 */
typedef enum TfStatus {
  TF_STATUS_OK = 0,
  TF_STATUS_NULL_POINTER = 1,
  TF_STATUS_BUFFER_TOO_SMALL = 2,
  TF_STATUS_INVALID_ARGUMENT = 3,
  TF_STATUS_SINGULAR = 4,
  TF_STATUS_NOT_EXPANDING = 5,
  TF_STATUS_DIMENSION_MISMATCH = 6,
  TF_STATUS_NOT_UNIT = 7,
  TF_STATUS_NOT_NORMALIZED = 8,
  TF_STATUS_BAD_DEPTH = 9,
  TF_STATUS_NO_COEFFICIENT_FORM = 10,
  TF_STATUS_POLE_SINGULARITY = 11,
  TF_STATUS_FAILED = 12,
  TF_STATUS_PANIC = 13,
} TfStatus;

/**
 * An expanding integer dilation matrix.
 */
typedef struct TfDilation TfDilation;

/**
 * A trigonometric polynomial on the n-torus.
 */
typedef struct TfFilter TfFilter;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or NULL. The pointer is
 * valid until the next call into this library on the same thread.
 */
const char *tf_last_error_message(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *tf_version(void);

/**
 * Builds a dilation matrix from `dim * dim` row-major entries.
 *
 * # Safety
 * `entries` must point to `dim * dim` readable values and `out` must be
 * writable.
 */
enum TfStatus tf_dilation_new(const int64_t *entries, size_t dim, struct TfDilation **out);

/**
 * Releases a dilation handle. NULL is ignored.
 *
 * # Safety
 * `a` must come from `tf_dilation_new` and not have been freed.
 */
void tf_dilation_free(struct TfDilation *a);

/**
 * # Safety
 * `a` must be a live handle; `out` must be writable.
 */
enum TfStatus tf_dilation_dim(const struct TfDilation *a, size_t *out);

/**
 * `q = |det A|`.
 *
 * # Safety
 * `a` must be a live handle; `out` must be writable.
 */
enum TfStatus tf_dilation_q(const struct TfDilation *a, uint64_t *out);

/**
 * Writes the `q` coset representatives of `Zⁿ/AZⁿ`, row-major `q × n`.
 *
 * # Safety
 * `a` must be a live handle; `buf` must hold `len` writable values.
 */
enum TfStatus tf_dilation_coset_reps(const struct TfDilation *a, int64_t *buf, size_t len);

/**
 * Writes the dual group `F` as exact fractions, row-major `q × n`: the
 * element `(i, j)` is `num[i*n + j] / den[i*n + j]` in `[0, 1)`.
 *
 * # Safety
 * `a` must be a live handle; `num` and `den` must each hold `len` writable
 * values.
 */
enum TfStatus tf_dilation_dual_group(const struct TfDilation *a,
                                     int64_t *num,
                                     int64_t *den,
                                     size_t len);

/**
 * Builds a trigonometric polynomial `Σ c_k e^{2πi k·x}` in dimension `dim`
 * from `count` terms: `ks` holds the frequencies row-major (`count × dim`),
 * `re`/`im` the coefficients. Repeated frequencies are summed.
 *
 * # Safety
 * `ks` must hold `count * dim` values and `re`, `im` `count` values each;
 * `out` must be writable.
 */
enum TfStatus tf_filter_from_coeffs(size_t dim,
                                    const int64_t *ks,
                                    const double *re,
                                    const double *im,
                                    size_t count,
                                    struct TfFilter **out);

/**
 * Releases a filter handle. NULL is ignored.
 *
 * # Safety
 * `f` must come from `tf_filter_from_coeffs` and not have been freed.
 */
void tf_filter_free(struct TfFilter *f);

/**
 * Evaluates the filter at `x` (`dim` coordinates).
 *
 * # Safety
 * `f` must be a live handle, `x` must hold `dim` values, `re` and `im` must
 * be writable.
 */
enum TfStatus tf_filter_eval(const struct TfFilter *f,
                             const double *x,
                             size_t dim,
                             double *re,
                             double *im);

/**
 * Checks the low-pass conditions `m₀(0) = q` and `⟨m₀, m₀⟩ = q` for a mask.
 * `residual` receives the larger of the two residuals and `pass` whether
 * both are below `tol`. A failed check still returns `TF_STATUS_OK`.
 *
 * # Safety
 * `m0` and `a` must be live handles; `residual` and `pass` must be writable.
 */
enum TfStatus tf_validate_low_pass(const struct TfFilter *m0,
                                   const struct TfDilation *a,
                                   double tol,
                                   double *residual,
                                   bool *pass);

/**
 * Truncated scaling-function transform `Φ_N(x) = Π_{k=1}^{N} q⁻¹m₀(B⁻ᵏx)`.
 *
 * # Safety
 * `m0` and `a` must be live handles, `x` must hold `dim` values, `re` and
 * `im` must be writable.
 */
enum TfStatus tf_scaling_fourier(const struct TfFilter *m0,
                                 const struct TfDilation *a,
                                 const double *x,
                                 size_t dim,
                                 size_t depth,
                                 double *re,
                                 double *im);

/**
 * Completes a unit row of length `q` to a `q × q` unitary whose first row
 * is the input. The result is written row-major to `out_re`/`out_im`.
 *
 * # Safety
 * `re` and `im` must hold `q` values; `out_re` and `out_im` must hold
 * `q * q` writable values.
 */
enum TfStatus tf_householder_complete(const double *re,
                                      const double *im,
                                      size_t q,
                                      double *out_re,
                                      double *out_im);

/**
 * The obstruction low-pass filter `h₀` at a point of the 5-torus.
 *
 * # Safety
 * `x` must hold 5 values; `re` and `im` must be writable.
 */
enum TfStatus tf_obstruction_h0(const double *x, bool calibrated, double *re, double *im);

/**
 * Runs the seeded identity suite on `samples` random points. `max_ratio`
 * receives the largest residual divided by its tolerance, `pass` whether
 * every identity holds.
 *
 * # Safety
 * `max_ratio` and `pass` must be writable.
 */
enum TfStatus tf_obstruction_check_identities(size_t samples,
                                              uint64_t seed,
                                              double *max_ratio,
                                              bool *pass);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TORFILTER_H */
