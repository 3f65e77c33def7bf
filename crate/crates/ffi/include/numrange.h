#ifndef NUMRANGE_H
#define NUMRANGE_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum NrStatus {
  NR_STATUS_OK = 0,
  NR_STATUS_NULL_POINTER = 1,
  NR_STATUS_INVALID_INPUT = 2,
  NR_STATUS_NUMERICAL = 3,
  NR_STATUS_BUFFER_TOO_SMALL = 4,
  NR_STATUS_PANIC = 5,
} NrStatus;

// Opaque square complex matrix.
typedef struct NrMatrix NrMatrix;

// Opaque convex polygon with counter-clockwise vertices.
typedef struct NrPolygon NrPolygon;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the most recent failure on this thread, or null. The pointer
// stays valid until the next failing call on the same thread.
const char *nr_last_error_message(void);

// Builds an `n×n` matrix from row-major real and imaginary parts.
//
// # Safety
// `re` and `im` must point to `n*n` doubles; `out` must be writable.
enum NrStatus nr_matrix_new(size_t n, const double *re, const double *im, struct NrMatrix **out);

// # Safety
// `m` must be null or a handle from this library that has not been freed.
void nr_matrix_free(struct NrMatrix *m);

// Dimension of the matrix, 0 for a null handle.
//
// # Safety
// `m` must be null or a live handle.
size_t nr_matrix_dim(const struct NrMatrix *m);

// Copies the entries into row-major `re`/`im` buffers of `n*n` doubles.
//
// # Safety
// `m` must be a live handle; `re` and `im` must hold `n*n` doubles.
enum NrStatus nr_matrix_entries(const struct NrMatrix *m, double *re, double *im);

// Inner and outer polygons of `W(A)` from `nsamples` support lines.
// Either output pointer may be null if that polygon is not wanted.
//
// # Safety
// `m` must be a live handle; non-null outputs must be writable.
enum NrStatus nr_numerical_range(const struct NrMatrix *m,
                                 size_t nsamples,
                                 struct NrPolygon **inner,
                                 struct NrPolygon **outer);

// # Safety
// `m` must be a live handle; `out` must be writable.
enum NrStatus nr_numerical_radius(const struct NrMatrix *m, size_t nsamples, double *out);

// `‖p(A)‖ / max |p|` over the outer polygon boundary; `p` has ascending coefficients.
//
// # Safety
// Coefficient arrays must hold `ncoeffs` doubles; `m` must be live; `out` writable.
enum NrStatus nr_crouzeix_ratio(const double *coeff_re,
                                const double *coeff_im,
                                size_t ncoeffs,
                                const struct NrMatrix *m,
                                size_t nsamples,
                                double *out);

// Matrix of the compressed shift for the Blaschke product with the given zeros.
//
// # Safety
// Zero arrays must hold `nzeros` doubles; `out` must be writable.
enum NrStatus nr_sb_matrix(const double *zeros_re,
                           const double *zeros_im,
                           size_t nzeros,
                           struct NrMatrix **out);

// Convex hull of the eigenvalues of the unitary 1-dilation at `λ`.
//
// # Safety
// Zero arrays must hold `nzeros` doubles; `out` must be writable.
enum NrStatus nr_poncelet_polygon(const double *zeros_re,
                                  const double *zeros_im,
                                  size_t nzeros,
                                  double lambda_re,
                                  double lambda_im,
                                  struct NrPolygon **out);

// Intersection of the Poncelet polygons over `lambda_count` equally spaced `λ`.
//
// # Safety
// Zero arrays must hold `nzeros` doubles; `out` must be writable.
enum NrStatus nr_numrange_via_dilations(const double *zeros_re,
                                        const double *zeros_im,
                                        size_t nzeros,
                                        size_t lambda_count,
                                        struct NrPolygon **out);

// Number of vertices, 0 for a null handle.
//
// # Safety
// `p` must be null or a live handle.
size_t nr_polygon_len(const struct NrPolygon *p);

// Copies the vertices into `xs`/`ys`, which hold `capacity` doubles each.
//
// # Safety
// `p` must be a live handle; `xs` and `ys` must hold `capacity` doubles.
enum NrStatus nr_polygon_vertices(const struct NrPolygon *p,
                                  double *xs,
                                  double *ys,
                                  size_t capacity);

// # Safety
// `p` must be null or a handle from this library that has not been freed.
void nr_polygon_free(struct NrPolygon *p);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* NUMRANGE_H */
