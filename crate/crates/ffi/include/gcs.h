#ifndef GCS_H
#define GCS_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result of an FFI call.
typedef enum GcsStatus {
  GCS_STATUS_OK = 0,
  GCS_STATUS_NULL_POINTER = 1,
  GCS_STATUS_INVALID_ARGUMENT = 2,
  GCS_STATUS_INVALID_TYPE = 3,
  GCS_STATUS_SINGULAR = 4,
  GCS_STATUS_POLE = 5,
  GCS_STATUS_BUFFER_TOO_SMALL = 6,
  GCS_STATUS_RUNTIME = 7,
  GCS_STATUS_PANIC = 8,
} GcsStatus;

// Opaque simple Lie algebra together with its default representation.
typedef struct GcsAlgebra GcsAlgebra;

// Opaque phase-space point (u, v, T, S).
typedef struct GcsState GcsState;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Copies the last error message of this thread into `buf` (NUL
// terminated, truncated to `len - 1` bytes) and returns the full message
// length in bytes, excluding the terminator.
//
// # Safety
// `buf` must be null or point to `len` writable bytes.
size_t gcs_last_error_message(char *buf, size_t len);

// Library version as a static NUL-terminated string.
const char *gcs_version(void);

// Builds the algebra of type `family` (one of 'A'..'G') and `rank`, with
// the defining representation for classical types and the adjoint one
// otherwise.
//
// # Safety
// `out` must be a valid pointer to writable storage for one handle.
enum GcsStatus gcs_algebra_new(char family, size_t rank, struct GcsAlgebra **out);

// Releases an algebra handle. Null is ignored.
//
// # Safety
// `alg` must be null or a handle from [`gcs_algebra_new`] not yet freed.
void gcs_algebra_free(struct GcsAlgebra *alg);

// Rank l, or 0 for a null handle.
//
// # Safety
// `alg` must be null or a live handle.
size_t gcs_algebra_rank(const struct GcsAlgebra *alg);

// Number of positive roots |R+|, or 0 for a null handle.
//
// # Safety
// `alg` must be null or a live handle.
size_t gcs_algebra_num_positive_roots(const struct GcsAlgebra *alg);

// Dimension of the algebra, or 0 for a null handle.
//
// # Safety
// `alg` must be null or a live handle.
size_t gcs_algebra_dim(const struct GcsAlgebra *alg);

// Writes the degrees d_1..d_l into `out`. `written` receives the number
// of degrees even when the buffer is too small.
//
// # Safety
// `out` must point to `len` writable values; `written` may be null.
enum GcsStatus gcs_algebra_degrees(const struct GcsAlgebra *alg,
                                   uint32_t *out,
                                   size_t len,
                                   size_t *written);

// Structure constant C_{α,β} for root indices in enumeration order
// (positive roots first, then their negatives).
//
// # Safety
// `out` must be a valid pointer.
enum GcsStatus gcs_algebra_structure_constant(const struct GcsAlgebra *alg,
                                              size_t a,
                                              size_t b,
                                              int64_t *out);

// Creates a state from u, v (length l) and T, S (length |R+|).
//
// # Safety
// Each input must point to the stated number of readable values; `out`
// must be a valid pointer.
enum GcsStatus gcs_state_new(const struct GcsAlgebra *alg,
                             const double *u,
                             const double *v,
                             const double *t,
                             const double *s,
                             struct GcsState **out);

// Draws a seeded regular state. A positive `spin_norm` rescales T and S to
// that Euclidean norm.
//
// # Safety
// `out` must be a valid pointer.
enum GcsStatus gcs_state_random(const struct GcsAlgebra *alg,
                                uint64_t seed,
                                double spin_norm,
                                struct GcsState **out);

// Releases a state handle. Null is ignored.
//
// # Safety
// `st` must be null or a handle from this library not yet freed.
void gcs_state_free(struct GcsState *st);

// Number of flattened coordinates 2l + 2|R+|, or 0 for a null handle.
//
// # Safety
// `st` must be null or a live handle.
size_t gcs_state_dim(const struct GcsState *st);

// Copies the flattened coordinates [u, v, T, S] into `out`.
//
// # Safety
// `out` must point to `len` writable values; `written` may be null.
enum GcsStatus gcs_state_get(const struct GcsState *st, double *out, size_t len, size_t *written);

// Energy H at `st`.
//
// # Safety
// Handles must be live; `out` must be a valid pointer.
enum GcsStatus gcs_hamiltonian(const struct GcsAlgebra *alg,
                               const struct GcsState *st,
                               double *out);

// Time derivative of the flattened coordinates.
//
// # Safety
// Handles must be live; `out` must point to `len` writable values;
// `written` may be null.
enum GcsStatus gcs_eom(const struct GcsAlgebra *alg,
                       const struct GcsState *st,
                       double *out,
                       size_t len,
                       size_t *written);

// Advances `st` in place by `steps` classical RK4 steps of size `dt`. On
// a wall approach the state holds the last regular point and the call
// returns [`GcsStatus::Singular`].
//
// # Safety
// Handles must be live and `st` must not be aliased during the call.
enum GcsStatus gcs_integrate_rk4(const struct GcsAlgebra *alg,
                                 struct GcsState *st,
                                 double dt,
                                 size_t steps);

// Relative residual of the Lax equation at `st`.
//
// # Safety
// Handles must be live; `out` must be a valid pointer.
enum GcsStatus gcs_lax_residual(const struct GcsAlgebra *alg,
                                const struct GcsState *st,
                                double *out);

// Relative residual of the r-matrix identity for the spectral Lax
// operator at spectral parameters x and y.
//
// # Safety
// Handles must be live; `out` must be a valid pointer.
enum GcsStatus gcs_rmatrix_residual(const struct GcsAlgebra *alg,
                                    const struct GcsState *st,
                                    double x,
                                    double y,
                                    double *out);

// Short static description of a status code.
const char *gcs_status_name(enum GcsStatus status);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GCS_H */
