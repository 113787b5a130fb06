#ifndef FRL_H
#define FRL_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum FrlStatus {
  FRL_STATUS_OK = 0,
  FRL_STATUS_NULL_POINTER = 1,
  FRL_STATUS_DOMAIN = 2,
  FRL_STATUS_ACCURACY = 3,
  FRL_STATUS_NEGATIVE_AT_INFINITY = 4,
  FRL_STATUS_INTERNAL = 5,
  FRL_STATUS_PANIC = 6,
} FrlStatus;

// An eigenfunction expansion `Σ α_n H_{4n}(x) e^{-πx²}`.
typedef struct FrlEigenFunction FrlEigenFunction;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Library version as a static NUL-terminated string.
const char *frl_version(void);

// Copies the last error message on this thread into `buf` (NUL-terminated,
// truncated to `len`). Returns the full message length without the NUL.
//
// # Safety
// `buf` must be null or valid for `len` bytes.
uintptr_t frl_last_error_message(char *buf, uintptr_t len);

// `Γ(x)`.
//
// # Safety
// `out` must be null or a valid pointer.
enum FrlStatus frl_gamma(double x, double *out);

// `J_ν(x)` for `ν ≥ −1/2`, `x ≥ 0`.
//
// # Safety
// `out` must be null or a valid pointer.
enum FrlStatus frl_bessel_j(double nu, double x, double *out);

// `H_n(x) e^{-x²/2}` as `mantissa · 2^exponent`.
//
// # Safety
// `mantissa` and `exponent` must be null or valid pointers.
enum FrlStatus frl_hermite_weighted(uint64_t n, double x, double *mantissa, int64_t *exponent);

// `λ_d` for `2 ≤ d ≤ 120`.
//
// # Safety
// `out` must be null or a valid pointer.
enum FrlStatus frl_lambda_d(uint32_t d, double *out);

// The dimension-`d` lower bound on `A(f)A(f̂)`.
//
// # Safety
// `out` must be null or a valid pointer.
enum FrlStatus frl_bound_new(uint32_t d, double *out);

// The kernel `Υ_A(x)`.
//
// # Safety
// `out` must be null or a valid pointer.
enum FrlStatus frl_upsilon(double a, double x, double *out);

// Upper bound for `τ` on `(1/4, 1/2]`.
//
// # Safety
// `out` must be null or a valid pointer.
enum FrlStatus frl_tau_ub(double a, double *out);

// Margin of the lower-bound inequality at `(A, τ)`; negative means it fails.
//
// # Safety
// `out` must be null or a valid pointer.
enum FrlStatus frl_inequality_margin(double a, double tau, double *out);

// Builds an expansion from `len` coefficients. With `normalize` set the
// expansion must vanish at the origin, otherwise `FRL_STATUS_DOMAIN`.
//
// # Safety
// `coeffs` must be valid for `len` reads; `out` must be null or valid.
enum FrlStatus frl_eigen_new(const double *coeffs,
                             uintptr_t len,
                             bool normalize,
                             struct FrlEigenFunction **out);

// The built-in degree-12 reference candidate.
//
// # Safety
// `out` must be null or a valid pointer.
enum FrlStatus frl_eigen_reference(struct FrlEigenFunction **out);

// Releases a handle; null is ignored.
//
// # Safety
// `f` must be null or come from this library and not be used afterwards.
void frl_eigen_free(struct FrlEigenFunction *f);

// Number of coefficients, or 0 for a null handle.
//
// # Safety
// `f` must be null or a live handle.
uintptr_t frl_eigen_len(const struct FrlEigenFunction *f);

// Copies up to `len` coefficients into `buf`.
//
// # Safety
// `f` must be a live handle and `buf` valid for `len` writes.
enum FrlStatus frl_eigen_coeffs(const struct FrlEigenFunction *f, double *buf, uintptr_t len);

// `f(x)`.
//
// # Safety
// `f` must be null or a live handle; `out` must be null or valid.
enum FrlStatus frl_eigen_eval(const struct FrlEigenFunction *f, double x, double *out);

// `A(f)`, the last sign change, found with the default scan step.
//
// # Safety
// `f` must be null or a live handle; `out` must be null or valid.
enum FrlStatus frl_eigen_largest_root(const struct FrlEigenFunction *f, double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* FRL_H */
