#ifndef SKYRME_FFI_H
#define SKYRME_FFI_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes.
 */
enum SkyrmeStatus
#ifdef __cplusplus
  : int32_t
#endif // __cplusplus
 {
  SKYRME_STATUS_OK = 0,
  SKYRME_STATUS_NULL_POINTER = 1,
  SKYRME_STATUS_INVALID_INPUT = 2,
  SKYRME_STATUS_NO_CONVERGENCE = 3,
  SKYRME_STATUS_NUMERICAL = 4,
  SKYRME_STATUS_FIT_REJECTED = 5,
  SKYRME_STATUS_PANIC = 6,
};
#ifndef __cplusplus
typedef int32_t SkyrmeStatus;
#endif // __cplusplus

/**
 * Opaque static soliton.
 */
typedef struct SkyrmeProfile SkyrmeProfile;

/**
 * Opaque time series.
 */
typedef struct SkyrmeSeries SkyrmeSeries;

/**
 * `A e^{-Gamma t} sin(Omega t + delta)` fitted over a window.
 */
typedef struct SkyrmeRingdown {
  double amplitude;
  double gamma;
  double omega;
  double phase;
  /**
   * Root-mean-square residual.
   */
  double residual;
} SkyrmeRingdown;

/**
 * `ln|v| = a - b ln t + c/t` fitted over a window.
 */
typedef struct SkyrmePowerLaw {
  double offset;
  double exponent;
  double correction;
  double t1;
  double t2;
  double residual;
} SkyrmePowerLaw;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failure on this thread, or null if none. The
 * pointer stays valid until the next failing call on the same thread.
 */
const char *skyrme_last_error_message(void);

/**
 * Solve for the soliton with the given bisection tolerance.
 *
 * # Safety
 * `out` must be a valid pointer to writable storage for one handle.
 */
SkyrmeStatus skyrme_profile_solve(double tolerance, struct SkyrmeProfile **out);

/**
 * Release a profile. Null is ignored.
 *
 * # Safety
 * `profile` must come from [`skyrme_profile_solve`] and not be freed twice.
 */
void skyrme_profile_free(struct SkyrmeProfile *profile);

/**
 * Origin slope `b` and far-field coefficient `c`.
 *
 * # Safety
 * `profile` must be a live handle; `b` and `c` must be writable.
 */
SkyrmeStatus skyrme_profile_coefficients(const struct SkyrmeProfile *profile, double *b, double *c);

/**
 * `S(r)` for `r >= 0`.
 *
 * # Safety
 * `profile` must be a live handle; `value` must be writable.
 */
SkyrmeStatus skyrme_profile_value(const struct SkyrmeProfile *profile, double r, double *value);

/**
 * Fundamental quasinormal mode `Omega - i Gamma` of the soliton, searched
 * from the guess with matching radius `r0` and outer radius `big_r`.
 *
 * # Safety
 * `profile` must be a live handle; `omega` and `gamma` must be writable.
 */
SkyrmeStatus skyrme_qnm_find(const struct SkyrmeProfile *profile,
                             double omega_guess,
                             double gamma_guess,
                             double r0,
                             double big_r,
                             double tolerance,
                             double *omega,
                             double *gamma);

/**
 * Copy `len` samples into a new series. Times must increase strictly.
 *
 * # Safety
 * `t` and `v` must each point to `len` readable doubles; `out` must be writable.
 */
SkyrmeStatus skyrme_series_new(const double *t,
                               const double *v,
                               size_t len,
                               struct SkyrmeSeries **out);

/**
 * Release a series. Null is ignored.
 *
 * # Safety
 * `series` must come from [`skyrme_series_new`] and not be freed twice.
 */
void skyrme_series_free(struct SkyrmeSeries *series);

/**
 * # Safety
 * `series` must be a live handle; `out` must be writable.
 */
SkyrmeStatus skyrme_fit_ringdown(const struct SkyrmeSeries *series,
                                 double t1,
                                 double t2,
                                 struct SkyrmeRingdown *out);

/**
 * Power-law fit. A window with `t1 <= 0` is chosen automatically.
 *
 * # Safety
 * `series` must be a live handle; `out` must be writable.
 */
SkyrmeStatus skyrme_fit_power_law(const struct SkyrmeSeries *series,
                                  double t1,
                                  double t2,
                                  struct SkyrmePowerLaw *out);

/**
 * Tail coefficient `c` of `F3 ~ c r t^-5` for `F(0,r) = A r^3 e^{-r^2}`.
 *
 * # Safety
 * `c` must be writable.
 */
SkyrmeStatus skyrme_tail_coefficient_gaussian_cubed(double amplitude, double *c);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SKYRME_FFI_H */
