/* C API for the abqed effective charge--fluxon lab.
 *
 * All entry points return an abqed_status; results go through out
 * parameters.  A non-OK status leaves out parameters untouched and records a
 * thread-local message retrievable with abqed_last_error().
 *
 * An abqed_lab handle owns a parsed, validated configuration.  Handles are
 * immutable after creation and safe to use from multiple threads.
 */
#ifndef ABQED_H
#define ABQED_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum abqed_status {
    ABQED_OK = 0,
    ABQED_ERR_DOMAIN = 1,   /* invalid physical input (path through fluxon, ...) */
    ABQED_ERR_ACCURACY = 2, /* tolerance could not be met */
    ABQED_ERR_CONFIG = 3,   /* malformed or inconsistent configuration */
    ABQED_ERR_INVALID = 4   /* null pointer / bad argument at the C boundary */
} abqed_status;

typedef struct abqed_lab abqed_lab;

/* Library version string, static storage. */
const char* abqed_version(void);

/* Message for the most recent failing call on this thread; static until the
 * next failing call. Never NULL. */
const char* abqed_last_error(void);

/* Create a lab from a JSON configuration document ("{}" for all defaults).
 * On success *out_lab must be released with abqed_lab_destroy. */
abqed_status abqed_lab_create(const char* config_json, abqed_lab** out_lab);
void abqed_lab_destroy(abqed_lab* lab);

/* Effective vector potential a(x) at (x, y) relative to the fluxon.
 * out_a is (a_x, a_y); out_err may be NULL. */
abqed_status abqed_effective_a(const abqed_lab* lab, double x, double y,
                               double out_a[2], double* out_err);

/* Gauge-variation field delta_a(x) for the gauge family in the config
 * (ABQED_ERR_CONFIG if none was given). */
abqed_status abqed_delta_a(const abqed_lab* lab, double x, double y,
                           double out_a[2], double* out_err);

/* Scalar-photon exchange kernel K(r); K(r) * r -> 1. */
abqed_status abqed_coulomb_kernel(const abqed_lab* lab, double r,
                                  double* out_value, double* out_err);

/* Unwrapped fluxon-relative angle subtended by a polygonal path.
 * xy is x0,y0,x1,y1,... with n_points >= 2; closed != 0 appends the closing
 * segment back to the first vertex. */
abqed_status abqed_subtended_angle(const abqed_lab* lab, const double* xy,
                                   size_t n_points, int closed,
                                   double fluxon_x, double fluxon_y,
                                   double* out_angle);

/* Winding number of a closed polygonal path about the fluxon point. */
abqed_status abqed_winding_number(const abqed_lab* lab, const double* xy,
                                  size_t n_points, double fluxon_x,
                                  double fluxon_y, int* out_winding);

/* Transverse-polarization sum (e_lambda . p)(z_hat . n_lambda) for unit
 * k direction (kx, ky); equals phi_hat(k) . p. */
abqed_status abqed_polarization_identity(double kx, double ky, double px,
                                         double py, double* out_sum);

/* Phase (charge / hbar c) * int field . dx along a polygonal path for one of
 * the field handles "analytic-a", "numeric-a", "semiclassical",
 * "semiclassical-gauged". */
abqed_status abqed_phase_along_path(const abqed_lab* lab, const char* field,
                                    const double* xy, size_t n_points,
                                    int closed, double* out_phase,
                                    double* out_err);

/* Run a full subcommand (same grammar as the CLI).  On success *out_body is a
 * malloc'd NUL-terminated result document; release with abqed_string_free.
 * The returned status mirrors the CLI exit code. */
abqed_status abqed_run(const abqed_lab* lab, const char* subcommand,
                       char** out_body);
void abqed_string_free(char* s);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* ABQED_H */
