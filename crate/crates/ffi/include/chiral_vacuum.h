#ifndef CHIRAL_VACUUM_H
#define CHIRAL_VACUUM_H

/* Generated by cbindgen from crates/ffi/src. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum CvOuterScheme {
  CV_OUTER_SCHEME_TRUNCATED = 0,
  CV_OUTER_SCHEME_MAPPED = 1,
} CvOuterScheme;

typedef enum CvStatus {
  CV_STATUS_OK = 0,
  CV_STATUS_NULL_POINTER = 1,
  CV_STATUS_DOMAIN = 2,
  CV_STATUS_QUADRATURE = 3,
  CV_STATUS_OUT_OF_REGIME = 4,
  CV_STATUS_UNIT = 5,
  CV_STATUS_PANIC = 6,
} CvStatus;

typedef struct CvEnsemble CvEnsemble;

typedef struct CvMaterial CvMaterial;

typedef struct CvModes CvModes;

typedef struct CvMolecule CvMolecule;

typedef struct CvProfile CvProfile;

typedef struct CvQuadrature CvQuadrature;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Copy the last error message of this thread into `buf` (NUL-terminated,
 * truncated to `len`). Returns the length needed including the NUL, or 0
 * when there is no error.
 *
 * # Safety
 * `buf` must be valid for `len` bytes or null.
 */
size_t cv_last_error(char *buf, size_t len);

/**
 * Library version as a static NUL-terminated string.
 */
const char *cv_version(void);

/**
 * # Safety
 * `gaps_ev` and `im_rot_strength` must point to `n` doubles; `out` must be writable.
 */
enum CvStatus cv_molecule_new(const double *gaps_ev,
                              const double *im_rot_strength,
                              size_t n,
                              struct CvMolecule **out);

/**
 * # Safety
 * `m` must come from [`cv_molecule_new`] or be null.
 */
void cv_molecule_free(struct CvMolecule *m);

/**
 * # Safety
 * `out` must be writable.
 */
enum CvStatus cv_material_new(double eps_r, double mu_r, double kappa, struct CvMaterial **out);

/**
 * # Safety
 * `m` must come from [`cv_material_new`] or be null.
 */
void cv_material_free(struct CvMaterial *m);

/**
 * # Safety
 * The three arrays must hold `n` doubles; `out` must be writable.
 */
enum CvStatus cv_modes_new(const double *omega_ev,
                           const double *veff_nm3,
                           const double *chirality,
                           size_t n,
                           struct CvModes **out);

/**
 * Modes `first, first + step, ...` sharing one volume and chirality.
 *
 * # Safety
 * `out` must be writable.
 */
enum CvStatus cv_modes_ladder(double first_ev,
                              double step_ev,
                              size_t count,
                              double veff_nm3,
                              double chirality,
                              struct CvModes **out);

/**
 * # Safety
 * `m` must come from a `cv_modes_*` constructor or be null.
 */
void cv_modes_free(struct CvModes *m);

/**
 * `d00` in `e·a0`, `m00` in `μB`, three components each.
 *
 * # Safety
 * `d00` and `m00` must point to 3 doubles; `out` must be writable.
 */
enum CvStatus cv_ensemble_new(const double *d00,
                              const double *m00,
                              uint64_t n_molecules,
                              struct CvEnsemble **out);

/**
 * # Safety
 * `e` must come from [`cv_ensemble_new`] or be null.
 */
void cv_ensemble_free(struct CvEnsemble *e);

/**
 * # Safety
 * `out` must be writable.
 */
enum CvStatus cv_profile_new(double barrier_ev,
                             double omega_nu_ev,
                             double curvature_ev_per_a2,
                             double mass_amu,
                             struct CvProfile **out);

/**
 * # Safety
 * `p` must come from [`cv_profile_new`] or be null.
 */
void cv_profile_free(struct CvProfile *p);

/**
 * # Safety
 * `out` must be writable.
 */
enum CvStatus cv_quadrature_new(double rel_tol,
                                double abs_tol,
                                size_t max_subdivisions,
                                double inner_cutoff_epsilon,
                                enum CvOuterScheme outer_scheme,
                                struct CvQuadrature **out);

/**
 * # Safety
 * `q` must come from [`cv_quadrature_new`] or be null.
 */
void cv_quadrature_free(struct CvQuadrature *q);

/**
 * # Safety
 * `material` must be a live handle; `out` must be writable.
 */
enum CvStatus cv_reflection_cross(const struct CvMaterial *material, double c_prime, double *out);

/**
 * # Safety
 * `material` must be a live handle; `out` must be writable.
 */
enum CvStatus cv_reflection_limit(const struct CvMaterial *material, double *out);

/**
 * Retarded half-space shift in eV at height `z_nm`. A null `quadrature`
 * selects the defaults. On `CV_STATUS_QUADRATURE` the partial value and its
 * error estimate are still written.
 *
 * # Safety
 * Handles must be live or (for `quadrature`) null; out-pointers writable.
 */
enum CvStatus cv_halfspace_shift(double z_nm,
                                 const struct CvMolecule *molecule,
                                 const struct CvMaterial *material,
                                 const struct CvQuadrature *quadrature,
                                 double *value_ev,
                                 double *error_ev);

/**
 * # Safety
 * Handles must be live; `out` writable.
 */
enum CvStatus cv_nonretarded_shift(double z_nm,
                                   const struct CvMolecule *molecule,
                                   const struct CvMaterial *material,
                                   double *out);

/**
 * Zero-temperature London shift in eV.
 *
 * # Safety
 * Handles must be live; `out` writable.
 */
enum CvStatus cv_london_shift(const struct CvModes *modes,
                              const struct CvMolecule *molecule,
                              double *out);

/**
 * Zero-temperature Debye shift per molecule in eV.
 *
 * # Safety
 * Handles must be live; `out` writable.
 */
enum CvStatus cv_debye_shift_per_molecule(const struct CvModes *modes,
                                          const struct CvEnsemble *ensemble,
                                          double *out);

/**
 * # Safety
 * `out` writable.
 */
enum CvStatus cv_thermal_ratio_london(double omega_ev,
                                      double gap_ev,
                                      double temperature_k,
                                      double *out);

/**
 * # Safety
 * `out` writable.
 */
enum CvStatus cv_thermal_ratio_debye(double omega_ev, double temperature_k, double *out);

/**
 * # Safety
 * `out` writable.
 */
enum CvStatus cv_bose_occupation(double omega_ev, double temperature_k, double *out);

/**
 * # Safety
 * `out` writable.
 */
enum CvStatus cv_selectivity(double delta_e_ev, double temperature_k, double *out);

/**
 * # Safety
 * `profile` must be live; `out` writable.
 */
enum CvStatus cv_selectivity_tst(double delta_e_ev,
                                 const struct CvProfile *profile,
                                 double temperature_k,
                                 double *out);

/**
 * `E_a` in eV; `unphysical` is set when it is negative.
 *
 * # Safety
 * `profile` must be live; out-pointers writable.
 */
enum CvStatus cv_tst_activation(const struct CvProfile *profile, double *e_a_ev, bool *unphysical);

/**
 * # Safety
 * `profile` must be live; `out` writable.
 */
enum CvStatus cv_zero_point_frequency_shift(const struct CvProfile *profile, double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CHIRAL_VACUUM_H */
