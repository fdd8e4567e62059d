//! C ABI for the chiral-vacuum library.
//!
//! Physics objects are opaque handles created by `cv_*_new` and released by
//! the matching `cv_*_free`. Every fallible call returns a [`CvStatus`] and
//! writes results through out-pointers; the message of the most recent
//! failure on the calling thread is available from [`cv_last_error`].

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, UnwindSafe};
use std::ptr;

use chiral_vacuum::cavity::{self, CavityMode, CavityModeSet, PolarizedEnsemble};
use chiral_vacuum::kinetics::{self, ReactionProfile};
use chiral_vacuum::molecule::{MoleculeSpectrum, Transition};
use chiral_vacuum::pasteur::{self, PasteurMaterial};
use chiral_vacuum::quadrature::{OuterScheme, QuadratureConfig};
use chiral_vacuum::thermal::{self, Thermal};
use chiral_vacuum::Error;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CvStatus {
    Ok = 0,
    NullPointer = 1,
    Domain = 2,
    Quadrature = 3,
    OutOfRegime = 4,
    Unit = 5,
    Panic = 6,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CvOuterScheme {
    Truncated = 0,
    Mapped = 1,
}

pub struct CvMolecule(MoleculeSpectrum);
pub struct CvMaterial(PasteurMaterial);
pub struct CvModes(CavityModeSet);
pub struct CvEnsemble(PolarizedEnsemble);
pub struct CvProfile(ReactionProfile);
pub struct CvQuadrature(QuadratureConfig);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(err: &Error) -> CvStatus {
    match err {
        Error::Domain { .. } => CvStatus::Domain,
        Error::Quadrature { .. } => CvStatus::Quadrature,
        Error::OutOfRegime { .. } => CvStatus::OutOfRegime,
        Error::Unit { .. } => CvStatus::Unit,
    }
}

fn fail(err: Error) -> CvStatus {
    let s = status_of(&err);
    set_error(err.to_string());
    s
}

fn null(what: &str) -> CvStatus {
    set_error(format!("null pointer passed for `{what}`"));
    CvStatus::NullPointer
}

fn guard<F: FnOnce() -> CvStatus + UnwindSafe>(f: F) -> CvStatus {
    catch_unwind(f).unwrap_or_else(|_| {
        set_error("internal panic".into());
        CvStatus::Panic
    })
}

macro_rules! deref {
    ($p:expr, $name:literal) => {
        match unsafe { $p.as_ref() } {
            Some(v) => v,
            None => return null($name),
        }
    };
}

macro_rules! out {
    ($p:expr, $name:literal, $v:expr) => {{
        if $p.is_null() {
            return null($name);
        }
        unsafe { *$p = $v };
    }};
}

macro_rules! try_cv {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(err) => return fail(err),
        }
    };
}

fn into_handle<T>(out: *mut *mut T, value: T) -> CvStatus {
    if out.is_null() {
        return null("out");
    }
    unsafe { *out = Box::into_raw(Box::new(value)) };
    CvStatus::Ok
}

/// Copy the last error message of this thread into `buf` (NUL-terminated,
/// truncated to `len`). Returns the length needed including the NUL, or 0
/// when there is no error.
///
/// # Safety
/// `buf` must be valid for `len` bytes or null.
#[no_mangle]
pub unsafe extern "C" fn cv_last_error(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|e| match e.borrow().as_ref() {
        None => 0,
        Some(msg) => {
            let bytes = msg.as_bytes_with_nul();
            if !buf.is_null() && len > 0 {
                let n = bytes.len().min(len);
                ptr::copy_nonoverlapping(bytes.as_ptr() as *const c_char, buf, n);
                *buf.add(n - 1) = 0;
            }
            bytes.len()
        }
    })
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn cv_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// # Safety
/// `gaps_ev` and `im_rot_strength` must point to `n` doubles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cv_molecule_new(
    gaps_ev: *const f64,
    im_rot_strength: *const f64,
    n: usize,
    out: *mut *mut CvMolecule,
) -> CvStatus {
    guard(|| {
        if gaps_ev.is_null() || im_rot_strength.is_null() {
            return null("gaps_ev/im_rot_strength");
        }
        let gaps = std::slice::from_raw_parts(gaps_ev, n);
        let strengths = std::slice::from_raw_parts(im_rot_strength, n);
        let t = gaps
            .iter()
            .zip(strengths)
            .map(|(&gap_ev, &im_rot_strength)| Transition {
                gap_ev,
                im_rot_strength,
            })
            .collect();
        into_handle(out, CvMolecule(try_cv!(MoleculeSpectrum::new(t))))
    })
}

/// # Safety
/// `m` must come from [`cv_molecule_new`] or be null.
#[no_mangle]
pub unsafe extern "C" fn cv_molecule_free(m: *mut CvMolecule) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cv_material_new(eps_r: f64, mu_r: f64, kappa: f64, out: *mut *mut CvMaterial) -> CvStatus {
    guard(|| into_handle(out, CvMaterial(try_cv!(PasteurMaterial::new(eps_r, mu_r, kappa)))))
}

/// # Safety
/// `m` must come from [`cv_material_new`] or be null.
#[no_mangle]
pub unsafe extern "C" fn cv_material_free(m: *mut CvMaterial) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// # Safety
/// The three arrays must hold `n` doubles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cv_modes_new(
    omega_ev: *const f64,
    veff_nm3: *const f64,
    chirality: *const f64,
    n: usize,
    out: *mut *mut CvModes,
) -> CvStatus {
    guard(|| {
        if omega_ev.is_null() || veff_nm3.is_null() || chirality.is_null() {
            return null("omega_ev/veff_nm3/chirality");
        }
        let w = std::slice::from_raw_parts(omega_ev, n);
        let v = std::slice::from_raw_parts(veff_nm3, n);
        let c = std::slice::from_raw_parts(chirality, n);
        let modes = try_cv!((0..n)
            .map(|i| CavityMode::new(w[i], v[i], c[i]))
            .collect::<chiral_vacuum::Result<Vec<_>>>());
        into_handle(out, CvModes(try_cv!(CavityModeSet::new(modes))))
    })
}

/// Modes `first, first + step, ...` sharing one volume and chirality.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cv_modes_ladder(
    first_ev: f64,
    step_ev: f64,
    count: usize,
    veff_nm3: f64,
    chirality: f64,
    out: *mut *mut CvModes,
) -> CvStatus {
    guard(|| {
        let set = try_cv!(CavityModeSet::ladder(first_ev, step_ev, count, veff_nm3, chirality));
        into_handle(out, CvModes(set))
    })
}

/// # Safety
/// `m` must come from a `cv_modes_*` constructor or be null.
#[no_mangle]
pub unsafe extern "C" fn cv_modes_free(m: *mut CvModes) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// `d00` in `e·a0`, `m00` in `μB`, three components each.
///
/// # Safety
/// `d00` and `m00` must point to 3 doubles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cv_ensemble_new(
    d00: *const f64,
    m00: *const f64,
    n_molecules: u64,
    out: *mut *mut CvEnsemble,
) -> CvStatus {
    guard(|| {
        if d00.is_null() || m00.is_null() {
            return null("d00/m00");
        }
        let d = [*d00, *d00.add(1), *d00.add(2)];
        let m = [*m00, *m00.add(1), *m00.add(2)];
        into_handle(out, CvEnsemble(try_cv!(PolarizedEnsemble::new(d, m, n_molecules))))
    })
}

/// # Safety
/// `e` must come from [`cv_ensemble_new`] or be null.
#[no_mangle]
pub unsafe extern "C" fn cv_ensemble_free(e: *mut CvEnsemble) {
    if !e.is_null() {
        drop(Box::from_raw(e));
    }
}

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cv_profile_new(
    barrier_ev: f64,
    omega_nu_ev: f64,
    curvature_ev_per_a2: f64,
    mass_amu: f64,
    out: *mut *mut CvProfile,
) -> CvStatus {
    guard(|| {
        let p = try_cv!(ReactionProfile::new(barrier_ev, omega_nu_ev, curvature_ev_per_a2, mass_amu));
        into_handle(out, CvProfile(p))
    })
}

/// # Safety
/// `p` must come from [`cv_profile_new`] or be null.
#[no_mangle]
pub unsafe extern "C" fn cv_profile_free(p: *mut CvProfile) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cv_quadrature_new(
    rel_tol: f64,
    abs_tol: f64,
    max_subdivisions: usize,
    inner_cutoff_epsilon: f64,
    outer_scheme: CvOuterScheme,
    out: *mut *mut CvQuadrature,
) -> CvStatus {
    guard(|| {
        let cfg = QuadratureConfig {
            rel_tol,
            abs_tol,
            max_subdivisions,
            inner_cutoff_epsilon,
            outer_scheme: match outer_scheme {
                CvOuterScheme::Truncated => OuterScheme::Truncated,
                CvOuterScheme::Mapped => OuterScheme::Mapped,
            },
        };
        try_cv!(cfg.validate());
        into_handle(out, CvQuadrature(cfg))
    })
}

/// # Safety
/// `q` must come from [`cv_quadrature_new`] or be null.
#[no_mangle]
pub unsafe extern "C" fn cv_quadrature_free(q: *mut CvQuadrature) {
    if !q.is_null() {
        drop(Box::from_raw(q));
    }
}

/// # Safety
/// `material` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cv_reflection_cross(material: *const CvMaterial, c_prime: f64, out: *mut f64) -> CvStatus {
    guard(|| {
        let m = deref!(material, "material");
        out!(out, "out", try_cv!(pasteur::reflection_cross(c_prime, &m.0)));
        CvStatus::Ok
    })
}

/// # Safety
/// `material` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cv_reflection_limit(material: *const CvMaterial, out: *mut f64) -> CvStatus {
    guard(|| {
        let m = deref!(material, "material");
        out!(out, "out", pasteur::reflection_limit(&m.0));
        CvStatus::Ok
    })
}

/// Retarded half-space shift in eV at height `z_nm`. A null `quadrature`
/// selects the defaults. On `CV_STATUS_QUADRATURE` the partial value and its
/// error estimate are still written.
///
/// # Safety
/// Handles must be live or (for `quadrature`) null; out-pointers writable.
#[no_mangle]
pub unsafe extern "C" fn cv_halfspace_shift(
    z_nm: f64,
    molecule: *const CvMolecule,
    material: *const CvMaterial,
    quadrature: *const CvQuadrature,
    value_ev: *mut f64,
    error_ev: *mut f64,
) -> CvStatus {
    guard(|| {
        let mol = deref!(molecule, "molecule");
        let mat = deref!(material, "material");
        let cfg = quadrature.as_ref().map(|q| q.0).unwrap_or_default();
        if value_ev.is_null() || error_ev.is_null() {
            return null("value_ev/error_ev");
        }
        match pasteur::chiral_shift_halfspace(z_nm, &mol.0, &mat.0, &cfg) {
            Ok(s) => {
                *value_ev = s.value_ev;
                *error_ev = s.error_ev;
                CvStatus::Ok
            }
            Err(e) => {
                if let Error::Quadrature {
                    partial,
                    error_estimate,
                    ..
                } = e
                {
                    *value_ev = partial;
                    *error_ev = error_estimate;
                }
                fail(e)
            }
        }
    })
}

/// # Safety
/// Handles must be live; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cv_nonretarded_shift(
    z_nm: f64,
    molecule: *const CvMolecule,
    material: *const CvMaterial,
    out: *mut f64,
) -> CvStatus {
    guard(|| {
        let mol = deref!(molecule, "molecule");
        let mat = deref!(material, "material");
        out!(out, "out", try_cv!(pasteur::chiral_shift_nonretarded(z_nm, &mol.0, &mat.0)));
        CvStatus::Ok
    })
}

/// Zero-temperature London shift in eV.
///
/// # Safety
/// Handles must be live; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cv_london_shift(modes: *const CvModes, molecule: *const CvMolecule, out: *mut f64) -> CvStatus {
    guard(|| {
        let modes = deref!(modes, "modes");
        let mol = deref!(molecule, "molecule");
        out!(out, "out", cavity::london_shift(&modes.0, &mol.0));
        CvStatus::Ok
    })
}

/// Zero-temperature Debye shift per molecule in eV.
///
/// # Safety
/// Handles must be live; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cv_debye_shift_per_molecule(
    modes: *const CvModes,
    ensemble: *const CvEnsemble,
    out: *mut f64,
) -> CvStatus {
    guard(|| {
        let modes = deref!(modes, "modes");
        let ens = deref!(ensemble, "ensemble");
        out!(out, "out", cavity::debye_shift_per_molecule(&modes.0, &ens.0));
        CvStatus::Ok
    })
}

/// # Safety
/// `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cv_thermal_ratio_london(omega_ev: f64, gap_ev: f64, temperature_k: f64, out: *mut f64) -> CvStatus {
    guard(|| {
        let t = try_cv!(Thermal::from_kelvin(temperature_k));
        out!(out, "out", try_cv!(cavity::thermal_ratio_london(omega_ev, gap_ev, t)));
        CvStatus::Ok
    })
}

/// # Safety
/// `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cv_thermal_ratio_debye(omega_ev: f64, temperature_k: f64, out: *mut f64) -> CvStatus {
    guard(|| {
        let t = try_cv!(Thermal::from_kelvin(temperature_k));
        out!(out, "out", try_cv!(cavity::thermal_ratio_debye(omega_ev, t)));
        CvStatus::Ok
    })
}

/// # Safety
/// `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cv_bose_occupation(omega_ev: f64, temperature_k: f64, out: *mut f64) -> CvStatus {
    guard(|| {
        let t = try_cv!(Thermal::from_kelvin(temperature_k));
        out!(out, "out", try_cv!(thermal::bose_occupation(omega_ev, t)));
        CvStatus::Ok
    })
}

/// # Safety
/// `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cv_selectivity(delta_e_ev: f64, temperature_k: f64, out: *mut f64) -> CvStatus {
    guard(|| {
        let t = try_cv!(Thermal::from_kelvin(temperature_k));
        out!(out, "out", try_cv!(kinetics::selectivity(delta_e_ev, t)));
        CvStatus::Ok
    })
}

/// # Safety
/// `profile` must be live; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cv_selectivity_tst(
    delta_e_ev: f64,
    profile: *const CvProfile,
    temperature_k: f64,
    out: *mut f64,
) -> CvStatus {
    guard(|| {
        let p = deref!(profile, "profile");
        let t = try_cv!(Thermal::from_kelvin(temperature_k));
        out!(out, "out", try_cv!(kinetics::selectivity_tst(delta_e_ev, &p.0, t)));
        CvStatus::Ok
    })
}

/// `E_a` in eV; `unphysical` is set when it is negative.
///
/// # Safety
/// `profile` must be live; out-pointers writable.
#[no_mangle]
pub unsafe extern "C" fn cv_tst_activation(profile: *const CvProfile, e_a_ev: *mut f64, unphysical: *mut bool) -> CvStatus {
    guard(|| {
        let p = deref!(profile, "profile");
        let a = kinetics::tst_activation(&p.0);
        out!(e_a_ev, "e_a_ev", a.e_a_ev);
        out!(unphysical, "unphysical", a.unphysical);
        CvStatus::Ok
    })
}

/// # Safety
/// `profile` must be live; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cv_zero_point_frequency_shift(profile: *const CvProfile, out: *mut f64) -> CvStatus {
    guard(|| {
        let p = deref!(profile, "profile");
        out!(out, "out", kinetics::zero_point_frequency_shift(&p.0));
        CvStatus::Ok
    })
}
