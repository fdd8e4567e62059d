//! Chiral Casimir-Polder shift of a molecule above a half-space Pasteur
//! (bi-isotropic) medium.
//!
//! The orientation-averaged shift at height `z` reduces to
//!
//! ```text
//! ΔE(z) = μ0/(3π² z²) Σ_i E_i0 Im R_i0 ∫₀^∞ x³ dx / ((E_i0 z)² + x²)
//!                                       × ∫₁^∞ dc (c² − 1) e^{−2xc} r(c)
//! ```
//!
//! where `r(c)` is the cross-polarized reflection amplitude continued to the
//! imaginary frequency axis (`r_sp = i r`). With `ħ = c = μ0 = 1` and
//! `a = E_10 z` the shift in units of `E_unit = μ0 Im R_10 E_10³/(3π²)` is a
//! function of `a` alone.
//!
//! The inner integral is rewritten with `u = 2x(c − 1)`, which turns
//! `x³ ∫ dc …` into the bounded kernel
//! `e^{−2x}/2 ∫₀^∞ (x u + u²/4) r(1 + u/(2x)) e^{−u} du`; it tends to
//! `r(∞)/4` as `x → 0` and reproduces the non-retarded `1/z³` law.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::molecule::MoleculeSpectrum;
use crate::quadrature::{integrate, OuterScheme, QuadratureConfig};
use crate::units::UnitSystem;

/// Bi-isotropic half-space with `D = εE − iκH`, `B = μH + iκE`.
///
/// The Pasteur parameter is frequency independent, continued as
/// `sgn(Re ω)·κ`; `ε_r` and `μ_r` are constants.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PasteurMaterial {
    eps_r: f64,
    mu_r: f64,
    kappa: f64,
}

impl PasteurMaterial {
    pub fn new(eps_r: f64, mu_r: f64, kappa: f64) -> Result<Self> {
        if !(eps_r > 0.0 && eps_r.is_finite()) || !(mu_r > 0.0 && mu_r.is_finite()) {
            return Err(Error::domain(
                "pasteur material",
                format!("eps_r and mu_r must be positive and finite, got {eps_r}, {mu_r}"),
            ));
        }
        if !kappa.is_finite() {
            return Err(Error::domain("pasteur material", "kappa is not finite"));
        }
        let kappa_r = kappa / (eps_r * mu_r).sqrt();
        if kappa_r.abs() > 1.0 {
            return Err(Error::domain(
                "pasteur material",
                format!("relative Pasteur parameter |κ_r| = {} exceeds 1", kappa_r.abs()),
            ));
        }
        Ok(Self { eps_r, mu_r, kappa })
    }

    /// `ε_r = μ_r = 1` with the given `κ`.
    pub fn impedance_matched(kappa: f64) -> Result<Self> {
        Self::new(1.0, 1.0, kappa)
    }

    pub fn eps_r(&self) -> f64 {
        self.eps_r
    }

    pub fn mu_r(&self) -> f64 {
        self.mu_r
    }

    pub fn kappa(&self) -> f64 {
        self.kappa
    }

    pub fn kappa_r(&self) -> f64 {
        self.kappa / (self.eps_r * self.mu_r).sqrt()
    }

    /// `η/η0 = √(μ_r/ε_r)`.
    pub fn impedance_ratio(&self) -> f64 {
        (self.mu_r / self.eps_r).sqrt()
    }

    /// Same medium with the opposite handedness.
    pub fn mirror(&self) -> Self {
        Self {
            kappa: -self.kappa,
            ..*self
        }
    }
}

/// Precomputed pieces of `r(c)` for one material.
#[derive(Debug, Clone, Copy)]
pub(crate) struct CrossReflection {
    eta: f64,
    /// `1/(n(1 ± κ_r))`; infinite when `κ_r = ∓1`.
    s_plus: f64,
    s_minus: f64,
}

impl CrossReflection {
    pub(crate) fn new(material: &PasteurMaterial) -> Self {
        let n = (material.eps_r * material.mu_r).sqrt();
        let kr = material.kappa_r();
        Self {
            eta: material.impedance_ratio(),
            s_plus: 1.0 / (n * (1.0 + kr)),
            s_minus: 1.0 / (n * (1.0 - kr)),
        }
    }

    /// `r(c)` for `c ≥ 1`, evaluated through `ĉ± = c±/c` so that arbitrarily
    /// large `c` (including `+∞`) stays finite.
    pub(crate) fn at(&self, c: f64) -> f64 {
        let eta = self.eta;
        let hat = |s: f64| {
            let inv = 1.0 / (c * c);
            (inv + (1.0 - inv) * s * s).sqrt()
        };
        if self.s_minus.is_infinite() {
            let cp = hat(self.s_plus);
            return -2.0 * eta / ((1.0 + eta * eta) + 2.0 * eta * cp);
        }
        if self.s_plus.is_infinite() {
            let cm = hat(self.s_minus);
            return 2.0 * eta / ((1.0 + eta * eta) + 2.0 * eta * cm);
        }
        let cp = hat(self.s_plus);
        let cm = hat(self.s_minus);
        let num = 2.0 * eta * (cp - cm);
        let den = (1.0 + eta * eta) * (cp + cm) + 2.0 * eta * (1.0 + cp * cm);
        num / den
    }

    pub(crate) fn limit(&self) -> f64 {
        self.at(f64::INFINITY)
    }

    pub(crate) fn is_zero(&self) -> bool {
        self.s_plus == self.s_minus
    }
}

/// Cross-polarized reflection amplitude `r(c′)` on the imaginary frequency
/// axis, defined by `r_sp = −r_ps = i r`. `c′ = √(1 + k∥²/ξ²) ≥ 1`;
/// `c′ = +∞` returns the grazing limit `r(+∞)`.
pub fn reflection_cross(c_prime: f64, material: &PasteurMaterial) -> Result<f64> {
    if !(c_prime >= 1.0) {
        return Err(Error::domain(
            "reflection_cross",
            format!("c' must be >= 1, got {c_prime}"),
        ));
    }
    Ok(CrossReflection::new(material).at(c_prime))
}

/// Algebraic limit `r(+∞)`; equals `−2κ/(4 − κ²)` when `ε_r = μ_r = 1`.
pub fn reflection_limit(material: &PasteurMaterial) -> f64 {
    CrossReflection::new(material).limit()
}

const INNER_BREAKS: [f64; 4] = [1.0, 4.0, 10.0, 20.0];

/// `∫₀^{u_max} (x u + u²/4) r(1 + u/(2x)) e^{−u} du` and its error.
fn kernel_integral(
    x: f64,
    refl: &CrossReflection,
    cfg: &QuadratureConfig,
) -> Result<(f64, f64)> {
    let u_max = -cfg.inner_cutoff_epsilon.ln();
    let mut bps = vec![0.0];
    bps.extend(INNER_BREAKS.iter().copied().filter(|&b| b < u_max));
    bps.push(u_max);
    let integrand = |u: f64| {
        let c = if x > 0.0 { 1.0 + u / (2.0 * x) } else { f64::INFINITY };
        (x * u + 0.25 * u * u) * refl.at(c) * (-u).exp()
    };
    let est = integrate(
        integrand,
        &bps,
        cfg.rel_tol * 1e-2,
        f64::MIN_POSITIVE,
        cfg.max_subdivisions,
    )?;
    Ok((est.value, est.error))
}

/// Imaginary-frequency trace `Tr ∇×G(z, z, iξ)` of the scattering Green's
/// function. The trace is purely imaginary; this returns its coefficient
///
/// ```text
/// −(ξ²/2π) ∫₁^∞ dc′ (c′² − 1) e^{−2c′ξz} r(c′)
/// ```
///
/// in natural units (eV³), with `xi_ev` in eV and `z_nm` in nm.
pub fn trace_curl_green(
    xi_ev: f64,
    z_nm: f64,
    material: &PasteurMaterial,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    if !(xi_ev > 0.0) || !(z_nm > 0.0) {
        return Err(Error::domain(
            "trace_curl_green",
            format!("xi and z must be > 0, got {xi_ev}, {z_nm}"),
        ));
    }
    cfg.validate()?;
    let refl = CrossReflection::new(material);
    if refl.is_zero() {
        return Ok(0.0);
    }
    let s = xi_ev * UnitSystem::nm_to_natural(z_nm);
    // ∫₁^∞ dc (c²−1) e^{−2cs} r = e^{−2s}/(2 s³) · kernel(s)
    let (k, _) = kernel_integral(s, &refl, cfg)?;
    let inner = (-2.0 * s).exp() / (2.0 * s.powi(3)) * k;
    Ok(-(xi_ev * xi_ev) / (2.0 * PI) * inner)
}

/// Dimensionless `J(a) = ∫₀^∞ K(x)/(a² + x²) dx` with `K(x) = x³ ∫ dc …`.
#[derive(Debug, Clone, Copy)]
struct Reduced {
    value: f64,
    error: f64,
}

fn outer_breakpoints(a: f64, x_max: Option<f64>) -> Vec<f64> {
    let cap = x_max.unwrap_or(f64::INFINITY);
    let mut bps = vec![0.0];
    let mut p = a;
    while p < cap && p < 50.0 {
        bps.push(p);
        p *= 10.0;
    }
    if (1.0 < cap) && !bps.iter().any(|&b| (b - 1.0).abs() < 1e-12) {
        bps.push(1.0);
    }
    if let Some(x) = x_max {
        bps.push(x);
    }
    bps.sort_by(f64::total_cmp);
    bps.dedup();
    bps
}

fn reduced_integral(
    a: f64,
    refl: &CrossReflection,
    cfg: &QuadratureConfig,
    abs_tol: f64,
) -> Result<Reduced> {
    let mut inner_failure: Option<Error> = None;
    let mut inner_rel_err: f64 = 0.0;
    let mut kernel = |x: f64| -> f64 {
        if inner_failure.is_some() || 2.0 * x > 700.0 {
            return 0.0;
        }
        match kernel_integral(x, refl, cfg) {
            Ok((v, e)) => {
                if v != 0.0 {
                    inner_rel_err = inner_rel_err.max(e / v.abs());
                }
                0.5 * (-2.0 * x).exp() * v
            }
            Err(err) => {
                inner_failure = Some(err);
                0.0
            }
        }
    };
    let a2 = a * a;
    let outer = match cfg.outer_scheme {
        OuterScheme::Truncated => {
            let x_max = -cfg.inner_cutoff_epsilon.ln() / 2.0;
            let bps = outer_breakpoints(a, Some(x_max));
            integrate(
                |x| kernel(x) / (a2 + x * x),
                &bps,
                cfg.rel_tol,
                abs_tol,
                cfg.max_subdivisions,
            )
        }
        OuterScheme::Mapped => {
            let mut bps: Vec<f64> = outer_breakpoints(a, None)
                .into_iter()
                .map(|x| x / (1.0 + x))
                .collect();
            bps.push(1.0);
            integrate(
                |t| {
                    let one_minus = 1.0 - t;
                    let x = t / one_minus;
                    if !x.is_finite() {
                        return 0.0;
                    }
                    kernel(x) / (a2 + x * x) / (one_minus * one_minus)
                },
                &bps,
                cfg.rel_tol,
                abs_tol,
                cfg.max_subdivisions,
            )
        }
    };
    if let Some(err) = inner_failure {
        return Err(err);
    }
    let outer = outer?;
    Ok(Reduced {
        value: outer.value,
        error: outer.error + inner_rel_err * outer.abs_value,
    })
}

/// A shift value with its quadrature error estimate, both in eV.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ShiftEstimate {
    pub value_ev: f64,
    pub error_ev: f64,
}

/// `z_unit = 1/E_10` in nm.
pub fn z_unit_nm(molecule: &MoleculeSpectrum) -> f64 {
    UnitSystem::natural_to_nm(1.0 / molecule.first().gap_ev)
}

/// `E_unit = μ0 Im R_10 E_10³/(3π²)` in eV.
pub fn energy_unit_ev(molecule: &MoleculeSpectrum) -> f64 {
    let t = molecule.first();
    t.rot_strength_natural() * t.gap_ev.powi(3) / (3.0 * PI * PI)
}

fn check_height(what: &'static str, z_nm: f64) -> Result<()> {
    if !(z_nm > 0.0) || !z_nm.is_finite() {
        return Err(Error::domain(what, format!("z must be finite and > 0, got {z_nm}")));
    }
    Ok(())
}

/// Full retarded, orientation-averaged chiral shift at height `z_nm`.
pub fn chiral_shift_halfspace(
    z_nm: f64,
    molecule: &MoleculeSpectrum,
    material: &PasteurMaterial,
    cfg: &QuadratureConfig,
) -> Result<ShiftEstimate> {
    check_height("chiral_shift_halfspace", z_nm)?;
    cfg.validate()?;
    let refl = CrossReflection::new(material);
    if refl.is_zero() {
        return Ok(ShiftEstimate {
            value_ev: 0.0,
            error_ev: 0.0,
        });
    }
    let z = UnitSystem::nm_to_natural(z_nm);
    let e_unit = energy_unit_ev(molecule).abs();
    let mut total = 0.0;
    let mut error = 0.0;
    for t in molecule.transitions() {
        let prefactor = t.rot_strength_natural() * t.gap_ev.powi(3) / (3.0 * PI * PI);
        if prefactor == 0.0 {
            continue;
        }
        let a = t.gap_ev * z;
        let scale = prefactor / (a * a);
        let unit = if e_unit > 0.0 { e_unit } else { prefactor.abs() };
        let abs_tol = cfg.abs_tol * unit / scale.abs();
        match reduced_integral(a, &refl, cfg, abs_tol) {
            Ok(j) => {
                total += scale * j.value;
                error += scale.abs() * j.error;
            }
            Err(Error::Quadrature {
                partial,
                error_estimate,
                subdivisions,
            }) => {
                return Err(Error::Quadrature {
                    partial: total + scale * partial,
                    error_estimate: error + scale.abs() * error_estimate,
                    subdivisions,
                })
            }
            Err(e) => return Err(e),
        }
    }
    Ok(ShiftEstimate {
        value_ev: total,
        error_ev: error,
    })
}

/// Short-distance closed form `μ0 r(+∞) Im R /(24π z³)`, summed over
/// transitions, in eV.
pub fn chiral_shift_nonretarded(
    z_nm: f64,
    molecule: &MoleculeSpectrum,
    material: &PasteurMaterial,
) -> Result<f64> {
    check_height("chiral_shift_nonretarded", z_nm)?;
    let z = UnitSystem::nm_to_natural(z_nm);
    let r_inf = reflection_limit(material);
    let im_r: f64 = molecule
        .transitions()
        .iter()
        .map(|t| t.rot_strength_natural())
        .sum();
    Ok(r_inf * im_r / (24.0 * PI * z.powi(3)))
}

/// One point of a distance sweep.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HalfspaceResult {
    pub z_over_zunit: f64,
    pub z_nm: f64,
    pub shift_over_eunit: f64,
    pub shift_mev: f64,
    pub nonretarded_over_eunit: f64,
    pub nonretarded_mev: f64,
    /// Quadrature error estimate in units of `E_unit`.
    pub quadrature_error_over_eunit: f64,
}

/// Evaluate the shift at one height given in units of `z_unit`.
pub fn halfspace_point(
    z_over_zunit: f64,
    molecule: &MoleculeSpectrum,
    material: &PasteurMaterial,
    cfg: &QuadratureConfig,
) -> Result<HalfspaceResult> {
    let z_nm = z_over_zunit * z_unit_nm(molecule);
    let e_unit = energy_unit_ev(molecule);
    let full = chiral_shift_halfspace(z_nm, molecule, material, cfg)?;
    let nr = chiral_shift_nonretarded(z_nm, molecule, material)?;
    Ok(HalfspaceResult {
        z_over_zunit,
        z_nm,
        shift_over_eunit: full.value_ev / e_unit,
        shift_mev: full.value_ev * 1e3,
        nonretarded_over_eunit: nr / e_unit,
        nonretarded_mev: nr * 1e3,
        quadrature_error_over_eunit: full.error_ev / e_unit.abs(),
    })
}

/// Evaluate a grid of heights (units of `z_unit`). Points are independent and
/// run on the current rayon pool; output order follows the grid. A failing
/// point does not abort the others.
pub fn halfspace_sweep(
    z_grid_zunit: &[f64],
    molecule: &MoleculeSpectrum,
    material: &PasteurMaterial,
    cfg: &QuadratureConfig,
) -> Result<Vec<Result<HalfspaceResult>>> {
    if z_grid_zunit.is_empty() {
        return Err(Error::domain("halfspace_sweep", "z grid is empty"));
    }
    cfg.validate()?;
    Ok(z_grid_zunit
        .par_iter()
        .map(|&z| halfspace_point(z, molecule, material, cfg))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    fn reference_molecule() -> MoleculeSpectrum {
        MoleculeSpectrum::two_level(2.0, 0.1).unwrap()
    }

    #[test]
    fn material_invariants() {
        assert!(PasteurMaterial::new(1.0, 1.0, 1.2).is_err());
        assert!(PasteurMaterial::new(4.0, 1.0, 1.2).is_ok());
        assert!(PasteurMaterial::new(0.0, 1.0, 0.1).is_err());
        assert!(PasteurMaterial::new(1.0, -1.0, 0.1).is_err());
        let m = PasteurMaterial::new(4.0, 1.0, 0.5).unwrap();
        assert!((m.kappa_r() - 0.25).abs() < 1e-15);
        assert!((m.impedance_ratio() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn reflection_vanishes_without_kappa() {
        for eps in [1.0, 2.5] {
            let m = PasteurMaterial::new(eps, eps, 0.0).unwrap();
            assert_eq!(reflection_cross(2.0, &m).unwrap(), 0.0);
        }
    }

    #[test]
    fn reflection_large_c_limit() {
        let m = PasteurMaterial::impedance_matched(0.4).unwrap();
        let k: f64 = 0.4;
        let expected = -2.0 * k / (4.0 - k * k);
        assert!((reflection_cross(1e6, &m).unwrap() - expected).abs() < 1e-6);
        assert!((reflection_limit(&m) - expected).abs() < 1e-15);
    }

    #[test]
    fn reflection_matches_unscaled_formula() {
        // direct transcription of the Δ′ expression
        let m = PasteurMaterial::new(2.0, 1.5, 0.7).unwrap();
        let (eta, n, kr) = (m.impedance_ratio(), (3.0f64).sqrt(), m.kappa_r());
        for c in [1.0, 1.3, 2.0, 7.5, 40.0] {
            let cpm = |sign: f64| (1.0 + (c * c - 1.0) / (n * n * (1.0 + sign * kr).powi(2))).sqrt();
            let (cp, cm) = (cpm(1.0), cpm(-1.0));
            let num = 2.0 * eta * c * (cp - cm);
            let den = (1.0 + eta * eta) * c * (cp + cm) + 2.0 * eta * (c * c + cp * cm);
            let r = reflection_cross(c, &m).unwrap();
            assert!((r - num / den).abs() < 1e-14, "c={c}: {r} vs {}", num / den);
        }
    }

    #[test]
    fn reflection_domain() {
        let m = PasteurMaterial::impedance_matched(0.3).unwrap();
        assert!(reflection_cross(0.99, &m).is_err());
        assert!(reflection_cross(f64::NAN, &m).is_err());
    }

    #[test]
    fn reflection_at_unit_relative_kappa_is_finite() {
        let m = PasteurMaterial::impedance_matched(1.0).unwrap();
        for c in [1.0, 2.0, 1e8] {
            assert!(reflection_cross(c, &m).unwrap().is_finite());
        }
        let mm = PasteurMaterial::impedance_matched(-1.0).unwrap();
        assert_eq!(reflection_cross(3.0, &mm).unwrap(), -reflection_cross(3.0, &m).unwrap());
    }

    #[test]
    fn trace_curl_green_zero_and_odd() {
        let cfg = QuadratureConfig::default();
        let zero = PasteurMaterial::impedance_matched(0.0).unwrap();
        assert_eq!(trace_curl_green(1.0, 10.0, &zero, &cfg).unwrap(), 0.0);
        let m = PasteurMaterial::new(2.0, 1.0, 0.3).unwrap();
        let a = trace_curl_green(1.0, 50.0, &m, &cfg).unwrap();
        let b = trace_curl_green(1.0, 50.0, &m.mirror(), &cfg).unwrap();
        assert!(a != 0.0);
        assert!((a + b).abs() <= 1e-14 * a.abs());
        assert!(trace_curl_green(0.0, 1.0, &m, &cfg).is_err());
        assert!(trace_curl_green(1.0, -1.0, &m, &cfg).is_err());
    }

    #[test]
    fn nonretarded_scaling_and_value() {
        let mol = reference_molecule();
        let m = PasteurMaterial::impedance_matched(0.4).unwrap();
        let z = 0.1 * z_unit_nm(&mol);
        let a = chiral_shift_nonretarded(z, &mol, &m).unwrap();
        let b = chiral_shift_nonretarded(2.0 * z, &mol, &m).unwrap();
        assert!(rel(b, a / 8.0) < 1e-14);
        let in_units = a / energy_unit_ev(&mol);
        let expected = -0.8 / 3.84 * PI / 8.0 * 1000.0;
        assert!(rel(in_units, expected) < 1e-3, "{in_units} vs {expected}");
        assert!((in_units + 81.8).abs() < 0.0818);
        let zero = PasteurMaterial::impedance_matched(0.0).unwrap();
        assert_eq!(chiral_shift_nonretarded(z, &mol, &zero).unwrap(), 0.0);
        assert!(chiral_shift_nonretarded(0.0, &mol, &m).is_err());
    }

    #[test]
    fn halfspace_rejects_bad_height() {
        let mol = reference_molecule();
        let m = PasteurMaterial::impedance_matched(0.4).unwrap();
        let cfg = QuadratureConfig::default();
        assert!(chiral_shift_halfspace(0.0, &mol, &m, &cfg).is_err());
        assert!(chiral_shift_halfspace(-3.0, &mol, &m, &cfg).is_err());
    }

    #[test]
    fn halfspace_zero_kappa_is_zero() {
        let mol = reference_molecule();
        let m = PasteurMaterial::impedance_matched(0.0).unwrap();
        let s = chiral_shift_halfspace(20.0, &mol, &m, &QuadratureConfig::default()).unwrap();
        assert_eq!(s.value_ev, 0.0);
    }

    #[test]
    fn outer_schemes_agree() {
        let mol = reference_molecule();
        let m = PasteurMaterial::new(1.5, 1.2, 0.5).unwrap();
        let trunc = QuadratureConfig::default();
        let mapped = QuadratureConfig {
            outer_scheme: OuterScheme::Mapped,
            ..trunc
        };
        for zu in [0.01, 0.3, 2.0] {
            let z = zu * z_unit_nm(&mol);
            let a = chiral_shift_halfspace(z, &mol, &m, &trunc).unwrap();
            let b = chiral_shift_halfspace(z, &mol, &m, &mapped).unwrap();
            assert!(rel(a.value_ev, b.value_ev) < 1e-7, "z={zu}: {a:?} {b:?}");
        }
    }

    #[test]
    fn tiny_budget_reports_partial() {
        let mol = reference_molecule();
        let m = PasteurMaterial::impedance_matched(0.4).unwrap();
        let cfg = QuadratureConfig {
            rel_tol: 1e-15,
            abs_tol: 1e-30,
            max_subdivisions: 10,
            ..QuadratureConfig::default()
        };
        let z = 1e-4 * z_unit_nm(&mol);
        match chiral_shift_halfspace(z, &mol, &m, &cfg) {
            Err(Error::Quadrature { partial, error_estimate, .. }) => {
                assert!(partial.is_finite() && partial < 0.0);
                assert!(error_estimate > 0.0);
            }
            other => panic!("expected quadrature failure, got {other:?}"),
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn reflection_odd_and_bounded(eps in 0.2f64..6.0, mu in 0.2f64..6.0, frac in -0.999f64..0.999, c in 1.0f64..1e4) {
                let kappa = frac * (eps * mu).sqrt();
                let m = PasteurMaterial::new(eps, mu, kappa).unwrap();
                let r = reflection_cross(c, &m).unwrap();
                prop_assert_eq!(reflection_cross(c, &m.mirror()).unwrap(), -r);
                prop_assert!(r.abs() < 1.0);
                prop_assert!(r * kappa <= 0.0);
            }

            #[test]
            fn nonretarded_linear_in_strength(z in 0.01f64..100.0, s in -5.0f64..5.0) {
                let mat = PasteurMaterial::new(1.0, 1.0, 0.4).unwrap();
                let base = chiral_shift_nonretarded(z, &reference_molecule(), &mat).unwrap();
                let scaled = chiral_shift_nonretarded(z, &reference_molecule().scaled(s), &mat).unwrap();
                prop_assert!((scaled - s * base).abs() <= 1e-14 * base.abs() * s.abs().max(1.0));
            }
        }
    }
}
