//! Enantioselective reaction rates from chiral energy shifts.
//!
//! The two enantiomer wells are shifted by `±ΔE`. With Arrhenius rates the
//! normalized rate difference is `P = tanh(βΔE)`. The transition-state
//! variant also lets the well curvature change by `±b`, which moves the
//! reactant zero-point energy.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::thermal::Thermal;
use crate::units::UnitSystem;

/// Largest double below one; `|P|` never reaches it.
const SATURATION: f64 = 1.0 - f64::EPSILON / 2.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ReactionProfile {
    barrier_ev: f64,
    omega_nu_ev: f64,
    /// Quadratic-coefficient change `b` in eV/Å².
    curvature_ev_per_a2: f64,
    mass_amu: f64,
}

impl ReactionProfile {
    pub fn new(barrier_ev: f64, omega_nu_ev: f64, curvature_ev_per_a2: f64, mass_amu: f64) -> Result<Self> {
        if !(barrier_ev > 0.0 && barrier_ev.is_finite()) {
            return Err(Error::domain("reaction profile", format!("barrier must be > 0 eV, got {barrier_ev}")));
        }
        if !(omega_nu_ev >= 0.0 && omega_nu_ev.is_finite()) {
            return Err(Error::domain(
                "reaction profile",
                format!("vibrational quantum must be >= 0 eV, got {omega_nu_ev}"),
            ));
        }
        if !(mass_amu > 0.0 && mass_amu.is_finite()) {
            return Err(Error::domain("reaction profile", format!("mass must be > 0 amu, got {mass_amu}")));
        }
        if !curvature_ev_per_a2.is_finite() {
            return Err(Error::domain("reaction profile", "curvature must be finite"));
        }
        let p = Self {
            barrier_ev,
            omega_nu_ev,
            curvature_ev_per_a2,
            mass_amu,
        };
        if p.curvature_ev_per_a2 != 0.0 && !(p.omega_nu_ev * p.omega_nu_ev - p.b_over_m().abs() > 0.0) {
            return Err(Error::domain(
                "reaction profile",
                format!(
                    "omega^2 - |b|/M = {:e} eV^2; one perturbed well is no longer a well",
                    p.omega_nu_ev * p.omega_nu_ev - p.b_over_m().abs()
                ),
            ));
        }
        Ok(p)
    }

    /// Carbon-like default: one carbon mass, no curvature change.
    pub fn unperturbed(barrier_ev: f64, omega_nu_ev: f64) -> Result<Self> {
        Self::new(barrier_ev, omega_nu_ev, 0.0, 12.0)
    }

    pub fn barrier_ev(&self) -> f64 {
        self.barrier_ev
    }

    pub fn omega_nu_ev(&self) -> f64 {
        self.omega_nu_ev
    }

    pub fn curvature_ev_per_a2(&self) -> f64 {
        self.curvature_ev_per_a2
    }

    pub fn mass_amu(&self) -> f64 {
        self.mass_amu
    }

    pub fn mass_ev(&self) -> f64 {
        self.mass_amu * UnitSystem::ATOMIC_MASS_UNIT_EV
    }

    pub fn with_curvature(&self, curvature_ev_per_a2: f64) -> Result<Self> {
        Self::new(self.barrier_ev, self.omega_nu_ev, curvature_ev_per_a2, self.mass_amu)
    }

    /// The profile seen by the other enantiomer: `b → −b`.
    pub fn mirror(&self) -> Self {
        Self {
            curvature_ev_per_a2: -self.curvature_ev_per_a2,
            ..*self
        }
    }

    /// `b/M` in eV².
    fn b_over_m(&self) -> f64 {
        UnitSystem::curvature_to_natural(self.curvature_ev_per_a2) / self.mass_ev()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Activation {
    pub e_a_ev: f64,
    /// Set when the zero-point energy exceeds the barrier.
    pub unphysical: bool,
}

fn checked_beta(thermal: Thermal) -> Result<f64> {
    thermal
        .beta()
        .ok_or_else(|| Error::domain("selectivity", "temperature must be > 0 K"))
}

fn saturating_tanh(x: f64) -> f64 {
    x.abs().tanh().min(SATURATION).copysign(x)
}

/// `P = (k_L − k_R)/(k_L + k_R) = tanh(βΔE)` for opposite barrier shifts `±ΔE`.
pub fn selectivity(delta_e_ev: f64, thermal: Thermal) -> Result<f64> {
    let beta = checked_beta(thermal)?;
    if !delta_e_ev.is_finite() {
        return Err(Error::domain("selectivity", "energy shift must be finite"));
    }
    Ok(saturating_tanh(beta * delta_e_ev))
}

/// `E_a = E_barrier − ½ħω_ν` along the reaction coordinate only.
pub fn tst_activation(profile: &ReactionProfile) -> Activation {
    let e_a_ev = profile.barrier_ev - 0.5 * profile.omega_nu_ev;
    Activation {
        e_a_ev,
        unphysical: e_a_ev < 0.0,
    }
}

/// `Δω = √(ω² + b/M) − ω` in eV for the `+b` well.
pub fn zero_point_frequency_shift(profile: &ReactionProfile) -> f64 {
    frequency_shift(profile.omega_nu_ev, profile.b_over_m())
}

fn frequency_shift(omega: f64, b_over_m: f64) -> f64 {
    if b_over_m == 0.0 {
        return 0.0;
    }
    b_over_m / ((omega * omega + b_over_m).sqrt() + omega)
}

/// Curvature change (eV/Å²) that moves the `+b` well's frequency by
/// `delta_omega_ev`.
pub fn curvature_for_zero_point_shift(omega_nu_ev: f64, mass_amu: f64, delta_omega_ev: f64) -> Result<f64> {
    if !(omega_nu_ev + delta_omega_ev > 0.0) {
        return Err(Error::domain(
            "curvature_for_zero_point_shift",
            format!("perturbed frequency must stay positive, got {} eV", omega_nu_ev + delta_omega_ev),
        ));
    }
    let mass = mass_amu * UnitSystem::ATOMIC_MASS_UNIT_EV;
    let b = mass * delta_omega_ev * (2.0 * omega_nu_ev + delta_omega_ev);
    Ok(UnitSystem::curvature_from_natural(b))
}

/// Selectivity with zero-point-corrected activation energies.
///
/// The `+ΔE` enantiomer has curvature `+b`:
/// `E_a(±) = E_TS − E_0 ∓ ΔE − ½(ω_ν + Δω_±)`, so
/// `P = tanh(β(ΔE + (Δω₊ − Δω₋)/4))`. Prefactors are taken equal.
pub fn selectivity_tst(delta_e_ev: f64, profile: &ReactionProfile, thermal: Thermal) -> Result<f64> {
    if profile.curvature_ev_per_a2 == 0.0 {
        return selectivity(delta_e_ev, thermal);
    }
    let bm = profile.b_over_m();
    let plus = frequency_shift(profile.omega_nu_ev, bm);
    let minus = frequency_shift(profile.omega_nu_ev, -bm);
    selectivity(delta_e_ev + 0.25 * (plus - minus), thermal)
}

/// Arrhenius factor `k/A = exp(−E_a/k_BT)`.
pub fn relative_rate(e_a_ev: f64, thermal: Thermal) -> Result<f64> {
    let beta = checked_beta(thermal)?;
    Ok((-beta * e_a_ev).exp())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TstPoint {
    pub e_a_ev: f64,
    pub delta_omega_ev: f64,
    pub p_chi_tst: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SelectivityPoint {
    pub delta_e_mev: f64,
    pub temperature_k: f64,
    pub p_chi: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tst: Option<TstPoint>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SelectivityCurve {
    pub points: Vec<SelectivityPoint>,
}

impl SelectivityCurve {
    /// Points at one temperature, in grid order.
    pub fn at_temperature(&self, temperature_k: f64) -> impl Iterator<Item = &SelectivityPoint> {
        self.points.iter().filter(move |p| p.temperature_k == temperature_k)
    }
}

/// Selectivity on a `temperatures × delta_e` grid, temperature outermost.
pub fn selectivity_sweep(
    delta_e_mev: &[f64],
    temperatures_k: &[f64],
    profile: Option<&ReactionProfile>,
) -> Result<SelectivityCurve> {
    if delta_e_mev.is_empty() || temperatures_k.is_empty() {
        return Err(Error::domain("selectivity_sweep", "grids must be nonempty"));
    }
    let thermals = temperatures_k
        .iter()
        .map(|&t| {
            let th = Thermal::from_kelvin(t)?;
            checked_beta(th)?;
            Ok(th)
        })
        .collect::<Result<Vec<_>>>()?;
    let cells: Vec<(f64, Thermal, f64)> = temperatures_k
        .iter()
        .zip(&thermals)
        .flat_map(|(&t, &th)| delta_e_mev.iter().map(move |&de| (t, th, de)))
        .collect();
    let points = cells
        .par_iter()
        .map(|&(t, th, de)| {
            let de_ev = de * 1e-3;
            let p_chi = selectivity(de_ev, th)?;
            let tst = match profile {
                Some(prof) => Some(TstPoint {
                    e_a_ev: tst_activation(prof).e_a_ev,
                    delta_omega_ev: zero_point_frequency_shift(prof),
                    p_chi_tst: selectivity_tst(de_ev, prof, th)?,
                }),
                None => None,
            };
            Ok(SelectivityPoint {
                delta_e_mev: de,
                temperature_k: t,
                p_chi,
                tst,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SelectivityCurve { points })
}
