//! Chiral energy shifts inside a gyrotropic cavity.
//!
//! Each mode `n` couples with `g_n² = 1/(2 ε0 Ω_n V_eff)`. The London
//! (transition-dipole) term of one mode is
//! `(4 g_n² Ω_n²/3) χ_n Σ_i Im R_i0/(E_i0 + Ω_n)` with `χ_n = ê_k·(ê_R × ê_I)`;
//! the Debye (permanent-dipole) term of a polarized ensemble of `N` molecules
//! is `−N Σ_n g_n² Ω_n (d_x m_y − d_y m_x)` per molecule.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::molecule::MoleculeSpectrum;
use crate::orientation::Vec3;
use crate::thermal::{bose_occupation, Thermal};
use crate::units::UnitSystem;

/// Polarization factor of a left-handed circular mode.
pub const LEFT_HANDED: f64 = -0.5;
/// Polarization factor of a right-handed circular mode.
pub const RIGHT_HANDED: f64 = 0.5;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CavityMode {
    pub omega_ev: f64,
    pub veff_nm3: f64,
    /// `ê_k·(ê_R × ê_I)`, in `[−1/2, 1/2]`.
    pub chirality: f64,
}

impl CavityMode {
    pub fn new(omega_ev: f64, veff_nm3: f64, chirality: f64) -> Result<Self> {
        let mode = Self {
            omega_ev,
            veff_nm3,
            chirality,
        };
        mode.validate()?;
        Ok(mode)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.omega_ev > 0.0 && self.omega_ev.is_finite()) {
            return Err(Error::domain(
                "cavity mode",
                format!("frequency must be > 0 eV, got {}", self.omega_ev),
            ));
        }
        if !(self.veff_nm3 > 0.0 && self.veff_nm3.is_finite()) {
            return Err(Error::domain(
                "cavity mode",
                format!("effective volume must be > 0 nm^3, got {}", self.veff_nm3),
            ));
        }
        if !(self.chirality.abs() <= 0.5) {
            return Err(Error::domain(
                "cavity mode",
                format!("chirality factor must lie in [-1/2, 1/2], got {}", self.chirality),
            ));
        }
        Ok(())
    }

    /// `g² = 1/(2 ε0 Ω V_eff)` in eV².
    pub fn coupling_sq(&self) -> f64 {
        1.0 / (2.0 * self.omega_ev * UnitSystem::nm3_to_natural(self.veff_nm3))
    }

    pub fn mirror(&self) -> Self {
        Self {
            chirality: -self.chirality,
            ..*self
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CavityModeSet {
    modes: Vec<CavityMode>,
}

impl CavityModeSet {
    pub fn new(modes: Vec<CavityMode>) -> Result<Self> {
        if modes.is_empty() {
            return Err(Error::domain("cavity modes", "mode set is empty"));
        }
        for m in &modes {
            m.validate()?;
        }
        Ok(Self { modes })
    }

    /// `count` modes at `first, first + step, …` sharing one volume and chirality.
    pub fn ladder(first_ev: f64, step_ev: f64, count: usize, veff_nm3: f64, chirality: f64) -> Result<Self> {
        Self::new(
            (0..count)
                .map(|n| CavityMode {
                    omega_ev: first_ev + step_ev * n as f64,
                    veff_nm3,
                    chirality,
                })
                .collect(),
        )
    }

    pub fn modes(&self) -> &[CavityMode] {
        &self.modes
    }

    /// Flip the handedness of every mode.
    pub fn mirror(&self) -> Self {
        Self {
            modes: self.modes.iter().map(CavityMode::mirror).collect(),
        }
    }
}

/// Permanent ground-state dipoles of a fully polarized ensemble.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PolarizedEnsemble {
    /// Electric dipole in units of `e·a0`.
    pub d00: Vec3,
    /// Magnetic dipole in units of `μB`.
    pub m00: Vec3,
    pub n_molecules: u64,
}

impl PolarizedEnsemble {
    pub fn new(d00: Vec3, m00: Vec3, n_molecules: u64) -> Result<Self> {
        if n_molecules == 0 {
            return Err(Error::domain("ensemble", "n_molecules must be positive"));
        }
        if d00.iter().chain(m00.iter()).any(|v| !v.is_finite()) {
            return Err(Error::domain("ensemble", "dipole components must be finite"));
        }
        Ok(Self {
            d00,
            m00,
            n_molecules,
        })
    }

    /// Enantiomer reflected through the y–z plane: `d_x → −d_x`, `m` fixed.
    pub fn mirror(&self) -> Self {
        let [dx, dy, dz] = self.d00;
        Self {
            d00: [-dx, dy, dz],
            ..*self
        }
    }

    pub fn with_count(&self, n_molecules: u64) -> Result<Self> {
        Self::new(self.d00, self.m00, n_molecules)
    }

    /// `d_x m_y − d_y m_x` in natural units.
    fn cross_z(&self) -> f64 {
        let scale = UnitSystem::dipole_unit_natural() * UnitSystem::magneton_natural();
        scale * (self.d00[0] * self.m00[1] - self.d00[1] * self.m00[0])
    }
}

/// London-type shift of a single mode, eV.
pub fn london_shift_mode(mode: &CavityMode, molecule: &MoleculeSpectrum) -> f64 {
    let w = mode.omega_ev;
    let weight = 4.0 * mode.coupling_sq() * w * w / 3.0 * mode.chirality;
    let sum: f64 = molecule
        .transitions()
        .iter()
        .map(|t| t.rot_strength_natural() / (t.gap_ev + w))
        .sum();
    weight * sum
}

/// Zero-temperature London-type chiral shift summed over modes, eV.
pub fn london_shift(modes: &CavityModeSet, molecule: &MoleculeSpectrum) -> f64 {
    modes
        .modes()
        .iter()
        .map(|m| london_shift_mode(m, molecule))
        .sum()
}

/// Debye-type contribution of one mode, per molecule, eV. Independent of
/// `Ω_n` because `g_n² Ω_n = 1/(2 ε0 V_eff)`.
pub fn debye_shift_mode(mode: &CavityMode, ensemble: &PolarizedEnsemble) -> f64 {
    let g2_omega = 1.0 / (2.0 * UnitSystem::nm3_to_natural(mode.veff_nm3));
    -(ensemble.n_molecules as f64) * g2_omega * ensemble.cross_z()
}

/// Zero-temperature Debye shift per molecule, eV; the ensemble total is
/// `n_molecules` times this.
pub fn debye_shift_per_molecule(modes: &CavityModeSet, ensemble: &PolarizedEnsemble) -> f64 {
    modes
        .modes()
        .iter()
        .map(|m| debye_shift_mode(m, ensemble))
        .sum()
}

/// Finite-temperature factor `1 − n_B(βΩ)·2Ω/(E_eg − Ω)` on a single-mode
/// London shift. Only defined below resonance.
pub fn thermal_ratio_london(mode_omega_ev: f64, gap_ev: f64, thermal: Thermal) -> Result<f64> {
    let n = bose_occupation(mode_omega_ev, thermal)?;
    if !(gap_ev > mode_omega_ev) {
        return Err(Error::OutOfRegime {
            omega_ev: mode_omega_ev,
            gap_ev,
        });
    }
    Ok(1.0 - n * 2.0 * mode_omega_ev / (gap_ev - mode_omega_ev))
}

/// Finite-temperature factor `1 + 2 n_B(βΩ)` on a single-mode Debye shift.
pub fn thermal_ratio_debye(mode_omega_ev: f64, thermal: Thermal) -> Result<f64> {
    Ok(1.0 + 2.0 * bose_occupation(mode_omega_ev, thermal)?)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ModeContribution {
    pub mode: CavityMode,
    pub london_t0_ev: f64,
    /// `None` when the mode is at or above an electronic gap.
    pub london_ratio: Option<f64>,
    pub london_ev: f64,
    pub resonant: bool,
    pub debye_t0_ev: Option<f64>,
    pub debye_ratio: Option<f64>,
    pub debye_ev: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CavityReport {
    pub temperature_k: f64,
    pub modes: Vec<ModeContribution>,
    pub london_total_t0_ev: f64,
    pub london_total_ev: f64,
    /// Per-molecule Debye totals; `None` without an ensemble.
    pub debye_total_t0_ev: Option<f64>,
    pub debye_total_ev: Option<f64>,
    /// `n_molecules × debye_total_ev`.
    pub debye_ensemble_ev: Option<f64>,
}

impl CavityReport {
    pub fn resonant_modes(&self) -> impl Iterator<Item = &ModeContribution> {
        self.modes.iter().filter(|m| m.resonant)
    }
}

/// Per-mode and total shifts with thermal corrections applied mode by mode.
///
/// Modes at or above an electronic gap are flagged as resonant; their London
/// term is reported at its zero-temperature value with no ratio.
pub fn cavity_shift_report(
    modes: &CavityModeSet,
    molecule: &MoleculeSpectrum,
    ensemble: Option<&PolarizedEnsemble>,
    thermal: Thermal,
) -> Result<CavityReport> {
    let mut rows = Vec::with_capacity(modes.modes().len());
    for mode in modes.modes() {
        let w = mode.omega_ev;
        let weight = 4.0 * mode.coupling_sq() * w * w / 3.0 * mode.chirality;
        let mut london_t0 = 0.0;
        let mut london = 0.0;
        let mut resonant = false;
        for t in molecule.transitions() {
            let term = weight * t.rot_strength_natural() / (t.gap_ev + w);
            london_t0 += term;
            match thermal_ratio_london(w, t.gap_ev, thermal) {
                Ok(r) => london += term * r,
                Err(Error::OutOfRegime { .. }) => {
                    resonant = true;
                    london += term;
                }
                Err(e) => return Err(e),
            }
        }
        let london_ratio = (!resonant).then(|| {
            if london_t0 != 0.0 {
                london / london_t0
            } else {
                // single ratio undefined for a null shift; report the first gap's
                thermal_ratio_london(w, molecule.first().gap_ev, thermal).unwrap_or(1.0)
            }
        });
        let (debye_t0, debye_ratio, debye) = match ensemble {
            Some(ens) => {
                let d0 = debye_shift_mode(mode, ens);
                let ratio = thermal_ratio_debye(w, thermal)?;
                (Some(d0), Some(ratio), Some(d0 * ratio))
            }
            None => (None, None, None),
        };
        rows.push(ModeContribution {
            mode: *mode,
            london_t0_ev: london_t0,
            london_ratio,
            london_ev: london,
            resonant,
            debye_t0_ev: debye_t0,
            debye_ratio,
            debye_ev: debye,
        });
    }
    let london_total_t0_ev = rows.iter().map(|r| r.london_t0_ev).sum();
    let london_total_ev = rows.iter().map(|r| r.london_ev).sum();
    let debye_total_t0_ev = ensemble.map(|_| rows.iter().filter_map(|r| r.debye_t0_ev).sum());
    let debye_total_ev: Option<f64> = ensemble.map(|_| rows.iter().filter_map(|r| r.debye_ev).sum());
    let debye_ensemble_ev = ensemble
        .zip(debye_total_ev)
        .map(|(e, d)| e.n_molecules as f64 * d);
    Ok(CavityReport {
        temperature_k: thermal.kelvin(),
        modes: rows,
        london_total_t0_ev,
        london_total_ev,
        debye_total_t0_ev,
        debye_total_ev,
        debye_ensemble_ev,
    })
}
