//! Physical constants (CODATA 2018) and the internal unit system.
//!
//! Internally every quantity lives in Heaviside-Lorentz natural units with
//! `ħ = c = ε0 = μ0 = 1`: energies in eV, lengths in eV⁻¹. The public API
//! speaks eV, meV, nm and K, and converts at the boundary.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Constant table. All SI values are CODATA 2018.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct UnitSystem;

impl UnitSystem {
    /// Elementary charge, C.
    pub const ELECTRON_CHARGE: f64 = 1.602_176_634e-19;
    /// Bohr radius, m.
    pub const BOHR_RADIUS: f64 = 5.291_772_109_03e-11;
    /// Bohr magneton, J/T.
    pub const BOHR_MAGNETON: f64 = 9.274_010_078_3e-24;
    /// Fine-structure constant.
    pub const FINE_STRUCTURE: f64 = 7.297_352_569_3e-3;
    /// Rydberg energy, eV.
    pub const RYDBERG_ENERGY: f64 = 13.605_693_122_994;
    /// Boltzmann constant, eV/K.
    pub const BOLTZMANN: f64 = 8.617_333_262e-5;
    /// Vacuum permittivity, F/m.
    pub const VACUUM_PERMITTIVITY: f64 = 8.854_187_812_8e-12;
    /// Vacuum permeability, N/A².
    pub const VACUUM_PERMEABILITY: f64 = 1.256_637_062_12e-6;
    /// Speed of light, m/s.
    pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;
    /// Reduced Planck constant, J·s.
    pub const HBAR: f64 = 1.054_571_817e-34;
    /// Electron rest energy, eV.
    pub const ELECTRON_MASS_EV: f64 = 0.510_998_950_00e6;
    /// Atomic mass unit rest energy, eV.
    pub const ATOMIC_MASS_UNIT_EV: f64 = 931.494_102_42e6;

    /// `ħc` in eV·m.
    pub fn hbar_c_ev_m() -> f64 {
        Self::HBAR * Self::SPEED_OF_LIGHT / Self::ELECTRON_CHARGE
    }

    /// `ħc` in eV·nm (≈ 197.327).
    pub fn hbar_c_ev_nm() -> f64 {
        Self::hbar_c_ev_m() * 1e9
    }

    /// Elementary charge in natural units, `√(4πα)`.
    pub fn charge_natural() -> f64 {
        (4.0 * std::f64::consts::PI * Self::FINE_STRUCTURE).sqrt()
    }

    /// Bohr radius in eV⁻¹.
    pub fn bohr_radius_natural() -> f64 {
        Self::BOHR_RADIUS / Self::hbar_c_ev_m()
    }

    /// Electric dipole unit `e·a0` in natural units.
    pub fn dipole_unit_natural() -> f64 {
        Self::charge_natural() * Self::bohr_radius_natural()
    }

    /// Magnetic moment unit `μB = e/(2 m_e)` in natural units.
    pub fn magneton_natural() -> f64 {
        Self::charge_natural() / (2.0 * Self::ELECTRON_MASS_EV)
    }

    /// Rotatory strength unit `e·a0·μB` in natural units (eV⁻²).
    pub fn rotatory_strength_unit() -> f64 {
        Self::dipole_unit_natural() * Self::magneton_natural()
    }

    pub fn nm_to_natural(nm: f64) -> f64 {
        nm / Self::hbar_c_ev_nm()
    }

    pub fn natural_to_nm(length: f64) -> f64 {
        length * Self::hbar_c_ev_nm()
    }

    pub fn nm3_to_natural(nm3: f64) -> f64 {
        nm3 / Self::hbar_c_ev_nm().powi(3)
    }

    /// Curvature `eV/Å²` to `eV³`.
    pub fn curvature_to_natural(ev_per_angstrom2: f64) -> f64 {
        let hbar_c_angstrom = Self::hbar_c_ev_nm() * 10.0;
        ev_per_angstrom2 * hbar_c_angstrom * hbar_c_angstrom
    }

    pub fn curvature_from_natural(ev3: f64) -> f64 {
        let hbar_c_angstrom = Self::hbar_c_ev_nm() * 10.0;
        ev3 / (hbar_c_angstrom * hbar_c_angstrom)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dimension {
    Energy,
    Length,
    Volume,
    Temperature,
}

/// Units accepted by [`convert`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Unit {
    Joule,
    ElectronVolt,
    MilliElectronVolt,
    Meter,
    Nanometer,
    Angstrom,
    /// Natural length `ħc/eV`.
    InverseElectronVolt,
    CubicNanometer,
    CubicMeter,
    /// Natural volume `(ħc/eV)³`.
    InverseElectronVoltCubed,
    Kelvin,
}

impl Unit {
    pub fn dimension(self) -> Dimension {
        use Unit::*;
        match self {
            Joule | ElectronVolt | MilliElectronVolt => Dimension::Energy,
            Meter | Nanometer | Angstrom | InverseElectronVolt => Dimension::Length,
            CubicNanometer | CubicMeter | InverseElectronVoltCubed => Dimension::Volume,
            Kelvin => Dimension::Temperature,
        }
    }

    /// Size of one of `self` in the dimension's SI base unit.
    fn si_scale(self) -> f64 {
        use Unit::*;
        match self {
            Joule => 1.0,
            ElectronVolt => UnitSystem::ELECTRON_CHARGE,
            MilliElectronVolt => 1e-3 * UnitSystem::ELECTRON_CHARGE,
            Meter => 1.0,
            Nanometer => 1e-9,
            Angstrom => 1e-10,
            InverseElectronVolt => UnitSystem::hbar_c_ev_m(),
            CubicMeter => 1.0,
            CubicNanometer => 1e-27,
            InverseElectronVoltCubed => UnitSystem::hbar_c_ev_m().powi(3),
            Kelvin => 1.0,
        }
    }

    pub fn symbol(self) -> &'static str {
        use Unit::*;
        match self {
            Joule => "J",
            ElectronVolt => "eV",
            MilliElectronVolt => "meV",
            Meter => "m",
            Nanometer => "nm",
            Angstrom => "angstrom",
            InverseElectronVolt => "1/eV",
            CubicNanometer => "nm^3",
            CubicMeter => "m^3",
            InverseElectronVoltCubed => "1/eV^3",
            Kelvin => "K",
        }
    }
}

impl fmt::Display for Unit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

impl FromStr for Unit {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        use Unit::*;
        let unit = match s {
            "J" => Joule,
            "eV" => ElectronVolt,
            "meV" => MilliElectronVolt,
            "m" => Meter,
            "nm" => Nanometer,
            "angstrom" | "A" | "Å" => Angstrom,
            "1/eV" => InverseElectronVolt,
            "nm^3" => CubicNanometer,
            "m^3" => CubicMeter,
            "1/eV^3" => InverseElectronVoltCubed,
            "K" => Kelvin,
            other => return Err(Error::domain("unit", format!("unknown unit '{other}'"))),
        };
        Ok(unit)
    }
}

/// Convert `value` between two units of the same dimension.
pub fn convert(value: f64, from: Unit, to: Unit) -> Result<f64> {
    if from.dimension() != to.dimension() {
        return Err(Error::Unit {
            from: from.to_string(),
            to: to.to_string(),
        });
    }
    if from == to {
        return Ok(value);
    }
    Ok(value * (from.si_scale() / to.si_scale()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn ev_to_joule_is_defining_constant() {
        assert_eq!(
            convert(1.0, Unit::ElectronVolt, Unit::Joule).unwrap(),
            1.602_176_634e-19
        );
    }

    #[test]
    fn millielectronvolt_prefix() {
        let v = convert(1.0, Unit::MilliElectronVolt, Unit::ElectronVolt).unwrap();
        assert!(rel(v, 1e-3) < 1e-15);
    }

    #[test]
    fn natural_length_is_hbar_c() {
        let nm = convert(1.0, Unit::InverseElectronVolt, Unit::Nanometer).unwrap();
        assert!(rel(nm, 197.326_980_4) < 1e-5, "{nm}");
        assert!(rel(UnitSystem::hbar_c_ev_nm(), 197.326_980_4) < 1e-9);
    }

    #[test]
    fn incompatible_dimensions_rejected() {
        let err = convert(1.0, Unit::ElectronVolt, Unit::Nanometer).unwrap_err();
        assert!(matches!(err, Error::Unit { .. }));
        assert!(convert(1.0, Unit::Kelvin, Unit::ElectronVolt).is_err());
    }

    #[test]
    fn round_trips() {
        for &(a, b) in &[
            (Unit::ElectronVolt, Unit::Joule),
            (Unit::Nanometer, Unit::InverseElectronVolt),
            (Unit::CubicNanometer, Unit::InverseElectronVoltCubed),
            (Unit::Angstrom, Unit::Meter),
        ] {
            let x = 3.7;
            let back = convert(convert(x, a, b).unwrap(), b, a).unwrap();
            assert!(rel(back, x) < 1e-12);
        }
        let nm = 12.5;
        assert!(rel(UnitSystem::natural_to_nm(UnitSystem::nm_to_natural(nm)), nm) < 1e-12);
    }

    #[test]
    fn derived_natural_constants() {
        // a0 = 1/(α m_e) in natural units
        let a0 = 1.0 / (UnitSystem::FINE_STRUCTURE * UnitSystem::ELECTRON_MASS_EV);
        assert!(rel(UnitSystem::bohr_radius_natural(), a0) < 1e-8);
        // e·a0·μB = 2π/m_e²
        let r = 2.0 * std::f64::consts::PI / UnitSystem::ELECTRON_MASS_EV.powi(2);
        assert!(rel(UnitSystem::rotatory_strength_unit(), r) < 1e-8);
        // μB in SI agrees with eħ/(2 m_e)
        let m_e_kg = UnitSystem::ELECTRON_MASS_EV * UnitSystem::ELECTRON_CHARGE
            / UnitSystem::SPEED_OF_LIGHT.powi(2);
        let mu_b = UnitSystem::ELECTRON_CHARGE * UnitSystem::HBAR / (2.0 * m_e_kg);
        assert!(rel(mu_b, UnitSystem::BOHR_MAGNETON) < 1e-9);
        // Rydberg = α² m_e / 2
        let ryd = UnitSystem::FINE_STRUCTURE.powi(2) * UnitSystem::ELECTRON_MASS_EV / 2.0;
        assert!(rel(ryd, UnitSystem::RYDBERG_ENERGY) < 1e-9);
        // ε0 μ0 c² = 1
        let one = UnitSystem::VACUUM_PERMITTIVITY
            * UnitSystem::VACUUM_PERMEABILITY
            * UnitSystem::SPEED_OF_LIGHT.powi(2);
        assert!((one - 1.0).abs() < 1e-9);
    }

    #[test]
    fn unit_symbols_parse_back() {
        for u in [Unit::ElectronVolt, Unit::Nanometer, Unit::Kelvin, Unit::CubicNanometer] {
            assert_eq!(u.symbol().parse::<Unit>().unwrap(), u);
        }
    }
}
