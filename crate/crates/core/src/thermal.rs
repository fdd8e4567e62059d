//! Thermal state of the photon bath.

use crate::error::{Error, Result};
use crate::units::UnitSystem;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Thermal {
    /// Thermal energy `k_B T` in eV. Zero means the zero-temperature limit.
    kt_ev: f64,
}

impl Thermal {
    pub const ZERO: Thermal = Thermal { kt_ev: 0.0 };

    pub fn from_kelvin(temperature: f64) -> Result<Self> {
        if !(temperature >= 0.0) || !temperature.is_finite() {
            return Err(Error::domain(
                "temperature",
                format!("must be finite and >= 0 K, got {temperature}"),
            ));
        }
        Ok(Self {
            kt_ev: UnitSystem::BOLTZMANN * temperature,
        })
    }

    /// Build directly from a thermal energy `k_B T` in eV.
    pub fn from_kt(kt_ev: f64) -> Result<Self> {
        if !(kt_ev >= 0.0) || !kt_ev.is_finite() {
            return Err(Error::domain(
                "thermal energy",
                format!("k_B T must be finite and >= 0 eV, got {kt_ev}"),
            ));
        }
        Ok(Self { kt_ev })
    }

    pub fn kelvin(&self) -> f64 {
        self.kt_ev / UnitSystem::BOLTZMANN
    }

    pub fn kt(&self) -> f64 {
        self.kt_ev
    }

    pub fn is_zero(&self) -> bool {
        self.kt_ev == 0.0
    }

    /// `1/(k_B T)` in eV⁻¹, or `None` at zero temperature.
    pub fn beta(&self) -> Option<f64> {
        (self.kt_ev > 0.0).then(|| 1.0 / self.kt_ev)
    }
}

/// Bose-Einstein occupation `1/(exp(βω) − 1)` of a mode of energy `omega` (eV).
pub fn bose_occupation(omega: f64, thermal: Thermal) -> Result<f64> {
    if !(omega > 0.0) || !omega.is_finite() {
        return Err(Error::domain(
            "bose_occupation",
            format!("mode energy must be > 0, got {omega}"),
        ));
    }
    Ok(match thermal.beta() {
        None => 0.0,
        Some(beta) => 1.0 / (beta * omega).exp_m1(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn zero_temperature_is_empty() {
        assert_eq!(bose_occupation(0.1, Thermal::ZERO).unwrap(), 0.0);
        assert_eq!(bose_occupation(0.1, Thermal::from_kelvin(0.0).unwrap()).unwrap(), 0.0);
    }

    #[test]
    fn room_temperature_value() {
        let t = Thermal::from_kt(0.034).unwrap();
        let n = bose_occupation(0.1, t).unwrap();
        assert!((n - 0.0557).abs() < 1e-3, "{n}");
    }

    #[test]
    fn ln2_gives_unity() {
        let omega = 0.25;
        let t = Thermal::from_kt(omega / std::f64::consts::LN_2).unwrap();
        assert!((bose_occupation(omega, t).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn nonpositive_energy_rejected() {
        let t = Thermal::from_kelvin(300.0).unwrap();
        assert!(bose_occupation(0.0, t).is_err());
        assert!(bose_occupation(-1.0, t).is_err());
    }

    #[test]
    fn negative_temperature_rejected() {
        assert!(Thermal::from_kelvin(-1.0).is_err());
        assert!(Thermal::from_kelvin(f64::NAN).is_err());
    }

    #[test]
    fn kelvin_round_trip() {
        let t = Thermal::from_kelvin(400.0).unwrap();
        assert!((t.kelvin() - 400.0).abs() < 1e-10);
        assert!((t.kt() - 0.034_469_333).abs() < 1e-8);
    }

    proptest! {
        #[test]
        fn occupation_monotone(omega in 0.01f64..2.0, t in 10.0f64..2000.0, d in 1e-3f64..0.5) {
            let th = Thermal::from_kelvin(t).unwrap();
            let n = bose_occupation(omega, th).unwrap();
            prop_assert!(bose_occupation(omega + d, th).unwrap() < n);
            let hotter = Thermal::from_kelvin(t * (1.0 + d)).unwrap();
            prop_assert!(bose_occupation(omega, hotter).unwrap() > n);
        }
    }
}
