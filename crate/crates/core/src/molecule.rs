use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::units::UnitSystem;

/// One electronic transition out of the ground state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Transition {
    /// Gap `E_i0` in eV.
    pub gap_ev: f64,
    /// Rotatory strength `Im R_i0` in units of `e·a0·μB`.
    pub im_rot_strength: f64,
}

impl Transition {
    /// Rotatory strength in natural units (eV⁻²).
    pub fn rot_strength_natural(&self) -> f64 {
        self.im_rot_strength * UnitSystem::rotatory_strength_unit()
    }
}

/// Electronic spectrum of one molecular species.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MoleculeSpectrum {
    transitions: Vec<Transition>,
}

impl MoleculeSpectrum {
    pub fn new(transitions: Vec<Transition>) -> Result<Self> {
        if transitions.is_empty() {
            return Err(Error::domain("molecule", "needs at least one transition"));
        }
        for (i, t) in transitions.iter().enumerate() {
            if !(t.gap_ev > 0.0) || !t.gap_ev.is_finite() {
                return Err(Error::domain(
                    "molecule",
                    format!("transition {i}: gap must be > 0 eV, got {}", t.gap_ev),
                ));
            }
            if !t.im_rot_strength.is_finite() {
                return Err(Error::domain(
                    "molecule",
                    format!("transition {i}: rotatory strength is not finite"),
                ));
            }
        }
        Ok(Self { transitions })
    }

    pub fn two_level(gap_ev: f64, im_rot_strength: f64) -> Result<Self> {
        Self::new(vec![Transition {
            gap_ev,
            im_rot_strength,
        }])
    }

    pub fn transitions(&self) -> &[Transition] {
        &self.transitions
    }

    /// The lowest transition `E_10` sets the natural length and energy scales.
    pub fn first(&self) -> &Transition {
        &self.transitions[0]
    }

    /// The mirror-image enantiomer: every rotatory strength changes sign.
    pub fn mirror(&self) -> Self {
        Self {
            transitions: self
                .transitions
                .iter()
                .map(|t| Transition {
                    gap_ev: t.gap_ev,
                    im_rot_strength: -t.im_rot_strength,
                })
                .collect(),
        }
    }

    /// Scale every rotatory strength by `s`.
    pub fn scaled(&self, s: f64) -> Self {
        Self {
            transitions: self
                .transitions
                .iter()
                .map(|t| Transition {
                    gap_ev: t.gap_ev,
                    im_rot_strength: s * t.im_rot_strength,
                })
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_gaps() {
        assert!(MoleculeSpectrum::two_level(0.0, 0.1).is_err());
        assert!(MoleculeSpectrum::two_level(-1.0, 0.1).is_err());
        assert!(MoleculeSpectrum::new(vec![]).is_err());
        assert!(MoleculeSpectrum::two_level(2.0, f64::NAN).is_err());
    }

    #[test]
    fn mirror_is_involution() {
        let m = MoleculeSpectrum::new(vec![
            Transition { gap_ev: 2.0, im_rot_strength: 0.1 },
            Transition { gap_ev: 3.5, im_rot_strength: -0.04 },
        ])
        .unwrap();
        let mm = m.mirror();
        assert_eq!(mm.transitions()[0].im_rot_strength, -0.1);
        assert_eq!(mm.transitions()[1].im_rot_strength, 0.04);
        assert_eq!(mm.mirror(), m);
    }
}
