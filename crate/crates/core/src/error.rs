use thiserror::Error;

/// Failures raised by the physics and numerics layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error in {what}: {reason}")]
    Domain { what: &'static str, reason: String },

    #[error("incompatible units: cannot convert {from} to {to}")]
    Unit { from: String, to: String },

    #[error(
        "quadrature did not converge after {subdivisions} subdivisions \
         (partial result {partial:e}, error estimate {error_estimate:e})"
    )]
    Quadrature {
        partial: f64,
        error_estimate: f64,
        subdivisions: usize,
    },

    #[error("mode at {omega_ev} eV is not below the electronic gap {gap_ev} eV")]
    OutOfRegime { omega_ev: f64, gap_ev: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn domain(what: &'static str, reason: impl Into<String>) -> Self {
        Error::Domain {
            what,
            reason: reason.into(),
        }
    }
}
