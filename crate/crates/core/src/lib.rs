//! Chirality-dependent vacuum energy shifts of molecules near parity-broken
//! environments, and the enantioselective reaction rates they imply.

pub mod cavity;
pub mod cli;
pub mod error;
pub mod kinetics;
pub mod molecule;
pub mod orientation;
pub mod pasteur;
pub mod quadrature;
pub mod thermal;
pub mod units;
pub mod verify;

pub use error::{Error, Result};
