//! Spectral and temporal profiles of biphotons produced by spontaneous
//! four-wave mixing in a Doppler-broadened atomic vapor.
//!
//! All frequencies are expressed in units of the excited-state decay rate Γ
//! and all times in units of Γ⁻¹; [`units`] converts to MHz and ns.

pub mod analysis;
pub mod cli;
pub mod error;
pub mod medium;
pub mod specfun;
pub mod spectra;
pub mod temporal;
pub mod units;

pub use error::{Error, Result};
