//! Acoustic pressure fluctuations in a viscous fluid, in one dimension:
//!
//! ```text
//! p_tt = c^2 p_xx + nu p_txx,     nu = (lambda + 2 mu) / rho_bar
//! ```
//!
//! * [`dispersion`]: exact roots of the dispersion relation, cut-off
//!   wavenumber, per-step gains and phase shifts.
//! * [`spectral`] and [`exact`]: closed-form evolution of periodic
//!   initial-value problems, mode by mode.
//! * [`fdtd`]: explicit finite-difference time stepping.
//! * [`gsa`]: amplification roots of the finite-difference scheme compared
//!   with the exact gains, and the stability certificate the stepper needs.
//! * [`config`] and [`cli`]: the command-line front end and its CSV output.

pub mod cli;
pub mod config;
pub mod dispersion;
pub mod error;
pub mod exact;
pub mod fdtd;
pub mod gsa;
pub mod spectral;

pub use dispersion::{solve_dispersion, DispersionResult, MediumParams, Regime};
pub use error::{Error, Result};
pub use exact::{evolve_field, ExactSolver};
pub use fdtd::{bootstrap, GridSpec, GridState};
pub use gsa::{stability_check, StabilityCertificate};
pub use spectral::SpectralField;
