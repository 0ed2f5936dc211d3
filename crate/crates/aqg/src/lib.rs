//! Finite-dimensional algebraic quantum groups.
//!
//! Quantum groups are built from structure constants, their Haar and modular
//! data are solved for numerically, and the duality, multiplicative-unitary,
//! generator and compact-case constructions are evaluated as plain matrix
//! identities whose residuals are reported.

pub mod algebra;
pub mod blocks;
pub mod builtins;
pub mod compact;
pub mod dual;
pub mod error;
pub mod generator;
pub mod gns;
pub mod haar;
pub mod io;
pub mod quantum;
pub mod random;
pub mod report;
pub mod tensor;
pub mod verify;

pub use error::{AqgError, Result};

/// Default comparison tolerance for residuals.
pub const DEFAULT_TOL: f64 = 1e-9;
