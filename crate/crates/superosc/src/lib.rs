//! Superoscillating sequences and their quantum-mechanical companions.
//!
//! The [`core`] module builds and evaluates the sequences; the remaining
//! modules evolve them in time, use them as approximation kernels, and
//! compute the weak values, pointer distributions, spectral norms and
//! Wigner d-function identities in which they appear.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod approximation;
pub mod core;
pub mod error;
pub mod evolution;
pub mod io;
pub mod numeric;
pub mod spectral;
pub mod verify;
pub mod weakvalues;
pub mod wigner;

pub use error::{Error, Result};
