use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::Rng;

use super::linalg::{Observable, QuantumState, Unitary};
use crate::error::Result;

fn entry<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

/// A state with independent uniform real and imaginary parts, normalized.
pub fn random_state<R: Rng + ?Sized>(rng: &mut R, d: usize) -> Result<QuantumState> {
    QuantumState::new(DVector::from_fn(d, |_, _| entry(rng)))
}

/// `(M + M†)/2` for a matrix `M` of uniform entries.
pub fn random_observable<R: Rng + ?Sized>(rng: &mut R, d: usize) -> Result<Observable> {
    let m = DMatrix::from_fn(d, d, |_, _| entry(rng));
    Observable::new((&m + m.adjoint()) * Complex64::new(0.5, 0.0))
}

/// `exp(−iH)` for a random observable `H`.
pub fn random_unitary<R: Rng + ?Sized>(rng: &mut R, d: usize) -> Result<Unitary> {
    Unitary::from_hamiltonian(&random_observable(rng, d)?, 1.0)
}
