use std::f64::consts::FRAC_1_SQRT_2;

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{domain, Error, Result};

/// Eigenvalues closer than this (relative to `max(|λ|, 1)`) share an eigenspace.
pub const EIGEN_GROUP_TOL: f64 = 1e-10;
const HERMITIAN_TOL: f64 = 1e-12;
const UNITARY_TOL: f64 = 1e-10;
const RECONSTRUCTION_TOL: f64 = 1e-12;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// A normalized pure state.
#[derive(Debug, Clone, PartialEq)]
pub struct QuantumState(DVector<Complex64>);

impl QuantumState {
    /// Normalizes `amplitudes`; the dimension must be at least two.
    pub fn new(amplitudes: DVector<Complex64>) -> Result<Self> {
        if amplitudes.len() < 2 {
            return Err(Error::Dimension { expected: 2, found: amplitudes.len() });
        }
        let norm = amplitudes.norm();
        if !(norm > 0.0 && norm.is_finite()) {
            return Err(domain("state vector must be finite and non-zero"));
        }
        Ok(Self(amplitudes / c(norm, 0.0)))
    }

    pub fn from_slice(amplitudes: &[Complex64]) -> Result<Self> {
        Self::new(DVector::from_column_slice(amplitudes))
    }

    pub(crate) fn from_normalized(v: DVector<Complex64>) -> Self {
        Self(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn amplitudes(&self) -> &DVector<Complex64> {
        &self.0
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &QuantumState) -> Complex64 {
        self.0.dotc(&other.0)
    }

    /// `|self⟩ ⊗ |other⟩`.
    pub fn tensor(&self, other: &QuantumState) -> QuantumState {
        QuantumState(self.0.kronecker(&other.0))
    }

    pub fn up_z() -> Self {
        Self(DVector::from_vec(vec![c(1.0, 0.0), c(0.0, 0.0)]))
    }

    pub fn down_z() -> Self {
        Self(DVector::from_vec(vec![c(0.0, 0.0), c(1.0, 0.0)]))
    }

    pub fn up_x() -> Self {
        Self(DVector::from_vec(vec![c(FRAC_1_SQRT_2, 0.0), c(FRAC_1_SQRT_2, 0.0)]))
    }

    pub fn down_x() -> Self {
        Self(DVector::from_vec(vec![c(FRAC_1_SQRT_2, 0.0), c(-FRAC_1_SQRT_2, 0.0)]))
    }

    pub fn up_y() -> Self {
        Self(DVector::from_vec(vec![c(FRAC_1_SQRT_2, 0.0), c(0.0, FRAC_1_SQRT_2)]))
    }

    pub fn down_y() -> Self {
        Self(DVector::from_vec(vec![c(FRAC_1_SQRT_2, 0.0), c(0.0, -FRAC_1_SQRT_2)]))
    }
}

/// Projector onto one eigenvalue of an observable.
#[derive(Debug, Clone, PartialEq)]
pub struct Eigenspace {
    pub value: f64,
    pub projector: DMatrix<Complex64>,
    pub multiplicity: usize,
}

/// A Hermitian matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Observable(DMatrix<Complex64>);

impl Observable {
    pub fn new(matrix: DMatrix<Complex64>) -> Result<Self> {
        if !matrix.is_square() {
            return Err(domain(format!("observable must be square (got {}×{})", matrix.nrows(), matrix.ncols())));
        }
        let scale = matrix.iter().map(|z| z.norm()).fold(1.0, f64::max);
        let defect = (&matrix - matrix.adjoint()).iter().map(|z| z.norm()).fold(0.0, f64::max);
        if defect > HERMITIAN_TOL * scale {
            return Err(Error::NotHermitian(defect));
        }
        Ok(Self(matrix))
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.0
    }

    pub fn identity(d: usize) -> Self {
        Self(DMatrix::identity(d, d))
    }

    pub fn sigma_x() -> Self {
        Self(DMatrix::from_row_slice(2, 2, &[c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)]))
    }

    pub fn sigma_y() -> Self {
        Self(DMatrix::from_row_slice(2, 2, &[c(0.0, 0.0), c(0.0, -1.0), c(0.0, 1.0), c(0.0, 0.0)]))
    }

    pub fn sigma_z() -> Self {
        Self(DMatrix::from_row_slice(2, 2, &[c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(-1.0, 0.0)]))
    }

    /// `(σ_x + σ_y)/√2`.
    pub fn sigma_xi() -> Self {
        Self((Self::sigma_x().0 + Self::sigma_y().0) * c(FRAC_1_SQRT_2, 0.0))
    }

    pub fn add(&self, other: &Observable) -> Result<Observable> {
        if self.dim() != other.dim() {
            return Err(Error::Dimension { expected: self.dim(), found: other.dim() });
        }
        Ok(Self(&self.0 + &other.0))
    }

    /// `A ⊗ B`.
    pub fn tensor(&self, other: &Observable) -> Observable {
        Self(self.0.kronecker(&other.0))
    }

    /// Distinct eigenvalues in increasing order with their spectral projectors.
    pub fn eigenspaces(&self) -> Vec<Eigenspace> {
        let eig = SymmetricEigen::new(self.0.clone());
        let mut order: Vec<usize> = (0..self.dim()).collect();
        order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
        let mut spaces: Vec<(Vec<usize>, f64)> = Vec::new();
        for i in order {
            let v = eig.eigenvalues[i];
            match spaces.last_mut() {
                Some((members, first)) if (v - *first).abs() <= EIGEN_GROUP_TOL * first.abs().max(1.0) => members.push(i),
                _ => spaces.push((vec![i], v)),
            }
        }
        spaces
            .into_iter()
            .map(|(members, _)| {
                let value = members.iter().map(|&i| eig.eigenvalues[i]).sum::<f64>() / members.len() as f64;
                let mut projector = DMatrix::zeros(self.dim(), self.dim());
                for &i in &members {
                    let v = eig.eigenvectors.column(i);
                    projector += v * v.adjoint();
                }
                Eigenspace { value, projector, multiplicity: members.len() }
            })
            .collect()
    }
}

/// A unitary matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Unitary(DMatrix<Complex64>);

impl Unitary {
    pub fn new(matrix: DMatrix<Complex64>) -> Result<Self> {
        if !matrix.is_square() {
            return Err(domain("unitary must be square"));
        }
        let d = matrix.nrows();
        let defect = (matrix.adjoint() * &matrix - DMatrix::<Complex64>::identity(d, d)).iter().map(|z| z.norm()).fold(0.0, f64::max);
        if defect > UNITARY_TOL {
            return Err(Error::NotUnitary(defect));
        }
        Ok(Self(matrix))
    }

    pub fn identity(d: usize) -> Self {
        Self(DMatrix::identity(d, d))
    }

    /// `exp(−iH·dt)` through the eigendecomposition of `H`.
    pub fn from_hamiltonian(h: &Observable, dt: f64) -> Result<Self> {
        let eig = SymmetricEigen::new(h.0.clone());
        let v = &eig.eigenvectors;
        let rebuilt = v * DMatrix::from_diagonal(&eig.eigenvalues.map(|l| c(l, 0.0))) * v.adjoint();
        let scale = h.0.iter().map(|z| z.norm()).fold(1.0, f64::max);
        let defect = (&rebuilt - &h.0).iter().map(|z| z.norm()).fold(0.0, f64::max);
        if defect > RECONSTRUCTION_TOL * scale * h.dim() as f64 {
            return Err(Error::NotHermitian(defect));
        }
        let phases = eig.eigenvalues.map(|l| Complex64::cis(-l * dt));
        Self::new(v * DMatrix::from_diagonal(&phases) * v.adjoint())
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hermiticity_guard() {
        let m = DMatrix::from_row_slice(2, 2, &[c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]);
        assert!(matches!(Observable::new(m), Err(Error::NotHermitian(_))));
    }

    #[test]
    fn degenerate_eigenvalues_are_grouped() {
        let m = DMatrix::from_diagonal(&DVector::from_vec(vec![c(2.0, 0.0), c(-1.0, 0.0), c(2.0, 0.0)]));
        let spaces = Observable::new(m).unwrap().eigenspaces();
        assert_eq!(spaces.len(), 2);
        assert_eq!((spaces[0].value, spaces[0].multiplicity), (-1.0, 1));
        assert_eq!((spaces[1].value, spaces[1].multiplicity), (2.0, 2));
    }

    #[test]
    fn hamiltonian_flow_is_unitary() {
        let u = Unitary::from_hamiltonian(&Observable::sigma_x(), 0.7).unwrap();
        let want = DMatrix::from_row_slice(2, 2, &[c(0.7f64.cos(), 0.0), c(0.0, -0.7f64.sin()), c(0.0, -0.7f64.sin()), c(0.7f64.cos(), 0.0)]);
        assert!((u.matrix() - want).iter().all(|z| z.norm() < 1e-14));
    }

    #[test]
    fn states_are_normalized() {
        let s = QuantumState::from_slice(&[c(3.0, 0.0), c(0.0, 4.0)]).unwrap();
        assert!((s.amplitudes().norm() - 1.0).abs() < 1e-15);
        assert!(QuantumState::from_slice(&[c(1.0, 0.0)]).is_err());
        assert!(QuantumState::from_slice(&[c(0.0, 0.0), c(0.0, 0.0)]).is_err());
    }
}
