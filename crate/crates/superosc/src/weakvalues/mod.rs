//! Pre- and post-selected finite-dimensional systems.

mod linalg;
mod pointer;
mod random;

pub use linalg::{Eigenspace, Observable, QuantumState, Unitary};
pub use pointer::{pointer_distribution_ensemble, pointer_distribution_single, ensemble_eigenvalues, pointer_grid_ensemble, pointer_grid_single, PointerModel, PointerWeights};
pub use random::{random_observable, random_state, random_unitary};

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{domain, Error, Result};

/// `|⟨fin|in⟩|` below this makes the weak value undefined.
pub const OVERLAP_TOL: f64 = 1e-12;
/// Spread below which a state counts as an eigenstate.
pub const EIGENSTATE_TOL: f64 = 1e-12;

fn check_dims(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::Dimension { expected, found });
    }
    Ok(())
}

/// `⟨fin|A|in⟩/⟨fin|in⟩`.
pub fn weak_value(a: &Observable, psi_in: &QuantumState, psi_fin: &QuantumState) -> Result<Complex64> {
    check_dims(a.dim(), psi_in.dim())?;
    check_dims(a.dim(), psi_fin.dim())?;
    let overlap = psi_fin.inner(psi_in);
    if overlap.norm() <= OVERLAP_TOL {
        return Err(Error::Orthogonal(overlap.norm()));
    }
    Ok(psi_fin.amplitudes().dotc(&(a.matrix() * psi_in.amplitudes())) / overlap)
}

/// `A|ψ⟩ = ⟨A⟩|ψ⟩ + ΔA|ψ_⊥⟩`.
#[derive(Debug, Clone, PartialEq)]
pub struct Decomposition {
    pub mean: f64,
    pub spread: f64,
    /// `None` when `ψ` is an eigenstate.
    pub perp: Option<QuantumState>,
}

pub fn orthogonal_decomposition(a: &Observable, psi: &QuantumState) -> Result<Decomposition> {
    check_dims(a.dim(), psi.dim())?;
    let v = psi.amplitudes();
    let av = a.matrix() * v;
    let mean = v.dotc(&av).re;
    let rest = av - v * Complex64::from(mean);
    let spread = rest.norm();
    let perp = if spread < EIGENSTATE_TOL { None } else { Some(QuantumState::from_normalized(rest / Complex64::from(spread))) };
    Ok(Decomposition { mean, spread, perp })
}

/// ABL probabilities of every distinct eigenvalue of `A`, in increasing order of eigenvalue.
pub fn abl_distribution(
    a: &Observable,
    psi_in: &QuantumState,
    psi_fin: &QuantumState,
    before: &Unitary,
    after: &Unitary,
) -> Result<Vec<(f64, f64)>> {
    for d in [psi_in.dim(), psi_fin.dim(), before.dim(), after.dim()] {
        check_dims(a.dim(), d)?;
    }
    let evolved = before.matrix() * psi_in.amplitudes();
    let back = after.matrix().adjoint() * psi_fin.amplitudes();
    let weights: Vec<(f64, f64)> = a
        .eigenspaces()
        .iter()
        .map(|e| (e.value, back.dotc(&(&e.projector * &evolved)).norm_sqr()))
        .collect();
    let total: f64 = weights.iter().map(|w| w.1).sum();
    if !(total > f64::MIN_POSITIVE) {
        return Err(Error::UndefinedConditional("the post-selection is unreachable along every path".into()));
    }
    Ok(weights.into_iter().map(|(v, w)| (v, w / total)).collect())
}

/// ABL probability of the `j`-th distinct eigenvalue (increasing order).
pub fn abl_probability(
    a: &Observable,
    psi_in: &QuantumState,
    psi_fin: &QuantumState,
    before: &Unitary,
    after: &Unitary,
    j: usize,
) -> Result<f64> {
    let dist = abl_distribution(a, psi_in, psi_fin, before, after)?;
    let len = dist.len();
    dist.get(j).map(|d| d.1).ok_or(Error::IndexOutOfRange { j, n: len })
}

/// One term `α_i, |Φ_i⟩, |Ψ_i⟩` of a pre/post-selected ensemble.
#[derive(Debug, Clone, PartialEq)]
pub struct EnsembleTerm {
    pub alpha: Complex64,
    /// Pre-selected state `|Φ_i⟩`.
    pub pre: QuantumState,
    /// Post-selected state `|Ψ_i⟩`.
    pub post: QuantumState,
}

fn ensemble_amplitude(m: &DMatrix<Complex64>, ensemble: &[EnsembleTerm]) -> Result<Complex64> {
    let mut acc = Complex64::new(0.0, 0.0);
    for term in ensemble {
        check_dims(m.nrows(), term.pre.dim())?;
        check_dims(m.nrows(), term.post.dim())?;
        acc += term.alpha * term.post.amplitudes().dotc(&(m * term.pre.amplitudes()));
    }
    Ok(acc)
}

/// `Σ α_i⟨Ψ_i|A|Φ_i⟩ / Σ α_i⟨Ψ_i|Φ_i⟩`.
pub fn generalized_weak_value(a: &Observable, ensemble: &[EnsembleTerm]) -> Result<Complex64> {
    if ensemble.is_empty() {
        return Err(domain("empty ensemble"));
    }
    let den = ensemble_amplitude(&DMatrix::identity(a.dim(), a.dim()), ensemble)?;
    if den.norm() <= OVERLAP_TOL {
        return Err(Error::Orthogonal(den.norm()));
    }
    Ok(ensemble_amplitude(a.matrix(), ensemble)? / den)
}

/// `|Σ α_i⟨Ψ_i|P_a|Φ_i⟩|² / Σ_k |Σ α_i⟨Ψ_i|P_{a_k}|Φ_i⟩|²`.
pub fn strong_prob(a: &Observable, value: f64, ensemble: &[EnsembleTerm]) -> Result<f64> {
    let spaces = a.eigenspaces();
    let target = spaces
        .iter()
        .position(|e| (e.value - value).abs() <= linalg::EIGEN_GROUP_TOL * e.value.abs().max(1.0))
        .ok_or_else(|| domain(format!("{value} is not an eigenvalue")))?;
    let weights = spaces.iter().map(|e| Ok(ensemble_amplitude(&e.projector, ensemble)?.norm_sqr())).collect::<Result<Vec<f64>>>()?;
    let total: f64 = weights.iter().sum();
    if !(total > f64::MIN_POSITIVE) {
        return Err(Error::UndefinedConditional("every projected ensemble amplitude vanishes".into()));
    }
    Ok(weights[target] / total)
}

/// Weak value of `A₁ ⊗ A₂` on a product pre- and post-selection, as the product of factor weak values.
pub fn product_state_weak_value(
    a1: &Observable,
    a2: &Observable,
    in1: &QuantumState,
    in2: &QuantumState,
    fin1: &QuantumState,
    fin2: &QuantumState,
) -> Result<Complex64> {
    Ok(weak_value(a1, in1, fin1)? * weak_value(a2, in2, fin2)?)
}

/// Outcome of comparing a dichotomic observable's weak value with its spectrum.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DichotomicCheck {
    pub weak_value: Complex64,
    /// Eigenvalue matched by the weak value, if any.
    pub matched: Option<f64>,
    /// Strong-measurement probability of the matched eigenvalue.
    pub strong_prob: Option<f64>,
}

/// For a two-valued `A`, reports whether the weak value equals an eigenvalue and the
/// corresponding strong probability (which then must be one).
pub fn dichotomic_check(a: &Observable, ensemble: &[EnsembleTerm], tol: f64) -> Result<DichotomicCheck> {
    let spaces = a.eigenspaces();
    if spaces.len() != 2 {
        return Err(domain(format!("observable has {} distinct eigenvalues, not 2", spaces.len())));
    }
    let wv = generalized_weak_value(a, ensemble)?;
    let matched = spaces.iter().map(|e| e.value).find(|v| (wv - v).norm() <= tol);
    let strong = matched.map(|v| strong_prob(a, v, ensemble)).transpose()?;
    Ok(DichotomicCheck { weak_value: wv, matched, strong_prob: strong })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::SQRT_2;

    #[test]
    fn sigma_xi_weak_value_is_root_two() {
        let wv = weak_value(&Observable::sigma_xi(), &QuantumState::up_x(), &QuantumState::up_y()).unwrap();
        assert!((wv - SQRT_2).norm() < 1e-12);
        let id = weak_value(&Observable::identity(2), &QuantumState::up_x(), &QuantumState::up_y()).unwrap();
        assert!((id - 1.0).norm() < 1e-15);
    }

    #[test]
    fn orthogonal_pair_is_rejected() {
        let r = weak_value(&Observable::sigma_z(), &QuantumState::up_x(), &QuantumState::down_x());
        assert!(matches!(r, Err(Error::Orthogonal(_))));
    }

    #[test]
    fn decomposition_of_up_x_under_sigma_z() {
        let d = orthogonal_decomposition(&Observable::sigma_z(), &QuantumState::up_x()).unwrap();
        assert!(d.mean.abs() < 1e-15 && (d.spread - 1.0).abs() < 1e-15);
        let perp = d.perp.unwrap();
        assert!((perp.inner(&QuantumState::down_x()).norm() - 1.0).abs() < 1e-15);
        let eig = orthogonal_decomposition(&Observable::sigma_z(), &QuantumState::up_z()).unwrap();
        assert!(eig.perp.is_none() && eig.spread == 0.0 && eig.mean == 1.0);
    }

    #[test]
    fn abl_certainty_for_the_spin_pps() {
        let id = Unitary::identity(2);
        for a in [Observable::sigma_x(), Observable::sigma_y()] {
            let p = abl_probability(&a, &QuantumState::up_x(), &QuantumState::up_y(), &id, &id, 1).unwrap();
            assert!((p - 1.0).abs() < 1e-12);
        }
        let dist = abl_distribution(&Observable::sigma_z(), &QuantumState::up_x(), &QuantumState::up_y(), &id, &id).unwrap();
        assert!((dist[0].1 - 0.5).abs() < 1e-12 && (dist[1].1 - 0.5).abs() < 1e-12);
    }

    #[test]
    fn unreachable_post_selection_is_undefined() {
        let id = Unitary::identity(2);
        let r = abl_distribution(&Observable::sigma_z(), &QuantumState::up_z(), &QuantumState::down_z(), &id, &id);
        assert!(matches!(r, Err(Error::UndefinedConditional(_))));
    }

    #[test]
    fn single_pair_ensemble_reduces_to_the_weak_value() {
        let term = EnsembleTerm { alpha: Complex64::new(0.3, -0.2), pre: QuantumState::up_x(), post: QuantumState::up_y() };
        let g = generalized_weak_value(&Observable::sigma_xi(), &[term]).unwrap();
        assert!((g - SQRT_2).norm() < 1e-12);
    }

    #[test]
    fn eigenvector_ensemble_is_certain() {
        let term = EnsembleTerm { alpha: 1.0.into(), pre: QuantumState::up_x(), post: QuantumState::up_z() };
        let check = dichotomic_check(&Observable::sigma_z(), &[term], 1e-12).unwrap();
        assert_eq!(check.matched, Some(1.0));
        assert!((check.strong_prob.unwrap() - 1.0).abs() < 1e-12);
    }
}
