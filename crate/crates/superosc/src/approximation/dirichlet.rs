use num_complex::Complex64;
use serde::Serialize;

use crate::core::product::eval_product;
use crate::error::{domain, Result};
use crate::numeric::search::grid_then_golden;

/// Factor by which the measured sup error may exceed [`dirichlet_error_bound`].
pub const DIRICHLET_SLACK: f64 = 1.5;

/// Truncated Dirichlet-type data `Σ_{j<m} c_j e^{iλ_j x}` approximated at order `n`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DirichletData {
    coeffs: Vec<Complex64>,
    freqs: Vec<f64>,
    m: usize,
    n: usize,
}

impl DirichletData {
    pub fn new(coeffs: Vec<Complex64>, freqs: Vec<f64>, m: usize, n: usize) -> Result<Self> {
        if coeffs.len() != freqs.len() {
            return Err(domain(format!("{} coefficients but {} frequencies", coeffs.len(), freqs.len())));
        }
        if m == 0 || m > coeffs.len() {
            return Err(domain(format!("truncation m = {m} must lie in 1..={}", coeffs.len())));
        }
        if n == 0 {
            return Err(crate::error::Error::ZeroOrder);
        }
        if let Some(l) = freqs.iter().find(|l| !(**l > 1.0 && l.is_finite())) {
            return Err(domain(format!("frequency λ = {l} must exceed 1")));
        }
        if coeffs.iter().any(|c| !c.is_finite()) {
            return Err(domain("coefficients must be finite"));
        }
        Ok(Self { coeffs, freqs, m, n })
    }

    pub fn with_order(&self, n: usize) -> Result<Self> {
        Self::new(self.coeffs.clone(), self.freqs.clone(), self.m, n)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    fn terms(&self) -> impl Iterator<Item = (Complex64, f64)> + '_ {
        self.coeffs.iter().copied().zip(self.freqs.iter().copied()).take(self.m)
    }

    /// `Σ_j |c_j|·λ_j` over the kept terms.
    pub fn weighted_mass(&self) -> f64 {
        self.terms().map(|(c, l)| c.norm() * l).sum()
    }
}

/// `Σ_{j<m} c_j Σ_k C_k(n, λ_j) e^{i(1−2k/n)x} = Σ_{j<m} c_j F_n(x, λ_j)`.
pub fn dirichlet_approx(data: &DirichletData, x: f64) -> Result<Complex64> {
    data.terms().map(|(c, l)| Ok(c * eval_product(data.n, l, x)?)).sum()
}

/// `Σ_{j<m} c_j e^{iλ_j x}`.
pub fn dirichlet_limit(data: &DirichletData, x: f64) -> Complex64 {
    data.terms().map(|(c, l)| c * Complex64::cis(l * x)).sum()
}

/// `Σ_j 2|c_j|(M/n)λ_j`.
pub fn dirichlet_error_bound(data: &DirichletData, m_bound: f64) -> f64 {
    2.0 * m_bound / data.n as f64 * data.weighted_mass()
}

/// `sup_{|x| ≤ M} |dirichlet_approx − dirichlet_limit|`.
pub fn dirichlet_sup_error(data: &DirichletData, m_bound: f64, points: usize) -> Result<f64> {
    for x in [-m_bound, 0.0, m_bound] {
        dirichlet_approx(data, x)?;
    }
    let peak = grid_then_golden(
        |x| dirichlet_approx(data, x).map(|v| (v - dirichlet_limit(data, x)).norm()).unwrap_or(f64::NAN),
        -m_bound,
        m_bound,
        points,
    );
    Ok(peak.value)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_term(n: usize) -> DirichletData {
        DirichletData::new(vec![1.0.into(), 0.5.into()], vec![2.0, 3.0], 2, n).unwrap()
    }

    #[test]
    fn bound_value() {
        assert!((dirichlet_error_bound(&two_term(100), 1.0) - (2.0 * 2.0 + 2.0 * 0.5 * 3.0) / 100.0).abs() < 1e-15);
    }

    #[test]
    fn converges_within_slack() {
        let mut last = f64::INFINITY;
        for n in [100, 1000] {
            let d = two_term(n);
            let err = dirichlet_sup_error(&d, 1.0, 1001).unwrap();
            assert!(err <= DIRICHLET_SLACK * dirichlet_error_bound(&d, 1.0), "n = {n}: {err}");
            assert!(err < last);
            last = err;
        }
    }

    #[test]
    fn rejects_small_frequencies() {
        assert!(DirichletData::new(vec![1.0.into()], vec![1.0], 1, 10).is_err());
        assert!(DirichletData::new(vec![1.0.into()], vec![2.0], 2, 10).is_err());
    }
}
