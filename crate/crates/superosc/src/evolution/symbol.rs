use num_complex::Complex64;
use serde::Serialize;

use super::exp_poly_sum;
use crate::core::sequence::SuperoscSequence;
use crate::error::{domain, Error, Result};
use crate::numeric::mp::MpComplex;

/// Slack allowed in the root test `R·|a_p|^{1/p} ≤ 1`.
const ROOT_TEST_SLACK: f64 = 1e-9;
/// Largest acceptable `|t|·|G − G_N|` on the frequencies in use.
pub const SYMBOL_TAIL_TARGET: f64 = 1e-12;

/// Power series `G(ζ) = Σ_p a_p ζ^p` with a radius of validity.
///
/// An infinite radius marks the coefficient list as a complete polynomial.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SymbolSeries {
    coeffs: Vec<Complex64>,
    radius: f64,
}

impl SymbolSeries {
    pub fn new(coeffs: Vec<Complex64>, radius: f64) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(domain("symbol needs at least one coefficient"));
        }
        if coeffs.iter().any(|c| !c.is_finite()) {
            return Err(domain("symbol coefficients must be finite"));
        }
        if !(radius > 0.0) {
            return Err(domain(format!("radius {radius} must be positive")));
        }
        if radius.is_finite() {
            for (p, c) in coeffs.iter().enumerate().skip(1) {
                let root = radius * c.norm().powf(1.0 / p as f64);
                if root > 1.0 + ROOT_TEST_SLACK {
                    return Err(domain(format!("root test fails at p = {p}: R·|a_p|^(1/p) = {root}")));
                }
            }
        }
        Ok(Self { coeffs, radius })
    }

    /// An entire symbol given by finitely many coefficients.
    pub fn polynomial(coeffs: Vec<Complex64>) -> Result<Self> {
        Self::new(coeffs, f64::INFINITY)
    }

    /// `a_p = 1` for `p ≤ degree`, i.e. the degree-`degree` truncation of `1/(1 − ζ)` as a polynomial.
    pub fn geometric_polynomial(degree: usize) -> Self {
        Self { coeffs: vec![Complex64::new(1.0, 0.0); degree + 1], radius: f64::INFINITY }
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    /// `G_N(ζ) = Σ_{p ≤ N} a_p ζ^p`.
    pub fn eval_truncated(&self, zeta: Complex64, truncation: usize) -> Complex64 {
        let top = truncation.min(self.coeffs.len() - 1);
        self.coeffs[..=top].iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| acc * zeta + c)
    }

    /// Upper bound on `|G(ζ) − G_N(ζ)|` for `|ζ| ≤ k_max`.
    pub fn tail_bound(&self, k_max: f64, truncation: usize) -> Result<f64> {
        if self.radius.is_infinite() {
            return Ok(self.coeffs.iter().enumerate().skip(truncation + 1).map(|(p, c)| c.norm() * k_max.powi(p as i32)).sum());
        }
        if k_max >= self.radius {
            return Err(domain(format!("frequency {k_max} is outside the radius {}", self.radius)));
        }
        let theta = k_max / self.radius;
        let scale = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(p, c)| c.norm() * self.radius.powi(p as i32))
            .fold(0.0, f64::max);
        Ok(scale * theta.powi(truncation as i32 + 1) / (1.0 - theta))
    }

    fn checked_tail(&self, k_max: f64, t: f64, truncation: usize) -> Result<f64> {
        let tail = t.abs() * self.tail_bound(k_max, truncation)?;
        if tail > SYMBOL_TAIL_TARGET {
            return Err(Error::TailNotConverged { achieved: tail, target: SYMBOL_TAIL_TARGET });
        }
        Ok(tail)
    }
}

/// Value of a symbol-series evolution with its truncation diagnostics.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SymbolEvolution {
    pub value: Complex64,
    /// `|t|·sup|G − G_N|` over the frequencies of the sequence.
    pub tail_bound: f64,
    pub degree: usize,
}

/// `Σ_j C_j e^{i k_j x}·e^{itG_N(ik_j)}`, which solves `i∂ₜψ = −G(∂ₓ)ψ`.
pub fn symbol_evolve(seq: &SuperoscSequence, symbol: &SymbolSeries, x: f64, t: f64, truncation: usize) -> Result<SymbolEvolution> {
    let k_max = seq.freqs().iter().fold(0.0_f64, |m, k| m.max(k.abs()));
    let tail_bound = symbol.checked_tail(k_max, t, truncation)?;
    let top = truncation.min(symbol.coeffs.len() - 1);
    let degree = top.max(1);
    let growth = t.abs() * symbol.coeffs[..=top]
        .iter()
        .enumerate()
        .map(|(p, c)| c.norm() * k_max.powi(p as i32))
        .sum::<f64>();
    let value = exp_poly_sum(seq, degree, growth, |ctx| {
        let tm = ctx.real(t);
        let mut q = vec![ctx.zero(); degree + 1];
        for (p, c) in symbol.coeffs[..=top].iter().enumerate() {
            // i·t·a_p·i^p = t·a_p·i^{p+1}
            let mut z = MpComplex { re: ctx.mul(&tm, &ctx.real(c.re)), im: ctx.mul(&tm, &ctx.real(c.im)) };
            for _ in 0..(p + 1) % 4 {
                z = ctx.times_i(&z);
            }
            q[p] = z;
        }
        q[1] = ctx.cadd(&q[1], &MpComplex { re: ctx.int(0), im: ctx.real(x) });
        q
    });
    Ok(SymbolEvolution { value, tail_bound, degree })
}

/// `e^{itG_N(ia)}·e^{iax}`.
pub fn symbol_limit(symbol: &SymbolSeries, a: f64, x: f64, t: f64, truncation: usize) -> Result<Complex64> {
    symbol.checked_tail(a.abs(), t, truncation)?;
    let g = symbol.eval_truncated(Complex64::new(0.0, a), truncation);
    Ok((Complex64::i() * t * g).exp() * Complex64::cis(a * x))
}
