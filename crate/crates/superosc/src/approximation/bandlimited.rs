use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;
use serde::Serialize;

use super::signal::{Signal, Spectrum};
use crate::core::product::{check_order, envelope_unchecked};
use crate::error::{domain, Result};
use crate::numeric::search::grid_then_golden;

/// Relative tolerance on the spacing of an imported frequency grid.
const GRID_SPACING_TOL: f64 = 1e-9;
const SUP_SEARCH_POINTS: usize = 2048;

/// A function whose Fourier transform `ψ̂` vanishes outside `[lo, hi]`,
/// stored as samples of `ψ̂` on a uniform grid.
///
/// With `ψ(x) = (1/2π)∫ψ̂(λ)e^{iλx}dλ` discretized by the trapezoid rule, the
/// function is an exact finite superposition of plane waves.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BandLimitedFunction {
    lo: f64,
    step: f64,
    hat: Vec<Complex64>,
}

/// `∫|ψ̂|` with a Richardson error estimate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct L1Norm {
    pub value: f64,
    pub error: f64,
}

impl BandLimitedFunction {
    /// Samples `ψ̂(λ_i)` at uniformly spaced, increasing `λ_i`.
    pub fn from_samples(lambdas: &[f64], hat: Vec<Complex64>) -> Result<Self> {
        if lambdas.len() != hat.len() {
            return Err(domain(format!("{} frequencies but {} samples", lambdas.len(), hat.len())));
        }
        if lambdas.len() < 2 {
            return Err(domain("at least two samples are required"));
        }
        if lambdas.iter().any(|l| !l.is_finite()) || hat.iter().any(|h| !h.is_finite()) {
            return Err(domain("samples must be finite"));
        }
        let step = (lambdas[lambdas.len() - 1] - lambdas[0]) / (lambdas.len() - 1) as f64;
        if !(step > 0.0) {
            return Err(domain("frequencies must increase"));
        }
        for (i, l) in lambdas.iter().enumerate() {
            let expected = lambdas[0] + i as f64 * step;
            if (l - expected).abs() > GRID_SPACING_TOL * step.max(expected.abs()) {
                return Err(domain(format!("frequency grid is not uniform at index {i} ({l} vs {expected})")));
            }
        }
        Ok(Self { lo: lambdas[0], step, hat })
    }

    /// Samples `hat(λ)` at `count` uniform points of `[lo, hi]`.
    pub fn from_fn<F: Fn(f64) -> Complex64>(lo: f64, hi: f64, count: usize, hat: F) -> Result<Self> {
        if count < 2 || !(hi > lo) {
            return Err(domain(format!("need lo < hi and at least two points (got [{lo}, {hi}], {count})")));
        }
        let step = (hi - lo) / (count - 1) as f64;
        let lambdas: Vec<f64> = (0..count).map(|i| lo + i as f64 * step).collect();
        let samples = lambdas.iter().map(|&l| hat(l)).collect();
        Self::from_samples(&lambdas, samples)
    }

    pub fn support(&self) -> (f64, f64) {
        (self.lo, self.lo + self.step * (self.hat.len() - 1) as f64)
    }

    /// `max |λ|` over the support.
    pub fn band(&self) -> f64 {
        let (lo, hi) = self.support();
        lo.abs().max(hi.abs())
    }

    pub fn grid_step(&self) -> f64 {
        self.step
    }

    pub fn samples(&self) -> impl Iterator<Item = (f64, Complex64)> + '_ {
        self.hat.iter().enumerate().map(|(i, h)| (self.lo + i as f64 * self.step, *h))
    }

    fn trapezoid_weight(&self, i: usize) -> f64 {
        if i == 0 || i + 1 == self.hat.len() {
            0.5 * self.step
        } else {
            self.step
        }
    }

    /// Trapezoid value of `∫|ψ̂|`; the error compares against the rule on every other sample.
    pub fn l1_norm(&self) -> L1Norm {
        let fine: f64 = self.hat.iter().enumerate().map(|(i, h)| self.trapezoid_weight(i) * h.norm()).sum();
        let last = self.hat.len() - 1;
        let error = if last % 2 == 0 && last >= 2 {
            let coarse: f64 = (0..=last)
                .step_by(2)
                .map(|i| {
                    let w = if i == 0 || i == last { self.step } else { 2.0 * self.step };
                    w * self.hat[i].norm()
                })
                .sum();
            (fine - coarse).abs() / 3.0
        } else {
            f64::NAN
        };
        L1Norm { value: fine, error }
    }

    /// `(1/2π)·Σ trapezoid |ψ̂|`, the mass of the discrete spectrum.
    pub fn spectral_mass(&self) -> f64 {
        self.l1_norm().value / (2.0 * PI)
    }
}

impl Signal for BandLimitedFunction {
    fn eval(&self, x: f64, order: u32) -> Result<Complex64> {
        Ok(self
            .spectrum()
            .unwrap_or_default()
            .into_iter()
            .map(|(l, w)| w * Complex64::new(0.0, l).powu(order) * Complex64::cis(l * x))
            .sum())
    }

    fn spectrum(&self) -> Option<Spectrum> {
        Some(self.samples().enumerate().map(|(i, (l, h))| (l, h * self.trapezoid_weight(i) / (2.0 * PI))).collect())
    }
}

/// `ε_{n,k}·(1/2π)∫|ψ̂|` with `ε_{n,k} = sup_{λ∈K} |λ|^k E_n(λ, a)`.
pub fn bandlimited_error_bound(psi: &BandLimitedFunction, n: usize, a: f64, order: u32) -> Result<f64> {
    check_order(n)?;
    let band = psi.band();
    if band / n as f64 >= FRAC_PI_2 {
        return Err(domain(format!("band {band} is too wide for n = {n}: need |λ|/n < π/2")));
    }
    let weighted = |l: f64| l.abs().powi(order as i32) * envelope_unchecked(n, a, l);
    let (lo, hi) = psi.support();
    let searched = grid_then_golden(weighted, lo, hi, SUP_SEARCH_POINTS).value;
    let nodes = psi.samples().map(|(l, _)| weighted(l)).fold(0.0, f64::max);
    Ok(searched.max(nodes) * psi.spectral_mass())
}

/// `2(1 − cos x)/x²`, the inverse transform of `2π(1 − |λ|)` on `[−1, 1]`.
pub fn fejer_exact(x: f64) -> f64 {
    let half = 0.5 * x;
    if half == 0.0 {
        1.0
    } else {
        let s = half.sin() / half;
        s * s
    }
}

/// A named band-limited test function.
#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub name: &'static str,
    pub function: BandLimitedFunction,
}

/// Fejér, raised-cosine and smooth-bump spectra on `[−1, 1]`, each with unit `(1/2π)∫|ψ̂|` up to quadrature.
pub fn corpus(samples: usize) -> Result<Vec<CorpusEntry>> {
    let fejer = BandLimitedFunction::from_fn(-1.0, 1.0, samples, |l| (2.0 * PI * (1.0 - l.abs())).into())?;
    let cosine = BandLimitedFunction::from_fn(-1.0, 1.0, samples, |l| (PI * (1.0 + (PI * l).cos())).into())?;
    let bump_shape = |l: f64| if l.abs() < 1.0 { (-1.0 / (1.0 - l * l)).exp() } else { 0.0 };
    let raw = BandLimitedFunction::from_fn(-1.0, 1.0, samples, |l| bump_shape(l).into())?;
    let scale = 2.0 * PI / raw.l1_norm().value;
    let bump = BandLimitedFunction::from_fn(-1.0, 1.0, samples, |l| (scale * bump_shape(l)).into())?;
    Ok(vec![
        CorpusEntry { name: "fejer", function: fejer },
        CorpusEntry { name: "raised-cosine", function: cosine },
        CorpusEntry { name: "bump", function: bump },
    ])
}
