//! Scalar shadows of `F_n(T, a)` for a self-adjoint `T`: sup-norms over spectral
//! windows, the truncated sequence `Q_n`, convergence against a discrete
//! spectral measure and the action of `F_n(P̂, a)` by shifts.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;
use serde::Serialize;

use crate::approximation::{standard_approx, Signal, Spectrum};
use crate::core::policy::PrecisionPolicy;
use crate::core::product::{envelope_unchecked, eval_product, log_modulus};
use crate::error::{domain, Error, Result};
use crate::numeric::search::grid_then_golden;

const DENSITY_SUM_TOL: f64 = 1e-12;
const COMPACT_GRID: usize = 4097;

/// Part of the real line on which the spectrum is taken.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum SpectrumWindow {
    Compact { k: f64 },
    Truncated { gamma: f64 },
    FullLine,
}

impl SpectrumWindow {
    pub fn compact(k: f64) -> Result<Self> {
        if !(k >= 0.0 && k.is_finite()) {
            return Err(domain(format!("window half-width K = {k} must be finite and non-negative")));
        }
        Ok(Self::Compact { k })
    }

    pub fn truncated(gamma: f64) -> Result<Self> {
        check_gamma(gamma)?;
        Ok(Self::Truncated { gamma })
    }

    /// Half-width of the window at order `n`; infinite for the full line.
    pub fn half_width(&self, n: usize) -> f64 {
        match *self {
            Self::Compact { k } => k,
            Self::Truncated { gamma } => truncation_half_width(n, gamma),
            Self::FullLine => f64::INFINITY,
        }
    }
}

fn check_gamma(gamma: f64) -> Result<()> {
    if gamma > 2.0 && gamma.is_finite() {
        Ok(())
    } else {
        Err(domain(format!("γ = {gamma} must exceed 2")))
    }
}

/// `n^{1/γ}·π/γ`, the half-width of `e_n(γ)`.
pub fn truncation_half_width(n: usize, gamma: f64) -> f64 {
    (n as f64).powf(1.0 / gamma) * PI / gamma
}

/// A discrete probability measure standing in for `(E(dλ)ψ, ψ)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectralDensity {
    grid: Vec<f64>,
    weights: Vec<f64>,
}

impl SpectralDensity {
    pub fn new(grid: Vec<f64>, weights: Vec<f64>) -> Result<Self> {
        if grid.len() != weights.len() {
            return Err(Error::Dimension { expected: grid.len(), found: weights.len() });
        }
        if grid.is_empty() {
            return Err(domain("a spectral density needs at least one point"));
        }
        if let Some(w) = weights.iter().find(|w| !(**w >= 0.0 && w.is_finite())) {
            return Err(domain(format!("weight {w} is not a non-negative number")));
        }
        if let Some(l) = grid.iter().find(|l| !l.is_finite()) {
            return Err(domain(format!("spectral point {l} is not finite")));
        }
        let total: f64 = weights.iter().sum();
        if (total - 1.0).abs() > DENSITY_SUM_TOL {
            return Err(domain(format!("weights sum to {total}, not 1")));
        }
        Ok(Self { grid, weights })
    }

    pub fn point_mass(lambda: f64) -> Result<Self> {
        Self::new(vec![lambda], vec![1.0])
    }

    /// Equal weights on `count` equally spaced points of `[lo, hi]`.
    pub fn uniform(lo: f64, hi: f64, count: usize) -> Result<Self> {
        if count == 0 || hi < lo {
            return Err(domain(format!("uniform density on [{lo}, {hi}] with {count} points")));
        }
        let step = if count > 1 { (hi - lo) / (count - 1) as f64 } else { 0.0 };
        let grid = (0..count).map(|i| lo + i as f64 * step).collect();
        let weights = vec![1.0 / count as f64; count];
        Self::new(grid, weights)
    }

    pub fn grid(&self) -> &[f64] {
        &self.grid
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn support_radius(&self) -> f64 {
        self.grid.iter().fold(0.0, |m, l| m.max(l.abs()))
    }
}

/// `sup_{λ ∈ window} (cos²(λ/n) + a²sin²(λ/n))^{n/2}`.
pub fn norm_on_window(n: usize, a: f64, window: SpectrumWindow) -> Result<f64> {
    if n == 0 {
        return Err(Error::ZeroOrder);
    }
    let peak = a.abs().max(1.0).powi(n as i32);
    let half = window.half_width(n);
    if a.abs() == 1.0 {
        return Ok(1.0);
    }
    if half / n as f64 >= FRAC_PI_2 {
        return Ok(peak);
    }
    match window {
        SpectrumWindow::FullLine => Ok(peak),
        SpectrumWindow::Truncated { .. } => Ok(endpoint_norm(n, a, half)),
        SpectrumWindow::Compact { k } => {
            let nf = n as f64;
            let found = grid_then_golden(|l| log_modulus(n, a, l / nf), 0.0, k, COMPACT_GRID);
            let edge = log_modulus(n, a, k / nf);
            Ok(found.value.max(edge).max(0.0).exp())
        }
    }
}

/// The modulus at `|λ| = half`, which is the sup when `|a| ≥ 1` and `half/n < π/2`.
fn endpoint_norm(n: usize, a: f64, half: f64) -> f64 {
    if a.abs() < 1.0 {
        return 1.0;
    }
    log_modulus(n, a, half / n as f64).exp()
}

/// `‖Q_n(T, a, γ)‖ = (cos²θ_n + a²sin²θ_n)^{n/2}` with `θ_n = n^{1/γ−1}π/γ`.
pub fn qn_norm(n: usize, a: f64, gamma: f64) -> Result<f64> {
    check_gamma(gamma)?;
    norm_on_window(n, a, SpectrumWindow::Truncated { gamma })
}

/// Small-angle form `(a² − 1)π²/(2γ²)·n^{2/γ−1}` of `ln qn_norm`.
pub fn qn_log_asymptote(n: usize, a: f64, gamma: f64) -> Result<f64> {
    check_gamma(gamma)?;
    Ok((a * a - 1.0) * PI * PI / (2.0 * gamma * gamma) * (n as f64).powf(2.0 / gamma - 1.0))
}

/// `∫ |F_n(λ, a) − e^{iaλ}|² dμ(λ)` for the discrete measure `μ`.
pub fn l2_convergence(n: usize, a: f64, density: &SpectralDensity, window: SpectrumWindow) -> Result<f64> {
    if n == 0 {
        return Err(Error::ZeroOrder);
    }
    let half = window.half_width(n);
    if density.support_radius() > half {
        return Err(domain(format!("density reaches |λ| = {} outside the window of half-width {half}", density.support_radius())));
    }
    Ok(density
        .grid
        .iter()
        .zip(&density.weights)
        .map(|(&l, &w)| w * envelope_unchecked(n, a, l).powi(2))
        .sum())
}

/// `ψ(L·y)`, so that unit shifts of the rescaled signal are shifts by `L` of `ψ`.
struct Rescaled<'a> {
    inner: &'a dyn Signal,
    scale: f64,
}

impl Signal for Rescaled<'_> {
    fn eval(&self, y: f64, order: u32) -> Result<Complex64> {
        Ok(self.inner.eval(self.scale * y, order)? * self.scale.powi(order as i32))
    }

    fn spectrum(&self) -> Option<Spectrum> {
        self.inner.spectrum().map(|s| s.into_iter().map(|(l, w)| (l * self.scale, w)).collect())
    }
}

/// `F_n(P̂, a)ψ(x) = Σ_j C_j(n, a)·ψ(x + (1 − 2j/n)L)`.
pub fn momentum_shift_action(psi: &dyn Signal, n: usize, a: f64, length: f64, x: f64, policy: PrecisionPolicy) -> Result<Complex64> {
    if !(length != 0.0 && length.is_finite()) {
        return Err(domain(format!("length scale L = {length} must be finite and non-zero")));
    }
    let rescaled = Rescaled { inner: psi, scale: length };
    standard_approx(&rescaled, n, &[a], x / length, 0, policy)
}

/// `max_λ |F_n(λ, a + b) − F_n(λ, a)·F_n(λ, b)|` over the given points.
pub fn composition_defect(n: usize, a: f64, b: f64, lambdas: &[f64]) -> Result<f64> {
    lambdas.iter().try_fold(0.0f64, |m, &l| {
        let d = eval_product(n, a + b, l)? - eval_product(n, a, l)? * eval_product(n, b, l)?;
        Ok(m.max(d.norm()))
    })
}
