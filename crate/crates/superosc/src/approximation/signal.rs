use num_complex::Complex64;

use crate::error::{domain, Result};

/// A discrete spectrum `ψ(x) = Σ w·e^{iλx}` as `(λ, w)` pairs.
pub type Spectrum = Vec<(f64, Complex64)>;

/// A function of one real variable with access to its derivatives.
pub trait Signal {
    /// `ψ^{(order)}(x)`.
    fn eval(&self, x: f64, order: u32) -> Result<Complex64>;

    /// Exact discrete spectrum when one is known.
    fn spectrum(&self) -> Option<Spectrum> {
        None
    }
}

/// `e^{iωx}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlaneWave {
    pub omega: f64,
}

impl PlaneWave {
    pub fn new(omega: f64) -> Self {
        Self { omega }
    }
}

impl Signal for PlaneWave {
    fn eval(&self, x: f64, order: u32) -> Result<Complex64> {
        Ok(Complex64::new(0.0, self.omega).powu(order) * Complex64::cis(self.omega * x))
    }

    fn spectrum(&self) -> Option<Spectrum> {
        Some(vec![(self.omega, Complex64::new(1.0, 0.0))])
    }
}

/// Physicists' Hermite polynomial `H_k(y)`.
pub(crate) fn hermite(k: u32, y: f64) -> f64 {
    let (mut prev, mut cur) = (1.0, 2.0 * y);
    if k == 0 {
        return prev;
    }
    for m in 1..k {
        let next = 2.0 * y * cur - 2.0 * m as f64 * prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// `d^k/dx^k e^{−αx²} = (−√α)^k H_k(√α x) e^{−αx²}`.
pub(crate) fn gaussian_derivative(alpha: f64, x: f64, k: u32) -> f64 {
    let s = alpha.sqrt();
    (-s).powi(k as i32) * hermite(k, s * x) * (-alpha * x * x).exp()
}

/// `v_α(x) = e^{−αx²}`, not band limited.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Gaussian {
    alpha: f64,
}

impl Gaussian {
    pub fn new(alpha: f64) -> Result<Self> {
        if !(alpha > 0.0) {
            return Err(domain(format!("α = {alpha} must be positive")));
        }
        Ok(Self { alpha })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }
}

impl Signal for Gaussian {
    fn eval(&self, x: f64, order: u32) -> Result<Complex64> {
        Ok(gaussian_derivative(self.alpha, x, order).into())
    }
}

/// A signal given by a closure `(x, order) → ψ^{(order)}(x)`.
pub struct FnSignal<F> {
    f: F,
}

impl<F> FnSignal<F>
where
    F: Fn(f64, u32) -> Result<Complex64>,
{
    pub fn new(f: F) -> Self {
        Self { f }
    }
}

impl<F> Signal for FnSignal<F>
where
    F: Fn(f64, u32) -> Result<Complex64>,
{
    fn eval(&self, x: f64, order: u32) -> Result<Complex64> {
        (self.f)(x, order)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hermite_values() {
        assert_eq!(hermite(0, 0.3), 1.0);
        assert_eq!(hermite(3, 2.0), 8.0 * 8.0 - 12.0 * 2.0);
        assert_eq!(hermite(4, 1.0), 16.0 - 48.0 + 12.0);
    }

    #[test]
    fn gaussian_derivatives_match_differences() {
        let h = 1e-5;
        for k in 0..4 {
            let fd = (gaussian_derivative(2.0, 0.4 + h, k) - gaussian_derivative(2.0, 0.4 - h, k)) / (2.0 * h);
            assert!((fd - gaussian_derivative(2.0, 0.4, k + 1)).abs() < 1e-6);
        }
    }
}
