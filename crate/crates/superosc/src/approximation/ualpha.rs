use std::f64::consts::PI;

use num_complex::Complex64;

use super::signal::{gaussian_derivative, Signal};
use crate::error::{domain, Result};

fn check_alpha(alpha: f64) -> Result<()> {
    if !(alpha > 0.0 && alpha.is_finite()) {
        return Err(domain(format!("α = {alpha} must be positive")));
    }
    Ok(())
}

/// `u_α(x) = x·e^{−αx²}`.
pub fn ualpha(alpha: f64, x: f64) -> Result<f64> {
    check_alpha(alpha)?;
    Ok(x * (-alpha * x * x).exp())
}

/// `û_α(λ) = −(iλ/2α)·√(π/α)·e^{−λ²/4α}`.
pub fn ualpha_hat(alpha: f64, lambda: f64) -> Result<Complex64> {
    check_alpha(alpha)?;
    let mag = lambda / (2.0 * alpha) * (PI / alpha).sqrt() * (-lambda * lambda / (4.0 * alpha)).exp();
    Ok(Complex64::new(0.0, -mag))
}

/// `∫|û_α| = 2√(π/α)`.
pub fn ualpha_hat_l1(alpha: f64) -> Result<f64> {
    check_alpha(alpha)?;
    Ok(2.0 * (PI / alpha).sqrt())
}

/// `(1 + max(|a|,1)^n)·γ/(2π)`, a uniform bound on `|φ_{ψ,n,a} − ψ(· + a)|` when `∫|ψ̂| ≤ γ`.
pub fn xgamma_bound(n: usize, a: f64, gamma: f64) -> Result<f64> {
    if !(gamma > 0.0) {
        return Err(domain(format!("γ = {gamma} must be positive")));
    }
    let mass = a.abs().max(1.0).powi(n as i32);
    Ok((1.0 + mass) * gamma / (2.0 * PI))
}

/// Smallest `α` with `(1 + a^n)/√(πα) ≤ ε`, i.e. `(1 + a^n)²/(πε²)`.
pub fn alpha_threshold(a: f64, n: usize, eps: f64) -> Result<f64> {
    if !(eps > 0.0) {
        return Err(domain(format!("ε = {eps} must be positive")));
    }
    let c = 1.0 + a.powi(n as i32);
    Ok(c * c / (PI * eps * eps))
}

/// `u_α` as a [`Signal`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Ualpha {
    alpha: f64,
}

impl Ualpha {
    pub fn new(alpha: f64) -> Result<Self> {
        check_alpha(alpha)?;
        Ok(Self { alpha })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }
}

impl Signal for Ualpha {
    /// `(x·g)^{(k)} = x·g^{(k)} + k·g^{(k−1)}` with `g = e^{−αx²}`.
    fn eval(&self, x: f64, order: u32) -> Result<Complex64> {
        let mut v = x * gaussian_derivative(self.alpha, x, order);
        if order > 0 {
            v += order as f64 * gaussian_derivative(self.alpha, x, order - 1);
        }
        Ok(v.into())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::quad::adaptive_simpson;

    fn panels<F: Fn(f64) -> f64>(f: F, half_width: i32) -> f64 {
        (-half_width..half_width).map(|i| adaptive_simpson(&f, i as f64, i as f64 + 1.0, 1e-14).unwrap()).sum()
    }

    #[test]
    fn hat_l1_by_quadrature() {
        let alpha = 4.0;
        let q = panels(|l| ualpha_hat(alpha, l).unwrap().norm(), 60);
        assert!((q - PI.sqrt()).abs() < 1e-9);
        assert!((ualpha_hat_l1(alpha).unwrap() - PI.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn hat_is_the_fourier_transform() {
        // û(λ) = ∫u(x)e^{−iλx}dx
        for lambda in [-5.0, -1.2, 0.0, 2.5, 5.0] {
            let re = panels(|x| ualpha(1.0, x).unwrap() * (lambda * x).cos(), 12);
            let im = panels(|x| -ualpha(1.0, x).unwrap() * (lambda * x).sin(), 12);
            assert!((Complex64::new(re, im) - ualpha_hat(1.0, lambda).unwrap()).norm() < 1e-8);
        }
    }

    #[test]
    fn threshold_round_trip() {
        for (a, n, eps) in [(2.0, 5, 0.1), (1.5, 10, 1e-3), (3.0, 2, 0.5)] {
            let alpha = alpha_threshold(a, n, eps).unwrap();
            let back = (1.0 + a.powi(n as i32)) * (1.0 / (PI * alpha)).sqrt();
            assert!((back - eps).abs() <= 4.0 * f64::EPSILON * eps);
        }
    }

    #[test]
    fn ualpha_bound_is_the_xgamma_bound() {
        let (alpha, n, a) = (10.0, 5, 2.0);
        let want = (1.0 + 32.0) * (PI / alpha).sqrt() / PI;
        assert!((xgamma_bound(n, a, ualpha_hat_l1(alpha).unwrap()).unwrap() - want).abs() < 1e-14);
    }

    #[test]
    fn derivatives_match_differences() {
        let u = Ualpha::new(1.7).unwrap();
        let h = 1e-5;
        for k in 0..3 {
            let fd = (u.eval(0.3 + h, k).unwrap() - u.eval(0.3 - h, k).unwrap()) / (2.0 * h);
            assert!((fd - u.eval(0.3, k + 1).unwrap()).norm() < 1e-6);
        }
    }
}
