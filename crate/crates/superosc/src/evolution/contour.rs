use std::f64::consts::PI;

use num_complex::Complex64;

use crate::core::product::eval_product_complex;
use crate::error::{domain, Result};

const HALF_WIDTH_SIGMAS: f64 = 12.0;
const STEPS_PER_SIGMA: f64 = 16.0;

/// `Σ_j C_j(n, a)·e^{i k_j X}·e^{−β k_j²}` for `Re β ≥ 0`, without cancellation.
///
/// Writing `e^{−βk²}` as a Gaussian integral turns the sum into
/// `(4πβ)^{-1/2} ∫ e^{−y²/(4β)} F_n(X + y) dy`.  The contour is moved through
/// the saddle `y₀ = 2iaβ` and rotated by `w = √β/|√β|`, where the integrand is
/// a smooth bump of width `σ = √(2|β|)`; the trapezoid rule on `±12σ` then
/// converges geometrically.
pub fn gaussian_multiplier_sum(n: usize, a: f64, x: f64, beta: Complex64) -> Result<Complex64> {
    if beta.re < 0.0 {
        return Err(domain(format!("Re β = {} must be non-negative", beta.re)));
    }
    if beta.norm() == 0.0 {
        return eval_product_complex(n, a, Complex64::new(x, 0.0));
    }
    let root = beta.sqrt();
    let w = root / root.norm();
    let y0 = Complex64::new(0.0, 2.0 * a) * beta;
    let sigma = (2.0 * beta.norm()).sqrt();
    let h = sigma / STEPS_PER_SIGMA;
    let half = (HALF_WIDTH_SIGMAS * STEPS_PER_SIGMA) as i64;
    let mut acc = Complex64::new(0.0, 0.0);
    for i in -half..=half {
        let y = y0 + w * (i as f64 * h);
        let gauss = (-(y * y) / (4.0 * beta)).exp();
        acc += gauss * eval_product_complex(n, a, Complex64::new(x, 0.0) + y)?;
    }
    Ok(acc * h * w / (4.0 * PI * beta).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::core::build_prototype;

    fn direct(n: usize, a: f64, x: f64, beta: Complex64) -> Complex64 {
        let seq = build_prototype(n, a).unwrap();
        seq.terms().map(|(k, c)| c * (Complex64::new(-beta.re * k * k, k * x - beta.im * k * k)).exp()).sum()
    }

    #[test]
    fn matches_direct_sum_for_small_orders() {
        for beta in [Complex64::new(0.0, 0.3), Complex64::new(0.4, 0.0), Complex64::new(0.0, -0.8), Complex64::new(0.2, 0.5)] {
            let got = gaussian_multiplier_sum(8, 1.5, 0.7, beta).unwrap();
            let want = direct(8, 1.5, 0.7, beta);
            assert!((got - want).norm() < 1e-11, "β={beta}: {got} vs {want}");
        }
    }
}
