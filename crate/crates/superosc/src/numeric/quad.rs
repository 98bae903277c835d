//! One-dimensional quadrature rules.

use crate::error::{Error, Result};
use num_complex::Complex64;

const SIMPSON_MAX_DEPTH: u32 = 48;

/// Adaptive Simpson integration of a real function with an absolute tolerance.
///
/// Returns [`Error::Quadrature`] when the recursion depth is exhausted before
/// the local error estimates drop below their share of `tol`.
pub fn adaptive_simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> Result<f64> {
    if a == b {
        return Ok(0.0);
    }
    let fa = f(a);
    let fb = f(b);
    let m = 0.5 * (a + b);
    let fm = f(m);
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    let mut worst = 0.0_f64;
    let value = simpson_step(&f, a, b, fa, fm, fb, whole, tol, SIMPSON_MAX_DEPTH, &mut worst);
    if worst > tol {
        return Err(Error::Quadrature { tol, estimate: worst });
    }
    Ok(value)
}

#[allow(clippy::too_many_arguments)]
fn simpson_step<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
    unresolved: &mut f64,
) -> f64 {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if depth == 0 || m <= a || m >= b {
        *unresolved += delta.abs() / 15.0;
        return left + right + delta / 15.0;
    }
    if delta.abs() <= 15.0 * tol {
        return left + right + delta / 15.0;
    }
    simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1, unresolved)
        + simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1, unresolved)
}

/// Nodes and weights of the `m`-point Gauss-Legendre rule on [-1, 1].
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    pub fn new(m: usize) -> Self {
        assert!(m >= 1, "Gauss-Legendre rule needs at least one node");
        let mut nodes = vec![0.0; m];
        let mut weights = vec![0.0; m];
        for i in 0..m.div_ceil(2) {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (m as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(m, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre_with_derivative(m, x);
            dp = if d != 0.0 { d } else { dp };
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[m - 1 - i] = x;
            weights[i] = w;
            weights[m - 1 - i] = w;
        }
        Self { nodes, weights }
    }

    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F, a: f64, b: f64) -> f64 {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(x, w)| w * f(mid + half * x))
            .sum::<f64>()
            * half
    }

    pub fn integrate_complex<F: Fn(f64) -> Complex64>(&self, f: F, a: f64, b: f64) -> Complex64 {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(x, w)| f(mid + half * x) * *w)
            .sum::<Complex64>()
            * half
    }
}

fn legendre_with_derivative(m: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=m {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = m as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Romberg integration: trapezoid sums refined by Richardson extrapolation.
pub fn romberg<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64, max_levels: usize) -> Result<f64> {
    let mut rows: Vec<Vec<f64>> = Vec::with_capacity(max_levels);
    let mut h = b - a;
    rows.push(vec![0.5 * h * (f(a) + f(b))]);
    let mut last_err = f64::INFINITY;
    for level in 1..max_levels {
        let panels = 1usize << (level - 1);
        h *= 0.5;
        let fresh: f64 = (0..panels).map(|i| f(a + (2 * i + 1) as f64 * h)).sum();
        let mut row = vec![0.5 * rows[level - 1][0] + h * fresh];
        let mut factor = 1.0;
        for k in 1..=level {
            factor *= 4.0;
            let prev = row[k - 1];
            row.push(prev + (prev - rows[level - 1][k - 1]) / (factor - 1.0));
        }
        last_err = (row[level] - rows[level - 1][level - 1]).abs();
        let converged = last_err <= tol && level >= 3;
        rows.push(row);
        if converged {
            return Ok(rows[level][level]);
        }
    }
    Err(Error::Quadrature { tol, estimate: last_err })
}

/// Trapezoid rule over uniformly spaced samples.
pub fn trapezoid_uniform(samples: &[f64], step: f64) -> f64 {
    match samples {
        [] | [_] => 0.0,
        [first, inner @ .., last] => step * (0.5 * (first + last) + inner.iter().sum::<f64>()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn simpson_integrates_sine_over_half_period() {
        let v = adaptive_simpson(f64::sin, 0.0, PI, 1e-12).unwrap();
        assert!((v - 2.0).abs() < 1e-11);
    }

    #[test]
    fn gauss_legendre_is_exact_for_polynomials_up_to_degree_2m_minus_1() {
        let rule = GaussLegendre::new(6);
        let v = rule.integrate(|x| x.powi(11) + 3.0 * x.powi(10), -1.0, 2.0);
        let exact = (2f64.powi(12) - 1.0) / 12.0 + 3.0 * (2f64.powi(11) + 1.0) / 11.0;
        assert!((v - exact).abs() < 1e-10 * exact.abs());
    }

    #[test]
    fn romberg_matches_gaussian_integral() {
        let v = romberg(|x| (-x * x).exp(), -8.0, 8.0, 1e-13, 20).unwrap();
        assert!((v - PI.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn trapezoid_handles_degenerate_inputs() {
        assert_eq!(trapezoid_uniform(&[], 0.1), 0.0);
        assert_eq!(trapezoid_uniform(&[3.0], 0.1), 0.0);
        assert!((trapezoid_uniform(&[0.0, 1.0, 2.0], 0.5) - 1.0).abs() < 1e-15);
    }
}
