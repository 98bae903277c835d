//! Closed product form `F_n(x, a) = (cos(x/n) + i·a·sin(x/n))^n`.
//!
//! Everything here is written in terms of `u = x/n`, the log-modulus
//! `L(u) = (n/2)·ln(1 + (a² − 1)·sin²u)` and the phase defect
//! `h(u) = θ(u) − a·u`, where `θ` is the continuous argument of
//! `cos u + i·a·sin u`.  Then `F_n = exp(L)·exp(i(a·x + n·h))`, and the
//! deviation from `e^{iax}` is `|expm1(L + i·n·h)|` with no cancellation.

use std::f64::consts::PI;
use std::sync::OnceLock;

use num_complex::Complex64;

use crate::error::{domain, Error, Result};
use crate::numeric::quad::GaussLegendre;

const GL_NODES: usize = 20;

fn rule() -> &'static GaussLegendre {
    static RULE: OnceLock<GaussLegendre> = OnceLock::new();
    RULE.get_or_init(|| GaussLegendre::new(GL_NODES))
}

pub(crate) fn check_order(n: usize) -> Result<()> {
    if n == 0 {
        Err(Error::ZeroOrder)
    } else {
        Ok(())
    }
}

/// `(n/2)·ln(cos²u + a²·sin²u)`.
pub fn log_modulus(n: usize, a: f64, u: f64) -> f64 {
    let s = u.sin();
    0.5 * n as f64 * ((a * a - 1.0) * s * s).ln_1p()
}

/// Continuous argument of `cos u + i·a·sin u` with `θ(0) = 0`.
pub fn continuous_arg(a: f64, u: f64) -> f64 {
    if a == 0.0 {
        return 0.0;
    }
    let k = (u / PI).round();
    let r = u - k * PI;
    (a * r.sin()).atan2(r.cos()) + k * PI * a.signum()
}

/// `θ(u) − a·u`, accurate to a few ulp of its own magnitude.
pub fn phase_defect(a: f64, u: f64) -> f64 {
    if a == 0.0 || a.abs() == 1.0 || u == 0.0 {
        return 0.0;
    }
    let m = a.abs();
    if u.abs() < 1.0 && (1e-3..=1e3).contains(&m) {
        // Integrate θ' − a = −a(a² − 1)·sin²s / (cos²s + a²sin²s) panel by panel;
        // the integrand has complex poles at distance atanh(min(|a|, 1/|a|)).
        let d = m.min(1.0 / m).atanh();
        let width = (0.5 * d).min(0.25);
        let panels = (u.abs() / width).ceil().max(1.0) as usize;
        let step = u / panels as f64;
        let a2 = a * a;
        let integrand = |s: f64| {
            let (sn, cs) = s.sin_cos();
            let s2 = sn * sn;
            s2 / (cs * cs + a2 * s2)
        };
        let total: f64 = (0..panels)
            .map(|p| rule().integrate(integrand, p as f64 * step, (p + 1) as f64 * step))
            .sum();
        -a * (a2 - 1.0) * total
    } else {
        continuous_arg(a, u) - a * u
    }
}

/// `F_n(x, a)` evaluated through its modulus and a cancellation-free phase.
pub fn eval_product(n: usize, a: f64, x: f64) -> Result<Complex64> {
    check_order(n)?;
    if a == 0.0 {
        return Ok(Complex64::new((x / n as f64).cos().powi(n as i32), 0.0));
    }
    let u = x / n as f64;
    let modulus = log_modulus(n, a, u).exp();
    let phase = a * x + n as f64 * phase_defect(a, u);
    Ok(Complex64::from_polar(modulus, phase))
}

/// Exact modulus `(cos²(x/n) + a²·sin²(x/n))^{n/2}`.
pub fn product_modulus(n: usize, a: f64, x: f64) -> Result<f64> {
    check_order(n)?;
    Ok(log_modulus(n, a, x / n as f64).exp())
}

/// `F_n` at a complex argument by repeated squaring of the base.
pub fn eval_product_complex(n: usize, a: f64, z: Complex64) -> Result<Complex64> {
    check_order(n)?;
    let w = z / n as f64;
    let base = w.cos() + Complex64::i() * a * w.sin();
    Ok(pow_usize(base, n))
}

fn pow_usize(mut base: Complex64, mut e: usize) -> Complex64 {
    let mut acc = Complex64::new(1.0, 0.0);
    while e > 0 {
        if e & 1 == 1 {
            acc *= base;
        }
        base *= base;
        e >>= 1;
    }
    acc
}

/// Returns true when `u` sits on a zero of `cos u` up to rounding.
pub(crate) fn on_tangent_pole(u: f64) -> bool {
    u.cos().abs() <= 4.0 * f64::EPSILON * u.abs().max(1.0)
}

/// `|F_n(x, a) − e^{iax}|`, rejecting `x/n` on a pole of `tan`.
pub fn error_envelope(n: usize, a: f64, x: f64) -> Result<f64> {
    check_order(n)?;
    let u = x / n as f64;
    if on_tangent_pole(u) {
        return Err(domain(format!("x/n = {u} lies on a pole of tan(x/n)")));
    }
    Ok(envelope_unchecked(n, a, x))
}

pub(crate) fn envelope_unchecked(n: usize, a: f64, x: f64) -> f64 {
    if a == 0.0 {
        return (eval_product(n, a, x).unwrap_or_default() - 1.0).norm();
    }
    let u = x / n as f64;
    let l = log_modulus(n, a, u);
    let phi = n as f64 * phase_defect(a, u);
    let half = (0.5 * phi).sin();
    let re = l.exp_m1() * phi.cos() - 2.0 * half * half;
    let im = l.exp() * phi.sin();
    re.hypot(im)
}

/// First or second derivative of `F_n` in `x`.
pub fn derivative(n: usize, a: f64, x: f64, order: u32) -> Result<Complex64> {
    check_order(n)?;
    let f = eval_product(n, a, x)?;
    let (s, c) = (x / n as f64).sin_cos();
    let g = Complex64::new(c, a * s);
    if g.norm() == 0.0 {
        return Err(domain("g_n(x) vanishes"));
    }
    // n·g'/g with g' = (−sin u + i·a·cos u)/n.
    let ratio = Complex64::new(-s, a * c) / g;
    let nf = n as f64;
    match order {
        1 => Ok(ratio * f),
        2 => Ok((-1.0 / nf + (nf - 1.0) / nf * ratio * ratio) * f),
        _ => Err(domain(format!("derivative order {order} not supported (1 or 2)"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive(n: usize, a: f64, x: f64) -> Complex64 {
        let u = x / n as f64;
        pow_usize(Complex64::new(u.cos(), a * u.sin()), n)
    }

    #[test]
    fn agrees_with_repeated_multiplication() {
        for &(n, a, x) in &[(1, 3.0, 0.4), (7, 2.0, -3.0), (40, 4.0, 9.5), (13, -1.5, 100.0), (9, 0.3, 2.0)] {
            let want = naive(n, a, x);
            let got = eval_product(n, a, x).unwrap();
            assert!((got - want).norm() <= 1e-12 * want.norm(), "n={n} a={a} x={x}: {got} vs {want}");
        }
    }

    #[test]
    fn phase_defect_is_continuous_across_pi_over_two() {
        for a in [0.5, 2.0, -3.0] {
            let eps = 1e-9;
            let left = phase_defect(a, PI / 2.0 - eps);
            let right = phase_defect(a, PI / 2.0 + eps);
            assert!((left - right).abs() < 1e-6, "a={a}: {left} vs {right}");
        }
    }

    #[test]
    fn quadrature_branch_matches_direct_branch() {
        for a in [1.5, 4.0, 0.2, -2.5] {
            for u in [0.1, 0.5, 0.99] {
                let q = phase_defect(a, u);
                let direct = continuous_arg(a, u) - a * u;
                assert!((q - direct).abs() < 1e-13, "a={a} u={u}: {q} vs {direct}");
            }
        }
    }

    #[test]
    fn modulus_at_quarter_period() {
        let m = product_modulus(10, 4.0, 10.0 * PI / 2.0).unwrap();
        assert!((m - 4f64.powi(10)).abs() <= 4f64.powi(10) * 1e-14);
    }

    #[test]
    fn envelope_matches_direct_difference() {
        let (n, a, x) = (50, 3.0, 2.0);
        let direct = (eval_product(n, a, x).unwrap() - Complex64::cis(a * x)).norm();
        let e = error_envelope(n, a, x).unwrap();
        assert!((e - direct).abs() <= 1e-12 * direct);
    }

    #[test]
    fn envelope_rejects_tangent_pole() {
        assert!(error_envelope(4, 2.0, 4.0 * PI / 2.0).is_err());
        assert_eq!(error_envelope(4, 2.0, 0.0).unwrap(), 0.0);
    }

    #[test]
    fn derivative_at_origin_is_ia() {
        for n in [1, 5, 100] {
            let d = derivative(n, 2.5, 0.0, 1).unwrap();
            assert!((d - Complex64::new(0.0, 2.5)).norm() < 1e-15);
        }
    }

    #[test]
    fn complex_argument_reduces_to_real_case() {
        let z = eval_product_complex(12, 2.0, Complex64::new(1.3, 0.0)).unwrap();
        let r = eval_product(12, 2.0, 1.3).unwrap();
        assert!((z - r).norm() < 1e-13);
    }
}
