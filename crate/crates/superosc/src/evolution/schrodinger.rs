use num_complex::Complex64;
use serde::Serialize;

use super::{contour::gaussian_multiplier_sum, exp_poly_sum, use_contour};
use crate::core::policy::{prototype_loss_bits, PrecisionPolicy};
use crate::core::product::{eval_product, log_modulus, phase_defect};
use crate::core::sequence::{build_prototype, SuperoscSequence};
use crate::error::{domain, Result};
use crate::numeric::mp::{MpComplex, MpContext};
use crate::numeric::sum::CompensatedComplexSum;

fn imag(ctx: &MpContext, v: &astro_float::BigFloat) -> MpComplex {
    MpComplex { re: ctx.int(0), im: v.clone() }
}

fn real(ctx: &MpContext, v: astro_float::BigFloat) -> MpComplex {
    MpComplex { re: v, im: ctx.int(0) }
}

/// Places `coeff` at index `deg` of a polynomial, adding to what is there.
fn add_term(ctx: &MpContext, q: &mut Vec<MpComplex>, deg: usize, coeff: MpComplex) {
    while q.len() <= deg {
        q.push(ctx.zero());
    }
    q[deg] = ctx.cadd(&q[deg], &coeff);
}

/// `Σ_j C_j e^{i k_j x} e^{−i t k_j²}`, the free evolution with `H = −∂²`.
pub fn free_evolve(seq: &SuperoscSequence, x: f64, t: f64) -> Complex64 {
    if use_contour(seq) {
        if let Ok(v) = gaussian_multiplier_sum(seq.n(), seq.a(), x, Complex64::new(0.0, t)) {
            return v;
        }
    }
    exp_poly_sum(seq, 2, 0.0, |ctx| vec![ctx.zero(), imag(ctx, &ctx.real(x)), imag(ctx, &ctx.real(-t))])
}

pub fn free_limit(a: f64, x: f64, t: f64) -> Complex64 {
    Complex64::cis(a * x - a * a * t)
}

/// `Σ_j C_j e^{i k_j x} e^{−k_j² t}` for `t ≥ 0`.
pub fn heat_evolve(seq: &SuperoscSequence, x: f64, t: f64) -> Result<Complex64> {
    if t < 0.0 {
        return Err(domain(format!("heat evolution needs t ≥ 0 (got {t})")));
    }
    if use_contour(seq) {
        return gaussian_multiplier_sum(seq.n(), seq.a(), x, Complex64::new(t, 0.0));
    }
    Ok(exp_poly_sum(seq, 2, 0.0, |ctx| vec![ctx.zero(), imag(ctx, &ctx.real(x)), real(ctx, ctx.real(-t))]))
}

pub fn heat_limit(a: f64, x: f64, t: f64) -> Result<Complex64> {
    if t < 0.0 {
        return Err(domain(format!("heat evolution needs t ≥ 0 (got {t})")));
    }
    Ok((-a * a * t).exp() * Complex64::cis(a * x))
}

/// d'Alembert solution `½[Y_n(x − ct) + Y_n(x + ct)]` with zero initial velocity.
pub fn wave_evolve(seq: &SuperoscSequence, x: f64, t: f64, c: f64) -> Complex64 {
    if use_contour(seq) {
        let left = eval_product(seq.n(), seq.a(), x - c * t);
        let right = eval_product(seq.n(), seq.a(), x + c * t);
        if let (Ok(l), Ok(r)) = (left, right) {
            return 0.5 * (l + r);
        }
    }
    let half = |sign: f64| {
        exp_poly_sum(seq, 1, 0.0, |ctx| {
            let shift = ctx.mul(&ctx.real(c), &ctx.real(t));
            let arg = if sign < 0.0 { ctx.sub(&ctx.real(x), &shift) } else { ctx.add(&ctx.real(x), &shift) };
            vec![ctx.zero(), imag(ctx, &arg)]
        })
    };
    0.5 * (half(-1.0) + half(1.0))
}

pub fn wave_limit(a: f64, x: f64, t: f64, c: f64) -> Complex64 {
    Complex64::cis(a * x) * (a * c * t).cos()
}

/// Sign `s` in the exponent `i·s·t·k^p`: `(−1)^{p/2}` for even `p`, `(−1)^{(p+1)/2}` for odd `p`.
fn modified_coefficient(p: u32) -> f64 {
    if p % 2 == 0 {
        if (p / 2) % 2 == 0 { 1.0 } else { -1.0 }
    } else if p.div_ceil(2) % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// `Σ C_k e^{ixk} e^{it(−ik)^p}` for even `p`, `Σ C_k e^{ixk} e^{t(−ik)^p}` for odd `p`.
///
/// The even case solves `i∂_tψ = −∂_x^pψ` and the odd case `∂_tψ = −∂_x^pψ`.
pub fn modified_evolve(seq: &SuperoscSequence, x: f64, t: f64, p: u32) -> Result<Complex64> {
    if p == 0 {
        return Err(domain("order p must be at least 1"));
    }
    if p == 2 && use_contour(seq) {
        return gaussian_multiplier_sum(seq.n(), seq.a(), x, Complex64::new(0.0, t));
    }
    let s = modified_coefficient(p);
    Ok(exp_poly_sum(seq, p as usize, 0.0, |ctx| {
        let mut q = vec![ctx.zero(), imag(ctx, &ctx.real(x))];
        add_term(ctx, &mut q, p as usize, imag(ctx, &ctx.real(s * t)));
        q
    }))
}

pub fn modified_limit(a: f64, x: f64, t: f64, p: u32) -> Result<Complex64> {
    if p == 0 {
        return Err(domain("order p must be at least 1"));
    }
    let power = Complex64::new(0.0, -a).powu(p);
    let exponent = if p % 2 == 0 { Complex64::i() * t * power } else { t * power };
    Ok(exponent.exp() * Complex64::cis(a * x))
}

/// `Σ C_k e^{−ixk^ℓ} e^{it(−ik^ℓ)^p}` for even `p`.
pub fn powered_datum_evolve(n: usize, a: f64, ell: u32, p: u32, x: f64, t: f64) -> Result<Complex64> {
    if p % 2 == 1 {
        return Err(domain(format!("powered datum law needs even p (got {p})")));
    }
    if ell == 0 {
        return Err(domain("ℓ must be at least 1"));
    }
    let seq = build_prototype(n, a)?;
    let s = if (p / 2) % 2 == 0 { 1.0 } else { -1.0 };
    let deg = (ell * p).max(ell) as usize;
    Ok(exp_poly_sum(&seq, deg, 0.0, |ctx| {
        let mut q = Vec::new();
        add_term(ctx, &mut q, ell as usize, imag(ctx, &ctx.real(-x)));
        add_term(ctx, &mut q, (ell * p) as usize, imag(ctx, &ctx.real(s * t)));
        q
    }))
}

/// `e^{it(−i)^p a^{pℓ}}·e^{−i a^ℓ x}`, the limit of [`powered_datum_evolve`].
pub fn powered_datum_limit(a: f64, ell: u32, p: u32, x: f64, t: f64) -> Result<Complex64> {
    if p % 2 == 1 {
        return Err(domain(format!("powered datum law needs even p (got {p})")));
    }
    let phase = Complex64::new(0.0, -1.0).powu(p) * a.powi((p * ell) as i32);
    Ok((Complex64::i() * t * phase).exp() * Complex64::cis(-a.powi(ell as i32) * x))
}

/// Decomposition `ψ_n − e^{i(ax − a²t)} = Z_n + W_n` with its error scales.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ErrorSplit {
    /// `ψ_n(x, t) − F_n(x − at)`.
    pub z: Complex64,
    /// `F_n(x − at) − e^{i(ax − a²t)}`.
    pub w: Complex64,
    /// `(|x − at|/n)·sqrt(3(a² − 1)/2)`.
    pub eps1: f64,
    /// `|t|·(a³ + a)`.
    pub eps2: f64,
}

pub fn free_error_split(n: usize, a: f64, x: f64, t: f64) -> Result<ErrorSplit> {
    let seq = build_prototype(n, a)?;
    let y = x - a * t;
    let z = if t == 0.0 {
        Complex64::new(0.0, 0.0)
    } else if use_contour(&seq) {
        free_evolve(&seq, x, t) - eval_product(n, a, y)?
    } else {
        let policy_bits = seq.loss_bits() + crate::core::policy::EXTENDED_HEADROOM_BITS;
        let mut ctx = MpContext::new(crate::core::expsum::working_bits(policy_bits, n, 2, 0.0));
        let q_free = vec![ctx.zero(), imag(&ctx, &ctx.real(x)), imag(&ctx, &ctx.real(-t))];
        let shifted = ctx.sub(&ctx.real(x), &ctx.mul(&ctx.real(a), &ctx.real(t)));
        let q_shift = vec![ctx.zero(), imag(&ctx, &shifted)];
        let psi = crate::core::sequence::exp_poly_sum_mp(&seq, &mut ctx, &q_free);
        let f = crate::core::sequence::exp_poly_sum_mp(&seq, &mut ctx, &q_shift);
        ctx.csub(&psi, &f).to_c64()
    };
    let u = y / n as f64;
    let l = log_modulus(n, a, u);
    let phi = n as f64 * phase_defect(a, u);
    let half = (0.5 * phi).sin();
    let expm1 = Complex64::new(l.exp_m1() * phi.cos() - 2.0 * half * half, l.exp() * phi.sin());
    let w = Complex64::cis(a * y) * expm1;
    Ok(ErrorSplit {
        z,
        w,
        eps1: y.abs() / n as f64 * (1.5 * (a * a - 1.0)).abs().sqrt(),
        eps2: t.abs() * (a.powi(3) + a),
    })
}

/// One summand of `Z_n` in modulus-phase form.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FrugscTerm {
    pub k: f64,
    pub coeff: f64,
    /// `|e^{−itk²} − e^{−itak}|`.
    pub rho: f64,
    /// Argument of the bracket; `None` when the two phases coincide.
    pub theta: Option<f64>,
}

/// `Z_n = Σ_k C_k ρ_k e^{i(kx + Θ_k)}` with `ρ_k² = 2 − 2cos(tk² − tak)`.
pub fn frugsc_terms(n: usize, a: f64, t: f64) -> Result<Vec<FrugscTerm>> {
    let seq = build_prototype(n, a)?;
    Ok(seq
        .terms()
        .map(|(k, coeff)| {
            let big_a = t * k * k;
            let big_b = t * a * k;
            let rho = 2.0 * (0.5 * (big_a - big_b)).sin().abs();
            let theta = if rho == 0.0 {
                None
            } else {
                Some((-(big_a.sin() - big_b.sin())).atan2(big_a.cos() - big_b.cos()))
            };
            FrugscTerm { k, coeff, rho, theta }
        })
        .collect())
}

/// Reassembles `Z_n(x, t)` from [`frugsc_terms`] in machine precision.
pub fn frugsc_reconstruct(n: usize, a: f64, x: f64, t: f64) -> Result<Complex64> {
    PrecisionPolicy::MachineCompensated.check(prototype_loss_bits(n, a))?;
    Ok(frugsc_terms(n, a, t)?
        .iter()
        .filter_map(|term| term.theta.map(|theta| term.coeff * Complex64::from_polar(term.rho, term.k * x + theta)))
        .collect::<CompensatedComplexSum>()
        .value())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::core::build_prototype;

    #[test]
    fn two_term_free_evolution() {
        let seq = build_prototype(1, 3.0).unwrap();
        let (x, t) = (0.4, 0.9);
        let want = 2.0 * Complex64::cis(x - t) - Complex64::cis(-(x + t));
        assert!((free_evolve(&seq, x, t) - want).norm() < 1e-14);
    }

    #[test]
    fn two_term_heat_evolution() {
        let seq = build_prototype(1, 3.0).unwrap();
        let (x, t): (f64, f64) = (0.4, 0.9);
        let want = (2.0 * Complex64::cis(x) - Complex64::cis(-x)) * (-t).exp();
        assert!((heat_evolve(&seq, x, t).unwrap() - want).norm() < 1e-14);
        assert!(heat_evolve(&seq, x, -0.1).is_err());
    }

    #[test]
    fn p_two_matches_free() {
        let seq = build_prototype(9, 2.0).unwrap();
        let a = modified_evolve(&seq, 0.3, 0.8, 2).unwrap();
        let b = free_evolve(&seq, 0.3, 0.8);
        assert!((a - b).norm() < 1e-13);
    }

    #[test]
    fn limits_have_expected_phases() {
        let (a, x, t) = (2.0, 0.5, 0.3);
        for p in [2u32, 4] {
            let l = modified_limit(a, x, t, p).unwrap();
            let expect = if p % 4 == 0 { a.powi(p as i32) * t } else { -a.powi(p as i32) * t };
            assert!((l - Complex64::cis(expect + a * x)).norm() < 1e-14);
        }
        let transport = modified_limit(a, x, t, 1).unwrap();
        assert!((transport - Complex64::cis(a * (x - t))).norm() < 1e-14);
        let powered = powered_datum_limit(a, 2, 2, x, t).unwrap();
        assert!((powered - Complex64::cis(-t * a.powi(4) - a * a * x)).norm() < 1e-14);
    }

    #[test]
    fn powered_law_rejects_odd_p() {
        assert!(powered_datum_evolve(5, 2.0, 2, 3, 0.1, 0.1).is_err());
    }

    #[test]
    fn powered_law_at_time_zero() {
        let (n, a, x) = (6, 1.5, 0.8);
        let seq = build_prototype(n, a).unwrap();
        let want: Complex64 = seq.terms().map(|(k, c)| c * Complex64::cis(-x * k * k)).sum();
        assert!((powered_datum_evolve(n, a, 2, 2, x, 0.0).unwrap() - want).norm() < 1e-13);
    }

    #[test]
    fn split_at_time_zero() {
        let s = free_error_split(20, 2.0, 0.5, 0.0).unwrap();
        assert_eq!(s.z, Complex64::new(0.0, 0.0));
        assert_eq!(s.eps2, 0.0);
        assert!((free_error_split(20, 2.0, 0.5, 1.0).unwrap().eps2 - 10.0).abs() < 1e-15);
    }
}
