use num_complex::Complex64;

use super::{contour::gaussian_multiplier_sum, exp_poly_sum, use_contour};
use crate::core::sequence::{build_prototype, SuperoscSequence};
use crate::error::{Error, Result};
use crate::numeric::mp::MpComplex;

/// Times with `|cos t|` below this are treated as the focal singularity.
pub const SINGULAR_COS: f64 = 1e-8;

fn check_time(t: f64) -> Result<f64> {
    let c = t.cos();
    if c.abs() < SINGULAR_COS {
        return Err(Error::Singular(format!("cos t = {c:e} at t = {t}")));
    }
    Ok(c)
}

/// Principal branch of `(cos t)^{-1/2}`.
fn amplitude(c: f64) -> Complex64 {
    Complex64::new(c, 0.0).sqrt().inv()
}

/// Evolution of `e^{iax}` under `H = ½(−∂² + x²)`:
/// `(cos t)^{-1/2}·exp(−(i/2)(x² + a²)·tan t + iax/cos t)`.
pub fn ho_plane_wave(a: f64, x: f64, t: f64) -> Result<Complex64> {
    let c = check_time(t)?;
    let phase = -0.5 * (x * x + a * a) * t.tan() + a * x / c;
    Ok(amplitude(c) * Complex64::cis(phase))
}

/// `(cos t)^{-1/2}·e^{−(i/2)x² tan t}·Σ_k C_k e^{ixk/cos t − (i/2)k² tan t}`.
pub fn ho_evolve(seq: &SuperoscSequence, x: f64, t: f64) -> Result<Complex64> {
    let c = check_time(t)?;
    let envelope = amplitude(c) * Complex64::cis(-0.5 * x * x * t.tan());
    if t == 0.0 {
        return Ok(exp_poly_sum(seq, 1, 0.0, |ctx| vec![ctx.zero(), ctx.times_i(&ctx.complex(Complex64::new(x, 0.0)))]));
    }
    if use_contour(seq) {
        let beta = Complex64::new(0.0, 0.5 * t.tan());
        return Ok(envelope * gaussian_multiplier_sum(seq.n(), seq.a(), x / c, beta)?);
    }
    let sum = exp_poly_sum(seq, 2, 0.0, |ctx| {
        let tm = ctx.real(t);
        let cos = ctx.cos(&tm);
        let sin = ctx.sin(&tm);
        let lin = ctx.div(&ctx.real(x), &cos);
        let quad = ctx.div(&ctx.mul(&sin, &ctx.real(-0.5)), &cos);
        vec![ctx.zero(), MpComplex { re: ctx.int(0), im: lin }, MpComplex { re: ctx.int(0), im: quad }]
    });
    Ok(envelope * sum)
}

/// `n → ∞` limit of [`ho_evolve`], i.e. [`ho_plane_wave`] at frequency `a`.
pub fn ho_limit(a: f64, x: f64, t: f64) -> Result<Complex64> {
    ho_plane_wave(a, x, t)
}

fn check_even(p: u32) -> Result<()> {
    if p % 2 == 1 {
        return Err(Error::Domain(format!("oscillator-powered law needs even p (got {p})")));
    }
    Ok(())
}

/// Oscillator evolution of the datum `Σ_k C_k e^{ix(−ik)^p}` for even `p`.
pub fn ho_powered_evolve(n: usize, a: f64, p: u32, x: f64, t: f64) -> Result<Complex64> {
    check_even(p)?;
    let c = check_time(t)?;
    let seq = build_prototype(n, a)?;
    let sign = if (p / 2) % 2 == 0 { 1.0 } else { -1.0 };
    let envelope = amplitude(c) * Complex64::cis(-0.5 * x * x * t.tan());
    let p = p as usize;
    let sum = exp_poly_sum(&seq, 2 * p.max(1), 0.0, |ctx| {
        let tm = ctx.real(t);
        let cos = ctx.cos(&tm);
        let sin = ctx.sin(&tm);
        let lin = ctx.div(&ctx.real(sign * x), &cos);
        let quad = ctx.div(&ctx.mul(&sin, &ctx.real(-0.5)), &cos);
        let mut q = vec![ctx.zero(); 2 * p + 1];
        q[p] = ctx.cadd(&q[p], &MpComplex { re: ctx.int(0), im: lin });
        q[2 * p] = ctx.cadd(&q[2 * p], &MpComplex { re: ctx.int(0), im: quad });
        q
    });
    Ok(envelope * sum)
}

/// `(cos t)^{-1/2}·exp(−(i/2)(x² + a^{2p}) tan t + i(−ia)^p x/cos t)`.
pub fn ho_powered_limit(a: f64, p: u32, x: f64, t: f64) -> Result<Complex64> {
    check_even(p)?;
    let kappa = Complex64::new(0.0, -a).powu(p).re;
    ho_plane_wave(kappa, x, t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::core::product::eval_product;
    use std::f64::consts::FRAC_PI_2;

    #[test]
    fn plane_wave_modulus_and_zero_frequency() {
        for (a, x, t) in [(2.0, 0.3, 0.4), (-1.0, 3.0, 1.2), (0.0, 1.1, -0.7)] {
            let v = ho_plane_wave(a, x, t).unwrap();
            assert!((v.norm() - t.cos().powf(-0.5)).abs() < 1e-14);
        }
        let v = ho_plane_wave(0.0, 0.8, 0.5).unwrap();
        let want = 0.5f64.cos().powf(-0.5) * Complex64::cis(-0.5 * 0.64 * 0.5f64.tan());
        assert!((v - want).norm() < 1e-15);
    }

    #[test]
    fn singular_times_are_rejected() {
        assert!(matches!(ho_plane_wave(1.0, 0.0, FRAC_PI_2), Err(Error::Singular(_))));
        let seq = build_prototype(4, 2.0).unwrap();
        assert!(ho_evolve(&seq, 0.0, 3.0 * FRAC_PI_2).is_err());
    }

    #[test]
    fn superposition_of_plane_waves() {
        let seq = build_prototype(6, 2.0).unwrap();
        let (x, t) = (0.4, 0.9);
        let direct: Complex64 = seq.terms().map(|(k, c)| c * ho_plane_wave(k, x, t).unwrap()).sum();
        assert!((ho_evolve(&seq, x, t).unwrap() - direct).norm() < 1e-12);
        let powered: Complex64 = seq
            .terms()
            .map(|(k, c)| c * ho_plane_wave(Complex64::new(0.0, -k).powu(2).re, x, t).unwrap())
            .sum();
        assert!((ho_powered_evolve(6, 2.0, 2, x, t).unwrap() - powered).norm() < 1e-12);
    }

    #[test]
    fn time_zero_is_the_datum() {
        let seq = build_prototype(9, 3.0).unwrap();
        let v = ho_evolve(&seq, 0.6, 0.0).unwrap();
        assert!((v - eval_product(9, 3.0, 0.6).unwrap()).norm() < 1e-14);
    }
}
