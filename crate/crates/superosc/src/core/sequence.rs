use astro_float::BigFloat;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use super::expsum;
use super::policy::{loss_bits_of, prototype_loss_bits, PrecisionPolicy};
use super::product::check_order;
use crate::error::{domain, Error, Result};
use crate::numeric::mp::{to_f64, MpComplex, MpContext};
use crate::numeric::sum::CompensatedComplexSum;

/// Bits used for the floating coefficient path before the final rounding.
const COEFF_BITS: usize = 192;

/// How the coefficients of a sequence were produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    /// `k_j = 1 − 2j/n` with the binomial coefficients `C_j(n, a)`.
    Prototype,
    /// Arbitrary frequency and coefficient rules.
    Generic,
}

/// Frequencies `k_j(n)` and coefficients `C_j(n, a)` for `j = 0..=n`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuperoscSequence {
    n: usize,
    a: f64,
    family: Family,
    freqs: Vec<f64>,
    coeffs: Vec<f64>,
}

impl SuperoscSequence {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn freqs(&self) -> &[f64] {
        &self.freqs
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn is_prototype(&self) -> bool {
        self.family == Family::Prototype
    }

    pub fn terms(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.freqs.iter().copied().zip(self.coeffs.iter().copied())
    }

    /// Bits lost to cancellation when summing this sequence against unimodular factors.
    pub fn loss_bits(&self) -> u64 {
        match self.family {
            Family::Prototype => prototype_loss_bits(self.n, self.a),
            Family::Generic => loss_bits_of(&self.coeffs),
        }
    }

    /// Same frequencies and coefficients, but the binomial structure is forgotten.
    pub fn into_generic(mut self) -> Self {
        self.family = Family::Generic;
        self
    }
}

/// `k_j(n) = 1 − 2j/n`.
pub fn prototype_freq(n: usize, j: usize) -> f64 {
    1.0 - 2.0 * j as f64 / n as f64
}

fn check_index(n: usize, j: usize) -> Result<()> {
    check_order(n)?;
    if j > n {
        return Err(Error::IndexOutOfRange { j, n });
    }
    Ok(())
}

/// `C_j(n, a) = ((−1)^j / 2^n)·binom(n, j)·(a + 1)^{n−j}·(a − 1)^j`, rounded once to `f64`.
pub fn coefficient(n: usize, j: usize, a: f64) -> Result<f64> {
    check_index(n, j)?;
    let ctx = MpContext::new(COEFF_BITS);
    let mut binom = ctx.int(1);
    for i in 0..j {
        binom = ctx.div(&ctx.mul(&binom, &ctx.int((n - i) as i64)), &ctx.int(i as i64 + 1));
    }
    let half = ctx.real(0.5);
    let plus = ctx.mul(&ctx.add(&ctx.real(a), &ctx.int(1)), &half);
    let minus = ctx.mul(&ctx.sub(&ctx.real(a), &ctx.int(1)), &half);
    let mut c = ctx.mul(&binom, &ctx.mul(&ctx.powi(&plus, n - j), &ctx.powi(&minus, j)));
    if j % 2 == 1 {
        c = c.neg();
    }
    Ok(to_f64(&c))
}

/// `C_j(n, a)` over the rationals.
pub fn coefficient_exact(n: usize, j: usize, a: &BigRational) -> Result<BigRational> {
    check_index(n, j)?;
    let one = BigRational::one();
    let two = BigRational::from_integer(BigInt::from(2));
    let plus = (a + &one) / &two;
    let minus = (a - &one) / &two;
    let binom = binomial(n, j);
    let mut c = BigRational::from_integer(binom) * pow_rational(&plus, n - j) * pow_rational(&minus, j);
    if j % 2 == 1 {
        c = -c;
    }
    Ok(c)
}

pub(crate) fn binomial(n: usize, j: usize) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..j {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

fn pow_rational(x: &BigRational, e: usize) -> BigRational {
    num_traits::pow::pow(x.clone(), e)
}

/// All `C_j(n, a)` over the rationals.
pub fn coefficients_exact(n: usize, a: &BigRational) -> Result<Vec<BigRational>> {
    (0..=n).map(|j| coefficient_exact(n, j, a)).collect()
}

/// Exact conversion of a finite `f64` to a rational.
pub fn rational_from_f64(x: f64) -> Result<BigRational> {
    BigRational::from_float(x).ok_or_else(|| domain(format!("{x} is not finite")))
}

/// Prototype coefficients in extended precision, generated by the ratio recurrence.
pub(crate) fn prototype_coeffs_mp(ctx: &MpContext, n: usize, a: f64) -> Vec<BigFloat> {
    let mut out = Vec::with_capacity(n + 1);
    let one = ctx.int(1);
    let a_mp = ctx.real(a);
    let plus = ctx.add(&a_mp, &one);
    let minus = ctx.sub(&a_mp, &one);
    if plus.is_zero() {
        // a = −1: only the last coefficient ((1 − a)/2)^n = 1 survives.
        out.extend((0..n).map(|_| ctx.int(0)));
        out.push(ctx.int(1));
        return out;
    }
    let half = ctx.real(0.5);
    let mut c = ctx.powi(&ctx.mul(&plus, &half), n);
    let r = ctx.div(&minus, &plus).neg();
    for j in 0..=n {
        out.push(c.clone());
        if j < n {
            c = ctx.div(&ctx.mul(&ctx.mul(&c, &r), &ctx.int((n - j) as i64)), &ctx.int(j as i64 + 1));
        }
    }
    out
}

/// The prototype sequence `k_j = 1 − 2j/n`, `C_j(n, a)`.
pub fn build_prototype(n: usize, a: f64) -> Result<SuperoscSequence> {
    check_order(n)?;
    if !a.is_finite() {
        return Err(domain(format!("a = {a} is not finite")));
    }
    let ctx = MpContext::new(COEFF_BITS);
    let coeffs = prototype_coeffs_mp(&ctx, n, a).iter().map(to_f64).collect();
    let freqs = (0..=n).map(|j| prototype_freq(n, j)).collect();
    Ok(SuperoscSequence { n, a, family: Family::Prototype, freqs, coeffs })
}

/// A generalized Fourier sequence from user rules; non-finite rule output is an error.
pub fn build_generalized<F, C>(freq_rule: F, coeff_rule: C, n: usize, a: f64) -> Result<SuperoscSequence>
where
    F: Fn(usize, usize) -> f64,
    C: Fn(usize, usize, f64) -> f64,
{
    check_order(n)?;
    let mut freqs = Vec::with_capacity(n + 1);
    let mut coeffs = Vec::with_capacity(n + 1);
    for j in 0..=n {
        let k = freq_rule(j, n);
        let c = coeff_rule(j, n, a);
        if !k.is_finite() || !c.is_finite() {
            return Err(domain(format!("rule produced a non-finite value at j = {j} (k = {k}, c = {c})")));
        }
        freqs.push(k);
        coeffs.push(c);
    }
    Ok(SuperoscSequence { n, a, family: Family::Generic, freqs, coeffs })
}

/// `Σ_j C_j·exp(Q(k_j))` with `Q` supplied as extended-precision polynomial coefficients.
///
/// The context must already carry enough bits; see [`expsum::working_bits`].
pub(crate) fn exp_poly_sum_mp(seq: &SuperoscSequence, ctx: &mut MpContext, q: &[MpComplex]) -> MpComplex {
    match seq.family {
        Family::Prototype => expsum::prototype_exp_poly_sum(ctx, seq.n, seq.a, q),
        Family::Generic => {
            let mut acc = ctx.zero();
            for (k, c) in seq.terms() {
                if c == 0.0 {
                    continue;
                }
                let e = ctx.cpoly(q, &ctx.real(k));
                let term = ctx.cexp(&e);
                acc = ctx.cadd(&acc, &ctx.cscale(&term, &ctx.real(c)));
            }
            acc
        }
    }
}

/// `Σ_j C_j·m(k_j)` for an arbitrary per-frequency multiplier, summed in machine precision.
pub(crate) fn multiplier_sum_machine<M>(seq: &SuperoscSequence, policy: &PrecisionPolicy, mult: M) -> Result<Complex64>
where
    M: Fn(f64) -> Complex64,
{
    policy.check(seq.loss_bits())?;
    Ok(seq.terms().map(|(k, c)| c * mult(k)).collect::<CompensatedComplexSum>().value())
}

/// `Σ_j C_j e^{i k_j x}` under the given precision contract.
pub fn eval_sum(seq: &SuperoscSequence, x: f64, policy: &PrecisionPolicy) -> Result<Complex64> {
    let loss = seq.loss_bits();
    policy.check(loss)?;
    match policy {
        PrecisionPolicy::MachineCompensated => multiplier_sum_machine(seq, policy, |k| Complex64::cis(k * x)),
        PrecisionPolicy::Extended { significand_bits } => {
            let bits = expsum::working_bits(u64::from(*significand_bits), seq.n, 1, 0.0);
            let mut ctx = MpContext::new(bits);
            let q = [ctx.zero(), ctx.times_i(&ctx.complex(Complex64::new(x, 0.0)))];
            Ok(exp_poly_sum_mp(seq, &mut ctx, &q).to_c64())
        }
    }
}

/// `Σ C_j` and `Σ C_j·k_j` over the rationals for the prototype.
pub fn prototype_moment_identities(n: usize, a: &BigRational) -> Result<(BigRational, BigRational)> {
    let coeffs = coefficients_exact(n, a)?;
    let nn = BigRational::from_integer(BigInt::from(n));
    let mut s0 = BigRational::zero();
    let mut s1 = BigRational::zero();
    for (j, c) in coeffs.iter().enumerate() {
        let k = BigRational::one() - BigRational::from_integer(BigInt::from(2 * j)) / &nn;
        s0 += c;
        s1 += c * k;
    }
    Ok((s0, s1))
}
