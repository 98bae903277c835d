use std::fmt;
use std::sync::Arc;

use astro_float::BigFloat;
use num_complex::Complex64;
use serde::Serialize;

use super::exp_poly_sum;
use crate::core::policy::EXTENDED_HEADROOM_BITS;
use crate::core::sequence::{prototype_coeffs_mp, SuperoscSequence};
use crate::error::{domain, Error, Result};
use crate::numeric::mp::{MpComplex, MpContext};

/// Source of the coefficients `A(m)`.
#[derive(Clone)]
pub enum AProvider {
    /// `A(m) = a₁^m`.
    Power(Complex64),
    /// `A(m) = Σ_j α_j^m Σ_k c_{jk} m^{k−1}`.
    QuasiPolynomial(Vec<(Complex64, Vec<Complex64>)>),
    Custom(Arc<dyn Fn(usize) -> Complex64 + Send + Sync>),
}

impl fmt::Debug for AProvider {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AProvider::Power(a1) => f.debug_tuple("Power").field(a1).finish(),
            AProvider::QuasiPolynomial(terms) => f.debug_tuple("QuasiPolynomial").field(terms).finish(),
            AProvider::Custom(_) => f.write_str("Custom(..)"),
        }
    }
}

impl AProvider {
    pub fn eval(&self, m: usize) -> Complex64 {
        match self {
            AProvider::Power(a1) => a1.powu(m as u32),
            AProvider::QuasiPolynomial(terms) => {
                let mf = m as f64;
                terms
                    .iter()
                    .map(|(alpha, cs)| {
                        let poly = cs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| acc * mf + c);
                        alpha.powu(m as u32) * poly
                    })
                    .sum()
            }
            AProvider::Custom(f) => f(m),
        }
    }
}

/// The family `Σ_m t^{rm+rν−1} A(m)/(rm+rν−1)!·∂ₓ^{pm}` applied to a datum.
#[derive(Debug, Clone)]
pub struct FormalConfig {
    pub r: u32,
    pub nu: u32,
    pub p: u32,
    pub provider: AProvider,
    /// Largest `m` the truncation may reach.
    pub m_max: usize,
    /// Absolute target for the estimated tail.
    pub tol: f64,
}

impl FormalConfig {
    pub const DEFAULT_M_MAX: usize = 4096;
    pub const DEFAULT_TOL: f64 = 1e-12;

    pub fn new(r: u32, nu: u32, p: u32, provider: AProvider) -> Result<Self> {
        if r == 0 || nu == 0 || p == 0 {
            return Err(domain(format!("r, ν and p must be positive (got {r}, {nu}, {p})")));
        }
        Ok(Self { r, nu, p, provider, m_max: Self::DEFAULT_M_MAX, tol: Self::DEFAULT_TOL })
    }

    /// `ν = r = 1` with `A(m) = a₁^m`, whose series sums to `e^{t a₁ ∂ₓ^p}`.
    pub fn power(p: u32, a1: Complex64) -> Result<Self> {
        Self::new(1, 1, p, AProvider::Power(a1))
    }

    fn exponent(&self, m: usize) -> u64 {
        self.r as u64 * (m as u64 + self.nu as u64) - 1
    }

    fn is_exponential(&self) -> bool {
        self.r == 1 && self.nu == 1 && matches!(self.provider, AProvider::Power(_))
    }
}

/// Result of [`formal_solution`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FormalValue {
    pub value: Complex64,
    /// Estimated absolute size of the discarded terms.
    pub tail_bound: f64,
    /// Number of `m` terms kept; `None` when the series was summed in closed form.
    pub terms: Option<usize>,
}

/// Terms `0..=m` are kept, where `m` is the first index passing the ratio test.
struct Truncation {
    last: usize,
    tail: f64,
    /// `max_m ln T_m`, the largest term relative to `Σ|C|`.
    peak_ln: f64,
}

/// `ln T_m = e_m ln|t| + ln|A(m)| − ln e_m! + pm ln K` with the scale `ln Σ|C|` added.
fn truncate(cfg: &FormalConfig, t: f64, k_max: f64, ln_mass: f64) -> Result<Truncation> {
    let ln_t = t.abs().ln();
    let ln_k = k_max.ln();
    let mut ln_fact = 0.0_f64;
    let mut fact_at = 0_u64;
    let mut ln_term = |m: usize| -> f64 {
        let e = cfg.exponent(m);
        while fact_at < e {
            fact_at += 1;
            ln_fact += (fact_at as f64).ln();
        }
        let a = cfg.provider.eval(m).norm();
        let pow_t = if e == 0 { 0.0 } else { e as f64 * ln_t };
        let pow_k = if m == 0 { 0.0 } else { (cfg.p as u64 * m as u64) as f64 * ln_k };
        ln_mass + pow_t + a.ln() - ln_fact + pow_k
    };
    let mut current = ln_term(0);
    let mut peak_ln = current;
    let mut best = f64::INFINITY;
    for m in 0..=cfg.m_max {
        let next = ln_term(m + 1);
        peak_ln = peak_ln.max(next);
        let rho = if current == f64::NEG_INFINITY {
            if next == f64::NEG_INFINITY { 0.0 } else { f64::INFINITY }
        } else {
            (next - current).exp()
        };
        if rho < 1.0 {
            let tail = next.exp() / (1.0 - rho);
            best = best.min(tail);
            if tail <= cfg.tol {
                return Ok(Truncation { last: m, tail, peak_ln });
            }
        }
        current = next;
    }
    Err(Error::TailNotConverged { achieved: best, target: cfg.tol })
}

/// `ln Σ_j |C_j|` without overflow.
fn ln_mass(seq: &SuperoscSequence) -> f64 {
    let logs: Vec<f64> = seq.coeffs().iter().filter(|c| **c != 0.0).map(|c| c.abs().ln()).collect();
    let top = logs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if top == f64::NEG_INFINITY {
        return top;
    }
    top + logs.iter().map(|l| (l - top).exp()).sum::<f64>().ln()
}

fn mp_terms(seq: &SuperoscSequence, ctx: &MpContext) -> Vec<(BigFloat, BigFloat)> {
    if seq.is_prototype() {
        let n = seq.n();
        let n_mp = ctx.int(n as i64);
        let one = ctx.int(1);
        prototype_coeffs_mp(ctx, n, seq.a())
            .into_iter()
            .enumerate()
            .map(|(j, c)| (ctx.sub(&one, &ctx.div(&ctx.int(2 * j as i64), &n_mp)), c))
            .collect()
    } else {
        seq.terms().map(|(k, c)| (ctx.real(k), ctx.real(c))).collect()
    }
}

/// Formal solution `Σ_j C_j e^{i k_j x} Σ_m t^{e_m} A(m)/e_m!·(ik_j)^{pm}` with `e_m = rm + rν − 1`.
pub fn formal_solution(seq: &SuperoscSequence, cfg: &FormalConfig, x: f64, t: f64) -> Result<FormalValue> {
    if cfg.is_exponential() {
        let AProvider::Power(a1) = cfg.provider else { unreachable!() };
        let p = cfg.p as usize;
        let k_max = seq.freqs().iter().fold(0.0_f64, |m, k| m.max(k.abs()));
        let growth = (t * a1).norm() * k_max.powi(p as i32);
        let value = exp_poly_sum(seq, p.max(1), growth, |ctx| {
            let mut q = vec![ctx.zero(); p.max(1) + 1];
            q[1] = MpComplex { re: ctx.int(0), im: ctx.real(x) };
            let tm = ctx.real(t);
            let mut z = MpComplex { re: ctx.mul(&tm, &ctx.real(a1.re)), im: ctx.mul(&tm, &ctx.real(a1.im)) };
            for _ in 0..p % 4 {
                z = ctx.times_i(&z);
            }
            q[p] = ctx.cadd(&q[p], &z);
            q
        });
        return Ok(FormalValue { value, tail_bound: 0.0, terms: None });
    }
    if t == 0.0 {
        let value = if cfg.exponent(0) == 0 { cfg.provider.eval(0) * datum(seq, x) } else { Complex64::new(0.0, 0.0) };
        return Ok(FormalValue { value, tail_bound: 0.0, terms: Some(1) });
    }
    let k_max = seq.freqs().iter().fold(0.0_f64, |m, k| m.max(k.abs()));
    let trunc = truncate(cfg, t, k_max, ln_mass(seq))?;
    let growth_bits = (trunc.peak_ln.max(0.0) / std::f64::consts::LN_2).ceil() as u64;
    let bits = seq.loss_bits() + EXTENDED_HEADROOM_BITS + growth_bits + 32 + (trunc.last as f64 + 2.0).log2().ceil() as u64;
    let mut ctx = MpContext::new(bits as usize);

    let tm = ctx.real(t);
    let mut weights = Vec::with_capacity(trunc.last + 1);
    let mut t_pow = ctx.powi(&tm, cfg.exponent(0) as usize);
    let mut fact = ctx.int(1);
    let mut fact_at = 0_u64;
    for m in 0..=trunc.last {
        let e = cfg.exponent(m);
        while fact_at < e {
            fact_at += 1;
            fact = ctx.mul(&fact, &ctx.int(fact_at as i64));
        }
        if m > 0 {
            t_pow = ctx.mul(&t_pow, &ctx.powi(&tm, cfg.r as usize));
        }
        let a = cfg.provider.eval(m);
        let scale = ctx.div(&t_pow, &fact);
        weights.push(MpComplex { re: ctx.mul(&scale, &ctx.real(a.re)), im: ctx.mul(&scale, &ctx.real(a.im)) });
    }

    let xm = ctx.real(x);
    let mut acc = ctx.zero();
    for (k, c) in mp_terms(seq, &ctx) {
        if c.is_zero() {
            continue;
        }
        let mut z = ctx.from_real(ctx.powi(&k, cfg.p as usize));
        for _ in 0..cfg.p % 4 {
            z = ctx.times_i(&z);
        }
        let mut s = ctx.zero();
        for w in weights.iter().rev() {
            s = ctx.cadd(&ctx.cmul(&s, &z), w);
        }
        let phase = MpComplex { re: ctx.int(0), im: ctx.mul(&k, &xm) };
        let wave = ctx.cexp(&phase);
        acc = ctx.cadd(&acc, &ctx.cscale(&ctx.cmul(&wave, &s), &c));
    }
    Ok(FormalValue { value: acc.to_c64(), tail_bound: trunc.tail, terms: Some(trunc.last + 1) })
}

fn datum(seq: &SuperoscSequence, x: f64) -> Complex64 {
    exp_poly_sum(seq, 1, 0.0, |ctx| vec![ctx.zero(), MpComplex { re: ctx.int(0), im: ctx.real(x) }])
}

/// `e^{iax}·Σ_m t^{e_m} A(m)/e_m!·(ia)^{pm}`, closed form `e^{t a₁ (ia)^p} e^{iax}` for `ν = r = 1` powers.
pub fn formal_limit(cfg: &FormalConfig, a: f64, x: f64, t: f64) -> Result<Complex64> {
    let z = Complex64::new(0.0, a).powu(cfg.p);
    let wave = Complex64::cis(a * x);
    if cfg.is_exponential() {
        let AProvider::Power(a1) = cfg.provider else { unreachable!() };
        return Ok((t * a1 * z).exp() * wave);
    }
    if t == 0.0 {
        return Ok(if cfg.exponent(0) == 0 { cfg.provider.eval(0) * wave } else { Complex64::new(0.0, 0.0) });
    }
    let trunc = truncate(cfg, t, a.abs(), 0.0)?;
    let mut ln_fact = 0.0;
    let mut fact_at = 0_u64;
    let mut s = Complex64::new(0.0, 0.0);
    for m in 0..=trunc.last {
        let e = cfg.exponent(m);
        while fact_at < e {
            fact_at += 1;
            ln_fact += (fact_at as f64).ln();
        }
        let mag = (e as f64 * t.abs().ln() - ln_fact).exp() * if t < 0.0 && e % 2 == 1 { -1.0 } else { 1.0 };
        s += cfg.provider.eval(m) * mag * z.powu(m as u32);
    }
    Ok(s * wave)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::core::build_prototype;
    use crate::evolution::{free_evolve, heat_limit};

    #[test]
    fn schrodinger_and_heat_members() {
        let seq = build_prototype(10, 2.0).unwrap();
        let free = FormalConfig::power(2, Complex64::i()).unwrap();
        let got = formal_solution(&seq, &free, 0.5, 0.3).unwrap();
        assert!((got.value - free_evolve(&seq, 0.5, 0.3)).norm() < 1e-12);
        let heat = FormalConfig::power(2, Complex64::new(1.0, 0.0)).unwrap();
        let lim = formal_limit(&heat, 2.0, 0.5, 1.0).unwrap();
        assert!((lim - heat_limit(2.0, 0.5, 1.0).unwrap()).norm() < 1e-15);
    }

    #[test]
    fn series_route_matches_closed_form() {
        let seq = build_prototype(8, 1.5).unwrap();
        let a1 = Complex64::new(0.3, 0.7);
        let closed = FormalConfig::power(3, a1).unwrap();
        let series = FormalConfig::new(1, 1, 3, AProvider::Custom(Arc::new(move |m| a1.powu(m as u32)))).unwrap();
        let c = formal_solution(&seq, &closed, 0.2, 0.4).unwrap();
        let s = formal_solution(&seq, &series, 0.2, 0.4).unwrap();
        assert!((c.value - s.value).norm() < 1e-11, "{} vs {}", c.value, s.value);
        assert!(s.terms.unwrap() > 5);
        let lc = formal_limit(&closed, 1.5, 0.2, 0.4).unwrap();
        let ls = formal_limit(&series, 1.5, 0.2, 0.4).unwrap();
        assert!((lc - ls).norm() < 1e-12);
    }

    #[test]
    fn quasi_polynomial_provider() {
        let p = AProvider::QuasiPolynomial(vec![
            (Complex64::new(2.0, 0.0), vec![Complex64::new(1.0, 0.0), Complex64::new(0.5, 0.0)]),
            (Complex64::new(0.0, 1.0), vec![Complex64::new(3.0, 0.0)]),
        ]);
        // m = 3: 8·(1 + 1.5) + 3·i³
        assert_eq!(p.eval(3), Complex64::new(20.0, -3.0));
    }

    #[test]
    fn divergent_series_is_refused() {
        let seq = build_prototype(4, 2.0).unwrap();
        let mut cfg = FormalConfig::new(1, 1, 2, AProvider::Custom(Arc::new(|m| {
            (1..=m).map(|i| i as f64).product::<f64>().powi(2).into()
        })))
        .unwrap();
        cfg.m_max = 60;
        assert!(matches!(formal_solution(&seq, &cfg, 0.0, 0.5), Err(Error::TailNotConverged { .. })));
    }
}
