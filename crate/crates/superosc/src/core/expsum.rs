//! Extended-precision engine for `Σ_j C_j(n, a)·exp(Q(k_j))` with `Q` a polynomial.
//!
//! Along `j` the exponent `R(j) = Q(1 − 2j/n)` is a polynomial of degree `d`,
//! so its `d`-th forward difference is constant.  The factors
//! `D_m = exp(Δ^m R(j))` then advance by multiplication alone
//! (`D_m ← D_m·D_{m+1}`), and the binomial coefficients by
//! `C_{j+1} = −C_j·r·(n − j)/(j + 1)` with `r = (a − 1)/(a + 1)`.  Only
//! `d + 1` transcendental evaluations are needed per sum.

use std::f64::consts::LN_2;

use crate::numeric::mp::{MpComplex, MpContext};

/// Working precision for a sum whose policy demands `policy_bits`.
///
/// `growth` is an upper bound (in nats) on `Re Q(k)` over `[-1, 1]`; the guard
/// term absorbs the `O(n^d)` rounding drift of the multiplicative updates.
pub fn working_bits(policy_bits: u64, n: usize, degree: usize, growth: f64) -> usize {
    let growth_bits = if growth > 0.0 { (growth / LN_2).ceil() as u64 } else { 0 };
    let log_n = ((n + 1) as f64).log2().ceil() as u64;
    (policy_bits + growth_bits + (degree as u64 + 1) * log_n + 16) as usize
}

fn degree_of(q: &[MpComplex]) -> usize {
    q.iter().rposition(|c| !(c.re.is_zero() && c.im.is_zero())).unwrap_or(0)
}

pub(crate) fn prototype_exp_poly_sum(ctx: &mut MpContext, n: usize, a: f64, q: &[MpComplex]) -> MpComplex {
    let q = &q[..=degree_of(q).min(q.len().saturating_sub(1))];
    let d = q.len().saturating_sub(1);
    let one = ctx.int(1);
    let a_mp = ctx.real(a);
    let plus = ctx.add(&a_mp, &one);
    if plus.is_zero() {
        let e = ctx.cpoly(q, &ctx.int(-1));
        return ctx.cexp(&e);
    }
    let minus = ctx.sub(&a_mp, &one);
    let r = ctx.div(&minus, &plus).neg();
    let mut c = ctx.powi(&ctx.mul(&plus, &ctx.real(0.5)), n);
    let n_mp = ctx.int(n as i64);
    let freq = |ctx: &MpContext, j: usize| ctx.sub(&one, &ctx.div(&ctx.int(2 * j as i64), &n_mp));

    let mut acc = ctx.zero();
    if n <= d {
        for j in 0..=n {
            let e = ctx.cpoly(q, &freq(ctx, j));
            let term = ctx.cexp(&e);
            acc = ctx.cadd(&acc, &ctx.cscale(&term, &c));
            c = advance(ctx, &c, &r, n, j);
        }
        return acc;
    }

    let mut table: Vec<MpComplex> = (0..=d).map(|i| ctx.cpoly(q, &freq(ctx, i))).collect();
    let mut diffs = Vec::with_capacity(d + 1);
    for m in 0..=d {
        diffs.push(table[0].clone());
        for i in 0..d - m {
            table[i] = ctx.csub(&table[i + 1], &table[i]);
        }
    }
    let mut factors: Vec<MpComplex> = diffs.iter().map(|z| ctx.cexp(z)).collect();

    for j in 0..=n {
        if !c.is_zero() {
            acc = ctx.cadd(&acc, &ctx.cscale(&factors[0], &c));
        }
        if j == n {
            break;
        }
        for m in 0..d {
            factors[m] = ctx.cmul(&factors[m], &factors[m + 1]);
        }
        c = advance(ctx, &c, &r, n, j);
    }
    acc
}

fn advance(ctx: &MpContext, c: &astro_float::BigFloat, r: &astro_float::BigFloat, n: usize, j: usize) -> astro_float::BigFloat {
    if j >= n {
        return c.clone();
    }
    let scaled = ctx.mul(&ctx.mul(c, r), &ctx.int((n - j) as i64));
    ctx.div(&scaled, &ctx.int(j as i64 + 1))
}
