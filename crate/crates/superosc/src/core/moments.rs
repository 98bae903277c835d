use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use super::product::check_order;
use super::sequence::{coefficients_exact, rational_from_f64};
use crate::error::{Error, Result};

/// Largest `n` and `p` accepted by the brute-force multinomial enumeration.
pub const MULTINOMIAL_BUDGET: usize = 8;

/// A Gaussian rational `re + i·im`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactComplex {
    pub re: BigRational,
    pub im: BigRational,
}

impl ExactComplex {
    pub fn zero() -> Self {
        Self { re: BigRational::zero(), im: BigRational::zero() }
    }

    /// Multiplies a real rational by `i^p`.
    pub fn i_power_times(p: usize, x: BigRational) -> Self {
        match p % 4 {
            0 => Self { re: x, im: BigRational::zero() },
            1 => Self { re: BigRational::zero(), im: x },
            2 => Self { re: -x, im: BigRational::zero() },
            _ => Self { re: BigRational::zero(), im: -x },
        }
    }

    pub fn to_c64(&self) -> Complex64 {
        Complex64::new(self.re.to_f64().unwrap_or(f64::NAN), self.im.to_f64().unwrap_or(f64::NAN))
    }
}

impl std::fmt::Display for ExactComplex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}) + i({})", self.re, self.im)
    }
}

/// Serializable snapshot of an exact moment.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MomentRecord {
    pub n: usize,
    pub p: usize,
    pub re: String,
    pub im: String,
}

/// `F_n^{(p)}(0, a) = Σ_k C_k(n, a)·[i(1 − 2k/n)]^p` over the rationals.
pub fn taylor_moment_exact(n: usize, a: &BigRational, p: usize) -> Result<ExactComplex> {
    let coeffs = coefficients_exact(n, a)?;
    let nn = BigInt::from(n);
    let real: BigRational = coeffs
        .iter()
        .enumerate()
        .map(|(k, c)| {
            let freq = BigRational::new(BigInt::from(n as i64 - 2 * k as i64), nn.clone());
            c * num_traits::pow::pow(freq, p)
        })
        .fold(BigRational::zero(), |acc, t| acc + t);
    Ok(ExactComplex::i_power_times(p, real))
}

pub fn taylor_moment(n: usize, a: f64, p: usize) -> Result<Complex64> {
    Ok(taylor_moment_exact(n, &rational_from_f64(a)?, p)?.to_c64())
}

/// `(i/n)^p·Σ_{k_1+…+k_n = p} p!/(k_1!…k_n!)·a^{#odd k_i}` by exhaustive enumeration.
pub fn multinomial_moment_exact(n: usize, a: &BigRational, p: usize) -> Result<ExactComplex> {
    check_order(n)?;
    if n > MULTINOMIAL_BUDGET || p > MULTINOMIAL_BUDGET {
        return Err(Error::Budget(format!(
            "multinomial enumeration limited to n, p ≤ {MULTINOMIAL_BUDGET} (got n = {n}, p = {p})"
        )));
    }
    let factorial = |k: usize| (1..=k).fold(BigInt::one(), |acc, i| acc * BigInt::from(i));
    let p_fact = factorial(p);
    let a_powers: Vec<BigRational> = (0..=n).map(|e| num_traits::pow::pow(a.clone(), e)).collect();
    let mut total = BigRational::zero();
    let mut parts = vec![0usize; n];
    enumerate_compositions(&mut parts, 0, p, &mut |ks| {
        let denom = ks.iter().fold(BigInt::one(), |acc, &k| acc * factorial(k));
        let odd = ks.iter().filter(|&&k| k % 2 == 1).count();
        total += BigRational::from_integer(&p_fact / denom) * &a_powers[odd];
    });
    let scale = BigRational::new(BigInt::one(), num_traits::pow::pow(BigInt::from(n), p));
    Ok(ExactComplex::i_power_times(p, total * scale))
}

pub fn multinomial_moment(n: usize, a: f64, p: usize) -> Result<Complex64> {
    Ok(multinomial_moment_exact(n, &rational_from_f64(a)?, p)?.to_c64())
}

fn enumerate_compositions(parts: &mut [usize], slot: usize, remaining: usize, visit: &mut impl FnMut(&[usize])) {
    if slot + 1 == parts.len() {
        parts[slot] = remaining;
        visit(parts);
        return;
    }
    for k in 0..=remaining {
        parts[slot] = k;
        enumerate_compositions(parts, slot + 1, remaining - k, visit);
    }
}

/// Exact comparison of the two moment formulas over a rectangle of `(n, p)`.
pub fn identity_table(n_max: usize, p_max: usize, a: &BigRational) -> Result<Vec<(usize, usize, ExactComplex, bool)>> {
    let mut rows = Vec::new();
    for n in 1..=n_max {
        for p in 0..=p_max {
            let t = taylor_moment_exact(n, a, p)?;
            let m = multinomial_moment_exact(n, a, p)?;
            let same = t == m;
            rows.push((n, p, t, same));
        }
    }
    Ok(rows)
}
