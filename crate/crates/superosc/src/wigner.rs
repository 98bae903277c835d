//! The `m = ℓ` column of the Wigner d-matrix and the weak value of a small
//! z-rotation between rotated spin-`ℓ` states.
//!
//! With `c = cos(θ/2)`, `s = sin(θ/2)` and `j = ℓ − m′`,
//! `d^{(ℓ)}_{m′ℓ}(θ) = (−1)^j·binom(2ℓ, j)^{1/2}·c^{2ℓ−j}·s^j`, so every
//! sum over the column is a binomial expansion in `c²` and `s²`.  The weak
//! value of `e^{iL_zδφ′/2ℓ}` equals `F_{2ℓ}(δφ′, 1/cos θ)`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::core::product::eval_product;
use crate::error::{domain, Error, Result};
use crate::numeric::mp::{MpComplex, MpContext};
use crate::numeric::sum::compensated_complex_sum;

/// Largest `2ℓ` for which binomials are formed exactly in integers.
pub const EXACT_TWO_ELL: u32 = 40;

/// Largest `2ℓ` for which [`tensor_overlap`] builds the product state explicitly.
pub const TENSOR_TWO_ELL: u32 = 22;

/// Overlaps below this make the weak value undefined.
const OVERLAP_TOL: f64 = 1e-14;

/// A spin label `ℓ ∈ {1/2, 1, 3/2, …}`, stored as `2ℓ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Spin(u32);

impl Spin {
    pub fn from_twice(two_ell: u32) -> Result<Self> {
        if two_ell == 0 {
            return Err(domain("ℓ must be at least 1/2"));
        }
        Ok(Self(two_ell))
    }

    pub fn new(ell: f64) -> Result<Self> {
        let twice = 2.0 * ell;
        if !(twice >= 1.0 && twice.fract() == 0.0 && twice <= u32::MAX as f64) {
            return Err(domain(format!("ℓ = {ell} is not a positive multiple of 1/2")));
        }
        Ok(Self(twice as u32))
    }

    pub fn twice(self) -> u32 {
        self.0
    }

    pub fn ell(self) -> f64 {
        self.0 as f64 / 2.0
    }

    pub fn is_integer(self) -> bool {
        self.0 % 2 == 0
    }

    /// `m′ = ℓ − j` for `j = 0..=2ℓ`.
    pub fn m_prime(self, j: u32) -> f64 {
        self.ell() - j as f64
    }
}

/// How the binomial factors of a column were formed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "mode", rename_all = "kebab-case")]
pub enum FactorialMode {
    Exact,
    LogDomain { relative_error_bound: f64 },
}

/// `d^{(ℓ)}_{m′ℓ}(θ)` for `m′ = −ℓ, …, ℓ`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WignerColumn {
    pub spin: Spin,
    pub theta: f64,
    pub values: Vec<f64>,
    pub mode: FactorialMode,
}

impl WignerColumn {
    /// `d^{(ℓ)}_{m′ℓ}` at `m′ = ℓ − j`.
    pub fn at_j(&self, j: u32) -> f64 {
        self.values[(self.spin.twice() - j) as usize]
    }

    /// `Σ_{m′} d²`.
    pub fn norm_squared(&self) -> f64 {
        self.values.iter().map(|d| d * d).sum()
    }
}

fn binomial_exact(n: u32, k: u32) -> u128 {
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

fn ln_binomial(n: u32, k: u32) -> f64 {
    let k = k.min(n - k);
    (0..k).map(|i| ((n - i) as f64 / (i + 1) as f64).ln()).sum()
}

/// `x^p` carried as `(sign, ln|x|·p)`.
fn signed_log_power(x: f64, p: u32) -> (f64, f64) {
    let sign = if x < 0.0 && p % 2 == 1 { -1.0 } else { 1.0 };
    if p == 0 {
        return (1.0, 0.0);
    }
    (sign, p as f64 * x.abs().ln())
}

/// The `m = ℓ` column `(−1)^{ℓ−m′}·[(2ℓ)!/((ℓ+m′)!(ℓ−m′)!)]^{1/2}·cos^{ℓ+m′}(θ/2)·sin^{ℓ−m′}(θ/2)`.
pub fn wigner_column(spin: Spin, theta: f64) -> WignerColumn {
    let n = spin.twice();
    let (c, s) = ((0.5 * theta).cos(), (0.5 * theta).sin());
    let exact = n <= EXACT_TWO_ELL;
    let values = (0..=n)
        .rev()
        .map(|j| {
            let parity = if j % 2 == 0 { 1.0 } else { -1.0 };
            if exact {
                parity * (binomial_exact(n, j) as f64).sqrt() * c.powi((n - j) as i32) * s.powi(j as i32)
            } else {
                let (sc, lc) = signed_log_power(c, n - j);
                let (ss, ls) = signed_log_power(s, j);
                parity * sc * ss * (0.5 * ln_binomial(n, j) + lc + ls).exp()
            }
        })
        .collect();
    let mode = if exact {
        FactorialMode::Exact
    } else {
        // Each of the `k ≤ ℓ` logarithms and the final exponential round once.
        FactorialMode::LogDomain { relative_error_bound: (n as f64 + 4.0) * f64::EPSILON * (1.0 + ln_binomial(n, n / 2)) }
    };
    WignerColumn { spin, theta, values, mode }
}

/// Sign attached to `d²` in the signed column sum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SignConvention {
    /// `(−1)^{m′}`; only meaningful for integer `ℓ`.
    MPrime,
    /// `(−1)^{ℓ−m′}`, the sign produced by a π rotation about z.
    EllMinusMPrime,
}

fn sign_for(spin: Spin, j: u32, convention: SignConvention) -> Result<f64> {
    let exponent = match convention {
        SignConvention::EllMinusMPrime => j,
        SignConvention::MPrime if spin.is_integer() => spin.twice() / 2 + j,
        SignConvention::MPrime => {
            return Err(domain(format!("(−1)^{{m′}} is not a real sign for half-integer ℓ = {}", spin.ell())));
        }
    };
    Ok(if exponent % 2 == 0 { 1.0 } else { -1.0 })
}

/// `Σ_{m′} σ(m′)·d²_{m′ℓ}(θ)` for the chosen sign `σ`.
pub fn signed_sum(spin: Spin, theta: f64, convention: SignConvention) -> Result<f64> {
    let col = wigner_column(spin, theta);
    (0..=spin.twice()).try_fold(0.0, |acc, j| Ok(acc + sign_for(spin, j, convention)? * col.at_j(j).powi(2)))
}

/// `Σ_{m′} (−1)^{ℓ−m′}·d²_{m′ℓ}(θ)·e^{im′δφ}`, summed term by term in extended precision.
///
/// The terms have unit total mass while the sum has modulus near `|cos θ|^{2ℓ}`,
/// so the working precision grows with `−2ℓ·log2|cos θ|`.
pub fn signed_phase_sum(spin: Spin, theta: f64, delta_phi: f64) -> Complex64 {
    let n = spin.twice();
    let cos_theta = theta.cos();
    let lost = if cos_theta.abs() < 1.0 && cos_theta != 0.0 { -(n as f64) * cos_theta.abs().log2() } else { 0.0 };
    let bits = lost.min(1e6).ceil() as usize + 64 + 2 * (usize::BITS - (n as usize).leading_zeros()) as usize;
    let mut ctx = MpContext::new(bits);
    let th = ctx.real(theta);
    let cos = ctx.cos(&th);
    let half = ctx.real(0.5);
    let one = ctx.int(1);
    let c2 = ctx.mul(&ctx.add(&one, &cos), &half);
    let s2 = ctx.mul(&ctx.sub(&one, &cos), &half);
    let dphi = ctx.real(delta_phi);
    let phase = |ctx: &mut MpContext, m: f64| {
        let angle = ctx.mul(&ctx.real(m), &dphi);
        MpComplex { re: ctx.cos(&angle), im: ctx.sin(&angle) }
    };
    let mut binom = ctx.int(1);
    let mut acc = ctx.zero();
    for j in 0..=n {
        let weight = ctx.mul(&ctx.mul(&binom, &ctx.powi(&c2, (n - j) as usize)), &ctx.powi(&s2, j as usize));
        let weight = if j % 2 == 0 { weight } else { ctx.neg(&weight) };
        let term = phase(&mut ctx, spin.m_prime(j));
        acc = ctx.cadd(&acc, &ctx.cscale(&term, &weight));
        binom = ctx.div(&ctx.mul(&binom, &ctx.int((n - j) as i64)), &ctx.int(j as i64 + 1));
    }
    acc.to_c64()
}

/// `[(1/a)(cos(δφ/2) + i·a·sin(δφ/2))]^{2ℓ}` with `a = 1/cos θ`, which equals [`signed_phase_sum`].
pub fn superoscillating_form(spin: Spin, theta: f64, delta_phi: f64) -> Complex64 {
    let cos_theta = theta.cos();
    let half = 0.5 * delta_phi;
    Complex64::new(cos_theta * half.cos(), half.sin()).powu(spin.twice())
}

fn check_overlap(theta: f64) -> Result<f64> {
    let c = theta.cos();
    if c.abs() < OVERLAP_TOL {
        return Err(Error::Orthogonal(c.abs()));
    }
    Ok(c)
}

/// Weak value of `e^{iL_zδφ′/2ℓ}`:
/// `(cos²(θ/2)e^{iδφ′/2ℓ} − sin²(θ/2)e^{−iδφ′/2ℓ})^{2ℓ}/(cos θ)^{2ℓ}`.
pub fn rotation_weak_value(spin: Spin, theta: f64, delta_phi_prime: f64) -> Result<Complex64> {
    let cos_theta = check_overlap(theta)?;
    let u = delta_phi_prime / spin.twice() as f64;
    let (c2, s2) = ((0.5 * theta).cos().powi(2), (0.5 * theta).sin().powi(2));
    let base = c2 * Complex64::cis(u) - s2 * Complex64::cis(-u);
    Ok((base / cos_theta).powu(spin.twice()))
}

/// [`rotation_weak_value`] through the signed d-sum, `Σ(−1)^{ℓ−m′}d²e^{im′δφ′/ℓ}/(cos θ)^{2ℓ}`.
pub fn rotation_weak_value_from_column(spin: Spin, theta: f64, delta_phi_prime: f64) -> Result<Complex64> {
    let cos_theta = check_overlap(theta)?;
    let sum = signed_phase_sum(spin, theta, delta_phi_prime / spin.ell());
    Ok(sum / cos_theta.powi(spin.twice() as i32))
}

/// [`rotation_weak_value`] as the superoscillating product `F_{2ℓ}(δφ′, 1/cos θ)`.
pub fn rotation_weak_value_via_product(spin: Spin, theta: f64, delta_phi_prime: f64) -> Result<Complex64> {
    let cos_theta = check_overlap(theta)?;
    eval_product(spin.twice() as usize, 1.0 / cos_theta, delta_phi_prime)
}

/// `e^{iδφ′/cos θ}`, the large-`ℓ` value of [`rotation_weak_value`].
pub fn rotation_weak_value_limit(theta: f64, delta_phi_prime: f64) -> Result<Complex64> {
    let cos_theta = check_overlap(theta)?;
    Ok(Complex64::cis(delta_phi_prime / cos_theta))
}

/// `⟨ψ_fin|U|ψ_in⟩` and `⟨ψ_fin|ψ_in⟩` for `2ℓ` explicit spins.
///
/// Each spin starts in `(cos(θ/2), sin(θ/2))`; the final state applies `σ_z`
/// to every factor and `U = diag(e^{iu}, e^{−iu})^{⊗2ℓ}` with `u = δφ′/2ℓ`.
pub fn tensor_overlap(spin: Spin, theta: f64, delta_phi_prime: f64) -> Result<(Complex64, Complex64)> {
    if spin.twice() > TENSOR_TWO_ELL {
        return Err(domain(format!("2ℓ = {} exceeds the explicit tensor limit {TENSOR_TWO_ELL}", spin.twice())));
    }
    let (c, s) = ((0.5 * theta).cos(), (0.5 * theta).sin());
    let u = delta_phi_prime / spin.twice() as f64;
    let kron = |v: &[Complex64], f: [Complex64; 2]| -> Vec<Complex64> { v.iter().flat_map(|&x| [x * f[0], x * f[1]]).collect() };
    let one = Complex64::new(1.0, 0.0);
    let (mut psi_in, mut psi_fin, mut rotated) = (vec![one], vec![one], vec![one]);
    for _ in 0..spin.twice() {
        psi_in = kron(&psi_in, [Complex64::new(c, 0.0), Complex64::new(s, 0.0)]);
        psi_fin = kron(&psi_fin, [Complex64::new(c, 0.0), Complex64::new(-s, 0.0)]);
        rotated = kron(&rotated, [c * Complex64::cis(u), s * Complex64::cis(-u)]);
    }
    let inner = |a: &[Complex64], b: &[Complex64]| compensated_complex_sum(a.iter().zip(b).map(|(x, y)| x.conj() * y));
    Ok((inner(&psi_fin, &rotated), inner(&psi_fin, &psi_in)))
}

/// Which final state the off-center rotation is compared against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Branch {
    /// `ψ_fin = ψ_in = (cos(θ/2), sin(θ/2))`.
    SameState,
    /// `ψ_fin = (cos(θ/2), −sin(θ/2))`.
    FlippedState,
}

/// Effective frequency of a small rotation about `φ0` and whether it exceeds the band `[−1, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OffCenter {
    pub frequency: f64,
    pub superoscillating: bool,
}

/// `cos θ/(cos²(φ0/2) + cos²θ·sin²(φ0/2))` or `cos θ/(sin²φ0 + cos²θ·cos²φ0)`.
pub fn offcenter_frequency(theta: f64, phi0: f64, branch: Branch) -> Result<OffCenter> {
    let ct = theta.cos();
    let denom = match branch {
        Branch::SameState => (0.5 * phi0).cos().powi(2) + ct * ct * (0.5 * phi0).sin().powi(2),
        Branch::FlippedState => phi0.sin().powi(2) + ct * ct * phi0.cos().powi(2),
    };
    if denom == 0.0 {
        return Err(Error::Singular(format!("vanishing denominator at θ = {theta}, φ0 = {phi0}")));
    }
    let frequency = ct / denom;
    Ok(OffCenter { frequency, superoscillating: frequency.abs() > 1.0 })
}

/// `|cos φ0| = 1/√(1 + cos θ)`, the edge of the flipped-state superoscillating region.
pub fn flipped_boundary(theta: f64) -> Result<f64> {
    let ct = theta.cos();
    if ct <= -1.0 {
        return Err(domain(format!("1 + cos θ vanishes at θ = {theta}")));
    }
    Ok((1.0 + ct).sqrt().recip())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spin(two: u32) -> Spin {
        Spin::from_twice(two).unwrap()
    }

    #[test]
    fn spin_labels() {
        assert_eq!(Spin::new(1.5).unwrap().twice(), 3);
        assert!(Spin::new(0.0).is_err());
        assert!(Spin::new(0.7).is_err());
    }

    #[test]
    fn spin_half_column() {
        let theta = 0.9;
        let col = wigner_column(spin(1), theta);
        assert_eq!(col.values.len(), 2);
        assert!((col.values[1] - (0.5 * theta).cos()).abs() < 1e-16);
        assert!((col.values[0] + (0.5 * theta).sin()).abs() < 1e-16);
    }

    #[test]
    fn identity_rotation() {
        let col = wigner_column(spin(6), 0.0);
        assert_eq!(col.values, vec![0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0]);
    }

    #[test]
    fn column_is_a_unit_vector() {
        assert!((wigner_column(spin(20), 1.1).norm_squared() - 1.0).abs() < 1e-12);
        let big = wigner_column(spin(300), 1.1);
        assert!(matches!(big.mode, FactorialMode::LogDomain { .. }));
        assert!((big.norm_squared() - 1.0).abs() < 1e-11);
    }

    #[test]
    fn log_domain_matches_exact_at_the_switch() {
        let theta = 2.3;
        let exact = wigner_column(spin(EXACT_TWO_ELL), theta);
        let n = EXACT_TWO_ELL;
        for j in 0..=n {
            let (sc, lc) = signed_log_power((0.5 * theta).cos(), n - j);
            let (ss, ls) = signed_log_power((0.5 * theta).sin(), j);
            let parity = if j % 2 == 0 { 1.0 } else { -1.0 };
            let logged = parity * sc * ss * (0.5 * ln_binomial(n, j) + lc + ls).exp();
            assert!((logged - exact.at_j(j)).abs() <= 1e-13 * exact.at_j(j).abs().max(1e-300));
        }
    }

    #[test]
    fn signed_sum_for_spin_one() {
        let theta: f64 = 0.7;
        let direct: f64 = {
            let (c, s) = ((0.5 * theta).cos(), (0.5 * theta).sin());
            c.powi(4) - 2.0 * c * c * s * s + s.powi(4)
        };
        let got = signed_sum(spin(2), theta, SignConvention::EllMinusMPrime).unwrap();
        assert!((got - theta.cos().powi(2)).abs() < 1e-12);
        assert!((got - direct).abs() < 1e-15);
    }

    #[test]
    fn m_prime_sign_differs_for_odd_integer_spin() {
        let theta = 0.4;
        let flipped = signed_sum(spin(2), theta, SignConvention::MPrime).unwrap();
        assert!((flipped + theta.cos().powi(2)).abs() < 1e-12);
        let even = signed_sum(spin(4), theta, SignConvention::MPrime).unwrap();
        assert!((even - theta.cos().powi(4)).abs() < 1e-12);
        assert!(signed_sum(spin(3), theta, SignConvention::MPrime).is_err());
        assert_eq!(signed_sum(spin(4), 0.0, SignConvention::MPrime).unwrap(), 1.0);
    }

    #[test]
    fn weak_value_routes_agree() {
        let s = spin(20);
        let (theta, d) = (1.2, 0.3);
        let closed = rotation_weak_value(s, theta, d).unwrap();
        let column = rotation_weak_value_from_column(s, theta, d).unwrap();
        let product = rotation_weak_value_via_product(s, theta, d).unwrap();
        assert!((closed - column).norm() < 1e-12 * closed.norm(), "{closed} {column}");
        assert!((closed - product).norm() < 1e-12 * closed.norm());
        let asym = superoscillating_form(s, theta, d / s.ell());
        assert!((asym - signed_phase_sum(s, theta, d / s.ell())).norm() < 1e-12);
    }

    #[test]
    fn zero_rotation_has_unit_weak_value() {
        assert!((rotation_weak_value(spin(7), 0.8, 0.0).unwrap() - 1.0).norm() < 1e-14);
    }

    #[test]
    fn orthogonal_states_are_rejected() {
        assert!(matches!(rotation_weak_value(spin(2), std::f64::consts::FRAC_PI_2, 0.1), Err(Error::Orthogonal(_))));
    }

    #[test]
    fn large_spin_limit() {
        let v = rotation_weak_value(spin(2000), 1.0, 0.1).unwrap();
        let lim = rotation_weak_value_limit(1.0, 0.1).unwrap();
        assert!((v - lim).norm() < 0.01);
    }

    #[test]
    fn explicit_spins_reproduce_the_overlap() {
        for two in [1, 2, 5, 8] {
            let (num, den) = tensor_overlap(spin(two), 0.9, 0.4).unwrap();
            assert!((den.re - 0.9f64.cos().powi(two as i32)).abs() < 1e-12);
            let wv = rotation_weak_value(spin(two), 0.9, 0.4).unwrap();
            assert!((num / den - wv).norm() < 1e-12);
        }
    }

    #[test]
    fn offcenter_special_points() {
        let theta = 0.8;
        let same0 = offcenter_frequency(theta, 0.0, Branch::SameState).unwrap();
        assert!((same0.frequency - theta.cos()).abs() < 1e-15 && !same0.superoscillating);
        let same_pi = offcenter_frequency(theta, std::f64::consts::PI, Branch::SameState).unwrap();
        assert!((same_pi.frequency - 1.0 / theta.cos()).abs() < 1e-12 && same_pi.superoscillating);
        let phi0 = flipped_boundary(theta).unwrap().acos();
        let edge = offcenter_frequency(theta, phi0, Branch::FlippedState).unwrap();
        assert!((edge.frequency.abs() - 1.0).abs() < 1e-10);
        assert!(offcenter_frequency(theta, phi0 - 0.1, Branch::FlippedState).unwrap().superoscillating);
        assert!(!offcenter_frequency(theta, phi0 + 0.1, Branch::FlippedState).unwrap().superoscillating);
    }
}
