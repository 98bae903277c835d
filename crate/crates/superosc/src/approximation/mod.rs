//! Standard approximating sequences `φ_{ψ,n,a}(x) = Σ_j C_j(n, a)·ψ(x + k_j)`.
//!
//! A shift by `k_j` multiplies the plane wave `e^{iλx}` by `e^{iλk_j}`, so on a
//! signal with a discrete spectrum `ψ = Σ w·e^{iλx}` the sequence collapses to
//! `Σ w·F_n(λ, a)·e^{iλx}`, which is evaluated without cancellation.  Signals
//! known only pointwise fall back on the binomial combination under the
//! precision policy.

mod bandlimited;
mod dirichlet;
mod signal;
mod ualpha;

pub use bandlimited::{bandlimited_error_bound, corpus, fejer_exact, BandLimitedFunction, CorpusEntry, L1Norm};
pub use dirichlet::{dirichlet_approx, dirichlet_error_bound, dirichlet_limit, dirichlet_sup_error, DirichletData, DIRICHLET_SLACK};
pub use signal::{FnSignal, Gaussian, PlaneWave, Signal, Spectrum};
pub use ualpha::{alpha_threshold, ualpha, ualpha_hat, ualpha_hat_l1, xgamma_bound, Ualpha};

use num_complex::Complex64;

use crate::core::policy::{prototype_loss_bits, PrecisionPolicy};
use crate::core::product::eval_product;
use crate::core::sequence::{build_prototype, prototype_coeffs_mp};
use crate::error::{domain, Result};
use crate::numeric::mp::MpContext;
use crate::numeric::search::grid_then_golden;
use crate::numeric::sum::CompensatedComplexSum;

/// A standard approximating sequence prepared for repeated evaluation.
pub struct StandardApprox<'a> {
    signal: &'a dyn Signal,
    n: usize,
    shifts: Vec<f64>,
    order: u32,
    policy: PrecisionPolicy,
    /// `(λ, w·(iλ)^k·Σ_s F_n(λ, a_s))` when the signal has a spectrum.
    folded: Option<Vec<(f64, Complex64)>>,
}

impl<'a> StandardApprox<'a> {
    /// `Σ_s φ^{(k)}_{ψ,n,a_s}`; a single shift gives the plain sequence.
    pub fn new(signal: &'a dyn Signal, n: usize, shifts: &[f64], order: u32, policy: PrecisionPolicy) -> Result<Self> {
        if shifts.is_empty() {
            return Err(domain("at least one shift is required"));
        }
        if n == 0 {
            return Err(crate::error::Error::ZeroOrder);
        }
        let folded = match signal.spectrum() {
            Some(spectrum) => Some(
                spectrum
                    .iter()
                    .map(|&(lambda, w)| {
                        let mut acc = Complex64::new(0.0, 0.0);
                        for &a in shifts {
                            acc += eval_product(n, a, lambda)?;
                        }
                        Ok((lambda, w * Complex64::new(0.0, lambda).powu(order) * acc))
                    })
                    .collect::<Result<Vec<_>>>()?,
            ),
            None => {
                for &a in shifts {
                    policy.check(prototype_loss_bits(n, a))?;
                }
                None
            }
        };
        Ok(Self { signal, n, shifts: shifts.to_vec(), order, policy, folded })
    }

    pub fn eval(&self, x: f64) -> Result<Complex64> {
        if let Some(folded) = &self.folded {
            return Ok(folded.iter().map(|&(l, w)| w * Complex64::cis(l * x)).collect::<CompensatedComplexSum>().value());
        }
        let n = self.n;
        let mut total = Complex64::new(0.0, 0.0);
        for &a in &self.shifts {
            let samples = (0..=n)
                .map(|j| self.signal.eval(x + 1.0 - 2.0 * j as f64 / n as f64, self.order))
                .collect::<Result<Vec<_>>>()?;
            total += match self.policy {
                PrecisionPolicy::MachineCompensated => build_prototype(n, a)?
                    .coeffs()
                    .iter()
                    .zip(&samples)
                    .map(|(c, s)| c * s)
                    .collect::<CompensatedComplexSum>()
                    .value(),
                PrecisionPolicy::Extended { significand_bits } => {
                    let ctx = MpContext::new(significand_bits as usize);
                    let coeffs = prototype_coeffs_mp(&ctx, n, a);
                    let mut acc = ctx.zero();
                    for (c, s) in coeffs.iter().zip(&samples) {
                        acc = ctx.cadd(&acc, &ctx.cscale(&ctx.complex(*s), c));
                    }
                    acc.to_c64()
                }
            };
        }
        Ok(total)
    }

    /// `Σ_s ψ^{(k)}(x + a_s)`, the target of the sequence.
    pub fn target(&self, x: f64) -> Result<Complex64> {
        self.shifts.iter().map(|a| self.signal.eval(x + a, self.order)).sum()
    }

    /// `sup |φ − target|` over `[lo, hi]` on a uniform grid refined by golden section.
    pub fn sup_error(&self, lo: f64, hi: f64, points: usize) -> Result<f64> {
        let failure = std::cell::RefCell::new(None);
        let peak = grid_then_golden(
            |x| match (self.eval(x), self.target(x)) {
                (Ok(p), Ok(q)) => (p - q).norm(),
                (Err(e), _) | (_, Err(e)) => {
                    failure.borrow_mut().get_or_insert(e);
                    f64::NAN
                }
            },
            lo,
            hi,
            points,
        );
        match failure.into_inner() {
            Some(e) => Err(e),
            None => Ok(peak.value),
        }
    }
}

/// `Σ_s φ^{(k)}_{ψ,n,a_s}(x)`.
pub fn standard_approx(signal: &dyn Signal, n: usize, shifts: &[f64], x: f64, order: u32, policy: PrecisionPolicy) -> Result<Complex64> {
    StandardApprox::new(signal, n, shifts, order, policy)?.eval(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_shift_is_a_translation() {
        let g = Gaussian::new(1.3).unwrap();
        let v = standard_approx(&g, 9, &[1.0], 0.4, 0, PrecisionPolicy::MachineCompensated).unwrap();
        assert!((v - g.eval(1.4, 0).unwrap()).norm() < 1e-15);
    }

    #[test]
    fn plane_wave_is_an_eigenfunction() {
        for omega in [-1.0, -0.3, 0.0, 0.8, 1.0] {
            let pw = PlaneWave::new(omega);
            let got = standard_approx(&pw, 40, &[2.0], 0.7, 0, PrecisionPolicy::MachineCompensated).unwrap();
            let want = eval_product(40, 2.0, omega).unwrap() * Complex64::cis(omega * 0.7);
            assert!((got - want).norm() < 1e-12);
        }
    }

    #[test]
    fn pointwise_and_spectral_routes_agree() {
        let pw = PlaneWave::new(0.6);
        let pointwise = FnSignal::new(|x, k| Ok(Complex64::new(0.0, 0.6).powu(k) * Complex64::cis(0.6 * x)));
        for k in 0..3 {
            let a = standard_approx(&pw, 12, &[1.5, -0.5], 0.3, k, PrecisionPolicy::MachineCompensated).unwrap();
            let b = standard_approx(&pointwise, 12, &[1.5, -0.5], 0.3, k, PrecisionPolicy::MachineCompensated).unwrap();
            assert!((a - b).norm() < 1e-12, "k = {k}");
        }
    }

    #[test]
    fn pointwise_route_respects_the_policy() {
        let g = Gaussian::new(1.0).unwrap();
        assert!(standard_approx(&g, 30, &[4.0], 0.0, 0, PrecisionPolicy::MachineCompensated).is_err());
        assert!(standard_approx(&g, 30, &[4.0], 0.0, 0, PrecisionPolicy::auto(30, 4.0)).is_ok());
    }
}
