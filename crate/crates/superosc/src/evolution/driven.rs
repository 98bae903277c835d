use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use serde::Serialize;

use super::exp_poly_sum;
use crate::core::sequence::SuperoscSequence;
use crate::error::{domain, Error, Result};
use crate::numeric::mp::MpComplex;
use crate::numeric::quad::adaptive_simpson;

/// Below this `|cos ωτ|` or `|sin ωτ|` the propagator is treated as singular.
const SINGULAR_TRIG: f64 = 1e-8;
/// Inner integrals of `J` run this much tighter than the outer one.
const INNER_TOL_FACTOR: f64 = 1e-3;

/// A time-dependent force `f(t)`.
pub type Force = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// Parameters of `iħ∂ₜψ = −(ħ²/2m)∂ₓ²ψ + ½mω²x²ψ − f(t)xψ`.
#[derive(Clone)]
pub struct DrivenOscillatorConfig {
    m: f64,
    omega: f64,
    hbar: f64,
    p: f64,
    force: Force,
    quad_tol: f64,
}

impl fmt::Debug for DrivenOscillatorConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DrivenOscillatorConfig")
            .field("m", &self.m)
            .field("omega", &self.omega)
            .field("hbar", &self.hbar)
            .field("p", &self.p)
            .field("quad_tol", &self.quad_tol)
            .finish_non_exhaustive()
    }
}

impl DrivenOscillatorConfig {
    pub const DEFAULT_QUAD_TOL: f64 = 1e-10;

    /// `p` scales the datum: the plane wave of frequency `κ` is `e^{iκpx/ħ}`.
    pub fn new(m: f64, omega: f64, hbar: f64, p: f64, force: Force, quad_tol: f64) -> Result<Self> {
        for (name, v) in [("m", m), ("ω", omega), ("ħ", hbar), ("quad_tol", quad_tol)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(domain(format!("{name} = {v} must be positive")));
            }
        }
        if !p.is_finite() {
            return Err(domain(format!("p = {p} is not finite")));
        }
        Ok(Self { m, omega, hbar, p, force, quad_tol })
    }

    /// Unit mass, frequency, action and momentum scale.
    pub fn unit(force: Force) -> Self {
        Self { m: 1.0, omega: 1.0, hbar: 1.0, p: 1.0, force, quad_tol: Self::DEFAULT_QUAD_TOL }
    }

    /// The undriven oscillator.
    pub fn undriven(m: f64, omega: f64, hbar: f64, p: f64) -> Result<Self> {
        Self::new(m, omega, hbar, p, Arc::new(|_| 0.0), Self::DEFAULT_QUAD_TOL)
    }

    pub fn m(&self) -> f64 {
        self.m
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn quad_tol(&self) -> f64 {
        self.quad_tol
    }

    pub fn force(&self, t: f64) -> f64 {
        (self.force)(t)
    }
}

/// Force integrals over the window `[t′, t]`, written with `τ = t − t′` and `g(s) = f(t′ + s)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DrivenIntegrals {
    /// `I(t, t′) = (1/mω)∫₀^τ g(s) sin ωs ds`.
    pub i_forward: f64,
    /// `(1/mω)∫₀^τ g(s) sin ω(τ − s) ds`.
    pub i_backward: f64,
    /// `(1/m²ω²)∫₀^τ g(s) sin ω(τ − s) ∫₀^s g(u) sin ωu du ds`.
    pub j: f64,
}

pub fn driven_integrals(cfg: &DrivenOscillatorConfig, t: f64, t_prime: f64) -> Result<DrivenIntegrals> {
    let tau = t - t_prime;
    let w = cfg.omega;
    let mw = cfg.m * w;
    let tol = cfg.quad_tol;
    let g = |s: f64| cfg.force(t_prime + s);
    let i_forward = adaptive_simpson(|s| g(s) * (w * s).sin(), 0.0, tau, tol * mw)? / mw;
    let i_backward = adaptive_simpson(|s| g(s) * (w * (tau - s)).sin(), 0.0, tau, tol * mw)? / mw;
    let inner_tol = tol * mw * INNER_TOL_FACTOR;
    let failure = std::cell::Cell::new(None);
    let outer = adaptive_simpson(
        |s| {
            let inner = adaptive_simpson(|u| g(u) * (w * u).sin(), 0.0, s, inner_tol).unwrap_or_else(|e| {
                if let Error::Quadrature { estimate, .. } = e {
                    failure.set(Some(estimate));
                }
                f64::NAN
            });
            g(s) * (w * (tau - s)).sin() * inner
        },
        0.0,
        tau,
        tol * mw * mw,
    );
    if let Some(estimate) = failure.get() {
        return Err(Error::Quadrature { tol: inner_tol, estimate });
    }
    Ok(DrivenIntegrals { i_forward, i_backward, j: outer? / (mw * mw) })
}

/// Initial datum handed to [`driven_ho_evolve`].
#[derive(Debug, Clone, Copy)]
pub enum DrivenDatum<'a> {
    /// `Σ_j C_j e^{i k_j p x/ħ}`.
    Sequence(&'a SuperoscSequence),
    /// `e^{i a p x/ħ}`.
    PlaneWave(f64),
}

/// Frequency-independent parts of the propagated plane wave.
struct Kernel {
    prefactor: Complex64,
    cos: f64,
    tan: f64,
    i_backward: f64,
}

fn kernel(cfg: &DrivenOscillatorConfig, x: f64, t: f64, t_prime: f64) -> Result<Option<Kernel>> {
    let tau = t - t_prime;
    if tau == 0.0 {
        return Ok(None);
    }
    let phase = cfg.omega * tau;
    let (s, c) = phase.sin_cos();
    if c.abs() < SINGULAR_TRIG || s.abs() < SINGULAR_TRIG {
        return Err(Error::Singular(format!("ω(t − t′) = {phase} hits a propagator singularity")));
    }
    let ints = driven_integrals(cfg, t, t_prime)?;
    let (i0, i1, j) = (ints.i_backward, ints.i_forward, ints.j);
    let bracket = -x * x * s * s + 2.0 * x * i1 * c - 2.0 * j * c + 2.0 * x * i0 - i0 * i0;
    let scale = cfg.m * cfg.omega / (2.0 * cfg.hbar * s * c);
    let prefactor = Complex64::new(c, 0.0).sqrt().inv() * Complex64::cis(scale * bracket);
    Ok(Some(Kernel { prefactor, cos: c, tan: s / c, i_backward: i0 }))
}

/// Driven evolution of a single plane wave.
pub fn driven_plane_wave(cfg: &DrivenOscillatorConfig, a: f64, x: f64, t: f64, t_prime: f64) -> Result<Complex64> {
    driven_ho_evolve(cfg, DrivenDatum::PlaneWave(a), x, t, t_prime)
}

/// `ψ(x, t)` for the datum prescribed at time `t′`.
pub fn driven_ho_evolve(cfg: &DrivenOscillatorConfig, datum: DrivenDatum<'_>, x: f64, t: f64, t_prime: f64) -> Result<Complex64> {
    let kx = cfg.p / cfg.hbar;
    let Some(k) = kernel(cfg, x, t, t_prime)? else {
        return Ok(match datum {
            DrivenDatum::PlaneWave(a) => Complex64::cis(a * kx * x),
            DrivenDatum::Sequence(seq) => exp_poly_sum(seq, 1, 0.0, |ctx| {
                vec![ctx.zero(), MpComplex { re: ctx.int(0), im: ctx.mul(&ctx.real(kx), &ctx.real(x)) }]
            }),
        });
    };
    let lin = kx * (x - k.i_backward) / k.cos;
    let quad = -cfg.p * kx * k.tan / (2.0 * cfg.m * cfg.omega);
    let sum = match datum {
        DrivenDatum::PlaneWave(a) => Complex64::cis(lin * a + quad * a * a),
        DrivenDatum::Sequence(seq) => exp_poly_sum(seq, 2, 0.0, |ctx| {
            vec![ctx.zero(), MpComplex { re: ctx.int(0), im: ctx.real(lin) }, MpComplex { re: ctx.int(0), im: ctx.real(quad) }]
        }),
    };
    Ok(k.prefactor * sum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::core::build_prototype;
    use crate::evolution::{ho_evolve, ho_plane_wave};

    fn constant(f0: f64) -> Force {
        Arc::new(move |_| f0)
    }

    #[test]
    fn constant_force_integral() {
        let (f0, m, w) = (0.7, 1.3, 2.1);
        let cfg = DrivenOscillatorConfig::new(m, w, 1.0, 1.0, constant(f0), 1e-10).unwrap();
        for t in [0.3, 1.0, 2.5] {
            let ints = driven_integrals(&cfg, t, 0.0).unwrap();
            let want = f0 / (m * w * w) * (1.0 - (w * t).cos());
            assert!((ints.i_forward - want).abs() < 1e-10);
            assert!((ints.i_backward - want).abs() < 1e-10);
        }
    }

    #[test]
    fn undriven_unit_case_is_the_oscillator() {
        let cfg = DrivenOscillatorConfig::undriven(1.0, 1.0, 1.0, 1.0).unwrap();
        let seq = build_prototype(12, 2.0).unwrap();
        for (x, t) in [(0.5, 0.3), (-1.2, 1.1)] {
            let got = driven_ho_evolve(&cfg, DrivenDatum::Sequence(&seq), x, t, 0.0).unwrap();
            assert!((got - ho_evolve(&seq, x, t).unwrap()).norm() < 1e-10);
            let pw = driven_plane_wave(&cfg, 1.5, x, t, 0.0).unwrap();
            assert!((pw - ho_plane_wave(1.5, x, t).unwrap()).norm() < 1e-12);
        }
    }

    #[test]
    fn singular_windows_are_rejected() {
        let cfg = DrivenOscillatorConfig::unit(constant(1.0));
        assert!(matches!(driven_plane_wave(&cfg, 1.0, 0.0, std::f64::consts::FRAC_PI_2, 0.0), Err(Error::Singular(_))));
        assert!(matches!(driven_plane_wave(&cfg, 1.0, 0.0, std::f64::consts::PI + 0.2, 0.2), Err(Error::Singular(_))));
        assert_eq!(driven_plane_wave(&cfg, 2.0, 0.5, 0.3, 0.3).unwrap(), Complex64::cis(1.0));
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(DrivenOscillatorConfig::new(0.0, 1.0, 1.0, 1.0, constant(0.0), 1e-10).is_err());
        assert!(DrivenOscillatorConfig::new(1.0, -1.0, 1.0, 1.0, constant(0.0), 1e-10).is_err());
    }
}
