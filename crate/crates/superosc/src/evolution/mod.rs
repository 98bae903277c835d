//! Closed-form time evolution of superoscillating data.
//!
//! Every law multiplies the plane wave `e^{ikx}` by a factor that depends on
//! the frequency only, so `ψ_n(x, t) = Σ_j C_j·e^{i k_j x}·m_t(k_j)`.  When
//! `m_t` is the exponential of a polynomial the sum runs on the
//! extended-precision engine with the bit budget of the sequence; large
//! prototype orders with Gaussian multipliers switch to an exact contour
//! representation evaluated in double precision.

mod contour;
mod driven;
mod formal;
mod oscillator;
mod packet;
mod schrodinger;
mod symbol;

pub use contour::gaussian_multiplier_sum;
pub use driven::{driven_ho_evolve, driven_integrals, driven_plane_wave, DrivenDatum, DrivenIntegrals, DrivenOscillatorConfig};
pub use formal::{formal_solution, formal_limit, AProvider, FormalConfig, FormalValue};
pub use oscillator::{ho_evolve, ho_limit, ho_plane_wave, ho_powered_evolve, ho_powered_limit, SINGULAR_COS};
pub use packet::{gaussian_packet, packet_center, packet_norm_squared, packet_spread};
pub use schrodinger::{
    free_error_split, free_evolve, free_limit, frugsc_reconstruct, frugsc_terms, heat_evolve, heat_limit, modified_evolve,
    modified_limit, powered_datum_evolve, powered_datum_limit, wave_evolve, wave_limit, ErrorSplit, FrugscTerm,
};
pub use symbol::{symbol_evolve, symbol_limit, SymbolEvolution, SymbolSeries};

use num_complex::Complex64;
use serde::Serialize;

use crate::core::policy::EXTENDED_HEADROOM_BITS;
use crate::core::sequence::{exp_poly_sum_mp, SuperoscSequence};
use crate::core::expsum::working_bits;
use crate::error::{domain, Result};
use crate::numeric::mp::{MpComplex, MpContext};

/// Prototype sums losing more bits than this use the contour route when available.
pub const MP_LOSS_LIMIT_BITS: u64 = 2048;

/// `Σ_j C_j·exp(Q(k_j))` with `Q` built by `build` inside a context sized for the sequence.
pub(crate) fn exp_poly_sum<F>(seq: &SuperoscSequence, degree: usize, growth: f64, build: F) -> Complex64
where
    F: FnOnce(&mut MpContext) -> Vec<MpComplex>,
{
    let policy_bits = seq.loss_bits() + EXTENDED_HEADROOM_BITS;
    let mut ctx = MpContext::new(working_bits(policy_bits, seq.n(), degree, growth));
    let q = build(&mut ctx);
    exp_poly_sum_mp(seq, &mut ctx, &q).to_c64()
}

pub(crate) fn use_contour(seq: &SuperoscSequence) -> bool {
    seq.is_prototype() && seq.loss_bits() > MP_LOSS_LIMIT_BITS
}

/// Names of the supported evolution laws.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LawKind {
    Free,
    Heat,
    Wave,
    ModifiedPEven,
    ModifiedPOdd,
    PoweredDatum,
    SymbolSeries,
    Oscillator,
    OscillatorPowered,
    DrivenOscillator,
    Formal,
}

/// An evolution law with its parameters.
#[derive(Debug, Clone)]
pub enum Law {
    Free,
    Heat,
    Wave { c: f64 },
    Modified { p: u32 },
    PoweredDatum { ell: u32, p: u32 },
    Symbol { symbol: SymbolSeries, truncation: usize },
    Oscillator,
    OscillatorPowered { p: u32 },
    DrivenOscillator(DrivenOscillatorConfig),
    Formal(FormalConfig),
}

impl Law {
    pub fn kind(&self) -> LawKind {
        match self {
            Law::Free => LawKind::Free,
            Law::Heat => LawKind::Heat,
            Law::Wave { .. } => LawKind::Wave,
            Law::Modified { p } if p % 2 == 0 => LawKind::ModifiedPEven,
            Law::Modified { .. } => LawKind::ModifiedPOdd,
            Law::PoweredDatum { .. } => LawKind::PoweredDatum,
            Law::Symbol { .. } => LawKind::SymbolSeries,
            Law::Oscillator => LawKind::Oscillator,
            Law::OscillatorPowered { .. } => LawKind::OscillatorPowered,
            Law::DrivenOscillator(_) => LawKind::DrivenOscillator,
            Law::Formal(_) => LawKind::Formal,
        }
    }
}

/// A sequence together with the law that evolves it.
#[derive(Debug, Clone)]
pub struct EvolvedState {
    pub law: Law,
    pub seq: SuperoscSequence,
}

impl EvolvedState {
    pub fn new(law: Law, seq: SuperoscSequence) -> Self {
        Self { law, seq }
    }

    /// `ψ_n(x, t)`.
    pub fn evaluate(&self, x: f64, t: f64) -> Result<Complex64> {
        let seq = &self.seq;
        match &self.law {
            Law::Free => Ok(free_evolve(seq, x, t)),
            Law::Heat => heat_evolve(seq, x, t),
            Law::Wave { c } => Ok(wave_evolve(seq, x, t, *c)),
            Law::Modified { p } => modified_evolve(seq, x, t, *p),
            Law::PoweredDatum { ell, p } => powered_datum_evolve(seq.n(), seq.a(), *ell, *p, x, t),
            Law::Symbol { symbol, truncation } => Ok(symbol_evolve(seq, symbol, x, t, *truncation)?.value),
            Law::Oscillator => ho_evolve(seq, x, t),
            Law::OscillatorPowered { p } => ho_powered_evolve(seq.n(), seq.a(), *p, x, t),
            Law::DrivenOscillator(cfg) => driven_ho_evolve(cfg, DrivenDatum::Sequence(seq), x, t, 0.0),
            Law::Formal(cfg) => Ok(formal_solution(seq, cfg, x, t)?.value),
        }
    }

    /// The `n → ∞` closed form with `a` taken from the sequence.
    pub fn limit(&self, x: f64, t: f64) -> Result<Complex64> {
        let a = self.seq.a();
        match &self.law {
            Law::Free => Ok(free_limit(a, x, t)),
            Law::Heat => heat_limit(a, x, t),
            Law::Wave { c } => Ok(wave_limit(a, x, t, *c)),
            Law::Modified { p } => modified_limit(a, x, t, *p),
            Law::PoweredDatum { ell, p } => powered_datum_limit(a, *ell, *p, x, t),
            Law::Symbol { symbol, truncation } => symbol_limit(symbol, a, x, t, *truncation),
            Law::Oscillator => ho_limit(a, x, t),
            Law::OscillatorPowered { p } => ho_powered_limit(a, *p, x, t),
            Law::DrivenOscillator(cfg) => driven_ho_evolve(cfg, DrivenDatum::PlaneWave(a), x, t, 0.0),
            Law::Formal(cfg) => formal_limit(cfg, a, x, t),
        }
    }
}

/// `ψ(t, x + X)` and `ψ(t, x)` for an `X`-periodic datum.
pub fn periodicity_witness(state: &EvolvedState, period: f64, t: f64, x: f64) -> Result<(Complex64, Complex64)> {
    let two_pi = 2.0 * std::f64::consts::PI;
    for &k in state.seq.freqs() {
        let turns = k * period / two_pi;
        if (turns - turns.round()).abs() > 1e-12 * turns.abs().max(1.0) {
            return Err(domain(format!("frequency {k} is not {period}-periodic")));
        }
    }
    Ok((state.evaluate(x + period, t)?, state.evaluate(x, t)?))
}
