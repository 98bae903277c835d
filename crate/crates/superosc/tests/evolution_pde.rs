//! Finite-difference residuals of the governing equations at random points.

use std::sync::Arc;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use superosc::core::build_prototype;
use superosc::evolution::*;

const H: f64 = 1e-4;
const H4: f64 = 1e-2;
const POINTS: usize = 20;
const TOL: f64 = 1e-5;

fn d_t(f: &dyn Fn(f64, f64) -> Complex64, x: f64, t: f64) -> Complex64 {
    (f(x, t + H) - f(x, t - H)) / (2.0 * H)
}

fn d_xx(f: &dyn Fn(f64, f64) -> Complex64, x: f64, t: f64) -> Complex64 {
    (f(x + H, t) - 2.0 * f(x, t) + f(x - H, t)) / (H * H)
}

fn d_tt(f: &dyn Fn(f64, f64) -> Complex64, x: f64, t: f64) -> Complex64 {
    (f(x, t + H) - 2.0 * f(x, t) + f(x, t - H)) / (H * H)
}

/// Seven-point stencil for the fourth derivative.
fn d_xxxx(f: &dyn Fn(f64, f64) -> Complex64, x: f64, t: f64) -> Complex64 {
    let w = [-1.0, 12.0, -39.0, 56.0, -39.0, 12.0, -1.0];
    let s: Complex64 = w.iter().enumerate().map(|(i, c)| *c * f(x + (i as f64 - 3.0) * H4, t)).sum();
    s / (6.0 * H4.powi(4))
}

/// Seven-point stencil for the third derivative.
fn d_xxx(f: &dyn Fn(f64, f64) -> Complex64, x: f64, t: f64) -> Complex64 {
    let w = [1.0, -8.0, 13.0, 0.0, -13.0, 8.0, -1.0];
    let s: Complex64 = w.iter().enumerate().map(|(i, c)| *c * f(x + (i as f64 - 3.0) * H4, t)).sum();
    s / (8.0 * H4.powi(3))
}

fn check<R>(name: &str, seed: u64, t_range: (f64, f64), residual: R)
where
    R: Fn(f64, f64) -> Option<(Complex64, f64)>,
{
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checked = 0;
    while checked < POINTS {
        let x = rng.gen_range(-2.0..2.0);
        let t = rng.gen_range(t_range.0..t_range.1);
        let Some((r, scale)) = residual(x, t) else { continue };
        assert!(r.norm() <= TOL * scale.max(1.0), "{name}: residual {} at x = {x}, t = {t}", r.norm());
        checked += 1;
    }
}

#[test]
fn free_schrodinger() {
    let seq = build_prototype(6, 2.0).unwrap();
    let f = |x: f64, t: f64| free_evolve(&seq, x, t);
    check("free", 1, (-1.0, 1.0), |x, t| Some((Complex64::i() * d_t(&f, x, t) + d_xx(&f, x, t), 1.0)));
}

#[test]
fn heat() {
    let seq = build_prototype(6, 2.0).unwrap();
    let f = |x: f64, t: f64| heat_evolve(&seq, x, t).unwrap();
    check("heat", 2, (0.01, 1.0), |x, t| Some((d_t(&f, x, t) - d_xx(&f, x, t), 1.0)));
}

#[test]
fn wave_and_its_initial_velocity() {
    let seq = build_prototype(6, 2.0).unwrap();
    let c = 1.7;
    let f = |x: f64, t: f64| wave_evolve(&seq, x, t, c);
    check("wave", 3, (-1.0, 1.0), |x, t| Some((d_tt(&f, x, t) - c * c * d_xx(&f, x, t), 1.0)));
    for x in [-1.0, 0.0, 0.3, 1.4] {
        assert!(d_t(&f, x, 0.0).norm() < 1e-9);
    }
}

#[test]
fn modified_even_and_odd() {
    let seq = build_prototype(6, 2.0).unwrap();
    let f4 = |x: f64, t: f64| modified_evolve(&seq, x, t, 4).unwrap();
    check("modified p=4", 4, (-1.0, 1.0), |x, t| {
        Some((Complex64::i() * d_t(&f4, x, t) + d_xxxx(&f4, x, t), 1.0))
    });
    let f3 = |x: f64, t: f64| modified_evolve(&seq, x, t, 3).unwrap();
    check("modified p=3", 5, (-1.0, 1.0), |x, t| Some((d_t(&f3, x, t) + d_xxx(&f3, x, t), 1.0)));
}

#[test]
fn powered_datum() {
    let f = |x: f64, t: f64| powered_datum_evolve(6, 2.0, 2, 2, x, t).unwrap();
    check("powered", 6, (-1.0, 1.0), |x, t| Some((Complex64::i() * d_t(&f, x, t) + d_xx(&f, x, t), 1.0)));
}

#[test]
fn symbol_series() {
    let seq = build_prototype(6, 2.0).unwrap();
    let sym = SymbolSeries::geometric_polynomial(4);
    let f = |x: f64, t: f64| symbol_evolve(&seq, &sym, x, t, 4).unwrap().value;
    check("symbol", 7, (-0.5, 0.5), |x, t| {
        let g = f(x, t) + derivative_x(&f, x, t, 1) + d_xx(&f, x, t) + d_xxx(&f, x, t) + d_xxxx(&f, x, t);
        Some((Complex64::i() * d_t(&f, x, t) + g, f(x, t).norm()))
    });
}

fn derivative_x(f: &dyn Fn(f64, f64) -> Complex64, x: f64, t: f64, _order: u8) -> Complex64 {
    (f(x + H, t) - f(x - H, t)) / (2.0 * H)
}

fn oscillator_residual(f: &dyn Fn(f64, f64) -> Complex64, x: f64, t: f64) -> Complex64 {
    Complex64::i() * d_t(f, x, t) - 0.5 * (-d_xx(f, x, t) + x * x * f(x, t))
}

#[test]
fn oscillator_plain_and_powered() {
    let seq = build_prototype(6, 2.0).unwrap();
    let f = |x: f64, t: f64| ho_evolve(&seq, x, t).unwrap();
    check("oscillator", 8, (-1.2, 1.2), |x, t| Some((oscillator_residual(&f, x, t), f(x, t).norm())));
    let g = |x: f64, t: f64| ho_powered_evolve(6, 2.0, 2, x, t).unwrap();
    check("oscillator powered", 9, (-1.2, 1.2), |x, t| Some((oscillator_residual(&g, x, t), g(x, t).norm())));
    let pw = |x: f64, t: f64| ho_plane_wave(1.3, x, t).unwrap();
    check("plane wave", 10, (-1.2, 1.2), |x, t| Some((oscillator_residual(&pw, x, t), pw(x, t).norm())));
}

#[test]
fn driven_oscillator() {
    let force = Arc::new(|s: f64| 0.4 + 0.3 * (1.7 * s).sin());
    let (m, w, hbar, p, t0) = (1.3, 0.9, 0.7, 1.1, 0.2);
    let cfg = DrivenOscillatorConfig::new(m, w, hbar, p, force.clone(), 1e-13).unwrap();
    let seq = build_prototype(4, 1.5).unwrap();
    let f = |x: f64, t: f64| driven_ho_evolve(&cfg, DrivenDatum::Sequence(&seq), x, t, t0).unwrap();
    check("driven", 11, (0.3, 3.0), |x, t| {
        let (s, c) = (w * (t - t0)).sin_cos();
        if s.abs() < 0.3 || c.abs() < 0.5 {
            return None;
        }
        let lhs = Complex64::i() * hbar * d_t(&f, x, t);
        let rhs = -hbar * hbar / (2.0 * m) * d_xx(&f, x, t) + (0.5 * m * w * w * x * x - force(t) * x) * f(x, t);
        Some((lhs - rhs, f(x, t).norm()))
    });
}

#[test]
fn gaussian_packet_is_free() {
    let f = |x: f64, t: f64| gaussian_packet(x, t, 0.3, 1.2, 0.8).unwrap();
    check("packet", 12, (-1.0, 1.0), |x, t| Some((Complex64::i() * d_t(&f, x, t) + d_xx(&f, x, t), 1.0)));
}

#[test]
fn formal_exponential_family() {
    let seq = build_prototype(6, 2.0).unwrap();
    let a1 = Complex64::new(0.2, 0.5);
    let cfg = FormalConfig::power(2, a1).unwrap();
    let f = |x: f64, t: f64| formal_solution(&seq, &cfg, x, t).unwrap().value;
    check("formal", 13, (-1.0, 1.0), |x, t| Some((d_t(&f, x, t) - a1 * d_xx(&f, x, t), f(x, t).norm())));
}

