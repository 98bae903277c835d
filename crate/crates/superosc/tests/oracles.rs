//! Cross-checks against constructions that share no code with the library.

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use superosc::core::product::eval_product;
use superosc::core::sequence::{build_prototype, coefficients_exact};
use superosc::spectral::{norm_on_window, SpectrumWindow};
use superosc::wigner::{rotation_weak_value, wigner_column, Spin};

/// `(cos u + i a sin u)^n` by repeated squaring in plain complex arithmetic.
fn naive_power(n: usize, a: f64, x: f64) -> Complex64 {
    let u = x / n as f64;
    Complex64::new(u.cos(), a * u.sin()).powu(n as u32)
}

#[test]
fn product_form_matches_complex_power() {
    for n in [1, 2, 7, 30, 101] {
        for a in [0.5, 1.0, 2.0, 3.5] {
            for x in [-3.0, -0.4, 0.0, 1.1, 2.9] {
                let (got, want) = (eval_product(n, a, x).unwrap(), naive_power(n, a, x));
                assert!((got - want).norm() <= 1e-13 * want.norm().max(1.0), "n={n} a={a} x={x}: {got} vs {want}");
            }
        }
    }
}

/// Expands `((1+a)/2 · z + (1−a)/2 · z⁻¹)^n` as a polynomial in `z`, by convolution.
fn expanded_coefficients(n: usize, a: &BigRational) -> Vec<BigRational> {
    let two = BigRational::from_integer(BigInt::from(2));
    let (p, q) = ((BigRational::one() + a) / &two, (BigRational::one() - a) / &two);
    let mut poly = vec![BigRational::one()];
    for _ in 0..n {
        let mut next = vec![BigRational::zero(); poly.len() + 1];
        for (i, c) in poly.iter().enumerate() {
            next[i] += c * &p;
            next[i + 1] += c * &q;
        }
        poly = next;
    }
    poly
}

#[test]
fn coefficients_match_polynomial_expansion() {
    for (num, den) in [(2, 1), (3, 2), (-5, 3), (4, 1)] {
        let a = BigRational::new(BigInt::from(num), BigInt::from(den));
        for n in [1, 4, 9, 17] {
            assert_eq!(coefficients_exact(n, &a).unwrap(), expanded_coefficients(n, &a), "a={a} n={n}");
        }
    }
}

#[test]
fn float_prototype_matches_exact_coefficients() {
    let seq = build_prototype(12, 2.5).unwrap();
    let exact = coefficients_exact(12, &BigRational::new(BigInt::from(5), BigInt::from(2))).unwrap();
    for (c, e) in seq.coeffs().iter().zip(&exact) {
        let e = e.to_f64().unwrap();
        assert!((c - e).abs() <= 1e-15 * e.abs());
    }
}

/// `exp(θ·(J₊ − J₋)/2)|ℓ,ℓ⟩`, components ordered `m′ = −ℓ … ℓ`.
fn rotated_highest_weight(two: u32, theta: f64) -> DVector<f64> {
    let d = two as usize + 1;
    let ell = two as f64 / 2.0;
    let mut generator = DMatrix::<f64>::zeros(d, d);
    for k in 0..d - 1 {
        let m = -ell + k as f64;
        let raise = (ell * (ell + 1.0) - m * (m + 1.0)).sqrt();
        generator[(k + 1, k)] = 0.5 * theta * raise;
        generator[(k, k + 1)] = -0.5 * theta * raise;
    }
    let mut top = DVector::<f64>::zeros(d);
    top[d - 1] = 1.0;
    generator.exp() * top
}

#[test]
fn wigner_column_matches_matrix_exponential() {
    for two in 1..=12 {
        for theta in [0.2, 0.9, 1.6, 2.7] {
            let col = wigner_column(Spin::from_twice(two).unwrap(), theta);
            let oracle = rotated_highest_weight(two, theta);
            for (k, (got, want)) in col.values.iter().zip(oracle.iter()).enumerate() {
                assert!((got - want).abs() <= 1e-12, "2l={two} theta={theta} k={k}: {got} vs {want}");
            }
        }
    }
}

#[test]
fn weak_value_matches_generator_expectation() {
    // Σ d_fin d_in e^{imδ/ℓ} / Σ d_fin d_in over columns rotated by ±θ.
    for two in 1..=8u32 {
        let theta = 0.7;
        let (col_in, col_fin) = (rotated_highest_weight(two, theta), rotated_highest_weight(two, -theta));
        let delta = 0.4;
        let ell = two as f64 / 2.0;
        let (mut num, mut den) = (Complex64::zero(), Complex64::zero());
        for k in 0..=two as usize {
            let m = -ell + k as f64;
            num += col_fin[k] * col_in[k] * Complex64::cis(m * delta / ell);
            den += Complex64::from(col_fin[k] * col_in[k]);
        }
        let got = rotation_weak_value(Spin::from_twice(two).unwrap(), theta, delta).unwrap();
        assert!((got - num / den).norm() <= 1e-12 * got.norm(), "2l={two}: {got} vs {}", num / den);
    }
}

#[test]
fn full_line_norm_matches_brute_force_maximum() {
    for (n, a) in [(3, 1.7), (10, 4.0), (25, 1.2)] {
        let closed = norm_on_window(n, a, SpectrumWindow::FullLine).unwrap();
        let brute = (0..=200_000)
            .map(|i| naive_power(n, a, n as f64 * PI * i as f64 / 200_000.0).norm())
            .fold(0.0, f64::max);
        assert!((closed - brute).abs() <= 1e-9 * closed, "n={n} a={a}: {closed} vs {brute}");
    }
}
