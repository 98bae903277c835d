use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::One;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use superosc::core::product::{error_envelope, eval_product};
use superosc::core::sequence::prototype_moment_identities;
use superosc::io::{parse_bandlimited, parse_observable, parse_spectral_density, parse_state, Grid};
use superosc::spectral::qn_norm;
use superosc::weakvalues::{
    abl_distribution, product_state_weak_value, random_observable, random_state, random_unitary, weak_value, QuantumState,
};
use superosc::wigner::{signed_sum, wigner_column, SignConvention, Spin};

fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm().max(1.0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn weak_values_are_additive(seed in any::<u64>(), d in 2usize..=4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (a, b) = (random_observable(&mut rng, d).unwrap(), random_observable(&mut rng, d).unwrap());
        let (pin, pfin) = (random_state(&mut rng, d).unwrap(), random_state(&mut rng, d).unwrap());
        let wa = weak_value(&a, &pin, &pfin).unwrap();
        let wb = weak_value(&b, &pin, &pfin).unwrap();
        let sum = weak_value(&a.add(&b).unwrap(), &pin, &pfin).unwrap();
        prop_assert!((sum - wa - wb).norm() <= 1e-12 * (wa.norm() + wb.norm()).max(1.0));
    }

    #[test]
    fn weak_values_factorize_on_product_states(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut draw = || (random_observable(&mut rng, 2).unwrap(), random_state(&mut rng, 2).unwrap(), random_state(&mut rng, 2).unwrap());
        let ((a1, in1, fin1), (a2, in2, fin2)) = (draw(), draw());
        let factored = product_state_weak_value(&a1, &a2, &in1, &in2, &fin1, &fin2).unwrap();
        let separate = weak_value(&a1, &in1, &fin1).unwrap() * weak_value(&a2, &in2, &fin2).unwrap();
        let joint = weak_value(&a1.tensor(&a2), &in1.tensor(&in2), &fin1.tensor(&fin2)).unwrap();
        prop_assert!(rel(factored, separate) <= 1e-12);
        prop_assert!(rel(joint, separate) <= 1e-12);
    }

    #[test]
    fn abl_probabilities_sum_to_one(seed in any::<u64>(), d in 3usize..=4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_observable(&mut rng, d).unwrap();
        let (pin, pfin) = (random_state(&mut rng, d).unwrap(), random_state(&mut rng, d).unwrap());
        let (before, after) = (random_unitary(&mut rng, d).unwrap(), random_unitary(&mut rng, d).unwrap());
        let dist = abl_distribution(&a, &pin, &pfin, &before, &after).unwrap();
        let total: f64 = dist.iter().map(|p| p.1).sum();
        prop_assert!((total - 1.0).abs() <= 1e-10);
        prop_assert!(dist.iter().all(|p| (0.0..=1.0 + 1e-12).contains(&p.1)));
        prop_assert!(dist.windows(2).all(|w| w[0].0 < w[1].0));
    }

    #[test]
    fn eigenstates_give_their_eigenvalue(seed in any::<u64>(), d in 2usize..=4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_observable(&mut rng, d).unwrap();
        for space in a.eigenspaces() {
            let column = space.projector.column(0).into_owned();
            let psi = QuantumState::new(column).unwrap();
            let w = weak_value(&a, &psi, &psi).unwrap();
            prop_assert!((w - space.value).norm() <= 1e-12 * space.value.abs().max(1.0));
        }
    }

    #[test]
    fn wigner_columns_are_unit_vectors(two in 1u32..=40, theta in 0.0f64..std::f64::consts::PI) {
        let col = wigner_column(Spin::from_twice(two).unwrap(), theta);
        prop_assert!((col.norm_squared() - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn signed_sum_is_a_power_of_cosine(two in 1u32..=20, theta in 0.0f64..std::f64::consts::PI) {
        let s = signed_sum(Spin::from_twice(two).unwrap(), theta, SignConvention::EllMinusMPrime).unwrap();
        prop_assert!((s - theta.cos().powi(two as i32)).abs() <= 1e-12);
    }

    #[test]
    fn qn_norm_does_not_grow_with_gamma(n in 10usize..5000, a in 1.05f64..4.0, g in 2.05f64..9.5, dg in 0.01f64..0.5) {
        let lo = qn_norm(n, a, g).unwrap();
        let hi = qn_norm(n, a, g + dg).unwrap();
        prop_assert!(hi <= lo * (1.0 + 1e-14));
    }

    #[test]
    fn moment_identities_hold_for_rational_a(n in 1usize..=40, num in -12i64..=12, den in 1i64..=6) {
        let a = BigRational::new(BigInt::from(num), BigInt::from(den));
        let (sum, first) = prototype_moment_identities(n, &a).unwrap();
        prop_assert_eq!(sum, BigRational::one());
        prop_assert_eq!(first, a);
    }

    #[test]
    fn envelope_is_the_distance_to_the_target(n in 2usize..400, a in 1.0f64..4.0, x in -5.0f64..5.0) {
        let envelope = error_envelope(n, a, x).unwrap();
        let direct = (eval_product(n, a, x).unwrap() - Complex64::cis(a * x)).norm();
        prop_assert!((envelope - direct).abs() <= 1e-12 * envelope + 8.0 * f64::EPSILON, "{envelope} vs {direct}");
    }

    #[test]
    fn grids_round_trip_through_text(start in -1e6f64..1e6, width in 0.0f64..1e6, count in 1usize..10_000) {
        let g = Grid::new(start, start + width, count).unwrap();
        let back: Grid = format!("{}:{}:{}", g.start, g.stop, g.count).parse().unwrap();
        prop_assert_eq!(back, g);
        let pts: Vec<f64> = g.points().collect();
        prop_assert_eq!(pts.len(), count);
        prop_assert!(pts.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn parsers_reject_garbage_without_panicking(text in "[0-9eE.,:# +\\-\n\t]{0,120}|\\PC{0,60}") {
        let _ = text.parse::<Grid>();
        let _ = parse_bandlimited(&text);
        let _ = parse_spectral_density(&text);
        let _ = parse_state(&text);
        let _ = parse_observable(&text);
    }
}
