use std::f64::consts::FRAC_PI_8;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::numeric::quad::trapezoid_uniform;

/// Gaussian pointer of width `Δ` coupled with strength `g0`, tabulated on a uniform grid.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PointerModel {
    delta: f64,
    g0: f64,
    lo: f64,
    hi: f64,
    count: usize,
}

impl PointerModel {
    pub fn new(delta: f64, g0: f64, lo: f64, hi: f64, count: usize) -> Result<Self> {
        if !(delta > 0.0 && delta.is_finite()) {
            return Err(domain(format!("pointer width Δ = {delta} must be positive")));
        }
        if !(hi > lo) || count < 3 {
            return Err(domain(format!("grid [{lo}, {hi}] with {count} points is empty")));
        }
        Ok(Self { delta, g0, lo, hi, count })
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn g0(&self) -> f64 {
        self.g0
    }

    pub fn step(&self) -> f64 {
        (self.hi - self.lo) / (self.count - 1) as f64
    }

    pub fn grid(&self) -> impl Iterator<Item = f64> + '_ {
        let step = self.step();
        (0..self.count).map(move |i| self.lo + i as f64 * step)
    }

    fn normalized<F: Fn(f64) -> f64>(&self, raw: F) -> Vec<(f64, f64)> {
        let values: Vec<f64> = self.grid().map(&raw).collect();
        let mass = trapezoid_uniform(&values, self.step());
        self.grid().zip(values).map(|(p, v)| (p, v / mass)).collect()
    }
}

/// Weighting of the terms of the `N`-spin pointer sum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PointerWeights {
    /// `Σ_{i=1}^N (−1)^i c^{2(N−i)} s^{2i} e^{−(Q − g0(2N−i)/N)²/2Δ²}`, no combinatorial factors.
    Literal,
    /// The binomial expansion of the product state, `Σ_{i=0}^N (−1)^i binom(N, i) c^{2(N−i)} s^{2i}`
    /// with peaks at the eigenvalues `g0(N − 2i)/N` of the mean spin.
    Binomial,
}

fn single_raw(model: &PointerModel, p: f64) -> f64 {
    let (c2, s2) = (FRAC_PI_8.cos().powi(2), FRAC_PI_8.sin().powi(2));
    let d2 = model.delta * model.delta;
    let amp = c2 * (-(p - model.g0).powi(2) / d2).exp() - s2 * (-(p + model.g0).powi(2) / d2).exp();
    amp * amp
}

fn binomial_f64(n: usize, i: usize) -> f64 {
    (0..i).fold(1.0, |acc, j| acc * (n - j) as f64 / (j + 1) as f64)
}

/// Signed weight and center of term `i`.
fn ensemble_term(n: usize, i: usize, weights: PointerWeights) -> (f64, f64) {
    let (c2, s2) = (FRAC_PI_8.cos().powi(2), FRAC_PI_8.sin().powi(2));
    let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
    let base = sign * c2.powi((n - i) as i32) * s2.powi(i as i32);
    let (nf, i_f) = (n as f64, i as f64);
    match weights {
        PointerWeights::Literal => (base, (2.0 * nf - i_f) / nf),
        PointerWeights::Binomial => (base * binomial_f64(n, i), (nf - 2.0 * i_f) / nf),
    }
}

fn ensemble_raw(model: &PointerModel, n: usize, weights: PointerWeights, q: f64) -> f64 {
    let two_d2 = 2.0 * model.delta * model.delta;
    let first = match weights {
        PointerWeights::Literal => 1,
        PointerWeights::Binomial => 0,
    };
    let amp: f64 = (first..=n)
        .map(|i| {
            let (w, center) = ensemble_term(n, i, weights);
            w * (-(q - model.g0 * center).powi(2) / two_d2).exp()
        })
        .sum();
    amp * amp
}

/// Pointer positions at which the strong-coupling peaks sit.
pub fn ensemble_eigenvalues(model: &PointerModel, n: usize, weights: PointerWeights) -> Vec<f64> {
    let first = if weights == PointerWeights::Literal { 1 } else { 0 };
    (first..=n).map(|i| model.g0 * ensemble_term(n, i, weights).1).collect()
}

/// Single-spin pointer density on the model grid, normalized by the trapezoid rule.
pub fn pointer_grid_single(model: &PointerModel) -> Vec<(f64, f64)> {
    model.normalized(|p| single_raw(model, p))
}

/// `N²[cos²(π/8)e^{−(P−g0)²/Δ²} − sin²(π/8)e^{−(P+g0)²/Δ²}]²` with grid normalization.
pub fn pointer_distribution_single(model: &PointerModel, p: f64) -> f64 {
    let values: Vec<f64> = model.grid().map(|x| single_raw(model, x)).collect();
    single_raw(model, p) / trapezoid_uniform(&values, model.step())
}

/// `N`-spin pointer density on the model grid, normalized by the trapezoid rule.
pub fn pointer_grid_ensemble(model: &PointerModel, n: usize, weights: PointerWeights) -> Result<Vec<(f64, f64)>> {
    if n == 0 {
        return Err(domain("the ensemble needs at least one particle"));
    }
    Ok(model.normalized(|q| ensemble_raw(model, n, weights, q)))
}

/// `N²(Σ_i w_i e^{−(Q − g0 q_i)²/2Δ²})²` with weights and centers set by [`PointerWeights`].
pub fn pointer_distribution_ensemble(model: &PointerModel, n: usize, weights: PointerWeights, q: f64) -> Result<f64> {
    if n == 0 {
        return Err(domain("the ensemble needs at least one particle"));
    }
    let values: Vec<f64> = model.grid().map(|x| ensemble_raw(model, n, weights, x)).collect();
    Ok(ensemble_raw(model, n, weights, q) / trapezoid_uniform(&values, model.step()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::SQRT_2;

    fn argmax(values: &[(f64, f64)]) -> f64 {
        values.iter().copied().fold((0.0, f64::NEG_INFINITY), |best, v| if v.1 > best.1 { v } else { best }).0
    }

    fn local_maxima(values: &[(f64, f64)]) -> Vec<f64> {
        values.windows(3).filter(|w| w[1].1 > w[0].1 && w[1].1 > w[2].1).map(|w| w[1].0).collect()
    }

    #[test]
    fn narrow_pointer_resolves_eigenvalues() {
        let model = PointerModel::new(0.1, 1.0, -3.0, 3.0, 6001).unwrap();
        let peaks = local_maxima(&pointer_grid_single(&model));
        assert!(peaks.iter().any(|p| (p - 1.0).abs() < 0.02));
        assert!(peaks.iter().any(|p| (p + 1.0).abs() < 0.02));
    }

    #[test]
    fn wide_pointer_reads_the_weak_value() {
        let model = PointerModel::new(30.0, 1.0, -200.0, 200.0, 40001).unwrap();
        assert!((argmax(&pointer_grid_single(&model)) - SQRT_2).abs() < 0.02);
    }

    #[test]
    fn normalization() {
        let model = PointerModel::new(0.25, 1.0, -2.0, 4.0, 3001).unwrap();
        for w in [PointerWeights::Literal, PointerWeights::Binomial] {
            let g = pointer_grid_ensemble(&model, 20, w).unwrap();
            let mass = trapezoid_uniform(&g.iter().map(|v| v.1).collect::<Vec<_>>(), model.step());
            assert!((mass - 1.0).abs() < 1e-12);
        }
        let s: Vec<f64> = pointer_grid_single(&model).iter().map(|v| v.1).collect();
        assert!((trapezoid_uniform(&s, model.step()) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn ensemble_argmax_near_weak_value() {
        let model = PointerModel::new(0.25, 1.0, -1.0, 4.0, 5001).unwrap();
        let g = pointer_grid_ensemble(&model, 20, PointerWeights::Binomial).unwrap();
        assert!((argmax(&g) - SQRT_2).abs() < 0.1, "{}", argmax(&g));
    }

    #[test]
    fn strong_coupling_peaks_sit_on_eigenvalues() {
        let model = PointerModel::new(0.05, 1.0, -2.0, 3.0, 50001).unwrap();
        for w in [PointerWeights::Literal, PointerWeights::Binomial] {
            let eig = ensemble_eigenvalues(&model, 20, w);
            let peak = argmax(&pointer_grid_ensemble(&model, 20, w).unwrap());
            assert!(eig.iter().any(|e| (e - peak).abs() < 0.02), "{w:?}: {peak}");
        }
    }

    #[test]
    fn literal_single_particle_is_one_gaussian() {
        let model = PointerModel::new(0.3, 1.0, -2.0, 4.0, 6001).unwrap();
        let g = pointer_grid_ensemble(&model, 1, PointerWeights::Literal).unwrap();
        assert!((argmax(&g) - 1.0).abs() < 1e-3);
        assert_eq!(local_maxima(&g).len(), 1);
    }

    #[test]
    fn binomial_single_particle_matches_single_spin_with_doubled_width() {
        let delta = 0.4;
        let model = PointerModel::new(delta, 1.0, -4.0, 4.0, 4001).unwrap();
        let single = pointer_grid_single(&PointerModel::new(delta * SQRT_2, 1.0, -4.0, 4.0, 4001).unwrap());
        let ens = pointer_grid_ensemble(&model, 1, PointerWeights::Binomial).unwrap();
        for (a, b) in single.iter().zip(&ens) {
            assert!((a.1 - b.1).abs() < 1e-10);
        }
    }
}
