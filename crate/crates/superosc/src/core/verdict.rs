use num_complex::Complex64;
use serde::Serialize;

use super::envelope::sup_unchecked;
use super::policy::PrecisionPolicy;
use super::sequence::{eval_sum, SuperoscSequence};
use crate::error::Result;
use crate::numeric::search::grid_then_golden;

/// Outcome of a numerical superoscillation test.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Outcome {
    Yes,
    No,
    Inconclusive,
}

/// Verdict together with the measurements that produced it.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Verdict {
    pub outcome: Outcome,
    /// Every `|k_j(n)|` stayed within the frequency bound.
    pub band_limited: bool,
    /// `|g(a)|` exceeds the frequency bound.
    pub target_outside_band: bool,
    /// `(n, sup_{|x| ≤ M} |Y_n(x) − e^{i g x}|)` along the schedule.
    pub sup_errors: Vec<(usize, f64)>,
    pub reason: String,
}

const GENERIC_GRID: usize = 1024;

/// Tests whether `build(n)` approaches `e^{i g x}` on `[−M, M]` with band-limited frequencies.
///
/// The answer is `Yes` when the frequencies stay inside the band, the target
/// frequency is outside it, the sup error strictly decreases over the last two
/// schedule entries and ends below `tol`.  A sup error that grows along the
/// whole schedule is `No`; anything else is `Inconclusive`.
pub fn check_superoscillation<B>(build: B, target_g: f64, alpha_bound: f64, m: f64, tol: f64, schedule: &[usize]) -> Result<Verdict>
where
    B: Fn(usize) -> Result<SuperoscSequence>,
{
    let mut band_limited = true;
    let mut sup_errors = Vec::with_capacity(schedule.len());
    for &n in schedule {
        let seq = build(n)?;
        band_limited &= seq.freqs().iter().all(|k| k.abs() <= alpha_bound);
        sup_errors.push((n, sup_distance(&seq, target_g, m)?));
    }
    let target_outside_band = target_g.abs() > alpha_bound;
    let errs: Vec<f64> = sup_errors.iter().map(|e| e.1).collect();
    let (outcome, reason) = if !band_limited {
        (Outcome::No, "a frequency leaves the band".to_string())
    } else if !target_outside_band {
        (Outcome::No, format!("|g(a)| = {} does not exceed the band limit {alpha_bound}", target_g.abs()))
    } else if errs.len() >= 2 && errs.windows(2).all(|w| w[1] > w[0]) {
        (Outcome::No, "sup error grows along the schedule".to_string())
    } else {
        let last = errs.last().copied().unwrap_or(f64::INFINITY);
        let decreasing = errs.len() < 2 || errs[errs.len() - 1] < errs[errs.len() - 2];
        if decreasing && last < tol {
            (Outcome::Yes, format!("sup error {last:e} below {tol:e}"))
        } else {
            (Outcome::Inconclusive, format!("sup error plateaus at {last:e} (target {tol:e})"))
        }
    };
    Ok(Verdict { outcome, band_limited, target_outside_band, sup_errors, reason })
}

fn sup_distance(seq: &SuperoscSequence, g: f64, m: f64) -> Result<f64> {
    if seq.is_prototype() && g == seq.a() {
        return Ok(sup_unchecked(seq.n(), seq.a(), m));
    }
    let policy = PrecisionPolicy::auto_for_loss(seq.loss_bits());
    let values = std::cell::RefCell::new(None);
    let peak = grid_then_golden(
        |x| match eval_sum(seq, x, &policy) {
            Ok(v) => (v - Complex64::cis(g * x)).norm(),
            Err(e) => {
                values.borrow_mut().get_or_insert(e);
                f64::NAN
            }
        },
        -m,
        m,
        GENERIC_GRID,
    );
    match values.into_inner() {
        Some(e) => Err(e),
        None => Ok(peak.value),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::core::sequence::{build_generalized, build_prototype, coefficient};

    #[test]
    fn prototype_with_a_four_superoscillates() {
        let v = check_superoscillation(|n| build_prototype(n, 4.0), 4.0, 1.0, 1.0, 0.05, &[100, 400, 1600]).unwrap();
        assert_eq!(v.outcome, Outcome::Yes, "{v:?}");
    }

    #[test]
    fn target_inside_band_is_rejected() {
        let v = check_superoscillation(|n| build_prototype(n, 0.5), 0.5, 1.0, 1.0, 0.05, &[50, 100]).unwrap();
        assert_eq!(v.outcome, Outcome::No);
        assert!(!v.target_outside_band);
    }

    #[test]
    fn unscaled_powers_are_not_band_limited() {
        let build = |n: usize| build_generalized(|j, n| n as f64 - 2.0 * j as f64, |j, n, a| coefficient(n, j, a).unwrap(), n, 2.0);
        let v = check_superoscillation(build, 2.0, 1.0, 1.0, 0.05, &[4, 8]).unwrap();
        assert_eq!(v.outcome, Outcome::No);
        assert!(!v.band_limited);
    }
}
