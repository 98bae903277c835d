use std::f64::consts::PI;

use serde::Serialize;

use super::product::{check_order, envelope_unchecked, error_envelope};
use crate::error::{domain, Result};
use crate::numeric::search::grid_then_golden;

/// Pointwise, leading-order and interval-wide size of `F_n(x, a) − e^{iax}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ErrorReport {
    pub pointwise: f64,
    pub asymptotic: f64,
    pub sup_on_interval: f64,
}

/// `(a² − 1)·x² / (2n)`, the first term of the large-`n` expansion of `E_n(x, a)`.
pub fn leading_order_error(n: usize, a: f64, x: f64) -> f64 {
    (a * a - 1.0).abs() * x * x / (2.0 * n as f64)
}

/// `|x|·sqrt(3(a² − 1)/2) / n`, the linear-in-`|x|` rate quoted for the prototype.
pub fn linear_rate_estimate(n: usize, a: f64, x: f64) -> f64 {
    x.abs() * (1.5 * (a * a - 1.0)).abs().sqrt() / n as f64
}

/// Number of grid points used by [`sup_error`].
pub fn sup_grid_points(n: usize, m: f64) -> usize {
    1024usize.max(32 * (m * n as f64).ceil() as usize)
}

/// `ε(n, a) = max_{|x| ≤ M} E_n(x, a)`; requires `n > 2M/π`.
pub fn sup_error(n: usize, a: f64, m: f64) -> Result<f64> {
    check_order(n)?;
    if !(m > 0.0) {
        return Err(domain(format!("M = {m} must be positive")));
    }
    if n as f64 <= 2.0 * m / PI {
        return Err(domain(format!("n = {n} must exceed 2M/π = {}", 2.0 * m / PI)));
    }
    if a.abs() == 1.0 {
        return Ok(0.0);
    }
    Ok(sup_unchecked(n, a, m))
}

pub(crate) fn sup_unchecked(n: usize, a: f64, m: f64) -> f64 {
    grid_then_golden(|x| envelope_unchecked(n, a, x), -m, m, sup_grid_points(n, m)).value
}

/// Full report at `x` with the supremum taken over `[−M, M]`.
pub fn error_report(n: usize, a: f64, x: f64, m: f64) -> Result<ErrorReport> {
    if x.abs() > m {
        return Err(domain(format!("x = {x} lies outside [−{m}, {m}]")));
    }
    let pointwise = error_envelope(n, a, x)?;
    let sup = sup_error(n, a, m)?.max(pointwise);
    Ok(ErrorReport { pointwise, asymptotic: leading_order_error(n, a, x), sup_on_interval: sup })
}

/// Sup errors along a schedule and the first `n` after which they never increase.
pub fn sup_error_schedule(ns: &[usize], a: f64, m: f64) -> Result<(Vec<f64>, Option<usize>)> {
    let values = ns.iter().map(|&n| sup_error(n, a, m)).collect::<Result<Vec<_>>>()?;
    let n0 = (0..values.len())
        .find(|&i| values[i..].windows(2).all(|w| w[1] <= w[0]))
        .map(|i| ns[i]);
    Ok((values, n0))
}
