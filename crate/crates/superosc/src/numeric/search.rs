//! Maximisation of a continuous function on an interval: dense grid, then golden section.

const INV_PHI: f64 = 0.618_033_988_749_894_8;

/// Location and value of the maximum of `f` on `[lo, hi]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Peak {
    pub x: f64,
    pub value: f64,
}

/// Samples `f` on `points` equally spaced nodes and refines the best bracket.
pub fn grid_then_golden<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, points: usize) -> Peak {
    let points = points.max(2);
    let step = (hi - lo) / (points - 1) as f64;
    let node = |i: usize| if i + 1 == points { hi } else { lo + i as f64 * step };
    let (best_i, best_v) = (0..points)
        .map(|i| (i, f(node(i))))
        .fold((0, f64::NEG_INFINITY), |acc, (i, v)| if v > acc.1 { (i, v) } else { acc });
    let left = node(best_i.saturating_sub(1));
    let right = node((best_i + 1).min(points - 1));
    let refined = golden_max(&f, left, right, 1e-14 * (hi - lo).abs().max(1.0));
    if refined.value > best_v {
        refined
    } else {
        Peak { x: node(best_i), value: best_v }
    }
}

/// Golden-section search for a local maximum in `[a, b]`.
pub fn golden_max<F: Fn(f64) -> f64>(f: &F, mut a: f64, mut b: f64, tol: f64) -> Peak {
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    for _ in 0..200 {
        if (b - a).abs() <= tol {
            break;
        }
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    if fc > fd {
        Peak { x: c, value: fc }
    } else {
        Peak { x: d, value: fd }
    }
}
