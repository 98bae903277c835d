use num_complex::Complex64;

use crate::error::{domain, Result};

fn check_width(delta0: f64) -> Result<()> {
    if !(delta0 > 0.0 && delta0.is_finite()) {
        return Err(domain(format!("packet width Δ0 = {delta0} must be positive")));
    }
    Ok(())
}

/// Free evolution (`i∂ₜφ = −∂ₓ²φ`) of the chirped gaussian
/// `exp(−(x − x0)²/(2Δ0²) + i k0 x)`.
pub fn gaussian_packet(x: f64, t: f64, x0: f64, k0: f64, delta0: f64) -> Result<Complex64> {
    check_width(delta0)?;
    let d2 = delta0 * delta0;
    let width = Complex64::new(d2, 2.0 * t);
    let amp = (width / d2).sqrt().inv();
    let shift = x - x0 - 2.0 * k0 * t;
    let exponent = Complex64::new(0.0, k0 * x - k0 * k0 * t) - shift * shift / (2.0 * width);
    Ok(amp * exponent.exp())
}

/// Position of the modulus peak at time `t`.
pub fn packet_center(x0: f64, k0: f64, t: f64) -> f64 {
    x0 + 2.0 * k0 * t
}

/// Width `Δ(t)` with `|φ|² ∝ exp(−(x − center)²/Δ(t)²)`.
pub fn packet_spread(delta0: f64, t: f64) -> Result<f64> {
    check_width(delta0)?;
    Ok((delta0 * delta0 + 4.0 * t * t / (delta0 * delta0)).sqrt())
}

/// `∫|φ|² dx = √π·Δ0`, independent of time.
pub fn packet_norm_squared(delta0: f64) -> Result<f64> {
    check_width(delta0)?;
    Ok(std::f64::consts::PI.sqrt() * delta0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn initial_chirp() {
        let (x, x0, k0, d) = (0.7, 0.2, 1.5, 0.8);
        let got = gaussian_packet(x, 0.0, x0, k0, d).unwrap();
        let want = Complex64::new(-(x - x0) * (x - x0) / (2.0 * d * d), k0 * x).exp();
        assert!((got - want).norm() < 1e-15);
    }

    #[test]
    fn modulus_is_a_moving_gaussian() {
        let (x0, k0, d, t) = (0.1, 1.0, 0.6, 0.5);
        assert_eq!(packet_center(x0, k0, t), 1.1);
        let s = packet_spread(d, t).unwrap();
        for x in [-1.0, 0.4, 1.1, 2.5] {
            let m2 = gaussian_packet(x, t, x0, k0, d).unwrap().norm_sqr();
            let shape = (d / s) * (-(x - 1.1) * (x - 1.1) / (s * s)).exp();
            assert!((m2 - shape).abs() < 1e-14, "x = {x}");
        }
    }

    #[test]
    fn rejects_non_positive_width() {
        assert!(gaussian_packet(0.0, 0.0, 0.0, 0.0, 0.0).is_err());
        assert!(packet_spread(-1.0, 0.0).is_err());
    }
}
