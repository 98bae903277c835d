//! Thin extended-precision layer over `astro-float`.

use astro_float::{BigFloat, Consts, RoundingMode, Sign};
use num_complex::Complex64;

const RM: RoundingMode = RoundingMode::ToEven;

/// Working precision plus the constant cache needed by transcendental functions.
pub struct MpContext {
    bits: usize,
    consts: Consts,
}

impl std::fmt::Debug for MpContext {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("MpContext").field("bits", &self.bits).finish()
    }
}

impl MpContext {
    pub fn new(bits: usize) -> Self {
        let consts = Consts::new().expect("astro-float constant cache allocation");
        Self { bits: bits.max(64), consts }
    }

    pub fn bits(&self) -> usize {
        self.bits
    }

    pub fn real(&self, x: f64) -> BigFloat {
        BigFloat::from_f64(x, self.bits)
    }

    pub fn int(&self, k: i64) -> BigFloat {
        BigFloat::from_i64(k, self.bits)
    }

    pub fn zero(&self) -> MpComplex {
        MpComplex { re: self.real(0.0), im: self.real(0.0) }
    }

    pub fn complex(&self, z: Complex64) -> MpComplex {
        MpComplex { re: self.real(z.re), im: self.real(z.im) }
    }

    pub fn add(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.add(b, self.bits, RM)
    }

    pub fn sub(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.sub(b, self.bits, RM)
    }

    pub fn mul(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.mul(b, self.bits, RM)
    }

    pub fn div(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.div(b, self.bits, RM)
    }

    pub fn powi(&self, a: &BigFloat, n: usize) -> BigFloat {
        a.powi(n, self.bits, RM)
    }

    pub fn cadd(&self, a: &MpComplex, b: &MpComplex) -> MpComplex {
        MpComplex { re: self.add(&a.re, &b.re), im: self.add(&a.im, &b.im) }
    }

    pub fn csub(&self, a: &MpComplex, b: &MpComplex) -> MpComplex {
        MpComplex { re: self.sub(&a.re, &b.re), im: self.sub(&a.im, &b.im) }
    }

    pub fn cmul(&self, a: &MpComplex, b: &MpComplex) -> MpComplex {
        let rr = self.mul(&a.re, &b.re);
        let ii = self.mul(&a.im, &b.im);
        let ri = self.mul(&a.re, &b.im);
        let ir = self.mul(&a.im, &b.re);
        MpComplex { re: self.sub(&rr, &ii), im: self.add(&ri, &ir) }
    }

    pub fn cscale(&self, a: &MpComplex, s: &BigFloat) -> MpComplex {
        MpComplex { re: self.mul(&a.re, s), im: self.mul(&a.im, s) }
    }

    /// `exp(z)` for a complex argument.
    pub fn cexp(&mut self, z: &MpComplex) -> MpComplex {
        let bits = self.bits;
        let m = z.re.exp(bits, RM, &mut self.consts);
        let c = z.im.cos(bits, RM, &mut self.consts);
        let s = z.im.sin(bits, RM, &mut self.consts);
        MpComplex { re: self.mul(&m, &c), im: self.mul(&m, &s) }
    }

    pub fn pi(&mut self) -> BigFloat {
        self.consts.pi(self.bits, RM)
    }

    pub fn exp(&mut self, x: &BigFloat) -> BigFloat {
        x.exp(self.bits, RM, &mut self.consts)
    }

    pub fn ln(&mut self, x: &BigFloat) -> BigFloat {
        x.ln(self.bits, RM, &mut self.consts)
    }

    pub fn cos(&mut self, x: &BigFloat) -> BigFloat {
        x.cos(self.bits, RM, &mut self.consts)
    }

    pub fn sin(&mut self, x: &BigFloat) -> BigFloat {
        x.sin(self.bits, RM, &mut self.consts)
    }

    pub fn sqrt(&self, x: &BigFloat) -> BigFloat {
        x.sqrt(self.bits, RM)
    }

    pub fn neg(&self, x: &BigFloat) -> BigFloat {
        x.neg()
    }

    pub fn cneg(&self, z: &MpComplex) -> MpComplex {
        MpComplex { re: z.re.neg(), im: z.im.neg() }
    }

    /// `i·z`.
    pub fn times_i(&self, z: &MpComplex) -> MpComplex {
        MpComplex { re: z.im.neg(), im: z.re.clone() }
    }

    pub fn from_real(&self, re: BigFloat) -> MpComplex {
        MpComplex { re, im: self.real(0.0) }
    }

    /// Horner evaluation of `Σ q_m k^m` at a real point.
    pub fn cpoly(&self, q: &[MpComplex], k: &BigFloat) -> MpComplex {
        let mut acc = self.zero();
        for c in q.iter().rev() {
            acc = self.cadd(&self.cscale(&acc, k), c);
        }
        acc
    }
}

/// Complex number with extended-precision parts.
#[derive(Debug, Clone)]
pub struct MpComplex {
    pub re: BigFloat,
    pub im: BigFloat,
}

impl MpComplex {
    pub fn to_c64(&self) -> Complex64 {
        Complex64::new(to_f64(&self.re), to_f64(&self.im))
    }
}

/// Round an extended-precision value to the nearest `f64` (up to one ulp).
pub fn to_f64(x: &BigFloat) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    if x.is_inf_pos() {
        return f64::INFINITY;
    }
    if x.is_inf_neg() {
        return f64::NEG_INFINITY;
    }
    let Some((words, _, sign, exponent, _)) = x.as_raw_parts() else {
        return f64::NAN;
    };
    let Some(&top) = words.last() else {
        return 0.0;
    };
    if top == 0 {
        return 0.0;
    }
    // The mantissa reads 0.b1b2... with b1 = 1 in the top word; round the
    // leading 53 bits to nearest-even using the rest as guard and sticky bits.
    let sticky = words[..words.len() - 1].iter().any(|&w| w != 0);
    let mut mant = top >> 11;
    let rest = top & 0x7ff;
    if rest > 0x400 || (rest == 0x400 && (sticky || mant & 1 == 1)) {
        mant += 1;
    }
    let magnitude = ldexp(mant as f64, exponent - 53);
    match sign {
        Sign::Neg => -magnitude,
        Sign::Pos => magnitude,
    }
}

fn ldexp(x: f64, e: i32) -> f64 {
    let half = e / 2;
    x * 2f64.powi(half) * 2f64.powi(e - half)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f64_round_trip_is_exact() {
        let ctx = MpContext::new(256);
        for x in [1.0, -2.5, 3.0e-300, 1.7e300, 0.1, -123456.789, 0.0] {
            assert_eq!(to_f64(&ctx.real(x)), x, "{x}");
        }
    }

    #[test]
    fn complex_exponential_matches_f64() {
        let mut ctx = MpContext::new(200);
        let z = Complex64::new(0.3, -1.7);
        let w = ctx.cexp(&ctx.complex(z)).to_c64();
        assert!((w - z.exp()).norm() < 1e-15);
    }

    #[test]
    fn cancellation_is_resolved_at_high_precision() {
        let ctx = MpContext::new(300);
        let big = ctx.powi(&ctx.real(2.0), 200);
        let sum = ctx.sub(&ctx.add(&big, &ctx.real(0.75)), &big);
        assert_eq!(to_f64(&sum), 0.75);
    }
}
