use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Arithmetic contract for sums whose terms cancel heavily.
///
/// The prototype binomial sum has condition number `Σ|C_j| = max(|a|, 1)^n`,
/// so an O(1) result computed from terms of size `a^n` loses `n·log2(a)`
/// bits.  Extended mode must supply those bits plus 64 bits of headroom;
/// machine mode delivers 53 bits and is accepted only when at least
/// [`MACHINE_TARGET_BITS`] survive the cancellation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "kebab-case")]
pub enum PrecisionPolicy {
    MachineCompensated,
    Extended { significand_bits: u32 },
}

/// Significand width of an IEEE double.
pub const MACHINE_BITS: u64 = 53;
/// Bits of headroom demanded in extended mode on top of the cancellation loss.
pub const EXTENDED_HEADROOM_BITS: u64 = 64;
/// Bits that must survive cancellation for a machine-precision sum (about 1e-10).
pub const MACHINE_TARGET_BITS: u64 = 34;

impl PrecisionPolicy {
    pub fn available_bits(&self) -> u64 {
        match self {
            Self::MachineCompensated => MACHINE_BITS,
            Self::Extended { significand_bits } => u64::from(*significand_bits),
        }
    }

    /// Significand bits this mode needs when `loss_bits` are cancelled away.
    pub fn required_bits(&self, loss_bits: u64) -> u64 {
        let headroom = match self {
            Self::MachineCompensated => MACHINE_TARGET_BITS,
            Self::Extended { .. } => EXTENDED_HEADROOM_BITS,
        };
        loss_bits + headroom
    }

    pub fn check(&self, loss_bits: u64) -> Result<()> {
        let required = self.required_bits(loss_bits);
        let available = self.available_bits();
        if available < required {
            Err(Error::PrecisionViolation { required, available })
        } else {
            Ok(())
        }
    }

    /// Extended policy that exactly meets the budget of the prototype `(n, a)`.
    pub fn auto(n: usize, a: f64) -> Self {
        Self::auto_for_loss(prototype_loss_bits(n, a))
    }

    pub fn auto_for_loss(loss_bits: u64) -> Self {
        let bits = loss_bits + EXTENDED_HEADROOM_BITS;
        Self::Extended { significand_bits: u32::try_from(bits).unwrap_or(u32::MAX) }
    }

    pub fn is_extended(&self) -> bool {
        matches!(self, Self::Extended { .. })
    }
}

/// `ceil(log2 Σ|c_j|)`, clamped at zero, for an arbitrary coefficient list.
pub fn loss_bits_of(coeffs: &[f64]) -> u64 {
    let total: f64 = coeffs.iter().map(|c| c.abs()).sum();
    if total <= 1.0 {
        0
    } else {
        total.log2().ceil() as u64
    }
}

/// `ceil(n·log2 max(|a|, 1))`, the bits cancelled by the prototype sum.
pub fn prototype_loss_bits(n: usize, a: f64) -> u64 {
    (n as f64 * a.abs().max(1.0).log2()).ceil() as u64
}

/// `ceil(n·log2 max(|a|,1)) + 64`.
pub fn prototype_required_bits(n: usize, a: f64) -> u64 {
    prototype_loss_bits(n, a) + EXTENDED_HEADROOM_BITS
}
