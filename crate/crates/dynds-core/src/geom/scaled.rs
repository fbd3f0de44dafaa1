use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// Exact coordinate `raw / scale`.
///
/// Every structure fixes one scale at construction. Ordering is only
/// meaningful between values of the same scale; it compares `raw` first and
/// falls back to `scale` so that the order stays total.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ScaledInt {
    raw: i64,
    scale: i64,
}

impl ScaledInt {
    pub fn new(raw: i64, scale: i64) -> Result<Self> {
        if scale <= 0 {
            return Err(Error::InvalidArgument(format!("scale must be positive, got {scale}")));
        }
        Ok(Self { raw, scale })
    }

    /// The integer `value`, expressed at `scale`.
    pub fn from_int(value: i64, scale: i64) -> Result<Self> {
        let raw = value.checked_mul(scale).ok_or(Error::Overflow)?;
        Self::new(raw, scale)
    }

    pub fn raw(self) -> i64 {
        self.raw
    }

    pub fn scale(self) -> i64 {
        self.scale
    }

    fn same_scale(self, other: Self) -> Result<()> {
        if self.scale != other.scale {
            return Err(Error::ScaleMismatch { expected: self.scale, got: other.scale });
        }
        Ok(())
    }

    pub fn checked_add(self, other: Self) -> Result<Self> {
        self.same_scale(other)?;
        let raw = self.raw.checked_add(other.raw).ok_or(Error::Overflow)?;
        Ok(Self { raw, scale: self.scale })
    }

    pub fn checked_sub(self, other: Self) -> Result<Self> {
        self.same_scale(other)?;
        let raw = self.raw.checked_sub(other.raw).ok_or(Error::Overflow)?;
        Ok(Self { raw, scale: self.scale })
    }

    pub fn checked_neg(self) -> Result<Self> {
        let raw = self.raw.checked_neg().ok_or(Error::Overflow)?;
        Ok(Self { raw, scale: self.scale })
    }

    /// Multiply by an integer factor.
    pub fn checked_mul_int(self, k: i64) -> Result<Self> {
        let raw = self.raw.checked_mul(k).ok_or(Error::Overflow)?;
        Ok(Self { raw, scale: self.scale })
    }

    /// Compare two values of the same scale.
    pub fn cmp_exact(self, other: Self) -> Result<Ordering> {
        self.same_scale(other)?;
        Ok(self.raw.cmp(&other.raw))
    }
}

impl PartialOrd for ScaledInt {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ScaledInt {
    fn cmp(&self, other: &Self) -> Ordering {
        self.raw.cmp(&other.raw).then(self.scale.cmp(&other.scale))
    }
}

impl fmt::Display for ScaledInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.scale == 1 {
            write!(f, "{}", self.raw)
        } else {
            write!(f, "{}/{}", self.raw, self.scale)
        }
    }
}
