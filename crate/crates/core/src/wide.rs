//! Overflow-checked nonnegative integers below 2^127.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A nonnegative integer in `[0, 2^127 - 1]`.
///
/// Every arithmetic method either returns an in-range value or
/// [`Error::Overflow`]; nothing wraps.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WideNat(u128);

impl WideNat {
    pub const ZERO: WideNat = WideNat(0);
    pub const ONE: WideNat = WideNat(1);
    pub const MAX: WideNat = WideNat((1u128 << 127) - 1);

    pub fn new(value: u128) -> Result<Self> {
        if value > Self::MAX.0 {
            Err(Error::Overflow)
        } else {
            Ok(WideNat(value))
        }
    }

    pub const fn from_u64(value: u64) -> Self {
        WideNat(value as u128)
    }

    #[inline]
    pub const fn get(self) -> u128 {
        self.0
    }

    pub fn to_u64(self) -> Option<u64> {
        u64::try_from(self.0).ok()
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    pub fn checked_add(self, rhs: WideNat) -> Result<Self> {
        self.0.checked_add(rhs.0).ok_or(Error::Overflow).and_then(Self::new)
    }

    /// Subtraction; a negative result is reported as overflow (out of range).
    pub fn checked_sub(self, rhs: WideNat) -> Result<Self> {
        self.0.checked_sub(rhs.0).map(WideNat).ok_or(Error::Overflow)
    }

    pub fn checked_mul(self, rhs: WideNat) -> Result<Self> {
        self.0.checked_mul(rhs.0).ok_or(Error::Overflow).and_then(Self::new)
    }

    pub fn checked_pow(self, exp: u32) -> Result<Self> {
        let mut acc = WideNat::ONE;
        let mut base = self;
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.checked_mul(base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.checked_mul(base)?;
            }
        }
        Ok(acc)
    }

    /// `self / rhs` when `rhs` divides `self`, `None` otherwise (or when `rhs == 0`).
    pub fn div_exact(self, rhs: WideNat) -> Option<Self> {
        if rhs.0 == 0 || !self.0.is_multiple_of(rhs.0) {
            None
        } else {
            Some(WideNat(self.0 / rhs.0))
        }
    }

    pub fn divides(self, other: WideNat) -> bool {
        if self.0 == 0 {
            other.0 == 0
        } else {
            other.0.is_multiple_of(self.0)
        }
    }
}

impl From<u64> for WideNat {
    fn from(v: u64) -> Self {
        WideNat::from_u64(v)
    }
}

impl From<u32> for WideNat {
    fn from(v: u32) -> Self {
        WideNat(v as u128)
    }
}

impl TryFrom<u128> for WideNat {
    type Error = Error;

    fn try_from(v: u128) -> Result<Self> {
        WideNat::new(v)
    }
}

impl fmt::Display for WideNat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl FromStr for WideNat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let v: u128 =
            s.trim().parse().map_err(|_| Error::domain(format!("not a nonnegative integer: {s:?}")))?;
        WideNat::new(v)
    }
}

impl Serialize for WideNat {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_u128(self.0)
    }
}

impl<'de> Deserialize<'de> for WideNat {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let v = u128::deserialize(deserializer)?;
        WideNat::new(v).map_err(serde::de::Error::custom)
    }
}
