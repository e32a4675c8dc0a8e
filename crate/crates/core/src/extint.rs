//! Integers extended by −∞, with saturating addition.
//!
//! The string statistics ε_i, φ_i of a crystal take the value −∞ exactly
//! when the index never acts (elementary crystals for a foreign index).
//! Keeping −∞ as a distinguished variant keeps every comparison in the
//! tensor rule total.

use std::fmt;
use std::ops::Add;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExtInt {
    NegInf,
    Finite(i64),
}

impl ExtInt {
    pub fn finite(self) -> Option<i64> {
        match self {
            ExtInt::NegInf => None,
            ExtInt::Finite(v) => Some(v),
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, ExtInt::Finite(_))
    }

    /// Finite value, panicking on −∞.  Callers use this only where the
    /// crystal contract guarantees finiteness.
    pub fn expect_finite(self) -> i64 {
        self.finite().expect("statistic unexpectedly -inf")
    }

    pub fn max(self, other: ExtInt) -> ExtInt {
        if self >= other {
            self
        } else {
            other
        }
    }
}

impl Add<i64> for ExtInt {
    type Output = ExtInt;
    fn add(self, rhs: i64) -> ExtInt {
        match self {
            ExtInt::NegInf => ExtInt::NegInf,
            ExtInt::Finite(v) => ExtInt::Finite(v + rhs),
        }
    }
}

impl From<i64> for ExtInt {
    fn from(v: i64) -> ExtInt {
        ExtInt::Finite(v)
    }
}

impl fmt::Display for ExtInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtInt::NegInf => write!(f, "-inf"),
            ExtInt::Finite(v) => write!(f, "{v}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ordering_and_saturation() {
        assert!(ExtInt::NegInf < ExtInt::Finite(-100));
        assert!(ExtInt::Finite(0) < ExtInt::Finite(1));
        assert_eq!(ExtInt::NegInf + 5, ExtInt::NegInf);
        assert_eq!(ExtInt::Finite(2) + 3, ExtInt::Finite(5));
        assert_eq!(ExtInt::NegInf.max(ExtInt::Finite(-7)), ExtInt::Finite(-7));
    }
}
