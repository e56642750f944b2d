use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_rational::BigRational;

use crate::complex::Level;

/// An extended rational. Spectral invariants of nonzero classes are finite;
/// `-inf` is the value of the zero class, `+inf` appears only for pairing
/// thresholds that are never reached.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SpectralValue {
    NegInfinity,
    Finite(BigRational),
    PosInfinity,
}

impl SpectralValue {
    pub fn int(n: i64) -> Self {
        SpectralValue::Finite(BigRational::from_integer(n.into()))
    }

    pub fn finite(&self) -> Option<&BigRational> {
        match self {
            SpectralValue::Finite(t) => Some(t),
            _ => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, SpectralValue::Finite(_))
    }

    /// Rendering used in reports: `p/q`, `-inf` or `inf`.
    pub fn render(&self) -> String {
        self.to_string()
    }
}

impl From<BigRational> for SpectralValue {
    fn from(t: BigRational) -> Self {
        SpectralValue::Finite(t)
    }
}

impl From<&Level> for SpectralValue {
    fn from(l: &Level) -> Self {
        match l {
            Level::Finite(t) => SpectralValue::Finite(t.clone()),
            Level::Infinite => SpectralValue::PosInfinity,
        }
    }
}

impl fmt::Display for SpectralValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpectralValue::NegInfinity => write!(f, "-inf"),
            SpectralValue::Finite(t) => write!(f, "{t}"),
            SpectralValue::PosInfinity => write!(f, "inf"),
        }
    }
}

impl Neg for SpectralValue {
    type Output = SpectralValue;

    fn neg(self) -> SpectralValue {
        match self {
            SpectralValue::NegInfinity => SpectralValue::PosInfinity,
            SpectralValue::Finite(t) => SpectralValue::Finite(-t),
            SpectralValue::PosInfinity => SpectralValue::NegInfinity,
        }
    }
}

/// Sums with an infinite operand are `None` when they would be `inf - inf`.
impl Add for &SpectralValue {
    type Output = Option<SpectralValue>;

    fn add(self, other: &SpectralValue) -> Option<SpectralValue> {
        use SpectralValue::*;
        match (self, other) {
            (Finite(a), Finite(b)) => Some(Finite(a + b)),
            (NegInfinity, PosInfinity) | (PosInfinity, NegInfinity) => None,
            (NegInfinity, _) | (_, NegInfinity) => Some(NegInfinity),
            _ => Some(PosInfinity),
        }
    }
}

impl Sub for &SpectralValue {
    type Output = Option<SpectralValue>;

    fn sub(self, other: &SpectralValue) -> Option<SpectralValue> {
        self + &(-other.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_and_arithmetic() {
        let one = SpectralValue::int(1);
        assert!(SpectralValue::NegInfinity < SpectralValue::int(-100));
        assert!(one < SpectralValue::PosInfinity);
        assert_eq!(&one + &SpectralValue::int(2), Some(SpectralValue::int(3)));
        assert_eq!(&one - &SpectralValue::int(2), Some(SpectralValue::int(-1)));
        assert_eq!(&SpectralValue::NegInfinity + &SpectralValue::PosInfinity, None);
        assert_eq!(-SpectralValue::NegInfinity, SpectralValue::PosInfinity);
        assert_eq!(SpectralValue::NegInfinity.to_string(), "-inf");
    }
}
