use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::Error;

/// A filtration level: a finite rational `τ` or `+∞` (the full complex).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Level {
    Finite(BigRational),
    Infinite,
}

impl Level {
    pub fn int(n: i64) -> Self {
        Level::Finite(BigRational::from_integer(n.into()))
    }

    pub fn finite(&self) -> Option<&BigRational> {
        match self {
            Level::Finite(t) => Some(t),
            Level::Infinite => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Level::Infinite)
    }
}

impl From<BigRational> for Level {
    fn from(t: BigRational) -> Self {
        Level::Finite(t)
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Level::Finite(t) => write!(f, "{t}"),
            Level::Infinite => write!(f, "inf"),
        }
    }
}

impl FromStr for Level {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s.trim() {
            "inf" | "+inf" => Ok(Level::Infinite),
            t => parse_rational(t).map(Level::Finite),
        }
    }
}

/// Parses `"p/q"` or `"p"` into an exact rational.
pub fn parse_rational(s: &str) -> Result<BigRational, Error> {
    let bad = || Error::Parse(format!("not a rational number: `{s}`"));
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d == BigInt::from(0) {
        return Err(bad());
    }
    Ok(BigRational::new(n, d))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ordering_and_parsing() {
        assert!(Level::int(5) < Level::Infinite);
        assert!(Level::int(-1) < Level::int(0));
        assert_eq!("inf".parse::<Level>().unwrap(), Level::Infinite);
        assert_eq!(
            "-3/6".parse::<Level>().unwrap(),
            Level::Finite(BigRational::new((-1).into(), 2.into()))
        );
        assert!("1/0".parse::<Level>().is_err());
        assert!("abc".parse::<Level>().is_err());
        assert_eq!(Level::Finite(BigRational::new(3.into(), 2.into())).to_string(), "3/2");
    }
}
