use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Coefficient ring for chains and homology.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Ring {
    Integers,
    Rationals,
    /// ℤ/m with m ≥ 2; m need not be prime.
    IntegersMod(u64),
}

impl Ring {
    pub fn modulus(self) -> Option<BigInt> {
        match self {
            Ring::IntegersMod(m) => Some(BigInt::from(m)),
            _ => None,
        }
    }

    /// Fields are ℚ and ℤ/p for prime p.
    pub fn is_field(self) -> bool {
        match self {
            Ring::Integers => false,
            Ring::Rationals => true,
            Ring::IntegersMod(m) => is_prime(m),
        }
    }

    /// Canonical representative of an integer in this ring (ℤ/m: in `0..m`).
    pub fn reduce_int(self, x: &BigInt) -> BigInt {
        match self {
            Ring::IntegersMod(m) => x.mod_floor(&BigInt::from(m)),
            _ => x.clone(),
        }
    }

    /// Whether a rational scalar is zero in this ring. Non-integral values are
    /// only meaningful over ℚ.
    pub fn is_zero_rat(self, x: &BigRational) -> bool {
        match self {
            Ring::IntegersMod(m) => {
                debug_assert!(x.is_integer());
                x.to_integer().mod_floor(&BigInt::from(m)).is_zero()
            }
            _ => x.is_zero(),
        }
    }

    pub(crate) fn check(self) -> Result<Self> {
        match self {
            Ring::IntegersMod(m) if m < 2 => Err(Error::InvalidRing(format!("Z/{m}"))),
            r => Ok(r),
        }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ring::Integers => write!(f, "Z"),
            Ring::Rationals => write!(f, "Q"),
            Ring::IntegersMod(m) => write!(f, "Z/{m}"),
        }
    }
}

impl FromStr for Ring {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        match t {
            "Z" | "ZZ" => Ok(Ring::Integers),
            "Q" | "QQ" => Ok(Ring::Rationals),
            _ => {
                let m = t
                    .strip_prefix("Z/")
                    .and_then(|m| m.parse::<u64>().ok())
                    .ok_or_else(|| Error::InvalidRing(s.to_string()))?;
                Ring::IntegersMod(m).check()
            }
        }
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime factors in increasing order.
pub fn prime_factors(n: &BigInt) -> Vec<u64> {
    let mut n = n.abs();
    let mut out = Vec::new();
    let mut p = 2u64;
    while n > BigInt::one() {
        let bp = BigInt::from(p);
        if &bp * &bp > n {
            // remaining cofactor is prime; desk-scale inputs keep it in u64
            out.push(u64::try_from(&n).expect("prime factor exceeds u64"));
            break;
        }
        if (&n % &bp).is_zero() {
            out.push(p);
            while (&n % &bp).is_zero() {
                n /= &bp;
            }
        }
        p += 1;
    }
    out
}

pub fn gcd_all<'a>(xs: impl IntoIterator<Item = &'a BigInt>) -> BigInt {
    xs.into_iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}

pub fn lcm(a: &BigInt, b: &BigInt) -> BigInt {
    if a.is_zero() || b.is_zero() {
        return BigInt::zero();
    }
    a.lcm(b)
}

/// All positive divisors of `n > 0`, ascending.
pub fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut divs = vec![BigInt::one()];
    for p in prime_factors(&n) {
        let bp = BigInt::from(p);
        let mut e = 0u32;
        let mut m = n.clone();
        while (&m % &bp).is_zero() {
            m /= &bp;
            e += 1;
        }
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for d in &divs {
            let mut pk = BigInt::one();
            for _ in 0..=e {
                next.push(d * &pk);
                pk *= &bp;
            }
        }
        divs = next;
    }
    divs.sort();
    divs
}
