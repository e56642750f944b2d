//! Quantum cohomology ring of ℂPⁿ, `R[x, t, t⁻¹] / (x^{n+1} = t)`, on
//! finitely supported elements.
//!
//! A monomial `xⁱtʲ` with `0 <= i <= n` is stored under the single exponent
//! `e = i + (n+1) j`, so products are convolutions and the normal form is
//! automatic.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{solve_mod, solve_rational, RatMatrix, Ring};

/// Extra exponents tried on each side of the minimal window in `qinverse`.
pub const INVERSE_WINDOW_LIMIT: i64 = 8;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuantumClass {
    n: u32,
    ring: Ring,
    terms: BTreeMap<i64, BigRational>,
}

fn qerr(msg: impl Into<String>) -> Error {
    Error::Quantum(msg.into())
}

/// Canonical form of a scalar in `ring`. Over ℤ/m a fraction `p/q` is
/// accepted when `q` is a unit mod m.
pub fn reduce_scalar(ring: Ring, x: &BigRational) -> Result<BigRational> {
    match ring {
        Ring::Rationals => Ok(x.clone()),
        Ring::Integers if x.is_integer() => Ok(x.clone()),
        Ring::Integers => Err(qerr(format!("{x} is not an integer"))),
        Ring::IntegersMod(m) => {
            let m = BigInt::from(m);
            let g = x.denom().extended_gcd(&m);
            if !g.gcd.is_one() {
                return Err(qerr(format!("{x} is not defined in Z/{m}")));
            }
            Ok(BigRational::from_integer((x.numer() * g.x).mod_floor(&m)))
        }
    }
}

impl QuantumClass {
    pub fn zero(n: u32, ring: Ring) -> Self {
        QuantumClass { n, ring, terms: BTreeMap::new() }
    }

    pub fn one(n: u32, ring: Ring) -> Self {
        Self::monomial(n, ring, 0, 0, BigRational::one()).expect("1 exists in every ring")
    }

    /// `c xⁱ tʲ`, reduced through `x^{n+1} = t` when `i > n`.
    pub fn monomial(n: u32, ring: Ring, i: u32, j: i64, c: BigRational) -> Result<Self> {
        let mut q = Self::zero(n, ring);
        q.add_term(i as i64 + (n as i64 + 1) * j, &c)?;
        Ok(q)
    }

    /// Builds a class from `((i, j), c)` triples; repeated monomials add up.
    pub fn from_terms(
        n: u32,
        ring: Ring,
        terms: impl IntoIterator<Item = ((u32, i64), BigRational)>,
    ) -> Result<Self> {
        let mut q = Self::zero(n, ring);
        for ((i, j), c) in terms {
            q.add_term(i as i64 + (n as i64 + 1) * j, &c)?;
        }
        Ok(q)
    }

    fn add_term(&mut self, e: i64, c: &BigRational) -> Result<()> {
        let c = reduce_scalar(self.ring, c)?;
        let sum = match self.terms.remove(&e) {
            Some(old) => reduce_scalar(self.ring, &(old + c))?,
            None => c,
        };
        if !sum.is_zero() {
            self.terms.insert(e, sum);
        }
        Ok(())
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn split(&self, e: i64) -> (u32, i64) {
        let (j, i) = e.div_mod_floor(&(self.n as i64 + 1));
        (i as u32, j)
    }

    /// Nonzero coefficients as `((i, j), c)`, ordered by `t` exponent then `x`.
    pub fn terms(&self) -> Vec<((u32, i64), BigRational)> {
        self.terms.iter().map(|(&e, c)| (self.split(e), c.clone())).collect()
    }

    pub fn coefficient(&self, i: u32, j: i64) -> BigRational {
        if i > self.n {
            return BigRational::zero();
        }
        self.terms.get(&(i as i64 + (self.n as i64 + 1) * j)).cloned().unwrap_or_else(BigRational::zero)
    }

    fn compatible(&self, other: &Self) -> Result<()> {
        if self.n != other.n || self.ring != other.ring {
            return Err(qerr(format!(
                "operands live in QH(CP^{}; {}) and QH(CP^{}; {})",
                self.n, self.ring, other.n, other.ring
            )));
        }
        Ok(())
    }

    pub fn scale(&self, c: &BigRational) -> Result<Self> {
        let mut q = Self::zero(self.n, self.ring);
        for (&e, a) in &self.terms {
            q.add_term(e, &(a * c))?;
        }
        Ok(q)
    }

    pub fn neg(&self) -> Self {
        self.scale(&-BigRational::one()).expect("negation stays in the ring")
    }
}

pub fn qadd(a: &QuantumClass, b: &QuantumClass) -> Result<QuantumClass> {
    a.compatible(b)?;
    let mut q = a.clone();
    for (&e, c) in &b.terms {
        q.add_term(e, c)?;
    }
    Ok(q)
}

pub fn qmul(a: &QuantumClass, b: &QuantumClass) -> Result<QuantumClass> {
    a.compatible(b)?;
    let mut q = QuantumClass::zero(a.n, a.ring);
    for (&e, c) in &a.terms {
        for (&f, d) in &b.terms {
            q.add_term(e + f, &(c * d))?;
        }
    }
    Ok(q)
}

pub fn qpow(a: &QuantumClass, k: u32) -> QuantumClass {
    (0..k).fold(QuantumClass::one(a.n, a.ring), |acc, _| qmul(&acc, a).expect("same ring"))
}

/// Coefficient of `x⁰t⁰`.
pub fn qtau(a: &QuantumClass) -> BigRational {
    a.coefficient(0, 0)
}

/// Coefficient of `xⁿt⁰` in `a ∗ b`.
pub fn qpairing(a: &QuantumClass, b: &QuantumClass) -> Result<BigRational> {
    let p = qmul(a, b)?;
    Ok(p.coefficient(p.n, 0))
}

/// Common grading `2i + 2(n+1)j`, if `a` is homogeneous and nonzero.
pub fn qdegree(a: &QuantumClass) -> Option<i64> {
    let mut es = a.terms.keys();
    let first = *es.next()?;
    es.all(|&e| e == first).then_some(2 * first)
}

/// Largest `t` exponent carrying a nonzero coefficient.
pub fn qvaluation(a: &QuantumClass) -> Result<i64> {
    let e = *a.terms.keys().next_back().ok_or(Error::ZeroClass)?;
    Ok(a.split(e).1)
}

/// Multiplicative inverse over a field. Solves `a ∗ b = 1` for `b`
/// supported on a window of exponents, widening the window up to
/// [`INVERSE_WINDOW_LIMIT`]. The result is checked before it is returned.
pub fn qinverse(a: &QuantumClass) -> Result<QuantumClass> {
    if !a.ring.is_field() {
        return Err(qerr(format!("{} is not a field", a.ring)));
    }
    let (&lo, &hi) = match (a.terms.keys().next(), a.terms.keys().next_back()) {
        (Some(lo), Some(hi)) => (lo, hi),
        _ => return Err(Error::ZeroClass),
    };
    for w in 0..=INVERSE_WINDOW_LIMIT {
        let (flo, fhi) = (-hi - w, -lo + w);
        let (glo, ghi) = (lo + flo, hi + fhi);
        let cols = (fhi - flo + 1) as usize;
        let rows = (ghi - glo + 1) as usize;
        let mut m = RatMatrix::zeros(rows, cols);
        for (&e, c) in &a.terms {
            for f in flo..=fhi {
                m[((e + f - glo) as usize, (f - flo) as usize)] = c.clone();
            }
        }
        let mut rhs = vec![BigRational::zero(); rows];
        rhs[(-glo) as usize] = BigRational::one();
        let sol = match a.ring {
            Ring::IntegersMod(p) => {
                let im = m.map(|x| x.to_integer());
                let ib: Vec<BigInt> = rhs.iter().map(|x| x.to_integer()).collect();
                solve_mod(&im, &ib, &BigInt::from(p))?
                    .map(|v| v.into_iter().map(BigRational::from_integer).collect::<Vec<_>>())
            }
            _ => solve_rational(&m, &rhs)?,
        };
        let Some(sol) = sol else { continue };
        let mut b = QuantumClass::zero(a.n, a.ring);
        for (k, c) in sol.iter().enumerate() {
            b.add_term(flo + k as i64, c)?;
        }
        if qmul(a, &b)? != QuantumClass::one(a.n, a.ring) {
            return Err(qerr("inverse failed verification"));
        }
        return Ok(b);
    }
    Err(qerr(format!("{a} has no finitely supported inverse within the search window")))
}

impl QuantumClass {
    /// Parses sums of terms such as `"x^2*t^-1 + 3"` or `"-1/2*x*t"`.
    /// Powers of `x` beyond `n` are reduced after parsing.
    pub fn parse(s: &str, n: u32, ring: Ring) -> Result<Self> {
        let bad = |msg: &str| Error::Parse(format!("quantum class `{s}`: {msg}"));
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(bad("empty expression"));
        }
        let mut pieces = Vec::new();
        let mut start = 0;
        let bytes = compact.as_bytes();
        for k in 1..bytes.len() {
            if (bytes[k] == b'+' || bytes[k] == b'-') && bytes[k - 1] != b'^' {
                pieces.push(&compact[start..k]);
                start = k;
            }
        }
        pieces.push(&compact[start..]);
        let mut q = QuantumClass::zero(n, ring);
        for piece in pieces {
            let (sign, body) = match piece.as_bytes().first() {
                Some(b'-') => (-BigRational::one(), &piece[1..]),
                Some(b'+') => (BigRational::one(), &piece[1..]),
                _ => (BigRational::one(), piece),
            };
            if body.is_empty() {
                return Err(bad("dangling sign"));
            }
            let mut coef = sign;
            let (mut i, mut j) = (0i64, 0i64);
            for factor in body.split('*') {
                let (base, exp) = match factor.split_once('^') {
                    Some((b, e)) => {
                        let e = e.trim_start_matches('(').trim_end_matches(')');
                        (b, Some(e.parse::<i64>().map_err(|_| bad(&format!("bad exponent in `{factor}`")))?))
                    }
                    None => (factor, None),
                };
                match base {
                    "x" => {
                        let e = exp.unwrap_or(1);
                        if e < 0 {
                            return Err(bad("negative power of x"));
                        }
                        i += e;
                    }
                    "t" => j += exp.unwrap_or(1),
                    _ if exp.is_none() => {
                        coef *= crate::complex::parse_rational(base)
                            .map_err(|_| bad(&format!("unknown factor `{factor}`")))?;
                    }
                    _ => return Err(bad(&format!("unknown factor `{factor}`"))),
                }
            }
            q.add_term(i + (n as i64 + 1) * j, &coef)?;
        }
        Ok(q)
    }
}

fn fmt_monomial(f: &mut fmt::Formatter<'_>, i: u32, j: i64) -> fmt::Result {
    let mut parts = Vec::new();
    match i {
        0 => {}
        1 => parts.push("x".to_string()),
        _ => parts.push(format!("x^{i}")),
    }
    match j {
        0 => {}
        1 => parts.push("t".to_string()),
        _ => parts.push(format!("t^{j}")),
    }
    write!(f, "{}", parts.join("*"))
}

impl fmt::Display for QuantumClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, ((i, j), c)) in self.terms().into_iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let unit = abs.is_one();
            if !unit || (i == 0 && j == 0) {
                write!(f, "{abs}")?;
                if i != 0 || j != 0 {
                    write!(f, "*")?;
                }
            }
            fmt_monomial(f, i, j)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, n: u32, ring: Ring) -> QuantumClass {
        QuantumClass::parse(s, n, ring).unwrap()
    }

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn relation_and_products() {
        let r = Ring::Integers;
        assert_eq!(qmul(&p("x^2", 2, r), &p("x", 2, r)).unwrap(), p("t", 2, r));
        assert_eq!(qmul(&p("x^2", 2, r), &p("x^2", 2, r)).unwrap(), p("x*t", 2, r));
        let a = p("3 + 2*t - x^2*t^-1", 2, r);
        assert_eq!(qmul(&QuantumClass::one(2, r), &a).unwrap(), a);
        assert_eq!(p("x^3", 2, r), p("t", 2, r));
    }

    #[test]
    fn tau_and_pairing() {
        let r = Ring::Rationals;
        assert_eq!(qtau(&p("1", 2, r)), q(1));
        assert_eq!(qtau(&p("x", 2, r)), q(0));
        assert_eq!(qtau(&p("3 + 2*t", 2, r)), q(3));
        assert_eq!(qpairing(&p("1", 2, r), &p("x^2", 2, r)).unwrap(), q(1));
        assert_eq!(qpairing(&p("1", 2, r), &p("1", 2, r)).unwrap(), q(0));
        assert_eq!(qpairing(&p("x^2", 2, r), &p("x^3", 2, r)).unwrap(), q(0));
    }

    #[test]
    fn degree_and_valuation() {
        let r = Ring::Integers;
        assert_eq!(qdegree(&p("x", 3, r)), Some(2));
        assert_eq!(qdegree(&p("t", 3, r)), Some(8));
        assert_eq!(qdegree(&p("x + t", 3, r)), None);
        assert_eq!(qdegree(&QuantumClass::zero(3, r)), None);
        assert_eq!(qvaluation(&p("x + x*t^2", 3, r)).unwrap(), 2);
        assert!(qvaluation(&QuantumClass::zero(3, r)).is_err());
    }

    #[test]
    fn inverses() {
        let one = QuantumClass::one(1, Ring::Rationals);
        assert_eq!(qinverse(&one).unwrap(), one);
        assert_eq!(qinverse(&p("x", 1, Ring::Rationals)).unwrap(), p("x*t^-1", 1, Ring::Rationals));
        let z7 = Ring::IntegersMod(7);
        assert_eq!(qinverse(&p("x", 2, z7)).unwrap(), p("x^2*t^-1", 2, z7));
        assert_eq!(qinverse(&p("3*t", 2, z7)).unwrap(), p("5*t^-1", 2, z7));
        assert!(qinverse(&p("1 + x", 2, Ring::Rationals)).is_err());
        assert!(qinverse(&p("x", 2, Ring::Integers)).is_err());
        assert!(qinverse(&QuantumClass::zero(2, Ring::Rationals)).is_err());
    }

    #[test]
    fn scalars_per_ring() {
        assert_eq!(p("1/2", 1, Ring::IntegersMod(7)), p("4", 1, Ring::IntegersMod(7)));
        assert_eq!(p("7*x + 14", 1, Ring::IntegersMod(7)), QuantumClass::zero(1, Ring::IntegersMod(7)));
        assert!(QuantumClass::parse("1/2", 1, Ring::Integers).is_err());
        assert!(QuantumClass::parse("1/2", 1, Ring::IntegersMod(14)).is_err());
    }

    #[test]
    fn parse_errors_and_display() {
        for bad in ["", "x^-1", "y", "2*", "x^a", "+"] {
            assert!(QuantumClass::parse(bad, 2, Ring::Integers).is_err(), "{bad}");
        }
        let a = p("-x^2*t^-1 + 3 - 1/2*x*t", 2, Ring::Rationals);
        assert_eq!(a.to_string(), "-x^2*t^-1 + 3 - 1/2*x*t");
        assert_eq!(p(&a.to_string(), 2, Ring::Rationals), a);
    }

    #[test]
    fn mismatched_operands() {
        assert!(qadd(&p("x", 1, Ring::Integers), &p("x", 2, Ring::Integers)).is_err());
        assert!(qmul(&p("x", 1, Ring::Integers), &p("x", 1, Ring::Rationals)).is_err());
    }
}
