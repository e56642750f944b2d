//! Spectral invariants and spectral depth.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::SpectralValue;
use crate::complex::{change_ring_class, homology, FilteredComplex, HomologyClass, Level};
use crate::error::{Error, Result};
use crate::linalg::{divisors, lattice_multiplier, lcm, solve_linear, solve_rational, IntMatrix, Ring};

/// Positions in the degree-`k` list of generators with action `> tau`;
/// `None` stands for a level below every action.
pub(crate) fn above(c: &FilteredComplex, k: i64, tau: Option<&BigRational>) -> Vec<usize> {
    c.in_degree(k)
        .iter()
        .enumerate()
        .filter(|(_, &g)| tau.map_or(true, |t| c.action(g) > t))
        .map(|(p, _)| p)
        .collect()
}

/// `∂_{k+1}` of the quotient `C / C^{<= tau}` in degree-list coordinates.
pub(crate) fn quotient_boundary(c: &FilteredComplex, k: i64, tau: Option<&BigRational>) -> (Vec<usize>, IntMatrix) {
    let rows = above(c, k, tau);
    let cols = above(c, k + 1, tau);
    (rows.clone(), c.boundary_matrix(k + 1).select_rows(&rows).select_columns(&cols))
}

/// Whether the class of the cycle `rep` lies in the image of
/// `H_k(C^{<= tau}) -> H_k(C)`: the part of `rep` above `tau` must be a
/// boundary of the quotient complex.
pub(crate) fn enters_at(c: &FilteredComplex, ring: Ring, k: i64, rep: &[BigInt], tau: Option<&BigRational>) -> bool {
    let (rows, b) = quotient_boundary(c, k, tau);
    let v: Vec<BigInt> = rows.iter().map(|&p| rep[p].clone()).collect();
    if v.iter().all(|x| ring.reduce_int(x).is_zero()) {
        return true;
    }
    solve_linear(&b, &v, ring).expect("dimensions agree").is_some()
}

/// Integer multiple of a rational vector with coprime entries' denominators
/// cleared.
pub(crate) fn clear_denominators(v: &[BigRational]) -> Vec<BigInt> {
    let den = v.iter().fold(BigInt::one(), |acc, x| lcm(&acc, x.denom()));
    v.iter().map(|x| (x * BigRational::from_integer(den.clone())).to_integer()).collect()
}

fn full_class_rep(c: &FilteredComplex, a: &HomologyClass) -> Result<Vec<BigInt>> {
    if a.level != Level::Infinite {
        return Err(Error::ClassMismatch(format!(
            "spectral invariants take classes of the full complex, got level {}",
            a.level
        )));
    }
    let h = homology(c, a.ring, a.degree, &Level::Infinite);
    Ok(clear_denominators(&h.representative(a)?))
}

/// Least critical value `τ` at which the cycle enters the image of the
/// sublevel homology. Membership is monotone in `τ`, so a binary search over
/// the critical values finds the threshold.
pub(crate) fn threshold(c: &FilteredComplex, ring: Ring, k: i64, rep: &[BigInt]) -> SpectralValue {
    if enters_at(c, ring, k, rep, None) {
        return SpectralValue::NegInfinity;
    }
    let cv = c.critical_values();
    let (mut lo, mut hi) = (0, cv.len() - 1);
    while lo < hi {
        let mid = (lo + hi) / 2;
        if enters_at(c, ring, k, rep, Some(&cv[mid])) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    SpectralValue::Finite(cv[lo].clone())
}

/// `c_R(a)`: the least level whose sublevel homology maps onto a class
/// containing `a`; `-inf` for the zero class.
pub fn spectral_invariant(c: &FilteredComplex, a: &HomologyClass) -> Result<SpectralValue> {
    let rep = full_class_rep(c, a)?;
    if a.is_zero() {
        return Ok(SpectralValue::NegInfinity);
    }
    Ok(threshold(c, a.ring, a.degree, &rep))
}

/// Membership of `a` in the image at every critical value, ascending.
pub fn membership_profile(c: &FilteredComplex, a: &HomologyClass) -> Result<Vec<(BigRational, bool)>> {
    let rep = full_class_rep(c, a)?;
    Ok(c.critical_values()
        .into_iter()
        .map(|t| {
            let m = enters_at(c, a.ring, a.degree, &rep, Some(&t));
            (t, m)
        })
        .collect())
}

/// For an integral class: at each critical value the least `k > 0` with
/// `k a` in the image of the sublevel homology, or zero if there is none.
pub fn multiplier_profile(c: &FilteredComplex, a: &HomologyClass) -> Result<Vec<(BigRational, BigInt)>> {
    if a.ring != Ring::Integers {
        return Err(Error::ClassMismatch(format!("multipliers need an integral class, got {}", a.ring)));
    }
    let rep = full_class_rep(c, a)?;
    c.critical_values()
        .into_iter()
        .map(|t| {
            let (rows, b) = quotient_boundary(c, a.degree, Some(&t));
            let v: Vec<BigInt> = rows.iter().map(|&p| rep[p].clone()).collect();
            Ok((t, lattice_multiplier(&b, &v)?))
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectralDepth {
    pub c_z: BigRational,
    pub c_q: BigRational,
    /// `c_ℤ(a) - c_ℚ(a)`
    pub beta: BigRational,
    /// least `k` with `c_ℤ(k a) = c_ℚ(a)`, found among divisors of `bound`
    pub witness: Option<BigInt>,
    /// lcm of the denominators of a rational cycle and bounding chain at
    /// level `c_ℚ(a)`
    pub bound: BigInt,
}

/// Denominator bound from a rational solution at level `tau`: the part of
/// `rep` above `tau` equals `∂w` in the quotient for rational `w`, so the
/// cycle `rep - ∂w` lies below `tau`.
pub(crate) fn denominator_bound(c: &FilteredComplex, k: i64, rep: &[BigInt], tau: &BigRational) -> Option<BigInt> {
    let (rows, b) = quotient_boundary(c, k, Some(tau));
    let v: Vec<BigRational> = rows.iter().map(|&p| BigRational::from_integer(rep[p].clone())).collect();
    let w = solve_rational(&b.to_rational(), &v).expect("dimensions agree")?;
    let cols = above(c, k + 1, Some(tau));
    let mut full_w = vec![BigRational::zero(); c.in_degree(k + 1).len()];
    for (x, &p) in w.into_iter().zip(&cols) {
        full_w[p] = x;
    }
    let bw = c.boundary_matrix(k + 1).to_rational().mul_vec(&full_w);
    let cycle: Vec<BigRational> =
        rep.iter().zip(&bw).map(|(r, x)| BigRational::from_integer(r.clone()) - x).collect();
    let den = full_w.iter().chain(&cycle).fold(BigInt::one(), |acc, x| lcm(&acc, x.denom()));
    Some(den)
}

/// `β_spec(a) = c_ℤ(a) - c_ℚ(a)` with the least multiplier realising
/// `c_ℚ(a)` over ℤ.
pub fn spectral_depth(c: &FilteredComplex, a: &HomologyClass) -> Result<SpectralDepth> {
    if a.ring != Ring::Integers {
        return Err(Error::ClassMismatch(format!("spectral depth needs an integral class, got {}", a.ring)));
    }
    if a.is_zero() {
        return Err(Error::ZeroClass);
    }
    let c_z = spectral_invariant(c, a)?;
    let aq = change_ring_class(c, a, Ring::Rationals)?;
    let c_q = spectral_invariant(c, &aq)?;
    let (Some(cz), Some(cq)) = (c_z.finite().cloned(), c_q.finite().cloned()) else {
        return Err(Error::TorsionClass);
    };
    let rep = full_class_rep(c, a)?;
    let bound = denominator_bound(c, a.degree, &rep, &cq).expect("a enters rationally at c_Q");
    let h = homology(c, Ring::Integers, a.degree, &Level::Infinite);
    let mut witness = None;
    for k in divisors(&bound) {
        if spectral_invariant(c, &h.scale(a, &k)?)? == c_q {
            witness = Some(k);
            break;
        }
    }
    Ok(SpectralDepth { beta: &cz - &cq, c_z: cz, c_q: cq, witness, bound })
}

/// `inf_k c_ℤ(k a)` over multiples not divisible by `p`, read off the
/// multiplier profile: level `τ` is reachable by some `k` prime to `p` iff
/// the least multiplier there is nonzero and prime to `p`.
pub fn inf_over_multiples_prime_to(profile: &[(BigRational, BigInt)], p: u64) -> SpectralValue {
    let p = BigInt::from(p);
    profile
        .iter()
        .find(|(_, m)| !m.is_zero() && !m.is_multiple_of(&p))
        .map_or(SpectralValue::PosInfinity, |(t, _)| SpectralValue::Finite(t.clone()))
}
