//! Evaluation pairing between a complex and its dual, and the level at
//! which a dual class starts to detect sublevel cycles.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::invariant::{clear_denominators, spectral_invariant};
use super::SpectralValue;
use crate::complex::{homology, FilteredComplex, HomologyClass, Level};
use crate::error::{Error, Result};
use crate::linalg::{kernel_basis, IntMatrix, Ring};

/// Integer representative of a full-level class.
pub(crate) fn rep_of(c: &FilteredComplex, a: &HomologyClass) -> Result<Vec<BigInt>> {
    let h = homology(c, a.ring, a.degree, &a.level);
    Ok(clear_denominators(&h.representative(a)?))
}

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// `⟨z, w⟩ = Σ z(x*) w(x)` for `z` in the homology of the dual complex and
/// `w` in the homology of `c`, in complementary degrees. Both classes must
/// be over the same ring; the value is reduced in that ring.
pub fn pd_pairing(c: &FilteredComplex, z: &HomologyClass, w: &HomologyClass) -> Result<BigRational> {
    if z.degree != c.top_degree() - w.degree {
        return Err(Error::ClassMismatch(format!(
            "pairing needs complementary degrees, got {} and {} with top degree {}",
            z.degree,
            w.degree,
            c.top_degree()
        )));
    }
    if z.ring != w.ring {
        return Err(Error::ClassMismatch(format!("rings differ: {} and {}", z.ring, w.ring)));
    }
    let dual = c.dual();
    let zr = homology(&dual, z.ring, z.degree, &z.level).representative(z)?;
    let wr = homology(c, w.ring, w.degree, &w.level).representative(w)?;
    let v: BigRational = zr.iter().zip(&wr).map(|(x, y)| x * y).sum();
    Ok(match z.ring {
        Ring::Rationals => v,
        ring => BigRational::from_integer(ring.reduce_int(&v.to_integer())),
    })
}

/// Cycle lattice (over the ring) of `C^{<= tau}_k` in degree-list
/// coordinates.
fn sublevel_cycles(c: &FilteredComplex, ring: Ring, k: i64, tau: &BigRational) -> IntMatrix {
    let pos = |deg: i64| -> Vec<usize> {
        c.in_degree(deg).iter().enumerate().filter(|(_, &g)| c.action(g) <= tau).map(|(p, _)| p).collect()
    };
    let (sk, skm1) = (pos(k), pos(k - 1));
    let basis = kernel_basis(&c.boundary_matrix(k).select_rows(&skm1).select_columns(&sk), ring);
    let mut full = IntMatrix::zeros(c.in_degree(k).len(), basis.cols());
    for (pp, &p) in sk.iter().enumerate() {
        for j in 0..basis.cols() {
            full[(p, j)] = basis[(pp, j)].clone();
        }
    }
    full
}

/// First sublevel cycle of `C^{<= tau}` on which the functional of `a` is
/// nonzero in the ring, if any.
fn detecting_cycle(c: &FilteredComplex, ring: Ring, k: i64, arep: &[BigInt], tau: &BigRational) -> Option<Vec<BigInt>> {
    let cycles = sublevel_cycles(c, ring, k, tau);
    (0..cycles.cols())
        .map(|j| cycles.column(j))
        .find(|z| !ring.reduce_int(&dot(arep, z)).is_zero())
}

/// `inf { c_R(C, b) : ⟨a, b⟩ != 0 }` computed level by level: the least
/// critical value at which the pairing functional of the dual class `a` is
/// nonzero on the image of the sublevel homology. `+inf` when the functional
/// vanishes on all of `H(C)`.
pub fn pairing_threshold(c: &FilteredComplex, a: &HomologyClass) -> Result<SpectralValue> {
    let dual = c.dual();
    let arep = rep_of(&dual, a)?;
    let k = c.top_degree() - a.degree;
    Ok(c.critical_values()
        .into_iter()
        .find(|t| detecting_cycle(c, a.ring, k, &arep, t).is_some())
        .map_or(SpectralValue::PosInfinity, SpectralValue::Finite))
}

/// An integral class of `C` realising the pairing threshold of the dual
/// class `a`: a cycle at that level with nonzero pairing.
pub fn realizing_class(c: &FilteredComplex, a: &HomologyClass) -> Result<Option<HomologyClass>> {
    let dual = c.dual();
    let arep = rep_of(&dual, a)?;
    let k = c.top_degree() - a.degree;
    let SpectralValue::Finite(t) = pairing_threshold(c, a)? else { return Ok(None) };
    let z = detecting_cycle(c, Ring::Integers, k, &arep, &t).ok_or_else(|| {
        Error::ClassMismatch("no integral cycle detects the class at its threshold".into())
    })?;
    homology(c, Ring::Integers, k, &Level::Infinite).class_of_int_chain(&z).map(Some)
}

/// `γ_R = c_R(C, a) + c_R(C*, a*)`.
pub fn spectral_norm(c: &FilteredComplex, a: &HomologyClass, a_dual: &HomologyClass) -> Result<BigRational> {
    if a.is_zero() || a_dual.is_zero() {
        return Err(Error::ZeroClass);
    }
    let x = spectral_invariant(c, a)?;
    let y = spectral_invariant(&c.dual(), a_dual)?;
    match (x, y) {
        (SpectralValue::Finite(x), SpectralValue::Finite(y)) => Ok(x + y),
        _ => Err(Error::ZeroClass),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::fixtures::e1;
    use crate::complex::{change_ring_class, Generator};

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn e1_classes(ring: Ring) -> (HomologyClass, HomologyClass, HomologyClass) {
        let c = e1();
        let h = homology(&c, Ring::Integers, 0, &Level::Infinite);
        let hd = homology(&c.dual(), Ring::Integers, 1, &Level::Infinite);
        let u = h.class_of_int_chain(&ints(&[1, 0])).unwrap();
        let v = h.class_of_int_chain(&ints(&[0, 1])).unwrap();
        let a = hd.class_of_int_chain(&ints(&[2, 1])).unwrap();
        let d = c.dual();
        (
            change_ring_class(&c, &u, ring).unwrap(),
            change_ring_class(&c, &v, ring).unwrap(),
            change_ring_class(&d, &a, ring).unwrap(),
        )
    }

    #[test]
    fn e1_pairings() {
        let (u, v, a) = e1_classes(Ring::Integers);
        let c = e1();
        assert_eq!(pd_pairing(&c, &a, &u).unwrap(), BigRational::from_integer(2.into()));
        assert_eq!(pd_pairing(&c, &a, &v).unwrap(), BigRational::from_integer(1.into()));
        let zero = homology(&c, Ring::Integers, 0, &Level::Infinite).zero_class();
        assert!(pd_pairing(&c, &a, &zero).unwrap().is_zero());
        assert!(pd_pairing(&c, &a, &a).is_err());
    }

    #[test]
    fn e1_norms() {
        let c = e1();
        let (_, v, a) = e1_classes(Ring::Integers);
        assert_eq!(spectral_norm(&c, &v, &a).unwrap(), BigRational::from_integer(1.into()));
        let (_, v, a) = e1_classes(Ring::Rationals);
        assert_eq!(spectral_norm(&c, &v, &a).unwrap(), BigRational::zero());
    }

    #[test]
    fn e1_thresholds() {
        let c = e1();
        for ring in [Ring::Rationals, Ring::IntegersMod(3), Ring::Integers] {
            let (_, _, a) = e1_classes(ring);
            assert_eq!(pairing_threshold(&c, &a).unwrap(), SpectralValue::int(0), "{ring}");
            assert_eq!(spectral_invariant(&c.dual(), &a).unwrap(), SpectralValue::int(0), "{ring}");
        }
        let (_, _, a) = e1_classes(Ring::Integers);
        let b = realizing_class(&c, &a).unwrap().unwrap();
        assert_eq!(spectral_invariant(&c, &b).unwrap(), SpectralValue::int(0));
    }

    #[test]
    fn one_generator_norm() {
        let g = Generator { id: "p".into(), degree: 1, action: BigRational::new(7.into(), 3.into()) };
        let c = FilteredComplex::new(2, vec![g], &[]).unwrap();
        let a = homology(&c, Ring::Integers, 1, &Level::Infinite).generator(0);
        let b = homology(&c.dual(), Ring::Integers, 1, &Level::Infinite).generator(0);
        assert_eq!(spectral_norm(&c, &a, &b).unwrap(), BigRational::zero());
        assert_eq!(pairing_threshold(&c, &b).unwrap(), SpectralValue::Finite(BigRational::new(7.into(), 3.into())));
    }
}
