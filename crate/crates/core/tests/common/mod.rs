//! Brute-force oracles shared by the integration tests. They only use
//! homology presentations, induced maps and plain linear algebra, never the
//! spectral module.
#![allow(dead_code)]

use std::path::PathBuf;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use spectra::abelian::{ext_map, image_lattices_equal};
use spectra::complex::{from_json, homology, induced_map, FilteredComplex, HomologyClass, Level};
use spectra::linalg::{lattice_membership, solve_rational, Ring};
use spectra::spectral::SpectralValue;

pub fn fixture(name: &str) -> FilteredComplex {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name);
    from_json(&std::fs::read_to_string(path).unwrap()).unwrap()
}

pub fn q(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

pub fn ints(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

/// Whether the full-level class `a` lies in the image of `H(C^{<= t})`.
pub fn in_image(c: &FilteredComplex, a: &HomologyClass, t: &BigRational) -> bool {
    let f = induced_map(c, a.ring, a.degree, &Level::Finite(t.clone()), &Level::Infinite).unwrap();
    if a.ring == Ring::Rationals {
        solve_rational(&f.matrix().to_rational(), &a.coords).unwrap().is_some()
    } else {
        let gens = f.matrix().hcat(f.target().relations());
        lattice_membership(&gens, &a.int_coords().unwrap()).unwrap()
    }
}

/// Spectral invariant by scanning every critical value.
pub fn scan(c: &FilteredComplex, a: &HomologyClass) -> SpectralValue {
    if a.is_zero() {
        return SpectralValue::NegInfinity;
    }
    c.critical_values()
        .into_iter()
        .find(|t| in_image(c, a, t))
        .map(SpectralValue::Finite)
        .expect("every class is hit at the top level")
}

/// Integer representative of a full-level class, denominators cleared.
pub fn int_rep(c: &FilteredComplex, a: &HomologyClass) -> Vec<BigInt> {
    let rep = homology(c, a.ring, a.degree, &Level::Infinite).representative(a).unwrap();
    let den = rep.iter().fold(BigInt::one(), |acc, x| num_integer::lcm(acc, x.denom().clone()));
    rep.iter().map(|x| (x * BigRational::from_integer(den.clone())).to_integer()).collect()
}

fn nonzero_in(ring: Ring, x: &BigInt) -> bool {
    !ring.reduce_int(x).is_zero()
}

/// `inf { c_R(C, b) : <a, b> != 0 }` for a class `a` of the dual complex,
/// from the generating cycles of each sublevel homology.
pub fn pairing_inf(c: &FilteredComplex, a: &HomologyClass) -> SpectralValue {
    let z = int_rep(&c.dual(), a);
    let k = c.top_degree() - a.degree;
    for t in c.critical_values() {
        let h = homology(c, a.ring, k, &Level::Finite(t.clone()));
        let hit = (0..h.ngens()).any(|j| {
            let w = h.lifts().column(j);
            let dot: BigInt = z.iter().zip(&w).map(|(x, y)| x * y).sum();
            nonzero_in(a.ring, &dot)
        });
        if hit {
            return SpectralValue::Finite(t);
        }
    }
    SpectralValue::PosInfinity
}

/// Least `κ >= 0` among action differences such that at every critical
/// level `τ` the images of `Ext(i_τ)` and `Ext(i_{τ,τ+κ})` agree.
pub fn torsion_kappa(c: &FilteredComplex, k: i64) -> BigRational {
    let cv = c.critical_values();
    let mut kappas: Vec<BigRational> =
        cv.iter().flat_map(|a| cv.iter().map(move |b| a - b)).filter(|d| *d >= BigRational::zero()).collect();
    kappas.sort();
    kappas.dedup();
    let top = Level::Infinite;
    for kappa in kappas {
        let ok = cv.iter().all(|t| {
            let from = Level::Finite(t.clone());
            let full = ext_map(&induced_map(c, Ring::Integers, k, &from, &top).unwrap());
            let part = ext_map(&induced_map(c, Ring::Integers, k, &from, &Level::Finite(t + &kappa)).unwrap());
            image_lattices_equal(&full, &part).unwrap()
        });
        if ok {
            return kappa;
        }
    }
    unreachable!("the largest difference always works")
}

pub fn torsion_kappa_all(c: &FilteredComplex) -> BigRational {
    c.degrees().map(|k| torsion_kappa(c, k)).max().unwrap_or_else(BigRational::zero)
}

/// Integral generator classes of the full homology, every degree.
pub fn z_generators(c: &FilteredComplex) -> Vec<HomologyClass> {
    c.degrees().flat_map(|k| homology(c, Ring::Integers, k, &Level::Infinite).generators()).collect()
}

/// Generators over `ring`, every degree.
pub fn generators_over(c: &FilteredComplex, ring: Ring) -> Vec<HomologyClass> {
    c.degrees().flat_map(|k| homology(c, ring, k, &Level::Infinite).generators()).collect()
}

/// Pushes an integral class to `ring` through its representing cycle.
pub fn reduce_class(c: &FilteredComplex, a: &HomologyClass, ring: Ring) -> HomologyClass {
    let rep = homology(c, Ring::Integers, a.degree, &Level::Infinite).representative(a).unwrap();
    homology(c, ring, a.degree, &Level::Infinite).class_of_chain(&rep).unwrap()
}

/// `k a` for an integral class.
pub fn multiple(c: &FilteredComplex, a: &HomologyClass, k: &BigInt) -> HomologyClass {
    homology(c, Ring::Integers, a.degree, &Level::Infinite).scale(a, k).unwrap()
}

pub fn primes_up_to(n: u64) -> Vec<u64> {
    (2..=n).filter(|&p| (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0)).collect()
}
