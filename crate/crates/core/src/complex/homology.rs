//! Homology presentations of sublevel and quotient complexes with explicit
//! cycle lifts.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{FilteredComplex, Level};
use crate::abelian::{FgAbelianGroup, GroupHom};
use crate::error::{Error, Result};
use crate::linalg::{kernel_basis, left_inverse, smith_normal_form, IntMatrix, RatMatrix, Ring};

/// Which generators span the complex whose homology is taken.
#[derive(Debug, Clone, PartialEq, Eq)]
enum Region {
    /// action `<= τ`
    Sublevel(Level),
    /// action `> τ`, i.e. `C / C^{<= τ}`
    Quotient(Level),
}

impl Region {
    fn contains(&self, action: &BigRational) -> bool {
        match self {
            Region::Sublevel(Level::Infinite) => true,
            Region::Sublevel(Level::Finite(t)) => action <= t,
            Region::Quotient(Level::Infinite) => false,
            Region::Quotient(Level::Finite(t)) => action > t,
        }
    }
}

/// `H_k` of a sublevel (or quotient) complex over a ring, presented as
/// `⊕ ℤ/d_i` with `d_i = 0` for free summands. Generator `i` is the class of
/// the integer cycle in column `i` of `lifts`.
#[derive(Debug, Clone)]
pub struct Homology {
    ring: Ring,
    degree: i64,
    level: Level,
    relative: bool,
    group: FgAbelianGroup,
    orders: Vec<BigInt>,
    lifts: IntMatrix,
    coord_map: RatMatrix,
    support: Vec<bool>,
    /// boundary in degree `k - 1` coordinates restricted to the region
    dk: IntMatrix,
}

/// Element of a computed homology group, with canonical coordinates
/// (torsion coordinates reduced into `0..d`).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HomologyClass {
    pub ring: Ring,
    pub degree: i64,
    pub level: Level,
    pub coords: Vec<BigRational>,
}

impl HomologyClass {
    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    /// Integer coordinates; valid for every ring because presentation
    /// coordinates of integral cycles are integral.
    pub fn int_coords(&self) -> Result<Vec<BigInt>> {
        self.coords
            .iter()
            .map(|c| {
                if c.is_integer() {
                    Ok(c.to_integer())
                } else {
                    Err(Error::ClassMismatch(format!("non-integral coordinate {c}")))
                }
            })
            .collect()
    }
}

impl Homology {
    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn level(&self) -> &Level {
        &self.level
    }

    pub fn is_relative(&self) -> bool {
        self.relative
    }

    pub fn group(&self) -> &FgAbelianGroup {
        &self.group
    }

    pub fn ngens(&self) -> usize {
        self.orders.len()
    }

    /// Order of each presentation generator; zero marks a free generator.
    pub fn orders(&self) -> &[BigInt] {
        &self.orders
    }

    /// Nontrivial finite orders (torsion invariant factors up to regrouping).
    pub fn torsion_orders(&self) -> Vec<BigInt> {
        self.orders.iter().filter(|d| !d.is_zero()).cloned().collect()
    }

    pub fn free_rank(&self) -> usize {
        self.orders.iter().filter(|d| d.is_zero()).count()
    }

    /// Cycle lifts as columns in degree-`k` generator coordinates.
    pub fn lifts(&self) -> &IntMatrix {
        &self.lifts
    }

    fn reduce(&self, coords: Vec<BigRational>) -> Vec<BigRational> {
        coords
            .into_iter()
            .zip(&self.orders)
            .map(|(c, d)| {
                if d.is_zero() {
                    c
                } else {
                    BigRational::from_integer(c.to_integer().mod_floor(d))
                }
            })
            .collect()
    }

    pub fn zero_class(&self) -> HomologyClass {
        self.class_from_coords(vec![BigRational::zero(); self.ngens()]).expect("length matches")
    }

    /// The class of generator `i`.
    pub fn generator(&self, i: usize) -> HomologyClass {
        let mut v = vec![BigRational::zero(); self.ngens()];
        v[i] = BigRational::one();
        self.class_from_coords(v).expect("length matches")
    }

    pub fn generators(&self) -> Vec<HomologyClass> {
        (0..self.ngens()).map(|i| self.generator(i)).collect()
    }

    pub fn class_from_coords(&self, coords: Vec<BigRational>) -> Result<HomologyClass> {
        if coords.len() != self.ngens() {
            return Err(Error::dims(format!(
                "class has {} coordinates, homology has {} generators",
                coords.len(),
                self.ngens()
            )));
        }
        if self.ring != Ring::Rationals && coords.iter().any(|c| !c.is_integer()) {
            return Err(Error::ClassMismatch(format!("fractional coordinates over {}", self.ring)));
        }
        Ok(HomologyClass {
            ring: self.ring,
            degree: self.degree,
            level: self.level.clone(),
            coords: self.reduce(coords),
        })
    }

    pub fn class_from_ints(&self, coords: &[BigInt]) -> Result<HomologyClass> {
        self.class_from_coords(coords.iter().cloned().map(BigRational::from_integer).collect())
    }

    /// Class of a chain given in degree-`k` generator coordinates. The chain
    /// must be supported in the region and be a cycle over the ring.
    pub fn class_of_chain(&self, chain: &[BigRational]) -> Result<HomologyClass> {
        if chain.len() != self.support.len() {
            return Err(Error::dims(format!(
                "chain has {} entries, degree {} has {} generators",
                chain.len(),
                self.degree,
                self.support.len()
            )));
        }
        let ring = self.ring;
        if ring != Ring::Rationals && chain.iter().any(|c| !c.is_integer()) {
            return Err(Error::ClassMismatch(format!("fractional chain over {ring}")));
        }
        let mut local = Vec::new();
        for (c, &inside) in chain.iter().zip(&self.support) {
            if inside {
                local.push(c.clone());
            } else if !ring.is_zero_rat(c) {
                return Err(Error::ClassMismatch(format!(
                    "chain is not supported at level {}",
                    self.level
                )));
            }
        }
        let bd = self.dk.to_rational().mul_vec(&local);
        if bd.iter().any(|x| !ring.is_zero_rat(x)) {
            let shown: Vec<String> = bd.iter().map(ToString::to_string).collect();
            return Err(Error::NotACycle(format!("[{}]", shown.join(", "))));
        }
        let mut full = vec![BigRational::zero(); chain.len()];
        let mut it = local.into_iter();
        for (slot, &inside) in full.iter_mut().zip(&self.support) {
            if inside {
                *slot = it.next().expect("support count");
            }
        }
        let coords = self.coord_map.mul_vec(&full);
        self.class_from_coords(coords)
    }

    pub fn class_of_int_chain(&self, chain: &[BigInt]) -> Result<HomologyClass> {
        let q: Vec<BigRational> = chain.iter().cloned().map(BigRational::from_integer).collect();
        self.class_of_chain(&q)
    }

    /// A cycle representing the class, in degree-`k` generator coordinates.
    pub fn representative(&self, a: &HomologyClass) -> Result<Vec<BigRational>> {
        self.check_class(a)?;
        Ok(self.lifts.to_rational().mul_vec(&a.coords))
    }

    /// Integer representative; fails only for fractional ℚ-classes.
    pub fn int_representative(&self, a: &HomologyClass) -> Result<Vec<BigInt>> {
        self.check_class(a)?;
        Ok(self.lifts.mul_vec(&a.int_coords()?))
    }

    pub fn check_class(&self, a: &HomologyClass) -> Result<()> {
        if a.ring != self.ring || a.degree != self.degree || a.coords.len() != self.ngens() {
            return Err(Error::ClassMismatch(format!(
                "class over {} in degree {} with {} coordinates does not live in H_{}({}) with {} generators",
                a.ring,
                a.degree,
                a.coords.len(),
                self.degree,
                self.ring,
                self.ngens()
            )));
        }
        Ok(())
    }

    pub fn add(&self, a: &HomologyClass, b: &HomologyClass) -> Result<HomologyClass> {
        self.check_class(a)?;
        self.check_class(b)?;
        self.class_from_coords(a.coords.iter().zip(&b.coords).map(|(x, y)| x + y).collect())
    }

    pub fn scale(&self, a: &HomologyClass, k: &BigInt) -> Result<HomologyClass> {
        self.check_class(a)?;
        let k = BigRational::from_integer(k.clone());
        self.class_from_coords(a.coords.iter().map(|x| x * &k).collect())
    }
}

fn compute(c: &FilteredComplex, ring: Ring, k: i64, region: Region) -> Homology {
    let inside = |i: &usize| region.contains(c.action(*i));
    let positions = |deg: i64| -> Vec<usize> {
        c.in_degree(deg).iter().enumerate().filter(|(_, g)| inside(g)).map(|(p, _)| p).collect()
    };
    let (sk, skm1, skp1) = (positions(k), positions(k - 1), positions(k + 1));
    let n = c.in_degree(k).len();
    let mut support = vec![false; n];
    for &p in &sk {
        support[p] = true;
    }

    let dk = c.boundary_matrix(k).select_rows(&skm1).select_columns(&sk);
    let mut bd = c.boundary_matrix(k + 1).select_rows(&sk).select_columns(&skp1);
    if let Some(m) = ring.modulus() {
        bd = bd.hcat(&IntMatrix::diagonal(sk.len(), sk.len(), &vec![m; sk.len()]));
    }
    let cycles = kernel_basis(&dk, ring);
    let r = cycles.cols();
    let kinv = left_inverse(&cycles).expect("kernel basis has full column rank");
    let rel = kinv.mul(&bd.to_rational()).map(|x| {
        assert!(x.is_integer(), "boundaries lie in the cycle lattice");
        x.to_integer()
    });
    let s = smith_normal_form(&rel);
    let keep: Vec<usize> = (0..r)
        .filter(|&i| {
            let d = s.diag(i);
            match ring {
                Ring::Rationals => d.is_zero(),
                _ => !d.is_one(),
            }
        })
        .collect();
    let orders: Vec<BigInt> = match ring {
        Ring::Rationals => vec![BigInt::zero(); keep.len()],
        _ => keep.iter().map(|&i| s.diag(i)).collect(),
    };

    let local_lifts = cycles.mul(&s.u_inv.select_columns(&keep));
    let mut lifts = IntMatrix::zeros(n, keep.len());
    for (pp, &p) in sk.iter().enumerate() {
        for j in 0..keep.len() {
            lifts[(p, j)] = local_lifts[(pp, j)].clone();
        }
    }
    let local_map = s.u.select_rows(&keep).to_rational().mul(&kinv);
    let mut coord_map = RatMatrix::zeros(keep.len(), n);
    for i in 0..keep.len() {
        for (pp, &p) in sk.iter().enumerate() {
            coord_map[(i, p)] = local_map[(i, pp)].clone();
        }
    }

    let (level, relative) = match region {
        Region::Sublevel(l) => (l, false),
        Region::Quotient(l) => (l, true),
    };
    Homology {
        ring,
        degree: k,
        level,
        relative,
        group: FgAbelianGroup::from_orders(&orders),
        orders,
        lifts,
        coord_map,
        support,
        dk,
    }
}

/// `H_k(C^{<= τ}; R)`; `Level::Infinite` gives the homology of `C`.
pub fn homology(c: &FilteredComplex, ring: Ring, degree: i64, level: &Level) -> Homology {
    compute(c, ring, degree, Region::Sublevel(level.clone()))
}

/// `H_k(C / C^{<= τ}; R)`, the homology of the generators above `τ`.
pub fn relative_homology(c: &FilteredComplex, ring: Ring, degree: i64, level: &Level) -> Homology {
    compute(c, ring, degree, Region::Quotient(level.clone()))
}

/// Matrix of `i_{τ,τ'}` between two already computed sublevel homologies.
pub(crate) fn map_between(source: &Homology, target: &Homology) -> IntMatrix {
    let m = target.coord_map.mul(&source.lifts.to_rational());
    let mut out = m.map(|x| {
        assert!(x.is_integer(), "integral cycles have integral coordinates");
        x.to_integer()
    });
    for (i, d) in target.orders.iter().enumerate() {
        if !d.is_zero() {
            for j in 0..out.cols() {
                let v = out[(i, j)].mod_floor(d);
                out[(i, j)] = v;
            }
        }
    }
    out
}

/// `i_{τ,τ'}: H_k(C^{<= τ}) -> H_k(C^{<= τ'})` in the computed presentations.
pub fn induced_map(c: &FilteredComplex, ring: Ring, degree: i64, from: &Level, to: &Level) -> Result<GroupHom> {
    if from > to {
        return Err(Error::LevelOrder { from: from.to_string(), to: to.to_string() });
    }
    let a = homology(c, ring, degree, from);
    let b = homology(c, ring, degree, to);
    Ok(induced_between(&a, &b))
}

pub(crate) fn induced_between(a: &Homology, b: &Homology) -> GroupHom {
    GroupHom::new_unchecked(a.group.clone(), b.group.clone(), map_between(a, b))
}

/// Pushes a class along a coefficient map `ℤ -> ℚ`, `ℤ -> ℤ/m` or
/// `ℤ/m -> ℤ/d` with `d | m` (identity maps are accepted too).
pub fn change_ring_class(c: &FilteredComplex, a: &HomologyClass, target: Ring) -> Result<HomologyClass> {
    let supported = match (a.ring, target) {
        (x, y) if x == y => true,
        (Ring::Integers, _) => true,
        (Ring::IntegersMod(m), Ring::IntegersMod(d)) => m % d == 0,
        _ => false,
    };
    if !supported {
        return Err(Error::UnsupportedRingMap { from: a.ring.to_string(), to: target.to_string() });
    }
    let source = homology(c, a.ring, a.degree, &a.level);
    let rep = source.representative(a)?;
    homology(c, target, a.degree, &a.level).class_of_chain(&rep)
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::{e1, e2};
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn e1_degree_zero_over_z() {
        let h = homology(&e1(), Ring::Integers, 0, &Level::Infinite);
        assert_eq!(h.group().normal_form().to_string(), "Z");
        let u = h.class_of_int_chain(&ints(&[1, 0])).unwrap();
        let v = h.class_of_int_chain(&ints(&[0, 1])).unwrap();
        assert_eq!(u, h.scale(&v, &BigInt::from(2)).unwrap());
        assert!(!v.is_zero());
    }

    #[test]
    fn e2_torsion_window() {
        let c = e2();
        for t in [2, 3, 4] {
            let h = homology(&c, Ring::Integers, 0, &Level::int(t));
            assert_eq!(h.group().normal_form().to_string(), "Z/2");
        }
        assert_eq!(homology(&c, Ring::Integers, 0, &Level::int(1)).group().normal_form().to_string(), "Z");
        assert!(homology(&c, Ring::Integers, 0, &Level::int(5)).group().is_trivial());
        assert!(homology(&c, Ring::Integers, 7, &Level::Infinite).group().is_trivial());
    }

    #[test]
    fn e2_reduction_map() {
        let f = induced_map(&e2(), Ring::Integers, 0, &Level::int(1), &Level::int(3)).unwrap();
        assert_eq!(f.matrix(), &IntMatrix::from_i64_rows(&[&[1]]));
        assert_eq!(f.target().normal_form().to_string(), "Z/2");
    }

    #[test]
    fn e1_inclusion_doubles() {
        let c = e1();
        let f = induced_map(&c, Ring::Integers, 0, &Level::int(0), &Level::Infinite).unwrap();
        let h0 = homology(&c, Ring::Integers, 0, &Level::int(0));
        let u0 = h0.class_of_int_chain(&ints(&[1, 0])).unwrap();
        let image = f.apply(&u0.int_coords().unwrap()).unwrap();
        let h = homology(&c, Ring::Integers, 0, &Level::Infinite);
        let v = h.class_of_int_chain(&ints(&[0, 1])).unwrap();
        let two_v = h.scale(&v, &BigInt::from(2)).unwrap();
        assert_eq!(h.class_from_ints(&image).unwrap(), two_v);
    }

    #[test]
    fn identity_and_order() {
        let c = e2();
        let f = induced_map(&c, Ring::Integers, 0, &Level::int(3), &Level::int(3)).unwrap();
        assert!(f.same_map(&GroupHom::identity(f.source())));
        assert!(induced_map(&c, Ring::Integers, 0, &Level::int(3), &Level::int(2)).is_err());
    }

    #[test]
    fn e2_h1_generator() {
        let h = homology(&e2(), Ring::Integers, 1, &Level::Infinite);
        assert_eq!(h.group().normal_form().to_string(), "Z");
        let a = h.class_of_int_chain(&ints(&[1, -2])).unwrap();
        assert!(!a.is_zero());
        assert!(h.class_of_int_chain(&ints(&[1, 0])).is_err());
    }

    #[test]
    fn ring_changes() {
        let c = e1();
        let h = homology(&c, Ring::Integers, 0, &Level::Infinite);
        let v = h.class_of_int_chain(&ints(&[0, 1])).unwrap();
        let v2 = change_ring_class(&c, &v, Ring::IntegersMod(2)).unwrap();
        assert!(!v2.is_zero());
        let hq = homology(&c, Ring::Rationals, 0, &Level::Infinite);
        let two_v = change_ring_class(&c, &h.scale(&v, &BigInt::from(2)).unwrap(), Ring::Rationals).unwrap();
        assert_eq!(two_v, hq.class_of_int_chain(&ints(&[1, 0])).unwrap());
        let zero = change_ring_class(&c, &h.zero_class(), Ring::IntegersMod(3)).unwrap();
        assert!(zero.is_zero());
        assert!(change_ring_class(&c, &two_v, Ring::Integers).is_err());
        let v6 = change_ring_class(&c, &v, Ring::IntegersMod(6)).unwrap();
        assert!(change_ring_class(&c, &v6, Ring::IntegersMod(4)).is_err());
        assert!(!change_ring_class(&c, &v6, Ring::IntegersMod(3)).unwrap().is_zero());
    }

    #[test]
    fn mod_two_kills_u() {
        let h = homology(&e1(), Ring::IntegersMod(2), 0, &Level::Infinite);
        assert_eq!(h.group().normal_form().to_string(), "Z/2");
        assert!(h.class_of_int_chain(&ints(&[1, 0])).unwrap().is_zero());
    }

    #[test]
    fn relative_groups() {
        // C / C^{<=2} for E2 is spanned by w alone, a cycle in degree 1
        let h = relative_homology(&e2(), Ring::Integers, 1, &Level::int(2));
        assert_eq!(h.group().normal_form().to_string(), "Z");
        let h = relative_homology(&e2(), Ring::Integers, 0, &Level::int(-1));
        assert!(h.group().is_trivial());
    }
}
