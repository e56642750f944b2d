//! Finitely generated abelian groups as explicit presentations, maps between
//! them, and the contravariant functor `Ext(-, ℤ)`.
//!
//! Groups are compared at the presentation level: two groups are "the same"
//! only when they have the same generators and relations. Diagrams that
//! compare images inside one fixed group rely on this.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{
    kernel_basis, lattice_basis, lattice_membership, smith_normal_form, solve_integer, IntMatrix,
    Ring,
};

/// `ℤ^ngens / (column span of relations)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FgAbelianGroup {
    ngens: usize,
    relations: IntMatrix,
}

/// Isomorphism type `ℤ^rank ⊕ ⊕ ℤ/d_i` with `2 <= d_1 | d_2 | ...`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NormalForm {
    pub rank: usize,
    pub torsion: Vec<BigInt>,
}

impl NormalForm {
    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }
}

impl std::fmt::Display for NormalForm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts = Vec::new();
        if self.rank > 0 {
            parts.push(if self.rank == 1 { "Z".to_string() } else { format!("Z^{}", self.rank) });
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

impl std::fmt::Debug for FgAbelianGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "<{} gens | {:?}>", self.ngens, self.relations)
    }
}

impl FgAbelianGroup {
    pub fn new(ngens: usize, relations: IntMatrix) -> Result<Self> {
        if relations.rows() != ngens {
            return Err(Error::dims(format!(
                "relation matrix has {} rows for {ngens} generators",
                relations.rows()
            )));
        }
        Ok(FgAbelianGroup { ngens, relations })
    }

    pub fn free(rank: usize) -> Self {
        FgAbelianGroup { ngens: rank, relations: IntMatrix::zeros(rank, 0) }
    }

    pub fn trivial() -> Self {
        Self::free(0)
    }

    /// One generator per entry; entry `d` contributes a relation `d * g`
    /// unless it is zero (free generator).
    pub fn from_orders(orders: &[BigInt]) -> Self {
        let n = orders.len();
        let cols: Vec<Vec<BigInt>> = orders
            .iter()
            .enumerate()
            .filter(|(_, d)| !d.is_zero())
            .map(|(i, d)| {
                let mut c = vec![BigInt::zero(); n];
                c[i] = d.clone();
                c
            })
            .collect();
        FgAbelianGroup { ngens: n, relations: IntMatrix::from_columns(n, &cols) }
    }

    pub fn ngens(&self) -> usize {
        self.ngens
    }

    pub fn relations(&self) -> &IntMatrix {
        &self.relations
    }

    pub fn normal_form(&self) -> NormalForm {
        let s = smith_normal_form(&self.relations);
        let torsion = s.invariant_factors().into_iter().filter(|d| !d.is_one()).collect();
        NormalForm { rank: self.ngens - s.rank, torsion }
    }

    pub fn is_trivial(&self) -> bool {
        self.normal_form().is_trivial()
    }

    /// Whether the coordinate vector `v` is zero in the group.
    pub fn is_zero_element(&self, v: &[BigInt]) -> bool {
        lattice_membership(&self.relations, v).expect("vector length checked by caller")
    }

    pub fn elements_equal(&self, a: &[BigInt], b: &[BigInt]) -> bool {
        let diff: Vec<BigInt> = a.iter().zip(b).map(|(x, y)| x - y).collect();
        self.is_zero_element(&diff)
    }

    fn check_vec(&self, v: &[BigInt]) -> Result<()> {
        if v.len() != self.ngens {
            return Err(Error::dims(format!("element has {} coordinates, group {}", v.len(), self.ngens)));
        }
        Ok(())
    }

    /// `ℤ^ngens -> G` resolution with injective relation matrix: the
    /// null SNF directions of the relation matrix are dropped.
    fn injective_relations(&self) -> IntMatrix {
        let s = smith_normal_form(&self.relations);
        let rv = self.relations.mul(&s.v);
        rv.select_columns(&(0..s.rank).collect::<Vec<_>>())
    }
}

/// Homomorphism given on generators: column `j` of `matrix` is the image of
/// source generator `j` in target coordinates.
#[derive(Clone, PartialEq, Eq)]
pub struct GroupHom {
    source: FgAbelianGroup,
    target: FgAbelianGroup,
    matrix: IntMatrix,
}

impl std::fmt::Debug for GroupHom {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:?} -> {:?} via {:?}", self.source, self.target, self.matrix)
    }
}

impl GroupHom {
    /// Checks the well-definedness invariant: every source relation maps into
    /// the target relation lattice.
    pub fn new(source: FgAbelianGroup, target: FgAbelianGroup, matrix: IntMatrix) -> Result<Self> {
        if matrix.rows() != target.ngens || matrix.cols() != source.ngens {
            return Err(Error::dims(format!(
                "hom matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                target.ngens,
                source.ngens
            )));
        }
        let images = matrix.mul(&source.relations);
        for j in 0..images.cols() {
            if !target.is_zero_element(&images.column(j)) {
                return Err(Error::InvalidHom(format!("source relation {j} does not map to zero")));
            }
        }
        Ok(GroupHom { source, target, matrix })
    }

    pub(crate) fn new_unchecked(source: FgAbelianGroup, target: FgAbelianGroup, matrix: IntMatrix) -> Self {
        debug_assert_eq!(matrix.rows(), target.ngens);
        debug_assert_eq!(matrix.cols(), source.ngens);
        GroupHom { source, target, matrix }
    }

    pub fn identity(g: &FgAbelianGroup) -> Self {
        GroupHom { source: g.clone(), target: g.clone(), matrix: IntMatrix::identity(g.ngens) }
    }

    pub fn source(&self) -> &FgAbelianGroup {
        &self.source
    }

    pub fn target(&self) -> &FgAbelianGroup {
        &self.target
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn apply(&self, v: &[BigInt]) -> Result<Vec<BigInt>> {
        self.source.check_vec(v)?;
        Ok(self.matrix.mul_vec(v))
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &GroupHom) -> Result<GroupHom> {
        if first.target != self.source {
            return Err(Error::InvalidHom("composition of non-composable maps".into()));
        }
        Ok(GroupHom {
            source: first.source.clone(),
            target: self.target.clone(),
            matrix: self.matrix.mul(&first.matrix),
        })
    }

    /// Equality as maps: same presentations, generator images agree modulo
    /// target relations.
    pub fn same_map(&self, other: &GroupHom) -> bool {
        self.source == other.source
            && self.target == other.target
            && (0..self.source.ngens)
                .all(|j| self.target.elements_equal(&self.matrix.column(j), &other.matrix.column(j)))
    }

    pub fn is_surjective(&self) -> bool {
        let lattice = self.matrix.hcat(&self.target.relations);
        (0..self.target.ngens).all(|i| {
            let mut e = vec![BigInt::zero(); self.target.ngens];
            e[i] = BigInt::one();
            lattice_membership(&lattice, &e).expect("dimensions agree")
        })
    }

    /// Lattice `{x : f(x) = 0}` in source coordinates (contains the source
    /// relations).
    fn kernel_lattice(&self) -> IntMatrix {
        let joint = self.matrix.hcat(&self.target.relations.map(|x| -x));
        let k = kernel_basis(&joint, Ring::Integers);
        let head: Vec<usize> = (0..self.source.ngens).collect();
        lattice_basis(&k.select_rows(&head))
    }
}

/// Kernel as a group on a basis of the kernel lattice, with its inclusion.
pub fn hom_kernel(f: &GroupHom) -> (FgAbelianGroup, GroupHom) {
    let basis = f.kernel_lattice();
    let rels: Vec<Vec<BigInt>> = f
        .source
        .relations
        .columns()
        .iter()
        .map(|r| solve_integer(&basis, r).unwrap().expect("relations lie in the kernel lattice"))
        .collect();
    let group = FgAbelianGroup {
        ngens: basis.cols(),
        relations: IntMatrix::from_columns(basis.cols(), &rels),
    };
    let inclusion = GroupHom::new_unchecked(group.clone(), f.source.clone(), basis);
    (group, inclusion)
}

/// Image as `source / kernel` on the source generators, with its inclusion
/// into the target.
pub fn hom_image(f: &GroupHom) -> (FgAbelianGroup, GroupHom) {
    let group = FgAbelianGroup { ngens: f.source.ngens, relations: f.kernel_lattice() };
    let inclusion = GroupHom::new_unchecked(group.clone(), f.target.clone(), f.matrix.clone());
    (group, inclusion)
}

/// Cokernel on the target generators, with the quotient projection.
pub fn hom_cokernel(f: &GroupHom) -> (FgAbelianGroup, GroupHom) {
    let group = FgAbelianGroup {
        ngens: f.target.ngens,
        relations: f.target.relations.hcat(&f.matrix),
    };
    let projection =
        GroupHom::new_unchecked(f.target.clone(), group.clone(), IntMatrix::identity(f.target.ngens));
    (group, projection)
}

/// `Ext(G, ℤ)` together with the injective resolution it was computed from,
/// `0 -> ℤ^m --R--> ℤ^n -> G -> 0`; the group is `coker(R^T)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtGroup {
    group: FgAbelianGroup,
    resolution: IntMatrix,
}

impl ExtGroup {
    pub fn group(&self) -> &FgAbelianGroup {
        &self.group
    }
}

pub fn ext_object(g: &FgAbelianGroup) -> ExtGroup {
    let resolution = g.injective_relations();
    let group = FgAbelianGroup { ngens: resolution.cols(), relations: resolution.transpose() };
    ExtGroup { group, resolution }
}

/// `Ext(f, ℤ): Ext(B) -> Ext(A)` for `f: A -> B`, by lifting `f` to the
/// resolutions (`F R_A = R_B G`) and transposing the lift on relations.
pub fn ext_map(f: &GroupHom) -> GroupHom {
    let ext_a = ext_object(&f.source);
    let ext_b = ext_object(&f.target);
    let fr = f.matrix.mul(&ext_a.resolution);
    let lift: Vec<Vec<BigInt>> = fr
        .columns()
        .iter()
        .map(|c| {
            solve_integer(&ext_b.resolution, c)
                .unwrap()
                .expect("a valid hom maps relations into the target relation lattice")
        })
        .collect();
    let g = IntMatrix::from_columns(ext_b.resolution.cols(), &lift);
    GroupHom::new_unchecked(ext_b.group, ext_a.group, g.transpose())
}

/// Whether `f` and `g` (same target presentation) have the same image.
pub fn image_lattices_equal(f: &GroupHom, g: &GroupHom) -> Result<bool> {
    if f.target != g.target {
        return Err(Error::InvalidHom("images compared in different target presentations".into()));
    }
    let rel = &f.target.relations;
    let lf = f.matrix.hcat(rel);
    let lg = g.matrix.hcat(rel);
    let f_in_g = (0..f.matrix.cols()).all(|j| lattice_membership(&lg, &f.matrix.column(j)).unwrap());
    let g_in_f = (0..g.matrix.cols()).all(|j| lattice_membership(&lf, &g.matrix.column(j)).unwrap());
    Ok(f_in_g && g_in_f)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn nf(rank: usize, tors: &[i64]) -> NormalForm {
        NormalForm { rank, torsion: big(tors) }
    }

    fn z_mod(d: i64) -> FgAbelianGroup {
        FgAbelianGroup::from_orders(&big(&[d]))
    }

    #[test]
    fn normal_forms() {
        assert_eq!(z_mod(2).normal_form(), nf(0, &[2]));
        assert_eq!(FgAbelianGroup::free(2).normal_form(), nf(2, &[]));
        let g = FgAbelianGroup::new(2, IntMatrix::from_i64_rows(&[&[2, 4], &[6, 8]])).unwrap();
        assert_eq!(g.normal_form(), nf(0, &[2, 4]));
        assert_eq!(nf(1, &[2, 4]).to_string(), "Z + Z/2 + Z/4");
    }

    #[test]
    fn identity_kernel_cokernel() {
        let g = FgAbelianGroup::from_orders(&big(&[0, 6]));
        let id = GroupHom::identity(&g);
        assert!(hom_kernel(&id).0.is_trivial());
        assert!(hom_cokernel(&id).0.is_trivial());
        assert_eq!(hom_image(&id).0.normal_form(), g.normal_form());
    }

    #[test]
    fn doubling_on_z() {
        let z = FgAbelianGroup::free(1);
        let f = GroupHom::new(z.clone(), z, IntMatrix::from_i64_rows(&[&[2]])).unwrap();
        assert_eq!(hom_cokernel(&f).0.normal_form(), nf(0, &[2]));
        assert!(hom_kernel(&f).0.is_trivial());
        assert!(!f.is_surjective());
    }

    #[test]
    fn z2_into_z4() {
        let f = GroupHom::new(z_mod(2), z_mod(4), IntMatrix::from_i64_rows(&[&[2]])).unwrap();
        assert!(hom_kernel(&f).0.is_trivial());
        assert_eq!(hom_cokernel(&f).0.normal_form(), nf(0, &[2]));
        assert_eq!(hom_image(&f).0.normal_form(), nf(0, &[2]));
        // 1 -> 1 is not well defined
        assert!(GroupHom::new(z_mod(2), z_mod(4), IntMatrix::from_i64_rows(&[&[1]])).is_err());
    }

    #[test]
    fn z2_into_z4_by_enumeration() {
        // The only homs Z/2 -> Z/4 send 1 to 0 or 2; the kernel is trivial
        // exactly for 1 -> 2 and the image then has two elements.
        let f = GroupHom::new(z_mod(2), z_mod(4), IntMatrix::from_i64_rows(&[&[2]])).unwrap();
        let image: std::collections::BTreeSet<i64> =
            (0..2i64).map(|x| (2 * x).rem_euclid(4)).collect();
        assert_eq!(image.len(), 2);
        let coker_order: i64 = 4 / image.len() as i64;
        assert_eq!(hom_cokernel(&f).0.normal_form(), nf(0, &[coker_order]));
    }

    #[test]
    fn ext_objects() {
        assert!(ext_object(&FgAbelianGroup::free(2)).group().is_trivial());
        assert_eq!(ext_object(&z_mod(2)).group().normal_form(), nf(0, &[2]));
        let g = FgAbelianGroup::from_orders(&big(&[0, 2, 4]));
        assert_eq!(ext_object(&g).group().normal_form(), nf(0, &[2, 4]));
    }

    #[test]
    fn ext_of_identity_is_identity() {
        let g = z_mod(6);
        let e = ext_map(&GroupHom::identity(&g));
        assert!(e.same_map(&GroupHom::identity(e.source())));
    }

    #[test]
    fn ext_of_z2_into_z4_is_surjection() {
        let f = GroupHom::new(z_mod(2), z_mod(4), IntMatrix::from_i64_rows(&[&[2]])).unwrap();
        let e = ext_map(&f);
        assert_eq!(e.source().normal_form(), nf(0, &[4]));
        assert_eq!(e.target().normal_form(), nf(0, &[2]));
        assert!(e.is_surjective());
    }

    #[test]
    fn ext_of_surjection_from_free() {
        let f = GroupHom::new(FgAbelianGroup::free(1), z_mod(2), IntMatrix::from_i64_rows(&[&[1]])).unwrap();
        let e = ext_map(&f);
        assert!(e.target().is_trivial());
        assert_eq!(e.source().normal_form(), nf(0, &[2]));
    }

    #[test]
    fn image_equality() {
        let z = FgAbelianGroup::free(1);
        let by = |k: i64| GroupHom::new(z.clone(), z.clone(), IntMatrix::from_i64_rows(&[&[k]])).unwrap();
        assert!(image_lattices_equal(&by(2), &by(2)).unwrap());
        assert!(!image_lattices_equal(&by(2), &by(4)).unwrap());
        assert!(image_lattices_equal(&by(2), &by(-2)).unwrap());
        let other = GroupHom::new(z.clone(), z_mod(2), IntMatrix::from_i64_rows(&[&[1]])).unwrap();
        assert!(image_lattices_equal(&by(1), &other).is_err());
    }
}
