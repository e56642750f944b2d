//! Pairs of filtration-shifting chain maps between two complexes.

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::complex::{homology, FilteredComplex, Level};
use crate::error::{Error, Result};
use crate::linalg::{IntMatrix, Ring};

/// `forward: F -> G` raising action by at most `s1`, `backward: G -> F`
/// raising action by at most `s2`. Matrices are indexed by generator
/// (column: source generator, row: target generator).
#[derive(Debug, Clone)]
pub struct Interleaving {
    pub f: FilteredComplex,
    pub g: FilteredComplex,
    pub forward: IntMatrix,
    pub backward: IntMatrix,
    pub s1: BigRational,
    pub s2: BigRational,
}

/// The full differential of a complex as a square generator-indexed matrix.
fn differential(c: &FilteredComplex) -> IntMatrix {
    let mut m = IntMatrix::zeros(c.len(), c.len());
    for s in 0..c.len() {
        for (t, coef) in c.boundary_of(s) {
            m[(*t, s)] = coef.clone();
        }
    }
    m
}

/// Restriction of a generator-indexed map to degree `k`, in degree-list
/// coordinates.
fn degree_block(m: &IntMatrix, src: &FilteredComplex, dst: &FilteredComplex, k: i64) -> IntMatrix {
    m.select_rows(dst.in_degree(k)).select_columns(src.in_degree(k))
}

fn check_map(
    name: &str,
    m: &IntMatrix,
    src: &FilteredComplex,
    dst: &FilteredComplex,
    shift: &BigRational,
) -> Result<()> {
    let bad = |msg: String| Err(Error::InvalidInterleaving(format!("{name}: {msg}")));
    if shift.is_negative() {
        return bad(format!("negative shift {shift}"));
    }
    if m.rows() != dst.len() || m.cols() != src.len() {
        return bad(format!("matrix is {}x{}, expected {}x{}", m.rows(), m.cols(), dst.len(), src.len()));
    }
    for t in 0..dst.len() {
        for s in 0..src.len() {
            if m[(t, s)].is_zero() {
                continue;
            }
            let (gs, gt) = (&src.generators()[s], &dst.generators()[t]);
            if gs.degree != gt.degree {
                return bad(format!("{} and {} have different degrees", gs.id, gt.id));
            }
            if gt.action > &gs.action + shift {
                return bad(format!("{} -> {} raises action by more than {shift}", gs.id, gt.id));
            }
        }
    }
    if differential(dst).mul(m) != m.mul(&differential(src)) {
        return bad("does not commute with the differentials".into());
    }
    Ok(())
}

/// `comp` (a chain map `C -> C` raising action by at most `shift`) must
/// induce the inclusion `H(C^{<= τ}) -> H(C^{<= τ + shift})` at every level.
fn check_round_trip(name: &str, comp: &IntMatrix, c: &FilteredComplex, shift: &BigRational) -> Result<()> {
    let mut levels: Vec<Level> = c.critical_values().into_iter().map(Level::Finite).collect();
    levels.push(Level::Infinite);
    for k in c.degrees() {
        let block = degree_block(comp, c, c, k);
        for l in &levels {
            let target = match l {
                Level::Finite(t) => Level::Finite(t + shift),
                Level::Infinite => Level::Infinite,
            };
            let h = homology(c, Ring::Integers, k, l);
            let ht = homology(c, Ring::Integers, k, &target);
            for j in 0..h.ngens() {
                let z = h.lifts().column(j);
                let expected = ht.class_of_int_chain(&z)?;
                let got = ht.class_of_int_chain(&block.mul_vec(&z))?;
                if got != expected {
                    return Err(Error::InvalidInterleaving(format!(
                        "{name} does not induce the inclusion on H_{k} at level {l}"
                    )));
                }
            }
        }
    }
    Ok(())
}

impl Interleaving {
    /// Checks chain maps, shift bounds, and that both composites induce the
    /// shift inclusions at every level (in particular the identity on the
    /// homology of the full complexes).
    pub fn validate(&self) -> Result<()> {
        self.f.ensure_valid()?;
        self.g.ensure_valid()?;
        check_map("forward", &self.forward, &self.f, &self.g, &self.s1)?;
        check_map("backward", &self.backward, &self.g, &self.f, &self.s2)?;
        let total = &self.s1 + &self.s2;
        check_round_trip("backward∘forward", &self.backward.mul(&self.forward), &self.f, &total)?;
        check_round_trip("forward∘backward", &self.forward.mul(&self.backward), &self.g, &total)?;
        Ok(())
    }

    /// `G = F` with all actions moved by `c`, joined by identity maps.
    pub fn uniform_shift(f: &FilteredComplex, c: &BigRational) -> Interleaving {
        let zero = BigRational::zero();
        let n = f.len();
        Interleaving {
            g: f.shifted(c),
            f: f.clone(),
            forward: IntMatrix::identity(n),
            backward: IntMatrix::identity(n),
            s1: c.clone().max(zero.clone()),
            s2: (-c).max(zero),
        }
    }

    /// `G = F` with generator `i` moved to `action`, joined by identity maps.
    /// The caller keeps the differential strictly action-decreasing.
    pub fn moved_generator(f: &FilteredComplex, i: usize, action: BigRational) -> Interleaving {
        let zero = BigRational::zero();
        let delta = &action - f.action(i);
        let n = f.len();
        Interleaving {
            g: f.with_action(i, action),
            f: f.clone(),
            forward: IntMatrix::identity(n),
            backward: IntMatrix::identity(n),
            s1: delta.clone().max(zero.clone()),
            s2: (-delta).max(zero),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::fixtures::e2;

    fn integer_shift(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn identity_and_shifts_validate() {
        let c = e2();
        Interleaving::uniform_shift(&c, &integer_shift(0)).validate().unwrap();
        Interleaving::uniform_shift(&c, &integer_shift(1)).validate().unwrap();
        Interleaving::uniform_shift(&c, &integer_shift(-2)).validate().unwrap();
        Interleaving::moved_generator(&c, 2, integer_shift(4)).validate().unwrap();
    }

    #[test]
    fn tight_shift_is_rejected() {
        let mut i = Interleaving::uniform_shift(&e2(), &integer_shift(1));
        i.s1 = BigRational::new(1.into(), 2.into());
        assert!(i.validate().is_err());
    }

    #[test]
    fn non_chain_map_is_rejected() {
        let mut i = Interleaving::uniform_shift(&e2(), &integer_shift(0));
        i.forward[(0, 0)] = 2.into();
        assert!(i.validate().is_err());
    }
}
