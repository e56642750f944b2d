//! Torsion depth: how long torsion of the sublevel homology persists in
//! `Ext(-, ℤ)`.

use num_rational::BigRational;
use num_traits::Zero;

use crate::abelian::{ext_map, ext_object, image_lattices_equal};
use crate::complex::{homology, FilteredComplex, Homology, Level};
use crate::complex::induced_between;
use crate::linalg::Ring;

/// Per-degree result: `beta = max (settle - level)` over critical levels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorsionDepth {
    pub degree: i64,
    pub beta: BigRational,
    /// `(τ, t)`: the least level `t >= τ` from which
    /// `Im Ext(i_{τ,t}) = Im Ext(i_τ)` inside `Ext(H_k^{<= τ})`
    pub settle: Vec<(BigRational, BigRational)>,
}

fn levels(c: &FilteredComplex) -> Vec<Level> {
    let cv = c.critical_values();
    let n = cv.len();
    cv.into_iter()
        .enumerate()
        .map(|(i, t)| if i + 1 == n { Level::Infinite } else { Level::Finite(t) })
        .collect()
}

/// `β_{k,tor}`. Images of `Ext(i_{τ,t})` shrink as `t` grows and always
/// contain the image of `Ext(i_τ)`, so the admissible shifts at each level
/// form a ray starting at `settle - τ`; between critical values nothing
/// changes, hence the maximum over critical levels.
pub fn torsion_depth(c: &FilteredComplex, k: i64) -> TorsionDepth {
    let cv = c.critical_values();
    let lv = levels(c);
    let hs: Vec<Homology> = lv.iter().map(|l| homology(c, Ring::Integers, k, l)).collect();
    let mut beta = BigRational::zero();
    let mut settle = Vec::new();
    for i in 0..hs.len() {
        let t = if ext_object(hs[i].group()).group().is_trivial() {
            i
        } else {
            let full = ext_map(&induced_between(&hs[i], hs.last().expect("nonempty")));
            (i..hs.len())
                .find(|&j| {
                    let partial = ext_map(&induced_between(&hs[i], &hs[j]));
                    image_lattices_equal(&full, &partial).expect("same Ext target")
                })
                .expect("the top level always settles")
        };
        let gap = &cv[t] - &cv[i];
        if gap > beta {
            beta = gap.clone();
        }
        settle.push((cv[i].clone(), cv[t].clone()));
    }
    TorsionDepth { degree: k, beta, settle }
}

/// `β_tor`: the maximum of `β_{k,tor}` over degrees carrying generators.
pub fn torsion_depth_all(c: &FilteredComplex) -> (BigRational, Vec<TorsionDepth>) {
    let table: Vec<TorsionDepth> = c.degrees().map(|k| torsion_depth(c, k)).collect();
    let beta = table.iter().map(|t| t.beta.clone()).max().unwrap_or_else(BigRational::zero);
    (beta, table)
}
