//! Finite action-filtered chain complexes with integer differentials.
//!
//! Generators carry a degree and an exact rational action; the differential
//! lowers degree by one and strictly lowers action, so every sublevel set
//! `{action <= τ}` spans a subcomplex.

mod homology;
mod io;
mod level;
mod random;

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::IntMatrix;

pub use homology::{
    change_ring_class, homology, induced_map, relative_homology, Homology, HomologyClass,
};
pub(crate) use homology::induced_between;
pub use io::{from_json, to_json};
pub use level::{parse_rational, Level};
pub use random::{random_complex, RandomParams};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generator {
    pub id: String,
    pub degree: i64,
    pub action: BigRational,
}

/// Sparse boundary of one generator: `(generator index, coefficient)` pairs
/// with nonzero coefficients, sorted by index.
pub type Boundary = Vec<(usize, BigInt)>;

#[derive(Clone, PartialEq, Eq)]
pub struct FilteredComplex {
    top_degree: i64,
    generators: Vec<Generator>,
    boundary: Vec<Boundary>,
    /// degree -> generator indices, in generator order
    by_degree: BTreeMap<i64, Vec<usize>>,
    /// position of each generator inside its degree list
    position: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    DuplicateId(String),
    WrongDegree { from: String, to: String },
    NonDecreasingAction { from: String, to: String },
    SquareNonzero { from: String, to: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::DuplicateId(id) => write!(f, "duplicate id: {id}"),
            Violation::WrongDegree { from, to } => {
                write!(f, "wrong degree: boundary of {from} mentions {to}")
            }
            Violation::NonDecreasingAction { from, to } => {
                write!(f, "non-decreasing action: boundary of {from} mentions {to}")
            }
            Violation::SquareNonzero { from, to } => {
                write!(f, "square nonzero: coefficient of {to} in the boundary of the boundary of {from}")
            }
        }
    }
}

impl fmt::Debug for FilteredComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "FilteredComplex(top_degree = {})", self.top_degree)?;
        for (i, g) in self.generators.iter().enumerate() {
            write!(f, "  {} (deg {}, act {})", g.id, g.degree, g.action)?;
            if !self.boundary[i].is_empty() {
                let terms: Vec<String> = self.boundary[i]
                    .iter()
                    .map(|(j, c)| format!("{c}*{}", self.generators[*j].id))
                    .collect();
                write!(f, " -> {}", terms.join(" + "))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

impl FilteredComplex {
    /// Assembles a complex from generators and boundaries given by id.
    /// Unknown ids and duplicate generator ids are rejected here; the
    /// remaining invariants are checked by [`FilteredComplex::validate`].
    pub fn new(
        top_degree: i64,
        generators: Vec<Generator>,
        differential: &[(String, Vec<(String, BigInt)>)],
    ) -> Result<Self> {
        let mut index = HashMap::with_capacity(generators.len());
        for (i, g) in generators.iter().enumerate() {
            if index.insert(g.id.clone(), i).is_some() {
                return Err(Error::InvalidComplex(Violation::DuplicateId(g.id.clone()).to_string()));
            }
        }
        let mut boundary = vec![BTreeMap::<usize, BigInt>::new(); generators.len()];
        for (src, terms) in differential {
            let &s = index.get(src).ok_or_else(|| Error::UnknownGenerator(src.clone()))?;
            for (dst, c) in terms {
                let &t = index.get(dst).ok_or_else(|| Error::UnknownGenerator(dst.clone()))?;
                *boundary[s].entry(t).or_insert_with(BigInt::zero) += c;
            }
        }
        let boundary = boundary
            .into_iter()
            .map(|b| b.into_iter().filter(|(_, c)| !c.is_zero()).collect())
            .collect();
        Ok(Self::from_indexed(top_degree, generators, boundary))
    }

    pub(crate) fn from_indexed(top_degree: i64, generators: Vec<Generator>, boundary: Vec<Boundary>) -> Self {
        let mut by_degree: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
        let mut position = vec![0; generators.len()];
        for (i, g) in generators.iter().enumerate() {
            let list = by_degree.entry(g.degree).or_default();
            position[i] = list.len();
            list.push(i);
        }
        FilteredComplex { top_degree, generators, boundary, by_degree, position }
    }

    /// [`FilteredComplex::new`] followed by validation.
    pub fn new_valid(
        top_degree: i64,
        generators: Vec<Generator>,
        differential: &[(String, Vec<(String, BigInt)>)],
    ) -> Result<Self> {
        let c = Self::new(top_degree, generators, differential)?;
        c.ensure_valid()?;
        Ok(c)
    }

    pub fn ensure_valid(&self) -> Result<()> {
        let v = self.validate();
        if v.is_empty() {
            Ok(())
        } else {
            let msg: Vec<String> = v.iter().map(ToString::to_string).collect();
            Err(Error::InvalidComplex(msg.join("; ")))
        }
    }

    pub fn top_degree(&self) -> i64 {
        self.top_degree
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn boundary_of(&self, i: usize) -> &Boundary {
        &self.boundary[i]
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.id == id)
    }

    /// Degrees that carry at least one generator.
    pub fn degrees(&self) -> impl Iterator<Item = i64> + '_ {
        self.by_degree.keys().copied()
    }

    /// Generator indices of a degree, in generator order.
    pub fn in_degree(&self, k: i64) -> &[usize] {
        self.by_degree.get(&k).map_or(&[], Vec::as_slice)
    }

    /// Index of generator `i` within its degree list.
    pub fn position(&self, i: usize) -> usize {
        self.position[i]
    }

    pub fn action(&self, i: usize) -> &BigRational {
        &self.generators[i].action
    }

    /// Sorted distinct actions.
    pub fn critical_values(&self) -> Vec<BigRational> {
        let mut v: Vec<BigRational> = self.generators.iter().map(|g| g.action.clone()).collect();
        v.sort();
        v.dedup();
        v
    }

    pub fn max_action(&self) -> Option<&BigRational> {
        self.generators.iter().map(|g| &g.action).max()
    }

    pub fn min_action(&self) -> Option<&BigRational> {
        self.generators.iter().map(|g| &g.action).min()
    }

    /// Dense matrix of `∂: C_k -> C_{k-1}` in degree-list coordinates.
    pub fn boundary_matrix(&self, k: i64) -> IntMatrix {
        let cols = self.in_degree(k);
        let rows = self.in_degree(k - 1);
        let mut m = IntMatrix::zeros(rows.len(), cols.len());
        for (j, &g) in cols.iter().enumerate() {
            for (t, c) in &self.boundary[g] {
                if self.generators[*t].degree == k - 1 {
                    m[(self.position[*t], j)] = c.clone();
                }
            }
        }
        m
    }

    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let mut seen = HashSet::new();
        for g in &self.generators {
            if !seen.insert(g.id.as_str()) {
                out.push(Violation::DuplicateId(g.id.clone()));
            }
        }
        for (i, b) in self.boundary.iter().enumerate() {
            let src = &self.generators[i];
            for (t, _) in b {
                let dst = &self.generators[*t];
                if dst.degree != src.degree - 1 {
                    out.push(Violation::WrongDegree { from: src.id.clone(), to: dst.id.clone() });
                } else if dst.action >= src.action {
                    out.push(Violation::NonDecreasingAction { from: src.id.clone(), to: dst.id.clone() });
                }
            }
        }
        for (i, b) in self.boundary.iter().enumerate() {
            let mut sq: BTreeMap<usize, BigInt> = BTreeMap::new();
            for (t, c) in b {
                for (u, d) in &self.boundary[*t] {
                    *sq.entry(*u).or_insert_with(BigInt::zero) += c * d;
                }
            }
            for (u, c) in sq {
                if !c.is_zero() {
                    out.push(Violation::SquareNonzero {
                        from: self.generators[i].id.clone(),
                        to: self.generators[u].id.clone(),
                    });
                }
            }
        }
        out
    }

    /// Subcomplex spanned by generators with action `<= tau`.
    pub fn sublevel(&self, tau: &BigRational) -> FilteredComplex {
        let keep: Vec<usize> = (0..self.len()).filter(|&i| self.action(i) <= tau).collect();
        let mut new_index = vec![usize::MAX; self.len()];
        for (n, &i) in keep.iter().enumerate() {
            new_index[i] = n;
        }
        let generators = keep.iter().map(|&i| self.generators[i].clone()).collect();
        let boundary = keep
            .iter()
            .map(|&i| self.boundary[i].iter().map(|(t, c)| (new_index[*t], c.clone())).collect())
            .collect();
        Self::from_indexed(self.top_degree, generators, boundary)
    }

    /// Formal dual: `x*` in degree `D - deg x` with action `-action(x)`, and
    /// the coefficient of `y*` in `∂x*` equal to that of `x` in `∂y`.
    pub fn dual(&self) -> FilteredComplex {
        let generators = self
            .generators
            .iter()
            .map(|g| Generator {
                id: dual_id(&g.id),
                degree: self.top_degree - g.degree,
                action: -g.action.clone(),
            })
            .collect();
        let mut boundary: Vec<Boundary> = vec![Vec::new(); self.len()];
        for (y, b) in self.boundary.iter().enumerate() {
            for (x, c) in b {
                boundary[*x].push((y, c.clone()));
            }
        }
        for b in &mut boundary {
            b.sort_by_key(|(i, _)| *i);
        }
        Self::from_indexed(self.top_degree, generators, boundary)
    }

    /// Same complex with every action shifted by `shift`.
    pub fn shifted(&self, shift: &BigRational) -> FilteredComplex {
        let mut c = self.clone();
        for g in &mut c.generators {
            g.action += shift;
        }
        c
    }

    /// Same complex with one generator's action replaced.
    pub fn with_action(&self, i: usize, action: BigRational) -> FilteredComplex {
        let mut c = self.clone();
        c.generators[i].action = action;
        c
    }

    /// Open interval of actions generator `i` may take while keeping the
    /// differential strictly action-decreasing: `(lower, upper)`, `None` for
    /// an unbounded side.
    pub fn action_window(&self, i: usize) -> (Option<BigRational>, Option<BigRational>) {
        let lower = self.boundary[i].iter().map(|(t, _)| self.action(*t).clone()).max();
        let upper = (0..self.len())
            .filter(|&s| self.boundary[s].iter().any(|(t, _)| *t == i))
            .map(|s| self.action(s).clone())
            .min();
        (lower, upper)
    }

    /// Integer chain in degree `k` as a map `id -> coefficient`, for display.
    pub fn format_chain(&self, k: i64, chain: &[BigRational]) -> String {
        let ids = self.in_degree(k);
        let terms: Vec<String> = chain
            .iter()
            .zip(ids)
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, &i)| format!("{}={}", self.generators[i].id, c))
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(",")
        }
    }
}

fn dual_id(id: &str) -> String {
    match id.strip_suffix('*') {
        Some(base) => base.to_string(),
        None => format!("{id}*"),
    }
}

/// The shipped fixtures.
pub mod fixtures {
    use super::*;

    fn gen(id: &str, degree: i64, action: i64) -> Generator {
        Generator { id: id.into(), degree, action: BigRational::from_integer(action.into()) }
    }

    fn terms(t: &[(&str, i64)]) -> Vec<(String, BigInt)> {
        t.iter().map(|(id, c)| (id.to_string(), BigInt::from(*c))).collect()
    }

    /// `D = 1`; `u (0, 0)`, `v (0, 1)`, `x (1, 3)` with `∂x = u - 2v`.
    pub fn e1() -> FilteredComplex {
        FilteredComplex::new_valid(
            1,
            vec![gen("u", 0, 0), gen("v", 0, 1), gen("x", 1, 3)],
            &[("x".into(), terms(&[("u", 1), ("v", -2)]))],
        )
        .expect("E1 is valid")
    }

    /// `D = 1`; `y (0, 0)`, `x (1, 2)` with `∂x = 2y`, `w (1, 5)` with `∂w = y`.
    pub fn e2() -> FilteredComplex {
        FilteredComplex::new_valid(
            1,
            vec![gen("y", 0, 0), gen("x", 1, 2), gen("w", 1, 5)],
            &[("x".into(), terms(&[("y", 2)])), ("w".into(), terms(&[("y", 1)]))],
        )
        .expect("E2 is valid")
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::{e1, e2};
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn gen(id: &str, degree: i64, action: i64) -> Generator {
        Generator { id: id.into(), degree, action: q(action) }
    }

    #[test]
    fn fixtures_validate() {
        assert!(e1().validate().is_empty());
        assert!(e2().validate().is_empty());
    }

    #[test]
    fn tie_in_action_is_rejected() {
        let c = FilteredComplex::new(
            1,
            vec![gen("y", 0, 1), gen("x", 1, 1)],
            &[("x".into(), vec![("y".into(), BigInt::from(1))])],
        )
        .unwrap();
        let v = c.validate();
        assert_eq!(v.len(), 1);
        assert!(v[0].to_string().starts_with("non-decreasing action"));
    }

    #[test]
    fn nonzero_square_is_rejected() {
        let c = FilteredComplex::new(
            2,
            vec![gen("z", 0, 0), gen("y", 1, 1), gen("x", 2, 2)],
            &[
                ("x".into(), vec![("y".into(), BigInt::from(1))]),
                ("y".into(), vec![("z".into(), BigInt::from(1))]),
            ],
        )
        .unwrap();
        let v = c.validate();
        assert!(v.iter().any(|x| x.to_string().starts_with("square nonzero")));
    }

    #[test]
    fn wrong_degree_and_unknown_ids() {
        let c = FilteredComplex::new(
            2,
            vec![gen("z", 0, 0), gen("x", 2, 2)],
            &[("x".into(), vec![("z".into(), BigInt::from(1))])],
        )
        .unwrap();
        assert!(matches!(c.validate()[0], Violation::WrongDegree { .. }));
        let e = FilteredComplex::new(1, vec![gen("z", 0, 0)], &[("q".into(), vec![])]);
        assert!(matches!(e, Err(Error::UnknownGenerator(_))));
        let e = FilteredComplex::new(1, vec![gen("z", 0, 0), gen("z", 1, 1)], &[]);
        assert!(matches!(e, Err(Error::InvalidComplex(_))));
    }

    #[test]
    fn sublevels() {
        let c = e2();
        assert!(c.sublevel(&q(-1)).is_empty());
        assert_eq!(c.sublevel(&q(5)), c);
        let s = c.sublevel(&q(3));
        let ids: Vec<&str> = s.generators().iter().map(|g| g.id.as_str()).collect();
        assert_eq!(ids, vec!["y", "x"]);
        assert!(s.validate().is_empty());
    }

    #[test]
    fn dual_of_e1() {
        let d = e1().dual();
        let g = d.generators();
        assert_eq!((g[0].id.as_str(), g[0].degree, g[0].action.clone()), ("u*", 1, q(0)));
        assert_eq!((g[1].id.as_str(), g[1].degree, g[1].action.clone()), ("v*", 1, q(-1)));
        assert_eq!((g[2].id.as_str(), g[2].degree, g[2].action.clone()), ("x*", 0, q(-3)));
        assert_eq!(d.boundary_of(0), &vec![(2, BigInt::from(1))]);
        assert_eq!(d.boundary_of(1), &vec![(2, BigInt::from(-2))]);
        assert!(d.validate().is_empty());
        assert_eq!(d.dual(), e1());
    }

    #[test]
    fn dual_of_trivial_complexes() {
        let empty = FilteredComplex::new(3, vec![], &[]).unwrap();
        assert!(empty.dual().is_empty());
        let one = FilteredComplex::new(4, vec![gen("a", 1, 7)], &[]).unwrap();
        let d = one.dual();
        assert_eq!(d.generators()[0].degree, 3);
        assert_eq!(d.generators()[0].action, q(-7));
    }

    #[test]
    fn boundary_matrices() {
        let c = e1();
        assert_eq!(c.boundary_matrix(1), IntMatrix::from_i64_rows(&[&[1], &[-2]]));
        assert_eq!(c.boundary_matrix(0).rows(), 0);
        assert_eq!(c.boundary_matrix(2).cols(), 0);
    }

    #[test]
    fn action_windows() {
        let c = e2();
        assert_eq!(c.action_window(2), (Some(q(0)), None));
        assert_eq!(c.action_window(0), (None, Some(q(2))));
    }
}
