use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::matrix::IntMatrix;

/// `u * a * v = d` with `u`, `v` unimodular and `d` diagonal, its diagonal a
/// divisibility chain `d_1 | d_2 | ... | d_r` of positive entries followed by
/// zeros. The inverses of both transforms are kept because lattice bases and
/// homology lifts need them.
#[derive(Debug, Clone)]
pub struct SnfDecomposition {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    pub u_inv: IntMatrix,
    pub v_inv: IntMatrix,
    pub rank: usize,
}

impl SnfDecomposition {
    /// Nonzero diagonal entries `d_1..d_rank`.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.rank).map(|i| self.d[(i, i)].clone()).collect()
    }

    /// Diagonal entry `i`, or zero beyond the diagonal length.
    pub fn diag(&self, i: usize) -> BigInt {
        if i < self.d.rows().min(self.d.cols()) {
            self.d[(i, i)].clone()
        } else {
            BigInt::zero()
        }
    }
}

/// Tracks `u`/`u_inv` for row operations and `v`/`v_inv` for column
/// operations while reducing `a` in place.
struct Reducer {
    a: IntMatrix,
    u: IntMatrix,
    u_inv: IntMatrix,
    v: IntMatrix,
    v_inv: IntMatrix,
}

impl Reducer {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        self.u.swap_rows(i, j);
        self.u_inv.swap_cols(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        self.v.swap_cols(i, j);
        self.v_inv.swap_rows(i, j);
    }

    /// row_i += q * row_t
    fn add_row(&mut self, i: usize, t: usize, q: &BigInt) {
        for m in [&mut self.a, &mut self.u] {
            for j in 0..m.cols() {
                let x = &m[(t, j)] * q;
                if !x.is_zero() {
                    m[(i, j)] += x;
                }
            }
        }
        // u_inv: col_t -= q * col_i
        let m = &mut self.u_inv;
        for r in 0..m.rows() {
            let x = &m[(r, i)] * q;
            if !x.is_zero() {
                m[(r, t)] -= x;
            }
        }
    }

    /// col_j += q * col_t
    fn add_col(&mut self, j: usize, t: usize, q: &BigInt) {
        for m in [&mut self.a, &mut self.v] {
            for r in 0..m.rows() {
                let x = &m[(r, t)] * q;
                if !x.is_zero() {
                    m[(r, j)] += x;
                }
            }
        }
        // v_inv: row_t -= q * row_j
        let m = &mut self.v_inv;
        for c in 0..m.cols() {
            let x = &m[(j, c)] * q;
            if !x.is_zero() {
                m[(t, c)] -= x;
            }
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.a.cols() {
            let x = -&self.a[(i, j)];
            self.a[(i, j)] = x;
        }
        for j in 0..self.u.cols() {
            let x = -&self.u[(i, j)];
            self.u[(i, j)] = x;
        }
        for r in 0..self.u_inv.rows() {
            let x = -&self.u_inv[(r, i)];
            self.u_inv[(r, i)] = x;
        }
    }
}

/// Smith normal form by smallest-absolute-value pivoting with full row and
/// column reduction. Empty matrices are fine.
pub fn smith_normal_form(a: &IntMatrix) -> SnfDecomposition {
    let (rows, cols) = (a.rows(), a.cols());
    let mut r = Reducer {
        a: a.clone(),
        u: IntMatrix::identity(rows),
        u_inv: IntMatrix::identity(rows),
        v: IntMatrix::identity(cols),
        v_inv: IntMatrix::identity(cols),
    };
    let mut rank = 0;
    for t in 0..rows.min(cols) {
        // smallest nonzero entry of the trailing block
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                let x = &r.a[(i, j)];
                if !x.is_zero() && pivot.map_or(true, |(pi, pj)| x.abs() < r.a[(pi, pj)].abs()) {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        r.swap_rows(t, pi);
        r.swap_cols(t, pj);

        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if r.a[(i, t)].is_zero() {
                    continue;
                }
                let q = r.a[(i, t)].div_floor(&r.a[(t, t)]);
                r.add_row(i, t, &-q);
                if !r.a[(i, t)].is_zero() {
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                if r.a[(t, j)].is_zero() {
                    continue;
                }
                let q = r.a[(t, j)].div_floor(&r.a[(t, t)]);
                r.add_col(j, t, &-q);
                if !r.a[(t, j)].is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                // a remainder smaller than the pivot survived; move it in
                let mut best: Option<(usize, usize)> = None;
                let cross = (t..rows).map(|i| (i, t)).chain((t + 1..cols).map(|j| (t, j)));
                for (i, j) in cross {
                    let x = &r.a[(i, j)];
                    if !x.is_zero() && best.map_or(true, |(bi, bj)| x.abs() < r.a[(bi, bj)].abs()) {
                        best = Some((i, j));
                    }
                }
                let (bi, bj) = best.expect("pivot row/column cannot vanish");
                r.swap_rows(t, bi);
                r.swap_cols(t, bj);
                continue;
            }
            // row and column cleared; enforce divisibility of the remaining block
            let p = r.a[(t, t)].clone();
            let offender = (t + 1..rows).find(|&i| {
                (t + 1..cols).any(|j| !r.a[(i, j)].is_multiple_of(&p))
            });
            match offender {
                Some(i) => r.add_row(t, i, &BigInt::from(1)),
                None => break,
            }
        }
        if r.a[(t, t)].is_negative() {
            r.negate_row(t);
        }
        rank += 1;
    }
    SnfDecomposition { u: r.u, d: r.a, v: r.v, u_inv: r.u_inv, v_inv: r.v_inv, rank }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn check(a: &IntMatrix) -> SnfDecomposition {
        let s = smith_normal_form(a);
        assert_eq!(s.u.mul(a).mul(&s.v), s.d, "UAV != D for {a:?}");
        assert_eq!(s.u.mul(&s.u_inv), IntMatrix::identity(a.rows()));
        assert_eq!(s.v.mul(&s.v_inv), IntMatrix::identity(a.cols()));
        for i in 0..s.d.rows() {
            for j in 0..s.d.cols() {
                if i != j {
                    assert!(s.d[(i, j)].is_zero());
                }
            }
        }
        let f = s.invariant_factors();
        for w in f.windows(2) {
            assert!(w[1].is_multiple_of(&w[0]));
        }
        assert!(f.iter().all(|x| x.is_positive()));
        s
    }

    #[test]
    fn identity_and_zero() {
        let s = check(&IntMatrix::identity(3));
        assert_eq!(s.d, IntMatrix::identity(3));
        let s = check(&IntMatrix::zeros(2, 2));
        assert!(s.d.is_zero());
        assert_eq!(s.rank, 0);
    }

    #[test]
    fn two_by_two() {
        let s = check(&IntMatrix::from_i64_rows(&[&[2, 4], &[6, 8]]));
        assert_eq!(s.invariant_factors(), vec![BigInt::from(2), BigInt::from(4)]);
    }

    #[test]
    fn empty_matrices() {
        let s = check(&IntMatrix::zeros(0, 3));
        assert_eq!(s.rank, 0);
        assert_eq!(s.v.rows(), 3);
        let s = check(&IntMatrix::zeros(2, 0));
        assert_eq!(s.u, IntMatrix::identity(2));
    }

    #[test]
    fn divisibility_fix_up() {
        // diag(2, 3) is diagonal but not a chain; expect diag(1, 6)
        let s = check(&IntMatrix::from_i64_rows(&[&[2, 0], &[0, 3]]));
        assert_eq!(s.invariant_factors(), vec![BigInt::one(), BigInt::from(6)]);
    }

    #[test]
    fn rectangular_with_rank_deficit() {
        let s = check(&IntMatrix::from_i64_rows(&[&[1, 2, 3], &[2, 4, 6], &[0, 0, 5]]));
        assert_eq!(s.rank, 2);
    }
}
