use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::matrix::{IntMatrix, RatMatrix};
use super::ring::{lcm, Ring};
use super::snf::smith_normal_form;
use crate::error::{Error, Result};

fn check_dims(a_rows: usize, b_len: usize) -> Result<()> {
    if a_rows != b_len {
        return Err(Error::dims(format!("matrix has {a_rows} rows, vector has {b_len} entries")));
    }
    Ok(())
}

/// Integer solution of `a x = b`, if any.
pub fn solve_integer(a: &IntMatrix, b: &[BigInt]) -> Result<Option<Vec<BigInt>>> {
    check_dims(a.rows(), b.len())?;
    let s = smith_normal_form(a);
    let ub = s.u.mul_vec(b);
    let mut y = vec![BigInt::zero(); a.cols()];
    for (i, c) in ub.iter().enumerate() {
        if i < s.rank {
            let (q, r) = c.div_rem(&s.d[(i, i)]);
            if !r.is_zero() {
                return Ok(None);
            }
            y[i] = q;
        } else if !c.is_zero() {
            return Ok(None);
        }
    }
    Ok(Some(s.v.mul_vec(&y)))
}

/// Solution of `a x = b` over ℤ/m, entries reduced into `0..m`.
pub fn solve_mod(a: &IntMatrix, b: &[BigInt], m: &BigInt) -> Result<Option<Vec<BigInt>>> {
    check_dims(a.rows(), b.len())?;
    let scaled = IntMatrix::diagonal(a.rows(), a.rows(), &vec![m.clone(); a.rows()]);
    let ext = a.hcat(&scaled);
    Ok(solve_integer(&ext, b)?
        .map(|x| x[..a.cols()].iter().map(|v| v.mod_floor(m)).collect()))
}

/// Reduced row echelon form over ℚ; returns pivot columns.
fn rref(m: &mut RatMatrix) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..m.cols() {
        if row == m.rows() {
            break;
        }
        let Some(p) = (row..m.rows()).find(|&i| !m[(i, col)].is_zero()) else { continue };
        m.swap_rows(row, p);
        let inv = m[(row, col)].recip();
        for j in 0..m.cols() {
            let v = &m[(row, j)] * &inv;
            m[(row, j)] = v;
        }
        for i in 0..m.rows() {
            if i != row && !m[(i, col)].is_zero() {
                let f = m[(i, col)].clone();
                for j in 0..m.cols() {
                    let v = &m[(row, j)] * &f;
                    if !v.is_zero() {
                        m[(i, j)] -= v;
                    }
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

/// Rational solution of `a x = b`, if any (free variables set to zero).
pub fn solve_rational(a: &RatMatrix, b: &[BigRational]) -> Result<Option<Vec<BigRational>>> {
    check_dims(a.rows(), b.len())?;
    let bcol = RatMatrix::from_columns(a.rows(), &[b.to_vec()]);
    let mut aug = a.hcat(&bcol);
    let pivots = rref(&mut aug);
    let n = a.cols();
    if pivots.last() == Some(&n) {
        return Ok(None);
    }
    let mut x = vec![BigRational::zero(); n];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = aug[(r, n)].clone();
    }
    Ok(Some(x))
}

pub fn rank_rational(a: &RatMatrix) -> usize {
    let mut m = a.clone();
    rref(&mut m).len()
}

/// Rational `L` with `L a = I` for an integer matrix of full column rank,
/// supported on a maximal set of independent rows of `a`.
pub fn left_inverse(a: &IntMatrix) -> Result<RatMatrix> {
    let (n, r) = (a.rows(), a.cols());
    let mut t = a.transpose().to_rational();
    let rows = rref(&mut t);
    if rows.len() != r {
        return Err(Error::dims(format!("left inverse needs full column rank, got rank {} of {r}", rows.len())));
    }
    let square = a.select_rows(&rows).to_rational();
    let mut aug = square.hcat(&RatMatrix::identity(r));
    rref(&mut aug);
    let mut out = RatMatrix::zeros(r, n);
    for i in 0..r {
        for (jj, &j) in rows.iter().enumerate() {
            out[(i, j)] = aug[(i, r + jj)].clone();
        }
    }
    Ok(out)
}

/// Solves `a x = b` over the given ring. Integral rings return integral
/// entries (ℤ/m reduced); ℚ may return fractions.
pub fn solve_linear(a: &IntMatrix, b: &[BigInt], ring: Ring) -> Result<Option<Vec<BigRational>>> {
    let to_rat = |v: Vec<BigInt>| v.into_iter().map(BigRational::from_integer).collect();
    match ring {
        Ring::Integers => Ok(solve_integer(a, b)?.map(to_rat)),
        Ring::IntegersMod(m) => Ok(solve_mod(a, b, &BigInt::from(m))?.map(to_rat)),
        Ring::Rationals => {
            let bq: Vec<_> = b.iter().cloned().map(BigRational::from_integer).collect();
            solve_rational(&a.to_rational(), &bq)
        }
    }
}

/// Whether `v` is an integer combination of the columns of `generators`.
pub fn lattice_membership(generators: &IntMatrix, v: &[BigInt]) -> Result<bool> {
    Ok(solve_integer(generators, v)?.is_some())
}

/// Smallest `k > 0` with `k v` in the column lattice of `generators`, or zero
/// when no positive multiple lies in it.
pub fn lattice_multiplier(generators: &IntMatrix, v: &[BigInt]) -> Result<BigInt> {
    check_dims(generators.rows(), v.len())?;
    let s = smith_normal_form(generators);
    let uv = s.u.mul_vec(v);
    let mut k = BigInt::one();
    for (i, c) in uv.iter().enumerate() {
        if i < s.rank {
            let d = &s.d[(i, i)];
            k = lcm(&k, &(d / d.gcd(c)));
        } else if !c.is_zero() {
            return Ok(BigInt::zero());
        }
    }
    Ok(k)
}

/// Basis (as columns) of the lattice spanned by the columns of `generators`.
pub fn lattice_basis(generators: &IntMatrix) -> IntMatrix {
    let s = smith_normal_form(generators);
    let mut cols = Vec::with_capacity(s.rank);
    for i in 0..s.rank {
        let d = &s.d[(i, i)];
        cols.push(s.u_inv.column(i).into_iter().map(|x| x * d).collect::<Vec<_>>());
    }
    IntMatrix::from_columns(generators.rows(), &cols)
}

/// Columns generating the kernel of `a` over `ring`, always as integer
/// vectors. Over ℤ and ℚ the columns are a primitive lattice basis of the
/// integer kernel; over ℤ/m they form a basis of the lattice
/// `{x : a x ≡ 0 mod m}`, which contains `m ℤ^n`.
pub fn kernel_basis(a: &IntMatrix, ring: Ring) -> IntMatrix {
    match ring {
        Ring::Integers | Ring::Rationals => {
            let s = smith_normal_form(a);
            let idx: Vec<usize> = (s.rank..a.cols()).collect();
            s.v.select_columns(&idx)
        }
        Ring::IntegersMod(m) => {
            let n = a.cols();
            let m = BigInt::from(m);
            let scaled = IntMatrix::diagonal(a.rows(), a.rows(), &vec![-m; a.rows()]);
            let joint = kernel_basis(&a.hcat(&scaled), Ring::Integers);
            let head: Vec<usize> = (0..n).collect();
            lattice_basis(&joint.select_rows(&head))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn identity_solves_to_b() {
        let a = IntMatrix::identity(3);
        let b = ints(&[4, -1, 7]);
        assert_eq!(solve_integer(&a, &b).unwrap(), Some(b.clone()));
    }

    #[test]
    fn scalar_parity() {
        let a = IntMatrix::from_i64_rows(&[&[2]]);
        assert_eq!(solve_linear(&a, &ints(&[3]), Ring::Integers).unwrap(), None);
        assert_eq!(
            solve_linear(&a, &ints(&[3]), Ring::Rationals).unwrap(),
            Some(vec![rat(3, 2)])
        );
        // 2x = 3 mod 5 -> x = 4
        assert_eq!(
            solve_linear(&a, &ints(&[3]), Ring::IntegersMod(5)).unwrap(),
            Some(vec![rat(4, 1)])
        );
        assert_eq!(solve_linear(&a, &ints(&[3]), Ring::IntegersMod(4)).unwrap(), None);
    }

    #[test]
    fn bezout_row() {
        let a = IntMatrix::from_i64_rows(&[&[2, 3]]);
        let x = solve_integer(&a, &ints(&[1])).unwrap().unwrap();
        assert_eq!(&x[0] * 2 + &x[1] * 3, BigInt::one());
        // brute force agrees that solutions exist in a small box
        let boxed = (-3..=3i64).any(|p| (-3..=3i64).any(|q| 2 * p + 3 * q == 1));
        assert!(boxed);
    }

    #[test]
    fn dimension_errors() {
        let a = IntMatrix::identity(2);
        assert!(solve_integer(&a, &ints(&[1])).is_err());
        assert!(lattice_membership(&a, &ints(&[1, 2, 3])).is_err());
    }

    #[test]
    fn membership_examples() {
        let g = IntMatrix::from_i64_rows(&[&[2, 0], &[0, 1]]);
        assert!(lattice_membership(&g, &ints(&[4, 7])).unwrap());
        assert!(!lattice_membership(&g, &ints(&[1, 0])).unwrap());
        let g = IntMatrix::from_i64_rows(&[&[2, 4], &[6, 8]]);
        // 2a + 4b = 0, 6a + 8b = 2 forces b = -1/2
        assert!(!lattice_membership(&g, &ints(&[0, 2])).unwrap());
        assert!(lattice_membership(&g, &ints(&[0, 4])).unwrap());
    }

    #[test]
    fn multipliers() {
        let g = IntMatrix::from_i64_rows(&[&[2, 0], &[0, 3]]);
        assert_eq!(lattice_multiplier(&g, &ints(&[1, 1])).unwrap(), BigInt::from(6));
        assert_eq!(lattice_multiplier(&g, &ints(&[2, 3])).unwrap(), BigInt::one());
        let g = IntMatrix::from_i64_rows(&[&[1], &[0]]);
        assert_eq!(lattice_multiplier(&g, &ints(&[0, 1])).unwrap(), BigInt::zero());
    }

    #[test]
    fn kernels() {
        let k = kernel_basis(&IntMatrix::zeros(1, 2), Ring::Integers);
        assert_eq!(k.cols(), 2);
        let k = kernel_basis(&IntMatrix::identity(3), Ring::Integers);
        assert_eq!(k.cols(), 0);
        let a = IntMatrix::from_i64_rows(&[&[2, 1]]);
        let k = kernel_basis(&a, Ring::Integers);
        assert_eq!(k.cols(), 1);
        assert!(a.mul(&k).is_zero());
        let c = k.column(0);
        assert_eq!(c[0].gcd(&c[1]), BigInt::one());
        assert_eq!(c[1], -&c[0] * 2);
    }

    #[test]
    fn left_inverses() {
        let a = IntMatrix::from_i64_rows(&[&[0, 0], &[2, 1], &[1, 1], &[3, 2]]);
        let l = left_inverse(&a).unwrap();
        assert_eq!(l.mul(&a.to_rational()), RatMatrix::identity(2));
        assert!(left_inverse(&IntMatrix::from_i64_rows(&[&[1, 2], &[2, 4]])).is_err());
        assert_eq!(left_inverse(&IntMatrix::zeros(3, 0)).unwrap().rows(), 0);
    }

    #[test]
    fn kernel_mod_m() {
        // 2x = 0 mod 4 -> x in 2Z
        let a = IntMatrix::from_i64_rows(&[&[2]]);
        let k = kernel_basis(&a, Ring::IntegersMod(4));
        assert_eq!(k, IntMatrix::from_i64_rows(&[&[2]]));
        // x + y = 0 mod 2 -> lattice spanned by (1,1),(2,0), index 2
        let a = IntMatrix::from_i64_rows(&[&[1, 1]]);
        let k = kernel_basis(&a, Ring::IntegersMod(2));
        assert_eq!(k.cols(), 2);
        assert_eq!(k.determinant().magnitude(), &num_bigint::BigUint::from(2u32));
    }
}
