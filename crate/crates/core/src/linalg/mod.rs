//! Exact integer, rational and ℤ/m linear algebra: Smith normal form,
//! linear solving, kernels and lattice membership. Everything is
//! arbitrary precision; empty matrices denote zero modules.

mod matrix;
mod ring;
mod snf;
mod solve;

pub use matrix::{IntMatrix, Matrix, RatMatrix};
pub use ring::{divisors, gcd_all, is_prime, lcm, prime_factors, Ring};
pub use snf::{smith_normal_form, SnfDecomposition};
pub use solve::{
    kernel_basis, lattice_basis, lattice_membership, lattice_multiplier, left_inverse, rank_rational,
    solve_integer, solve_linear, solve_mod, solve_rational,
};
