//! Exact dense linear algebra over the integers and the rationals.
//!
//! Everything here is arbitrary precision. Rationals are `num`'s
//! `BigRational`, which keeps every value in lowest terms with a positive
//! denominator.

mod echelon;
mod hnf;
mod matrix;
mod snf;

pub use echelon::{
    inverse, left_kernel, rank, right_kernel, row_space_basis, rref, rref_with_transform,
    solve_left, Echelon, IncrementalBasis, RowSpaceSolver,
};
pub use hnf::{hnf, HermiteBasis};
pub use matrix::{rat, IntegerMatrix, Matrix, RationalMatrix};
pub use snf::{snf, SmithDecomposition};

pub use num_bigint::BigInt;
pub use num_rational::BigRational;

pub type Rational = BigRational;
