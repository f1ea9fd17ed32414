//! Exact integer linear algebra.

mod echelon;
mod int;
mod matrix;
mod smith;

pub use echelon::{hnf_rows, kernel, rank, row_echelon, Lattice, RowEchelon, Solver};
pub use int::Int;
pub use matrix::{dot, ivec, vec_is_zero, Matrix};
pub use smith::{elementary_divisors, invariant_factors, smith, Smith};
