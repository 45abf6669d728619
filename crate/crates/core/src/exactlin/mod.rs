//! Exact linear algebra over the rationals and prime fields.
//!
//! Every kernel, cokernel and solve in the crate goes through [`Matrix::rref`],
//! so bases are canonical: free variables are ordered by column index and the
//! same input always yields the same basis.

mod field;
mod matrix;
mod sparse;

pub use field::{is_prime, Field, Scalar};
pub use matrix::{Matrix, Rref};
pub use sparse::{SparseMatrix, SparseRref};
