//! Exact integer and rational linear algebra.
//!
//! Everything here is arbitrary precision. Canonical forms (row Hermite
//! normal form for kernels, primitive sign-normalized vectors) make results
//! comparable byte-for-byte.

mod elimination;
mod matrix;
mod normal_form;
pub mod serde_int;
mod vector;

pub use elimination::{determinant, integer_determinant, invert, rank, rref, solve, LinearSolution};
pub use matrix::{Matrix, QMatrix, ZMatrix};
pub use normal_form::{
    hermite_normal_form, hermite_with_transform, integer_kernel_basis, kernel_basis, same_lattice_snf,
    smith_normal_form, SmithForm,
};
pub use vector::{parse_vector_list, LatticeVector};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinalgError {
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("expected a square matrix, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("row {row} has length {len}, expected {expected}")]
    Ragged { row: usize, len: usize, expected: usize },
}
