//! Exact integer linear algebra on sparse matrices with arbitrary-precision
//! entries: Hermite and Smith normal forms, kernels, image membership,
//! quotients and subquotients of lattices.

mod echelon;
mod invariants;
mod matrix;
mod quotient;
mod smith;

pub use echelon::{hnf, image_membership, kernel_basis, rank, Echelon, Reduction};
pub use invariants::AbGroupInvariants;
pub use matrix::{axpy, lincomb, scale, SparseIntMat, SparseVec};
pub use num_bigint::BigInt;
pub use quotient::{combine, span_matrix, subquotient_invariants, Quotient};
pub use smith::{snf, snf_rank, Smith};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum IntLinError {
    #[error("not a subgroup")]
    NotSubgroup,
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
}
