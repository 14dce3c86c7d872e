//! Exact scalars and dense linear algebra.
//!
//! Every dimension the engine reports is computed here: reduced row echelon
//! forms, kernels, solves and subquotients, all over an exact [`Field`].

pub mod field;
pub mod matrix;
pub mod par;

pub use field::{Field, FieldError, Fp, F32003};
#[cfg(feature = "rational")]
pub use field::Rational;
pub use matrix::{
    kernel_basis, rank, rref, solve, subquotient_dim, LinalgError, Matrix, Subquotient,
};
