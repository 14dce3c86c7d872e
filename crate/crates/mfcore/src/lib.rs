//! Matrix factorizations of a potential `W` on `Proj R` (or over a graded
//! polynomial ring), built from sums of line bundles.
//!
//! Every Hom space reduces to a finite-dimensional graded piece of `R`, so
//! strict morphisms and homotopies are found by exact linear solves.

pub mod build;
pub mod complex;
pub mod context;
pub mod hom;
pub mod mf;
pub mod sheaf;

use thiserror::Error;

use mfcat_algebra::AlgebraError;
use mfcat_linalg::LinalgError;

pub use complex::{
    koszul_augmentation, koszul_truncated, kron, tensor_chain_map, tensor_mf, tensor_morphism,
    tot, FreeComplex, Koszul, MfComplex,
};
pub use context::{MFContext, Mode};
pub use hom::{
    check_homotopy, cycle_to_morphism, map_to_vector, mapping_complex, morphism_to_cycle,
    sections_dim, sections_matrix, solve_homotopy, strict_morphism_basis, vector_to_map, Homotopy,
};
pub use mf::{cone, mf_verify, MatrixFactorization, StrictMorphism, TwistedPeriodicComplex, Violation};
pub use sheaf::{SheafMap, TwistSum};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MfError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("objects live over different contexts")]
    ContextMismatch,
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("entry ({row}, {col}) = {entry} should be homogeneous of degree {expected}")]
    Degree { row: usize, col: usize, entry: String, expected: i64 },
    #[error("not a strict morphism: {0}")]
    NotStrict(String),
    #[error("not a matrix factorization: {0}")]
    Violation(Violation),
    #[error("composite of the maps out of degree {0} is nonzero")]
    NonzeroComposite(i64),
    #[error("{0}")]
    Invalid(String),
}
