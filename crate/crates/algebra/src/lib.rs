//! Graded polynomial algebra over exact fields.
//!
//! Rings are quotients `S/I` of standard-graded polynomial rings. Everything
//! downstream reduces to finite-dimensional graded pieces of such rings and of
//! free modules over them.

pub mod fitting;
pub mod groebner;
pub mod matrix;
pub mod module;
pub mod monomial;
pub mod parse;
pub mod poly;
pub mod ring;
pub mod saturation;

use thiserror::Error;

pub use mfcat_linalg::{Field, FieldError, Fp, F32003};
#[cfg(feature = "rational")]
pub use mfcat_linalg::Rational;

pub use fitting::{determinant, fitting_ideal, minors};
pub use groebner::{groebner_basis, is_groebner, reduce_poly};
pub use matrix::PolyMatrix;
pub use module::{minimal_generators, syzygies, ModulePresentation};
pub use monomial::Monomial;
pub use parse::{parse_poly, ParseError};
pub use poly::Poly;
pub use ring::{graded_piece_basis, normal_form, GradedRing, Piece};
pub use saturation::{
    contains_irrelevant_power, default_saturation_bound, in_saturation, saturation_by_variable,
    variable_in_radical, IrrelevantPower,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Linalg(#[from] mfcat_linalg::LinalgError),
    #[error("not homogeneous: {0}")]
    NotHomogeneous(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("{0}")]
    Invalid(String),
}
