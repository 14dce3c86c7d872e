//! Hom-sets in the naive and the hypercohomology homotopy categories of
//! matrix factorizations, computed by truncated-Koszul stabilization, plus
//! the local contractibility tests.

mod compose;
mod contract;
mod hom;
mod stabilize;

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use mfcat_algebra::{AlgebraError, Field};
use mfcat_cohomology::{vanishing_threshold, CohomologyError, Schedule, Threshold};
use mfcat_hypersurface::HypersurfaceError;
use mfcat_linalg::LinalgError;
use mfcat_mfcore::{MFContext, MatrixFactorization, MfError};

pub use compose::{compose_h, lift_through, transport, HomClass};
pub use contract::{locally_contractible, naive_gap_witness, prop28_report, weak_equivalence, Prop28Report};
pub use hom::{hom_h, hom_h_at_level, hom_naive, HomSpace, Model};
pub use stabilize::{
    inventory, required_level, stabilize, stabilize_at, stabilized_twists, StabilizationCertificate, Stabilized,
    MAX_LEVEL,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomotopyError {
    #[error(transparent)]
    Mf(#[from] MfError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Cohomology(#[from] CohomologyError),
    #[error(transparent)]
    Hypersurface(#[from] HypersurfaceError),
    #[error("stabilization needs a projective context")]
    Affine,
    #[error("no stabilization level up to {0} clears the vanishing threshold")]
    NoLevel(u32),
    #[error("level {j} does not clear the threshold: least twist {min} < {n0}")]
    Uncertified { j: u32, min: i64, n0: i64 },
    #[error("the classes are not composable: {0}")]
    NotComposable(String),
    #[error("{0} coordinates for a space of dimension {1}")]
    Coordinates(usize, usize),
    #[error("the morphism is not a strict morphism out of the representing source")]
    NotInSpace,
    #[error("no lift through the weak equivalence")]
    NotLiftable,
    #[error("contractibility conditions violate (1) ⇒ (4): {0}")]
    ImplicationViolated(String),
}

/// Three-valued answer for predicates that rest on a bounded search.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    True,
    False,
    Inconclusive,
}

impl Verdict {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Verdict::True
        } else {
            Verdict::False
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::True => "true",
            Verdict::False => "false",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

/// The vanishing threshold of `X`, or `user` tagged as an override.
pub fn threshold<F: Field>(ctx: &Arc<MFContext<F>>, user: Option<i64>) -> Result<Threshold, HomotopyError> {
    Ok(vanishing_threshold(ctx.ring_arc(), user, &Schedule::from_env())?)
}

/// Same context, twists and matrices.
pub fn same_object<F: Field>(a: &MatrixFactorization<F>, b: &MatrixFactorization<F>) -> bool {
    a.ctx.same_as(&b.ctx) && a.e1 == b.e1 && a.e0 == b.e0
}
