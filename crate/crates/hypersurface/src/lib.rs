//! The zero scheme `Y` of `W`: graded modules over `R_Y = R/(W)`, the
//! cokernel functor from factorizations, and the module-side invariants used
//! to cross-check the homotopy category.

mod coker;
mod ext;
mod lift;
mod perfect;
mod resolution;

use std::sync::Arc;

use thiserror::Error;

use mfcat_algebra::{AlgebraError, Field, GradedRing};
use mfcat_mfcore::{MFContext, MatrixFactorization, MfError};

pub use coker::{coker_module, e1_injective, push_forward};
pub use ext::{ext_gamma_dims, ext_gamma_normalized, stable_hom_dim, StableHom};
pub use lift::mf_from_module;
pub use perfect::{is_perfect_over, is_relatively_perfect, RelPerfect};
pub use resolution::{periodic_resolution, PeriodicResolution};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HypersurfaceError {
    #[error(transparent)]
    Mf(#[from] MfError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("W is a zero divisor in R")]
    NotRegular,
    #[error("the factorization lives over a different context")]
    ContextMismatch,
    #[error("periodic resolution not exact at position {position} in degree {degree}")]
    NotExact { position: i64, degree: i64 },
    #[error("no lift: {0}")]
    NoSolution(String),
    #[error("the presentation map is not injective")]
    NotInjective,
    #[error("Ext index {0} is negative")]
    NegativeIndex(i64),
    #[error("inconclusive: {0}")]
    Inconclusive(String),
}

/// `R` together with `R_Y = R/(W)`.
#[derive(Clone, Debug)]
pub struct HypersurfaceContext<F: Field> {
    ctx: Arc<MFContext<F>>,
    ry: Arc<GradedRing<F>>,
}

impl<F: Field> HypersurfaceContext<F> {
    pub fn new(ctx: Arc<MFContext<F>>) -> Result<Self, HypersurfaceError> {
        if !ctx.is_regular() {
            return Err(HypersurfaceError::NotRegular);
        }
        let ry = Arc::new(ctx.ring().quotient(&[ctx.w().clone()])?);
        Ok(HypersurfaceContext { ctx, ry })
    }

    pub fn ctx(&self) -> &Arc<MFContext<F>> {
        &self.ctx
    }

    pub fn ry(&self) -> &Arc<GradedRing<F>> {
        &self.ry
    }

    fn check(&self, e: &MatrixFactorization<F>) -> Result<(), HypersurfaceError> {
        if e.ctx.same_as(&self.ctx) {
            Ok(())
        } else {
            Err(HypersurfaceError::ContextMismatch)
        }
    }
}
