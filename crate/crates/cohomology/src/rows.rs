//! The complexes of sums of line bundles fed to the Čech machinery.

use mfcat_algebra::{Field, PolyMatrix};
use mfcat_mfcore::TwistedPeriodicComplex;

/// A complex `C^q = ⊕ O(t)` with polynomial differentials, unbounded in `q`.
pub trait Rows<F: Field>: Sync {
    fn term(&self, q: i64) -> Vec<i64>;
    /// `C^q -> C^{q+1}`, or `None` when zero.
    fn map(&self, q: i64) -> Option<PolyMatrix<F>>;
}

/// `O(n)` in degree 0.
pub struct Single(pub i64);

impl<F: Field> Rows<F> for Single {
    fn term(&self, q: i64) -> Vec<i64> {
        if q == 0 {
            vec![self.0]
        } else {
            vec![]
        }
    }

    fn map(&self, _q: i64) -> Option<PolyMatrix<F>> {
        None
    }
}

impl<F: Field> Rows<F> for TwistedPeriodicComplex<F> {
    fn term(&self, q: i64) -> Vec<i64> {
        TwistedPeriodicComplex::term(self, q).twists().to_vec()
    }

    fn map(&self, q: i64) -> Option<PolyMatrix<F>> {
        Some(self.differential(q).matrix)
    }
}
