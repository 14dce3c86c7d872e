use mfcat_algebra::module::map_in_degree;
use mfcat_algebra::{Field, PolyMatrix};
use mfcat_linalg::rank;
use mfcat_mfcore::MatrixFactorization;

use crate::{HypersurfaceContext, HypersurfaceError};

/// `F_k` of `i^*E` read as a chain complex: `F_{2j} = E0(-jd)`, `F_{2j+1} = E1(-jd)`,
/// so that `... -> F_1 -> F_0 -> coker e1 -> 0`.
pub(crate) fn term_twists<F: Field>(e: &MatrixFactorization<F>, k: i64) -> Vec<i64> {
    let j = k.div_euclid(2);
    let base = if k.rem_euclid(2) == 0 { e.big0() } else { e.big1() };
    base.twists().iter().map(|a| a - j * e.d()).collect()
}

/// `δ_k: F_k -> F_{k-1}`: `e1` from odd positions, `e0` from even ones.
pub(crate) fn term_map<F: Field>(e: &MatrixFactorization<F>, k: i64) -> &PolyMatrix<F> {
    if k.rem_euclid(2) == 1 {
        &e.e1.matrix
    } else {
        &e.e0.matrix
    }
}

/// The window `[lo, hi]` of `i^*E` over `R_Y`.
#[derive(Clone, Debug)]
pub struct PeriodicResolution<F: Field> {
    pub lo: i64,
    pub hi: i64,
    /// `F_lo, ..., F_hi`.
    pub terms: Vec<Vec<i64>>,
    /// `δ_{lo+1}, ..., δ_hi`, reduced mod `W`.
    pub maps: Vec<PolyMatrix<F>>,
}

impl<F: Field> PeriodicResolution<F> {
    pub fn term(&self, k: i64) -> &[i64] {
        &self.terms[(k - self.lo) as usize]
    }

    pub fn map(&self, k: i64) -> &PolyMatrix<F> {
        &self.maps[(k - self.lo - 1) as usize]
    }

    pub fn is_zero(&self) -> bool {
        self.terms.iter().all(|t| t.is_empty())
    }

    /// Least internal degree in which some term has a generator.
    fn first_degree(&self) -> Option<i64> {
        self.terms.iter().flatten().map(|a| -a).min()
    }

    /// `dim H_k` in internal degree `n`, for `lo < k < hi`.
    pub fn homology_dim(&self, h: &HypersurfaceContext<F>, k: i64, n: i64) -> usize {
        let ry = h.ry();
        let dim: usize = self.term(k).iter().map(|a| ry.dim(n + a)).sum();
        if dim == 0 {
            return 0;
        }
        let out = rank(&map_in_degree(ry, self.map(k), self.term(k - 1), self.term(k), n));
        let inc = rank(&map_in_degree(ry, self.map(k + 1), self.term(k), self.term(k + 1), n));
        dim - out - inc
    }
}

/// Materializes the window and checks exactness at its interior positions in
/// internal degrees up to `degree_span` above the first generator.
pub fn periodic_resolution<F: Field>(
    h: &HypersurfaceContext<F>,
    e: &MatrixFactorization<F>,
    lo: i64,
    hi: i64,
    degree_span: i64,
) -> Result<PeriodicResolution<F>, HypersurfaceError> {
    h.check(e)?;
    let ry = h.ry();
    let terms = (lo..=hi).map(|k| term_twists(e, k)).collect();
    let maps = (lo + 1..=hi).map(|k| term_map(e, k).normal_form(ry)).collect();
    let res = PeriodicResolution { lo, hi, terms, maps };
    if let Some(first) = res.first_degree() {
        for k in lo + 1..hi {
            for n in first..=first + degree_span {
                if res.homology_dim(h, k, n) != 0 {
                    return Err(HypersurfaceError::NotExact { position: k, degree: n });
                }
            }
        }
    }
    Ok(res)
}
