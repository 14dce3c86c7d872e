use mfcat_algebra::{Field, GradedRing, ModulePresentation, PolyMatrix};
use mfcat_linalg::rank;
use mfcat_mfcore::{sections_dim, sections_matrix, MatrixFactorization};

use crate::{HypersurfaceContext, HypersurfaceError};

/// `coker e1` over `R_Y`, with unit relations eliminated.
pub fn coker_module<F: Field>(
    h: &HypersurfaceContext<F>,
    e: &MatrixFactorization<F>,
) -> Result<ModulePresentation<F>, HypersurfaceError> {
    h.check(e)?;
    let m = ModulePresentation::new(
        h.ry(),
        e.big0().twists().to_vec(),
        e.big1().twists().to_vec(),
        e.e1.matrix.clone(),
    )?;
    Ok(m.eliminate_units(h.ry()))
}

/// `M` viewed over `R`: the relations of `M` together with `W` times each generator.
pub fn push_forward<F: Field>(
    h: &HypersurfaceContext<F>,
    m: &ModulePresentation<F>,
) -> Result<ModulePresentation<F>, HypersurfaceError> {
    let ring = h.ctx().ring();
    let n = m.num_gens();
    let d = h.ctx().d();
    let mut w = PolyMatrix::zeros(ring.nvars(), n, n);
    for i in 0..n {
        w.set(i, i, h.ctx().w().clone());
    }
    let rels = m.relations.hcat(&w)?;
    let mut rel_twists = m.rel_twists.clone();
    rel_twists.extend(m.gen_twists.iter().map(|a| a - d));
    Ok(ModulePresentation::new(ring, m.gen_twists.clone(), rel_twists, rels)?)
}

/// `e1` is injective on global sections of every twist in `degrees`.
pub fn e1_injective<F: Field>(e: &MatrixFactorization<F>, degrees: impl IntoIterator<Item = i64>) -> bool {
    let ring: &GradedRing<F> = e.ctx.ring();
    degrees.into_iter().all(|n| {
        let dim = sections_dim(ring, e.big1(), n);
        dim == 0 || rank(&sections_matrix(ring, &e.e1, n)) == dim
    })
}
