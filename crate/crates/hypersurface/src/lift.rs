use std::sync::Arc;

use mfcat_algebra::module::map_in_degree;
use mfcat_algebra::{syzygies, Field, Poly, PolyMatrix};
use mfcat_linalg::solve;
use mfcat_mfcore::{MFContext, MatrixFactorization, SheafMap};

use crate::HypersurfaceError;

/// Completes an injective `alpha: E1 -> E0` whose cokernel is killed by `W`
/// to a matrix factorization with `e1 = alpha`.
///
/// `beta: E0 -> E1(d)` is solved column by column from `alpha·beta = W`.
pub fn mf_from_module<F: Field>(
    ctx: &Arc<MFContext<F>>,
    alpha: &SheafMap<F>,
) -> Result<MatrixFactorization<F>, HypersurfaceError> {
    let ring = ctx.ring();
    let d = ctx.d();
    let t1 = alpha.source.twists();
    let t0 = alpha.target.twists();
    let (syz, _) = syzygies(ring, &alpha.matrix, t0, t1)?;
    if !syz.is_empty() {
        return Err(HypersurfaceError::NotInjective);
    }
    let rows: Vec<i64> = t0.iter().map(|a| a + d).collect();
    let cols: Vec<i64> = t1.iter().map(|b| b + d).collect();
    let w = ring.coordinates(ctx.w(), d)?;
    let mut beta_cols: Vec<Vec<Poly<F>>> = Vec::with_capacity(t0.len());
    for (j, &aj) in t0.iter().enumerate() {
        let n = -aj;
        let m = map_in_degree(ring, &alpha.matrix, &rows, &cols, n);
        let mut rhs = vec![F::zero(); m.rows()];
        // W·e_j sits in the block of row j, in degree n + a_j + d = d
        let off: usize = rows[..j].iter().map(|&a| ring.dim(n + a)).sum();
        rhs[off..off + w.len()].clone_from_slice(&w);
        let x = solve(&m, &rhs)
            .map_err(|e| HypersurfaceError::NoSolution(e.to_string()))?
            .ok_or_else(|| HypersurfaceError::NoSolution(format!("W·e{j} is not in the image of alpha")))?;
        let mut col = Vec::with_capacity(cols.len());
        let mut at = 0;
        for &b in &cols {
            let k = ring.dim(n + b);
            col.push(ring.from_coordinates(n + b, &x[at..at + k]));
            at += k;
        }
        beta_cols.push(col);
    }
    let beta = PolyMatrix::from_columns(ring.nvars(), t1.len(), &beta_cols);
    let e0 = SheafMap::new(ring, alpha.target.clone(), alpha.source.twisted(d), beta)?;
    Ok(MatrixFactorization::checked(ctx.clone(), alpha.clone(), e0)?)
}
