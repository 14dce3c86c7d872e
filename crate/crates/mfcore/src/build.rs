//! Small building blocks for factorizations: rank-one pieces and graded
//! changes of basis.

use std::sync::Arc;

use mfcat_algebra::{Field, Poly, PolyMatrix};

use crate::context::MFContext;
use crate::mf::MatrixFactorization;
use crate::sheaf::{SheafMap, TwistSum};
use crate::MfError;

/// `O(a - deg f) --f--> O(a) --g--> O(a - deg f + d)` for `W = f·g`.
pub fn rank_one<F: Field>(
    ctx: &Arc<MFContext<F>>,
    f: &Poly<F>,
    g: &Poly<F>,
    a: i64,
) -> Result<MatrixFactorization<F>, MfError> {
    let ring = ctx.ring();
    let df = f.degree().ok_or_else(|| MfError::Invalid("zero factor".into()))? as i64;
    let e1t = TwistSum::new(vec![a - df]);
    let e0t = TwistSum::new(vec![a]);
    let nv = ring.nvars();
    let e1 = SheafMap::new(ring, e1t.clone(), e0t.clone(), PolyMatrix::from_rows(nv, vec![vec![f.clone()]])?)?;
    let e0 = SheafMap::new(ring, e0t, e1t.twisted(ctx.d()), PolyMatrix::from_rows(nv, vec![vec![g.clone()]])?)?;
    MatrixFactorization::checked(ctx.clone(), e1, e0)
}

/// `O(a - d) --W--> O(a) --1--> O(a)`.
pub fn unit_piece<F: Field>(ctx: &Arc<MFContext<F>>, a: i64) -> Result<MatrixFactorization<F>, MfError> {
    rank_one(ctx, ctx.w(), &ctx.ring().one(), a)
}

/// `O(a) --1--> O(a) --W--> O(a + d)`.
pub fn counit_piece<F: Field>(ctx: &Arc<MFContext<F>>, a: i64) -> Result<MatrixFactorization<F>, MfError> {
    rank_one(ctx, &ctx.ring().one(), ctx.w(), a)
}

/// Replaces the basis of `E0` by `Q = I + p·E_{ij}`: `e1 ↦ Q e1`, `e0 ↦ e0 Q^{-1}`.
/// `p` must be homogeneous of degree `a_i - a_j` of `E0`.
pub fn change_basis_e0<F: Field>(
    e: &MatrixFactorization<F>,
    i: usize,
    j: usize,
    p: &Poly<F>,
) -> Result<MatrixFactorization<F>, MfError> {
    let ring = e.ctx.ring();
    let n = e.big0().rank();
    let (q, qinv) = elementary(ring.nvars(), n, i, j, p)?;
    let q = SheafMap::new(ring, e.big0().clone(), e.big0().clone(), q)?;
    let qinv = SheafMap::new(ring, e.big0().clone(), e.big0().clone(), qinv)?;
    MatrixFactorization::new(
        e.ctx.clone(),
        q.compose(&e.e1, ring)?,
        e.e0.compose(&qinv, ring)?,
    )
}

/// Replaces the basis of `E1` by `P = I + p·E_{ij}`: `e1 ↦ e1 P^{-1}`, `e0 ↦ P(d) e0`.
pub fn change_basis_e1<F: Field>(
    e: &MatrixFactorization<F>,
    i: usize,
    j: usize,
    p: &Poly<F>,
) -> Result<MatrixFactorization<F>, MfError> {
    let ring = e.ctx.ring();
    let n = e.big1().rank();
    let (pm, pinv) = elementary(ring.nvars(), n, i, j, p)?;
    let pm = SheafMap::new(ring, e.big1().clone(), e.big1().clone(), pm)?;
    let pinv = SheafMap::new(ring, e.big1().clone(), e.big1().clone(), pinv)?;
    MatrixFactorization::new(
        e.ctx.clone(),
        e.e1.compose(&pinv, ring)?,
        pm.twisted(e.d()).compose(&e.e0, ring)?,
    )
}

fn elementary<F: Field>(
    nv: usize,
    n: usize,
    i: usize,
    j: usize,
    p: &Poly<F>,
) -> Result<(PolyMatrix<F>, PolyMatrix<F>), MfError> {
    if i == j || i >= n || j >= n {
        return Err(MfError::Invalid(format!("no elementary operation ({i}, {j}) on rank {n}")));
    }
    let mut q = PolyMatrix::identity(nv, n);
    let mut qinv = PolyMatrix::identity(nv, n);
    q.set(i, j, p.clone());
    qinv.set(i, j, p.neg());
    Ok((q, qinv))
}
