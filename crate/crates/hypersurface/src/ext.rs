//! `H^q Γ(Y, Hom(i^*E, N))` for the brutal truncation `F_• = (i^*E)_{≥0}`.
//!
//! Each term `Hom(F_q, N)` is a sum of `Γ(Y, Ñ(n))`. In affine-graded mode
//! that is just `N_n`. On `Proj` it is modelled as `Hom_S(m^[B], N)_n` with
//! `m^[B] = (x_0^B, ..., x_m^B)` over the ambient polynomial ring: a tuple
//! `(u_i) ∈ N_{n+B}^{m+1}` with `x_j^B u_i = x_i^B u_j`. Its limit over `B`
//! is the module of twisted global sections, so the schedule of
//! [`mfcat_cohomology::Schedule`] applies unchanged.
//!
//! Every space is kept as `lifts to the free module G` modulo `Rel`, so a term
//! is `(ambient V, admissible H ⊆ V, zero K ⊆ H)` and
//! `dim H^q = dim{x ∈ H_q : δx ∈ K_{q+1}} - dim(K_q + δ H_{q-1})`.

use std::collections::HashMap;
use std::ops::RangeInclusive;

use mfcat_algebra::{Field, ModulePresentation, Monomial, Poly};
use mfcat_cohomology::{Schedule, Stable};
use mfcat_linalg::{kernel_basis, par, rank, rref, Matrix};
use mfcat_mfcore::{MatrixFactorization, Mode};

use crate::resolution::{term_map, term_twists};
use crate::{HypersurfaceContext, HypersurfaceError};

#[derive(Clone, Copy)]
enum Model {
    Affine,
    Proj(u32),
}

struct Ctx<'a, F: Field> {
    h: &'a HypersurfaceContext<F>,
    n: &'a ModulePresentation<F>,
    model: Model,
}

/// Block-diagonal placement helper.
fn place<F: Field>(out: &mut Matrix<F>, r0: usize, c0: usize, block: &Matrix<F>) {
    for r in 0..block.rows() {
        for c in 0..block.cols() {
            let v = block.get(r, c);
            if !v.is_zero() {
                out.set(r0 + r, c0 + c, v.clone());
            }
        }
    }
}

fn block_diag<F: Field>(blocks: &[Matrix<F>]) -> Matrix<F> {
    let rows = blocks.iter().map(|b| b.rows()).sum();
    let cols = blocks.iter().map(|b| b.cols()).sum();
    let mut out = Matrix::zeros(rows, cols);
    let (mut r, mut c) = (0, 0);
    for b in blocks {
        place(&mut out, r, c, b);
        r += b.rows();
        c += b.cols();
    }
    out
}

fn hcat<F: Field>(a: &Matrix<F>, b: &Matrix<F>) -> Matrix<F> {
    if a.cols() == 0 {
        return b.clone();
    }
    if b.cols() == 0 {
        return a.clone();
    }
    a.hcat(b).expect("same row count")
}

impl<'a, F: Field> Ctx<'a, F> {
    fn comps(&self) -> usize {
        match self.model {
            Model::Affine => 1,
            Model::Proj(_) => self.h.ry().nvars(),
        }
    }

    fn shift(&self) -> i64 {
        match self.model {
            Model::Affine => 0,
            Model::Proj(b) => b as i64,
        }
    }

    /// `dim G_n`.
    fn g_dim(&self, n: i64) -> usize {
        self.n.gen_twists.iter().map(|g| self.h.ry().dim(n + g)).sum()
    }

    /// Columns spanning `Rel_n ⊆ G_n`.
    fn rel(&self, n: i64) -> Matrix<F> {
        self.n.degree_matrix(self.h.ry(), n)
    }

    /// Multiplication by a scalar polynomial `G_src -> G_tgt`.
    fn g_mult(&self, p: &Poly<F>, src: i64, tgt: i64) -> Matrix<F> {
        let ry = self.h.ry();
        let blocks: Vec<Matrix<F>> = self
            .n
            .gen_twists
            .iter()
            .map(|g| ry.multiplication_matrix(p, src + g, tgt + g))
            .collect();
        block_diag(&blocks)
    }

    fn x_power(&self, i: usize) -> Poly<F> {
        let nv = self.h.ry().nvars();
        Poly::term(Monomial::var(nv, i, self.shift() as u32), F::one())
    }

    /// `(ambient dim, admissible basis H, zero span K)` for `Γ(Ñ(n))`.
    fn section_space(&self, n: i64) -> (usize, Matrix<F>, Matrix<F>) {
        let k = self.comps();
        let s = self.shift();
        let gd = self.g_dim(n + s);
        let v = k * gd;
        let rel = self.rel(n + s);
        let kmat = block_diag(&vec![rel; k]);
        let hmat = match self.model {
            Model::Affine => Matrix::identity(v),
            Model::Proj(_) => {
                // x_j^B u_i - x_i^B u_j ∈ Rel_{n+2B}
                let tgt = self.g_dim(n + 2 * s);
                let pairs: Vec<(usize, usize)> =
                    (0..k).flat_map(|i| (i + 1..k).map(move |j| (i, j))).collect();
                let mut c = Matrix::zeros(pairs.len() * tgt, v);
                for (pi, &(i, j)) in pairs.iter().enumerate() {
                    let xi = self.g_mult(&self.x_power(i), n + s, n + 2 * s);
                    let xj = self.g_mult(&self.x_power(j), n + s, n + 2 * s);
                    place(&mut c, pi * tgt, i * gd, &xj);
                    place(&mut c, pi * tgt, j * gd, &xi.scale_neg());
                }
                let relt = block_diag(&vec![self.rel(n + 2 * s); pairs.len()]);
                admissible(&c, &relt, v)
            }
        };
        (v, hmat, kmat)
    }
}

trait ScaleNeg {
    fn scale_neg(&self) -> Self;
}

impl<F: Field> ScaleNeg for Matrix<F> {
    fn scale_neg(&self) -> Self {
        let mut out = self.clone();
        for r in 0..out.rows() {
            for c in 0..out.cols() {
                let v = out.get(r, c).neg();
                out.set(r, c, v);
            }
        }
        out
    }
}

/// Basis (as columns) of `{x : C x ∈ span(R)}`.
fn admissible<F: Field>(c: &Matrix<F>, r: &Matrix<F>, v: usize) -> Matrix<F> {
    if v == 0 {
        return Matrix::zeros(0, 0);
    }
    if c.rows() == 0 {
        return Matrix::identity(v);
    }
    let ker = kernel_basis(&hcat(c, r));
    let top: Vec<Vec<F>> = (0..ker.cols()).map(|j| (0..v).map(|i| ker.get(i, j).clone()).collect()).collect();
    if top.is_empty() {
        return Matrix::zeros(v, 0);
    }
    let (red, piv) = rref(&Matrix::from_rows(top).expect("rectangular"));
    let cols: Vec<Vec<F>> = (0..piv.len()).map(|i| red.row(i).to_vec()).collect();
    if cols.is_empty() {
        Matrix::zeros(v, 0)
    } else {
        Matrix::from_columns(v, &cols).expect("rectangular")
    }
}

/// A term `Hom(F_q, N)`: ambient dimension, admissible basis, zero span, and block offsets.
struct Term<F: Field> {
    twists: Vec<i64>,
    offsets: Vec<usize>,
    dim: usize,
    h: Matrix<F>,
    k: Matrix<F>,
}

fn term<F: Field>(cx: &Ctx<'_, F>, e: &MatrixFactorization<F>, q: i64, cache: &mut HashMap<i64, (usize, Matrix<F>, Matrix<F>)>) -> Term<F> {
    let twists = if q < 0 { vec![] } else { term_twists(e, q) };
    let mut offsets = vec![];
    let mut dim = 0;
    let mut hs = vec![];
    let mut ks = vec![];
    for a in &twists {
        let (v, h, k) = cache.entry(-a).or_insert_with(|| cx.section_space(-a)).clone();
        offsets.push(dim);
        dim += v;
        hs.push(h);
        ks.push(k);
    }
    Term { twists, offsets, dim, h: block_diag(&hs), k: block_diag(&ks) }
}

/// Precomposition with `δ_{q+1}: F_{q+1} -> F_q`, as a map of ambients `V_q -> V_{q+1}`.
fn precompose<F: Field>(cx: &Ctx<'_, F>, e: &MatrixFactorization<F>, q: i64, src: &Term<F>, tgt: &Term<F>) -> Matrix<F> {
    let mut out = Matrix::zeros(tgt.dim, src.dim);
    if src.dim == 0 || tgt.dim == 0 {
        return out;
    }
    let delta = term_map(e, q + 1);
    let s = cx.shift();
    let k = cx.comps();
    for (j, aj) in tgt.twists.iter().enumerate() {
        for (c, ac) in src.twists.iter().enumerate() {
            let p = cx.h.ry().normal_form(delta.get(c, j));
            if p.is_zero() {
                continue;
            }
            let m = cx.g_mult(&p, -ac + s, -aj + s);
            for i in 0..k {
                place(&mut out, tgt.offsets[j] + i * m.rows(), src.offsets[c] + i * m.cols(), &m);
            }
        }
    }
    out
}

fn h_at<F: Field>(cx: &Ctx<'_, F>, e: &MatrixFactorization<F>, q: i64) -> usize {
    let mut cache = HashMap::new();
    let here = term(cx, e, q, &mut cache);
    if here.h.cols() == 0 {
        return 0;
    }
    let next = term(cx, e, q + 1, &mut cache);
    let prev = term(cx, e, q - 1, &mut cache);
    let rk = |m: &Matrix<F>| if m.rows() == 0 || m.cols() == 0 { 0 } else { rank(m) };
    // dim Z = cols(H_q) - (rank[δH_q | K_{q+1}] - rank K_{q+1})
    let dh = precompose(cx, e, q, &here, &next).mul(&here.h).expect("shapes");
    let z = here.h.cols() - (rk(&hcat(&dh, &next.k)) - rk(&next.k));
    let b = if prev.h.cols() == 0 {
        rk(&here.k)
    } else {
        let dprev = precompose(cx, e, q - 1, &prev, &here).mul(&prev.h).expect("shapes");
        rk(&hcat(&here.k, &dprev))
    };
    z - b
}

fn table_entry<F: Field>(
    h: &HypersurfaceContext<F>,
    e: &MatrixFactorization<F>,
    n: &ModulePresentation<F>,
    q: i64,
    schedule: &Schedule,
) -> Stable {
    match h.ctx().mode() {
        Mode::AffineGraded => Stable::exact(h_at(&Ctx { h, n, model: Model::Affine }, e, q)),
        Mode::Projective => schedule.run(|b| h_at(&Ctx { h, n, model: Model::Proj(b) }, e, q)),
    }
}

/// Raw table `q ↦ dim H^q Γ(Y, Hom(F_•, Ñ))`. Satisfies
/// `table(q + 2)(E, N) = table(q)(E, N(d))` for `q ≥ 1`.
pub fn ext_gamma_dims<F: Field>(
    h: &HypersurfaceContext<F>,
    e: &MatrixFactorization<F>,
    n: &ModulePresentation<F>,
    qs: RangeInclusive<i64>,
    schedule: &Schedule,
) -> Result<Vec<(i64, Stable)>, HypersurfaceError> {
    h.check(e)?;
    if *qs.start() < 0 {
        return Err(HypersurfaceError::NegativeIndex(*qs.start()));
    }
    let qs: Vec<i64> = qs.collect();
    let vals = par::par_map(&qs, |&q| table_entry(h, e, n, q, schedule));
    Ok(qs.into_iter().zip(vals).collect())
}

/// The table renormalized by periodicity: entry `q` is computed against
/// `N(-⌊q/2⌋·d)`, so that it is eventually constant on even and odd `q`.
pub fn ext_gamma_normalized<F: Field>(
    h: &HypersurfaceContext<F>,
    e: &MatrixFactorization<F>,
    n: &ModulePresentation<F>,
    qs: RangeInclusive<i64>,
    schedule: &Schedule,
) -> Result<Vec<(i64, Stable)>, HypersurfaceError> {
    h.check(e)?;
    if *qs.start() < 0 {
        return Err(HypersurfaceError::NegativeIndex(*qs.start()));
    }
    let d = h.ctx().d();
    let qs: Vec<i64> = qs.collect();
    let vals = par::par_map(&qs, |&q| table_entry(h, e, &n.twisted(-q.div_euclid(2) * d), q, schedule));
    Ok(qs.into_iter().zip(vals).collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StableHom {
    pub dim: usize,
    /// The first `q` of the two agreeing values.
    pub q: i64,
}

const EXTRA_STEPS: i64 = 6;

/// `dim Hom_{D_sg(Y)}(coker E, N)` as the stable value of
/// `table(2q)(E, N(-q·d))`, starting at `q = dim X + 2`.
pub fn stable_hom_dim<F: Field>(
    h: &HypersurfaceContext<F>,
    e: &MatrixFactorization<F>,
    n: &ModulePresentation<F>,
    schedule: &Schedule,
) -> Result<StableHom, HypersurfaceError> {
    h.check(e)?;
    let d = h.ctx().d();
    let start = h.ctx().dim_x() as i64 + 2;
    let value = |q: i64| -> Result<usize, HypersurfaceError> {
        let s = table_entry(h, e, &n.twisted(-q * d), 2 * q, schedule);
        if s.stable {
            Ok(s.dim)
        } else {
            Err(HypersurfaceError::Inconclusive(format!("Ext^{} did not stabilize in the truncation bound", 2 * q)))
        }
    };
    let mut prev = value(start)?;
    for q in start + 1..=start + EXTRA_STEPS {
        let v = value(q)?;
        if v == prev {
            return Ok(StableHom { dim: v, q: q - 1 });
        }
        prev = v;
    }
    Err(HypersurfaceError::Inconclusive("stable Hom did not settle".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coker_module;
    use crate::fixtures::*;

    fn dims(t: &[(i64, Stable)]) -> Vec<usize> {
        t.iter().map(|(_, s)| s.dim).collect()
    }

    #[test]
    fn a1_normalized_table_is_periodic_from_the_start() {
        let h = a1();
        let e = e_u(&h);
        let m = coker_module(&h, &e).unwrap();
        let t = ext_gamma_normalized(&h, &e, &m, 1..=6, &Schedule::default()).unwrap();
        assert_eq!(dims(&t), vec![0, 1, 0, 1, 0, 1]);
        // q = 0 is Hom(M, M) in degree 0
        let t0 = ext_gamma_dims(&h, &e, &m, 0..=0, &Schedule::default()).unwrap();
        assert_eq!(t0[0].1.dim, 1);
    }

    #[test]
    fn raw_table_shifts_into_twists() {
        let h = a1();
        let e = e_u(&h);
        let m = coker_module(&h, &e).unwrap();
        let s = Schedule::default();
        let raw = ext_gamma_dims(&h, &e, &m, 1..=6, &s).unwrap();
        let tw = ext_gamma_dims(&h, &e, &m.twisted(h.ctx().d()), 1..=4, &s).unwrap();
        for q in 1..=4usize {
            assert_eq!(raw[q + 1].1, tw[q - 1].1);
        }
    }

    #[test]
    fn stable_hom_examples() {
        let h = a1();
        let eu = e_u(&h);
        let ev = mf(&h, &[-2], &[-1], &[&["v"]], &[&["u"]]);
        let s = Schedule::default();
        let mu = coker_module(&h, &eu).unwrap();
        let mv = coker_module(&h, &ev).unwrap();
        assert_eq!(stable_hom_dim(&h, &eu, &mu, &s).unwrap().dim, 1);
        assert_eq!(stable_hom_dim(&h, &eu, &mv, &s).unwrap().dim, 0);
        let free = ModulePresentation::free(2, vec![0, -1]);
        assert_eq!(stable_hom_dim(&h, &eu, &free, &s).unwrap().dim, 0);
        assert!(ext_gamma_dims(&h, &eu, &mu, -1..=1, &s).is_err());
    }

    #[test]
    fn regular_zero_scheme_has_no_stable_homs() {
        let p2 = hctx(&["x0", "x1", "x2"], "x2", mfcat_mfcore::Mode::Projective);
        let e = mf(&p2, &[-1, -2], &[0, -1], &[&["x2", "x0*x2"], &["0", "x2"]], &[&["1", "-x0"], &["0", "1"]]);
        let m = coker_module(&p2, &e).unwrap();
        let s = Schedule::default();
        assert_eq!(stable_hom_dim(&p2, &e, &m, &s).unwrap().dim, 0);
    }

    #[test]
    fn global_sections_model_sees_beyond_the_module() {
        // Y = point for W = x0 on P^1: Γ(Y, O_Y(n)) = k for every n, while (R_Y)_n = 0 for n < 0
        let p1 = hctx(&["x0", "x1"], "x0", mfcat_mfcore::Mode::Projective);
        let e = mf(&p1, &[-1], &[0], &[&["x0"]], &[&["1"]]);
        let oy = ModulePresentation::free(2, vec![-3]);
        let t = ext_gamma_dims(&p1, &e, &oy, 0..=0, &Schedule::default()).unwrap();
        assert_eq!((t[0].1.dim, t[0].1.stable), (1, true));
    }
}
