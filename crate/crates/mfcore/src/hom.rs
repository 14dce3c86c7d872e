//! Mapping complexes, strict morphisms as cycles, and homotopies.
//!
//! `Hom(⊕O(a_c), ⊕O(b_r))` is the twist sum `⊕O(b_r - a_c)` indexed by
//! `r·|A| + c`. Its global sections in degree `n` are `⊕ R_{n + b_r - a_c}`
//! with monomial bases, so a coefficient vector lists unknowns in
//! (row, column, monomial) order.

use mfcat_algebra::module::map_in_degree;
use mfcat_algebra::{Field, GradedRing, Poly, PolyMatrix};
use mfcat_linalg::{kernel_basis, solve, Matrix};

use crate::mf::{MatrixFactorization, StrictMorphism, TwistedPeriodicComplex};
use crate::sheaf::{SheafMap, TwistSum};
use crate::MfError;

/// `φ_*: Hom(A, B) -> Hom(A, B')` for `φ: B -> B'`.
pub fn post_matrix<F: Field>(phi: &PolyMatrix<F>, a_rank: usize) -> PolyMatrix<F> {
    let (bp, b) = (phi.rows(), phi.cols());
    let nv = phi.nvars();
    let mut m = PolyMatrix::zeros(nv, bp * a_rank, b * a_rank);
    for r in 0..bp {
        for k in 0..b {
            let e = phi.get(r, k);
            if e.is_zero() {
                continue;
            }
            for c in 0..a_rank {
                m.set(r * a_rank + c, k * a_rank + c, e.clone());
            }
        }
    }
    m
}

/// `ψ^*: Hom(A, B) -> Hom(A', B)` for `ψ: A' -> A`.
pub fn pre_matrix<F: Field>(psi: &PolyMatrix<F>, b_rank: usize) -> PolyMatrix<F> {
    let (a, ap) = (psi.rows(), psi.cols());
    let nv = psi.nvars();
    let mut m = PolyMatrix::zeros(nv, b_rank * ap, b_rank * a);
    for k in 0..a {
        for c in 0..ap {
            let e = psi.get(k, c);
            if e.is_zero() {
                continue;
            }
            for r in 0..b_rank {
                m.set(r * ap + c, r * a + k, e.clone());
            }
        }
    }
    m
}

/// `Hom(E, F)` with `C^0 = Hom(E0,F0) ⊕ Hom(E1,F1)`,
/// `C^{-1} = Hom(E0,F1) ⊕ Hom(E1,F0(-d))` and
/// `∂^{-1} = [[f1_*, -e0^*], [-e1^*, f0_*]]`, `∂^0 = [[f0_*, e0^*], [e1^*, f1_*]]`.
pub fn mapping_complex<F: Field>(
    e: &MatrixFactorization<F>,
    f: &MatrixFactorization<F>,
) -> Result<TwistedPeriodicComplex<F>, MfError> {
    if !e.ctx.same_as(&f.ctx) {
        return Err(MfError::ContextMismatch);
    }
    let ring = e.ctx.ring();
    let nv = ring.nvars();
    let d = e.d();
    let (e0s, e1s, f0s, f1s) = (e.big0(), e.big1(), f.big0(), f.big1());

    let h00 = e0s.hom_to(f0s);
    let h11 = e1s.hom_to(f1s);
    let h01 = e0s.hom_to(f1s);
    let h10m = e1s.hom_to(&f0s.twisted(-d));

    let f1_star = post_matrix(&f.e1.matrix, e0s.rank());
    let e0_pull = pre_matrix(&e.e0.matrix, f0s.rank()).neg();
    let e1_pull = pre_matrix(&e.e1.matrix, f1s.rank()).neg();
    let f0_star = post_matrix(&f.e0.matrix, e1s.rank());
    let dm1 = SheafMap::from_blocks(
        nv,
        &[h01.clone(), h10m.clone()],
        &[h00.clone(), h11.clone()],
        &[vec![Some(&f1_star), Some(&e0_pull)], vec![Some(&e1_pull), Some(&f0_star)]],
    );

    let f0_star0 = post_matrix(&f.e0.matrix, e0s.rank());
    let e0_pull1 = pre_matrix(&e.e0.matrix, f1s.rank());
    let e1_pull0 = pre_matrix(&e.e1.matrix, f0s.rank());
    let f1_star1 = post_matrix(&f.e1.matrix, e1s.rank());
    let d0 = SheafMap::from_blocks(
        nv,
        &[h00, h11],
        &[h01.twisted(d), h10m.twisted(d)],
        &[vec![Some(&f0_star0), Some(&e0_pull1)], vec![Some(&e1_pull0), Some(&f1_star1)]],
    );
    // re-validate the degree bookkeeping
    let dm1 = SheafMap::new(ring, dm1.source, dm1.target, dm1.matrix)?;
    let d0 = SheafMap::new(ring, d0.source, d0.target, d0.matrix)?;
    Ok(TwistedPeriodicComplex {
        ctx: std::sync::Arc::new(e.ctx.periodic_version()),
        d_minus1: dm1,
        d_zero: d0,
    })
}

/// Dimension of the global sections of `sum(n)`.
pub fn sections_dim<F: Field>(ring: &GradedRing<F>, sum: &TwistSum, n: i64) -> usize {
    sum.twists().iter().map(|&a| ring.dim(n + a)).sum()
}

/// The map induced on global sections of the `n`-th twists.
pub fn sections_matrix<F: Field>(ring: &GradedRing<F>, map: &SheafMap<F>, n: i64) -> Matrix<F> {
    map_in_degree(ring, &map.matrix, map.target.twists(), map.source.twists(), n)
}

/// Coefficients of a map `A -> B`, in (row, column, monomial) order.
pub fn map_to_vector<F: Field>(ring: &GradedRing<F>, map: &SheafMap<F>) -> Vec<F> {
    let a = map.source.twists();
    let b = map.target.twists();
    let mut out = Vec::new();
    for (r, br) in b.iter().enumerate() {
        for (c, ac) in a.iter().enumerate() {
            out.extend(
                ring.coordinates(map.matrix.get(r, c), br - ac)
                    .expect("sheaf maps have homogeneous entries"),
            );
        }
    }
    out
}

/// Inverse of [`map_to_vector`].
pub fn vector_to_map<F: Field>(
    ring: &GradedRing<F>,
    source: &TwistSum,
    target: &TwistSum,
    v: &[F],
) -> SheafMap<F> {
    let nv = ring.nvars();
    let mut m = PolyMatrix::zeros(nv, target.rank(), source.rank());
    let mut off = 0;
    for (r, br) in target.twists().iter().enumerate() {
        for (c, ac) in source.twists().iter().enumerate() {
            let n = ring.dim(br - ac);
            m.set(r, c, ring.from_coordinates(br - ac, &v[off..off + n]));
            off += n;
        }
    }
    debug_assert_eq!(off, v.len());
    SheafMap { source: source.clone(), target: target.clone(), matrix: m }
}

/// The `Z^0` vector `(g0, -g1)` of a strict morphism.
pub fn morphism_to_cycle<F: Field>(f: &StrictMorphism<F>) -> Vec<F> {
    let ring = f.source.ctx.ring();
    let mut v = map_to_vector(ring, &f.g0);
    v.extend(map_to_vector(ring, &f.g1.neg()));
    v
}

/// Inverse of [`morphism_to_cycle`]; does not re-check the squares.
pub fn cycle_to_morphism<F: Field>(
    e: &MatrixFactorization<F>,
    f: &MatrixFactorization<F>,
    v: &[F],
) -> StrictMorphism<F> {
    let ring = e.ctx.ring();
    let n0 = sections_dim(ring, &e.big0().hom_to(f.big0()), 0);
    let g0 = vector_to_map(ring, e.big0(), f.big0(), &v[..n0]);
    let g1 = vector_to_map(ring, e.big1(), f.big1(), &v[n0..]).neg();
    StrictMorphism { source: e.clone(), target: f.clone(), g1, g0 }
}

/// A basis of all strict morphisms `E -> F`, as degree-0 cycles of the mapping complex.
pub fn strict_morphism_basis<F: Field>(
    e: &MatrixFactorization<F>,
    f: &MatrixFactorization<F>,
) -> Result<Vec<StrictMorphism<F>>, MfError> {
    let c = mapping_complex(e, f)?;
    let ring = e.ctx.ring();
    let k = kernel_basis(&sections_matrix(ring, &c.d_zero, 0));
    Ok(k.columns().iter().map(|v| cycle_to_morphism(e, f, v)).collect())
}

/// `s: E0 -> F1` and `t: E1(d) -> F0` with `g0 = f1∘s + t∘e0` and
/// `g1 = s∘e1 + f0(-d)∘t(-d)`.
#[derive(Clone, Debug)]
pub struct Homotopy<F: Field> {
    pub s: SheafMap<F>,
    pub t: SheafMap<F>,
}

/// A homotopy `f ≃ 0`, or `None` when there is none.
///
/// Solves `∂^{-1} x = (g0, -g1)` on global sections; `(s, t) = (x_s, -x_t)`.
/// The unknowns run over every admissible coefficient, so `None` is definitive.
pub fn solve_homotopy<F: Field>(f: &StrictMorphism<F>) -> Result<Option<Homotopy<F>>, MfError> {
    let (e, t) = (&f.source, &f.target);
    let c = mapping_complex(e, t)?;
    let ring = e.ctx.ring();
    let a = sections_matrix(ring, &c.d_minus1, 0);
    let b = morphism_to_cycle(f);
    let Some(x) = solve(&a, &b)? else { return Ok(None) };
    let d = e.d();
    let ns = sections_dim(ring, &e.big0().hom_to(t.big1()), 0);
    let s = vector_to_map(ring, e.big0(), t.big1(), &x[..ns]);
    let tm = vector_to_map(ring, e.big1(), &t.big0().twisted(-d), &x[ns..]).neg();
    Ok(Some(Homotopy { s, t: tm.twisted(d) }))
}

/// Checks both homotopy identities.
pub fn check_homotopy<F: Field>(f: &StrictMorphism<F>, h: &Homotopy<F>) -> Result<bool, MfError> {
    let ring = f.source.ctx.ring();
    let d = f.source.d();
    let g0 = f.target.e1.compose(&h.s, ring)?.add(&h.t.compose(&f.source.e0, ring)?)?;
    let g1 = h
        .s
        .compose(&f.source.e1, ring)?
        .add(&f.target.e0.twisted(-d).compose(&h.t.twisted(-d), ring)?)?;
    Ok(g0.matrix == f.g0.matrix && g1.matrix == f.g1.matrix)
}

/// Elementwise `p · m`.
pub fn scale_poly<F: Field>(ring: &GradedRing<F>, m: &PolyMatrix<F>, p: &Poly<F>) -> PolyMatrix<F> {
    m.map(|x| ring.mul(x, p))
}
