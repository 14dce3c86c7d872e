//! Bounded complexes of twist sums, their tensor products with matrix
//! factorizations, totalization, and the truncated Koszul complex.

use std::sync::Arc;

use mfcat_algebra::{Field, GradedRing, Monomial, Poly, PolyMatrix};

use crate::context::MFContext;
use crate::mf::{MatrixFactorization, StrictMorphism};
use crate::sheaf::{SheafMap, TwistSum};
use crate::MfError;

/// `P^lowest -> ... -> P^{lowest + len - 1}`; `maps[i]: terms[i] -> terms[i+1]`.
#[derive(Clone, Debug)]
pub struct FreeComplex<F> {
    pub lowest: i64,
    pub terms: Vec<TwistSum>,
    pub maps: Vec<PolyMatrix<F>>,
}

impl<F: Field> FreeComplex<F> {
    /// `O(a)` concentrated in degree 0 and similar one-term complexes.
    pub fn single(degree: i64, term: TwistSum) -> Self {
        FreeComplex { lowest: degree, terms: vec![term], maps: Vec::new() }
    }

    pub fn highest(&self) -> i64 {
        self.lowest + self.terms.len() as i64 - 1
    }

    pub fn term(&self, p: i64) -> Option<&TwistSum> {
        if p < self.lowest {
            return None;
        }
        self.terms.get((p - self.lowest) as usize)
    }

    /// `d^p: P^p -> P^{p+1}`.
    pub fn map(&self, p: i64) -> Option<&PolyMatrix<F>> {
        if p < self.lowest {
            return None;
        }
        self.maps.get((p - self.lowest) as usize)
    }

    /// Consecutive maps compose to zero in `R`.
    pub fn is_complex(&self, ring: &GradedRing<F>) -> bool {
        self.maps
            .windows(2)
            .all(|w| w[1].mul(&w[0], ring).map_or(false, |m| m.is_zero()))
    }
}

/// The Koszul complex on the `k` monomials of degree `j`, with its
/// augmentation row `P^0 = O(-j)^k -> O`.
#[derive(Clone, Debug)]
pub struct Koszul<F> {
    pub j: u32,
    pub monomials: Vec<Monomial>,
    pub complex: FreeComplex<F>,
    pub augmentation: PolyMatrix<F>,
}

fn subsets_of_size(k: usize, n: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, k: usize, n: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for i in start..k {
            cur.push(i);
            go(i + 1, k, n, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, k, n, &mut Vec::new(), &mut out);
    out
}

/// `0 -> O(-kj)^{C(k,k)} -> ... -> O(-j)^k -> 0`, the term `O(-nj)^{C(k,n)}`
/// sitting in degree `-n + 1`, with `d(e_S) = Σ_l (-1)^l m_{s_l} e_{S \ s_l}`.
pub fn koszul_truncated<F: Field>(ring: &GradedRing<F>, m: usize, j: u32) -> Result<Koszul<F>, MfError> {
    if m == 0 || j == 0 {
        return Err(MfError::Invalid("the truncated Koszul complex needs m ≥ 1 and j ≥ 1".into()));
    }
    if ring.nvars() != m + 1 {
        return Err(MfError::Invalid(format!(
            "P^{m} needs {} variables, the ring has {}",
            m + 1,
            ring.nvars()
        )));
    }
    let nv = ring.nvars();
    let monomials = Monomial::all_of_degree(nv, j);
    let k = monomials.len();
    let mono_poly: Vec<Poly<F>> =
        monomials.iter().map(|x| ring.normal_form(&Poly::term(x.clone(), F::one()))).collect();
    let basis: Vec<Vec<Vec<usize>>> = (0..=k).map(|n| subsets_of_size(k, n)).collect();

    // terms in increasing degree: |S| = k, k-1, ..., 1
    let mut terms = Vec::new();
    let mut maps = Vec::new();
    for n in (1..=k).rev() {
        terms.push(TwistSum::new(vec![-((n as i64) * j as i64); basis[n].len()]));
        if n >= 2 {
            let target_index: std::collections::HashMap<&Vec<usize>, usize> =
                basis[n - 1].iter().enumerate().map(|(i, s)| (s, i)).collect();
            let mut mat = PolyMatrix::zeros(nv, basis[n - 1].len(), basis[n].len());
            for (c, s) in basis[n].iter().enumerate() {
                for l in 0..s.len() {
                    let mut rest = s.clone();
                    let gone = rest.remove(l);
                    let r = target_index[&rest];
                    let entry = if l % 2 == 0 { mono_poly[gone].clone() } else { mono_poly[gone].neg() };
                    mat.set(r, c, entry);
                }
            }
            maps.push(mat);
        }
    }
    let augmentation = PolyMatrix::from_rows(nv, vec![mono_poly])?;
    Ok(Koszul {
        j,
        monomials,
        complex: FreeComplex { lowest: -(k as i64) + 1, terms, maps },
        augmentation,
    })
}

/// `A ⊗ B` as a Kronecker product, indexed by `i * rows(B) + k`.
pub fn kron<F: Field>(a: &PolyMatrix<F>, b: &PolyMatrix<F>, ring: &GradedRing<F>) -> PolyMatrix<F> {
    let nv = ring.nvars();
    let (br, bc) = (b.rows(), b.cols());
    PolyMatrix::from_fn(nv, a.rows() * br, a.cols() * bc, |r, c| {
        let (x, y) = (a.get(r / br, c / bc), b.get(r % br, c % bc));
        if x.is_zero() || y.is_zero() {
            Poly::zero(nv)
        } else {
            ring.mul(x, y)
        }
    })
}

/// A bounded complex of factorizations joined by strict morphisms.
#[derive(Clone, Debug)]
pub struct MfComplex<F: Field> {
    pub lowest: i64,
    pub objects: Vec<MatrixFactorization<F>>,
    pub maps: Vec<StrictMorphism<F>>,
}

impl<F: Field> MfComplex<F> {
    pub fn highest(&self) -> i64 {
        self.lowest + self.objects.len() as i64 - 1
    }

    fn object(&self, p: i64) -> &MatrixFactorization<F> {
        &self.objects[(p - self.lowest) as usize]
    }

    fn map(&self, p: i64) -> Option<&StrictMorphism<F>> {
        if p < self.lowest {
            return None;
        }
        self.maps.get((p - self.lowest) as usize)
    }
}

/// `P^p ⊗ E` for every `p`, with maps `d^p ⊗ id_E`.
pub fn tensor_mf<F: Field>(
    p: &FreeComplex<F>,
    e: &MatrixFactorization<F>,
) -> Result<MfComplex<F>, MfError> {
    let ring = e.ctx.ring();
    let nv = ring.nvars();
    let id1 = PolyMatrix::identity(nv, e.big1().rank());
    let id0 = PolyMatrix::identity(nv, e.big0().rank());
    let mut objects = Vec::new();
    for t in &p.terms {
        let idp = PolyMatrix::identity(nv, t.rank());
        let e1 = SheafMap {
            source: t.tensor(e.big1()),
            target: t.tensor(e.big0()),
            matrix: kron(&idp, &e.e1.matrix, ring),
        };
        let e0 = SheafMap {
            source: t.tensor(e.big0()),
            target: t.tensor(e.big1()).twisted(e.d()),
            matrix: kron(&idp, &e.e0.matrix, ring),
        };
        objects.push(MatrixFactorization::new(e.ctx.clone(), e1, e0)?);
    }
    let mut maps = Vec::new();
    for (i, m) in p.maps.iter().enumerate() {
        let (s, t) = (&objects[i], &objects[i + 1]);
        let g1 = SheafMap { source: s.big1().clone(), target: t.big1().clone(), matrix: kron(m, &id1, ring) };
        let g0 = SheafMap { source: s.big0().clone(), target: t.big0().clone(), matrix: kron(m, &id0, ring) };
        maps.push(StrictMorphism::new(s.clone(), t.clone(), g1, g0)?);
    }
    Ok(MfComplex { lowest: p.lowest, objects, maps })
}

/// `E^q` of the unfolded factorization: `E0(sd)` for `q = 2s`, `E1(sd)` for `q = 2s - 1`.
fn unfolded(e: &MatrixFactorization<impl Field>, q: i64) -> TwistSum {
    let d = e.d();
    if q.rem_euclid(2) == 0 {
        e.big0().twisted(q.div_euclid(2) * d)
    } else {
        e.big1().twisted((q + 1).div_euclid(2) * d)
    }
}

fn vertical<F: Field>(e: &MatrixFactorization<F>, q: i64) -> &PolyMatrix<F> {
    if q.rem_euclid(2) == 0 {
        &e.e0.matrix
    } else {
        &e.e1.matrix
    }
}

fn horizontal<F: Field>(f: &StrictMorphism<F>, q: i64) -> &PolyMatrix<F> {
    if q.rem_euclid(2) == 0 {
        &f.g0.matrix
    } else {
        &f.g1.matrix
    }
}

/// Summands of `Tot^n`, with `p` running from high to low.
fn tot_summands<F: Field>(dc: &MfComplex<F>, n: i64) -> Vec<(i64, TwistSum)> {
    (dc.lowest..=dc.highest())
        .rev()
        .map(|p| (p, unfolded(dc.object(p), n - p)))
        .collect()
}

fn tot_differential<F: Field>(dc: &MfComplex<F>, n: i64) -> SheafMap<F> {
    let src = tot_summands(dc, n);
    let tgt = tot_summands(dc, n + 1);
    let ctx = &dc.objects[0].ctx;
    let ring = ctx.ring();
    let nv = ring.nvars();
    let pos = |p: i64| (dc.highest() - p) as usize;
    let mut blocks: Vec<Vec<Option<PolyMatrix<F>>>> = vec![vec![None; src.len()]; tgt.len()];
    for (p, _) in &src {
        let q = n - p;
        let v = vertical(dc.object(*p), q);
        blocks[pos(*p)][pos(*p)] = Some(if p.rem_euclid(2) == 0 { v.clone() } else { v.neg() });
        if let Some(phi) = dc.map(*p) {
            blocks[pos(*p + 1)][pos(*p)] = Some(horizontal(phi, q).clone());
        }
    }
    let refs: Vec<Vec<Option<&PolyMatrix<F>>>> =
        blocks.iter().map(|row| row.iter().map(|b| b.as_ref()).collect()).collect();
    let sources: Vec<TwistSum> = src.into_iter().map(|(_, t)| t).collect();
    let targets: Vec<TwistSum> = tgt.into_iter().map(|(_, t)| t).collect();
    SheafMap::from_blocks(nv, &sources, &targets, &refs)
}

/// Totalization along lines of slope -1: `E'_1 = Tot^{-1}`, `E'_0 = Tot^0`,
/// with differential `φ + (-1)^p e`.
pub fn tot<F: Field>(dc: &MfComplex<F>) -> Result<MatrixFactorization<F>, MfError> {
    if dc.objects.is_empty() {
        return Err(MfError::Invalid("Tot of an empty complex needs a context; use MatrixFactorization::zero".into()));
    }
    for (i, w) in dc.maps.windows(2).enumerate() {
        if !w[1].compose(&w[0])?.is_zero() {
            return Err(MfError::NonzeroComposite(dc.lowest + i as i64));
        }
    }
    let ctx: Arc<MFContext<F>> = dc.objects[0].ctx.clone();
    let e1 = tot_differential(dc, -1);
    let e0 = tot_differential(dc, 0);
    MatrixFactorization::new(ctx, e1, e0)
}

fn block_diag_tot<F: Field>(
    ring: &GradedRing<F>,
    lowest: i64,
    highest: i64,
    n: i64,
    mut block: impl FnMut(i64, i64) -> (TwistSum, TwistSum, PolyMatrix<F>),
) -> SheafMap<F> {
    let nv = ring.nvars();
    let mut acc = SheafMap::zero(nv, TwistSum::zero(), TwistSum::zero());
    for p in (lowest..=highest).rev() {
        let (s, t, m) = block(p, n - p);
        acc = acc.block_diag(&SheafMap { source: s, target: t, matrix: m });
    }
    acc
}

/// `Tot(P ⊗ f): Tot(P ⊗ E) -> Tot(P ⊗ F)`.
pub fn tensor_morphism<F: Field>(
    p: &FreeComplex<F>,
    f: &StrictMorphism<F>,
) -> Result<StrictMorphism<F>, MfError> {
    let src = tot(&tensor_mf(p, &f.source)?)?;
    let tgt = tot(&tensor_mf(p, &f.target)?)?;
    let ring = f.source.ctx.ring();
    let nv = ring.nvars();
    let mut parts = Vec::new();
    for n in [-1, 0] {
        parts.push(block_diag_tot(ring, p.lowest, p.highest(), n, |pp, q| {
            let t = p.term(pp).expect("in range");
            let idp = PolyMatrix::identity(nv, t.rank());
            (
                t.tensor(&unfolded(&f.source, q)),
                t.tensor(&unfolded(&f.target, q)),
                kron(&idp, horizontal(f, q), ring),
            )
        }));
    }
    let g0 = parts.pop().expect("two parts");
    let g1 = parts.pop().expect("two parts");
    StrictMorphism::new(src, tgt, g1, g0)
}

/// `Tot(c ⊗ E): Tot(P ⊗ E) -> Tot(Q ⊗ E)` for a chain map `c^p: P^p -> Q^p`
/// (missing degrees are zero).
pub fn tensor_chain_map<F: Field>(
    p: &FreeComplex<F>,
    q: &FreeComplex<F>,
    c: &[(i64, PolyMatrix<F>)],
    e: &MatrixFactorization<F>,
) -> Result<StrictMorphism<F>, MfError> {
    let src = tot(&tensor_mf(p, e)?)?;
    let tgt = tot(&tensor_mf(q, e)?)?;
    let ring = e.ctx.ring();
    let nv = ring.nvars();
    let mut parts = Vec::new();
    for n in [-1, 0] {
        let sources: Vec<TwistSum> = (p.lowest..=p.highest())
            .rev()
            .map(|pp| p.term(pp).unwrap().tensor(&unfolded(e, n - pp)))
            .collect();
        let targets: Vec<TwistSum> = (q.lowest..=q.highest())
            .rev()
            .map(|pp| q.term(pp).unwrap().tensor(&unfolded(e, n - pp)))
            .collect();
        let mut blocks: Vec<Vec<Option<PolyMatrix<F>>>> = vec![vec![None; sources.len()]; targets.len()];
        for (deg, m) in c {
            if p.term(*deg).is_none() || q.term(*deg).is_none() {
                continue;
            }
            let id = PolyMatrix::identity(nv, unfolded(e, n - deg).rank());
            let (i, j) = ((q.highest() - deg) as usize, (p.highest() - deg) as usize);
            blocks[i][j] = Some(kron(m, &id, ring));
        }
        let refs: Vec<Vec<Option<&PolyMatrix<F>>>> =
            blocks.iter().map(|row| row.iter().map(|b| b.as_ref()).collect()).collect();
        parts.push(SheafMap::from_blocks(nv, &sources, &targets, &refs));
    }
    let g0 = parts.pop().expect("two parts");
    let g1 = parts.pop().expect("two parts");
    StrictMorphism::new(src, tgt, g1, g0)
}

/// The augmentation `Tot(P(j) ⊗ E) -> E` induced by `P(j) -> O`.
pub fn koszul_augmentation<F: Field>(
    k: &Koszul<F>,
    e: &MatrixFactorization<F>,
) -> Result<StrictMorphism<F>, MfError> {
    let o = FreeComplex::single(0, TwistSum::new(vec![0]));
    tensor_chain_map(&k.complex, &o, &[(0, k.augmentation.clone())], e)
}
