//! Graded module presentations and syzygies.
//!
//! A free module `⊕ R(a_j)` has its j-th generator in degree `-a_j`. A map
//! `⊕_c R(b_c) -> ⊕_r R(a_r)` is a polynomial matrix whose `(r, c)` entry is
//! homogeneous of degree `a_r - b_c`.

use std::collections::BTreeMap;

use mfcat_linalg::{rref, Field, Matrix};

use crate::groebner::{module_groebner, ModVec};
use crate::matrix::PolyMatrix;
use crate::poly::Poly;
use crate::ring::GradedRing;
use crate::AlgebraError;

/// `coker(relations: ⊕ R(rel_twists) -> ⊕ R(gen_twists))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModulePresentation<F> {
    pub gen_twists: Vec<i64>,
    pub rel_twists: Vec<i64>,
    pub relations: PolyMatrix<F>,
}

/// Degree `t` with `deg v_c = t + twists[c]` for every nonzero entry; `None` for zero.
pub fn vector_degree<F: Field>(
    v: &[Poly<F>],
    twists: &[i64],
) -> Result<Option<i64>, AlgebraError> {
    let mut t = None;
    for (c, p) in v.iter().enumerate() {
        if p.is_zero() {
            continue;
        }
        if !p.is_homogeneous() {
            return Err(AlgebraError::NotHomogeneous(format!("component {c}")));
        }
        let d = p.degree().expect("nonzero") as i64 - twists[c];
        match t {
            None => t = Some(d),
            Some(s) if s != d => {
                return Err(AlgebraError::NotHomogeneous(format!(
                    "vector mixes degrees {s} and {d}"
                )))
            }
            _ => {}
        }
    }
    Ok(t)
}

fn vector_coordinates<F: Field>(
    ring: &GradedRing<F>,
    v: &[Poly<F>],
    twists: &[i64],
    t: i64,
) -> Result<Vec<F>, AlgebraError> {
    let mut out = Vec::new();
    for (c, p) in v.iter().enumerate() {
        out.extend(ring.coordinates(p, t + twists[c])?);
    }
    Ok(out)
}

fn vector_from_coordinates<F: Field>(
    ring: &GradedRing<F>,
    x: &[F],
    twists: &[i64],
    t: i64,
) -> Vec<Poly<F>> {
    let mut off = 0;
    twists
        .iter()
        .map(|&b| {
            let n = ring.dim(t + b);
            let p = ring.from_coordinates(t + b, &x[off..off + n]);
            off += n;
            p
        })
        .collect()
}

/// A canonical minimal homogeneous generating set of the submodule of
/// `⊕ R(twists)` spanned by `cands`.
///
/// Works degree by degree: whatever the already kept generators span in
/// degree `t` is factored out and the rest is put in reduced echelon form.
/// Returns `(twist, vector)` pairs; a generator of degree `t` has twist `-t`.
pub fn minimal_generators<F: Field>(
    ring: &GradedRing<F>,
    cands: &[Vec<Poly<F>>],
    twists: &[i64],
) -> Result<Vec<(i64, Vec<Poly<F>>)>, AlgebraError> {
    let mut by_degree: BTreeMap<i64, Vec<Vec<Poly<F>>>> = BTreeMap::new();
    for v in cands {
        if v.len() != twists.len() {
            return Err(AlgebraError::Shape(format!(
                "vector of length {} in a module of rank {}",
                v.len(),
                twists.len()
            )));
        }
        let v: Vec<Poly<F>> = v.iter().map(|p| ring.normal_form(p)).collect();
        if let Some(t) = vector_degree(&v, twists)? {
            by_degree.entry(t).or_default().push(v);
        }
    }
    let mut kept: Vec<(i64, Vec<Poly<F>>)> = Vec::new();
    for (t, vs) in by_degree {
        let width: usize = twists.iter().map(|&b| ring.dim(t + b)).sum();
        if width == 0 {
            continue;
        }
        let mut spanned: Vec<Vec<F>> = Vec::new();
        for (tk, g) in &kept {
            for mu in ring.piece(t - tk).basis.iter() {
                let m = Poly::term(mu.clone(), F::one());
                let w: Vec<Poly<F>> = g.iter().map(|p| ring.mul(&m, p)).collect();
                spanned.push(vector_coordinates(ring, &w, twists, t)?);
            }
        }
        let (u, upiv) = rref(&Matrix::from_rows(spanned.clone()).unwrap_or(Matrix::zeros(0, width)));
        let mut reduced: Vec<Vec<F>> = Vec::new();
        for v in &vs {
            let mut x = vector_coordinates(ring, v, twists, t)?;
            for (i, &p) in upiv.iter().enumerate() {
                if !x[p].is_zero() {
                    let f = x[p].clone();
                    for (j, xj) in x.iter_mut().enumerate() {
                        *xj = xj.sub(&f.mul(u.get(i, j)));
                    }
                }
            }
            reduced.push(x);
        }
        let (r, rpiv) = rref(&Matrix::from_rows(reduced)?);
        for i in 0..rpiv.len() {
            let x = r.row(i).to_vec();
            kept.push((t, vector_from_coordinates(ring, &x, twists, t)));
        }
    }
    Ok(kept.into_iter().map(|(t, v)| (-t, v)).collect())
}

/// Minimal homogeneous generators of the syzygies of the columns of `m`.
///
/// `m` maps `⊕ R(col_twists) -> ⊕ R(row_twists)`. Returns the twists of the
/// syzygy generators and the `cols x k` matrix whose columns they are.
pub fn syzygies<F: Field>(
    ring: &GradedRing<F>,
    m: &PolyMatrix<F>,
    row_twists: &[i64],
    col_twists: &[i64],
) -> Result<(Vec<i64>, PolyMatrix<F>), AlgebraError> {
    let (r, n) = (m.rows(), m.cols());
    if row_twists.len() != r || col_twists.len() != n {
        return Err(AlgebraError::Shape(format!(
            "{}x{} matrix with {} row and {} column twists",
            r,
            n,
            row_twists.len(),
            col_twists.len()
        )));
    }
    let nv = ring.nvars();
    let mut shifts: Vec<i64> = row_twists.iter().map(|a| -a).collect();
    shifts.extend(col_twists.iter().map(|b| -b));
    let mut gens = Vec::new();
    for c in 0..n {
        let mut e: Vec<Poly<F>> = (0..r).map(|k| ring.normal_form(m.get(k, c))).collect();
        e.extend((0..n).map(|j| if j == c { Poly::one(nv) } else { Poly::zero(nv) }));
        gens.push(ModVec::from_polys(nv, &e));
    }
    for g in ring.gb() {
        for k in 0..r {
            let mut e = vec![Poly::zero(nv); r + n];
            e[k] = g.clone();
            gens.push(ModVec::from_polys(nv, &e));
        }
    }
    let gb = module_groebner(&gens, &shifts);
    let mut cands = Vec::new();
    for v in gb {
        let (k, _, _) = v.lead().expect("nonzero");
        if k >= r {
            let polys = v.to_polys(r + n);
            cands.push(polys[r..].to_vec());
        }
    }
    let mins = minimal_generators(ring, &cands, col_twists)?;
    let twists: Vec<i64> = mins.iter().map(|(t, _)| *t).collect();
    let cols: Vec<Vec<Poly<F>>> = mins.into_iter().map(|(_, v)| v).collect();
    Ok((twists, PolyMatrix::from_columns(nv, n, &cols)))
}

impl<F: Field> ModulePresentation<F> {
    pub fn new(
        ring: &GradedRing<F>,
        gen_twists: Vec<i64>,
        rel_twists: Vec<i64>,
        relations: PolyMatrix<F>,
    ) -> Result<Self, AlgebraError> {
        if relations.rows() != gen_twists.len() || relations.cols() != rel_twists.len() {
            return Err(AlgebraError::Shape(format!(
                "{}x{} relations for {} generators and {} relations",
                relations.rows(),
                relations.cols(),
                gen_twists.len(),
                rel_twists.len()
            )));
        }
        let relations = relations.normal_form(ring);
        for r in 0..relations.rows() {
            for c in 0..relations.cols() {
                let p = relations.get(r, c);
                let want = gen_twists[r] - rel_twists[c];
                if !p.is_zero()
                    && (!p.is_homogeneous() || p.degree().map(|d| d as i64) != Some(want))
                {
                    return Err(AlgebraError::NotHomogeneous(format!(
                        "entry ({r}, {c}) = {} should have degree {want}",
                        ring.display(p)
                    )));
                }
            }
        }
        Ok(ModulePresentation { gen_twists, rel_twists, relations })
    }

    pub fn free(nvars: usize, gen_twists: Vec<i64>) -> Self {
        let n = gen_twists.len();
        ModulePresentation {
            gen_twists,
            rel_twists: Vec::new(),
            relations: PolyMatrix::zeros(nvars, n, 0),
        }
    }

    pub fn num_gens(&self) -> usize {
        self.gen_twists.len()
    }

    pub fn num_rels(&self) -> usize {
        self.rel_twists.len()
    }

    /// `M(n)`.
    pub fn twisted(&self, n: i64) -> Self {
        ModulePresentation {
            gen_twists: self.gen_twists.iter().map(|a| a + n).collect(),
            rel_twists: self.rel_twists.iter().map(|b| b + n).collect(),
            relations: self.relations.clone(),
        }
    }

    /// Removes generator/relation pairs joined by a unit entry, and zero relations.
    pub fn eliminate_units(&self, ring: &GradedRing<F>) -> Self {
        let mut gens = self.gen_twists.clone();
        let mut rels = self.rel_twists.clone();
        let mut m = self.relations.normal_form(ring);
        loop {
            let mut hit = None;
            'scan: for c in 0..m.cols() {
                for r in 0..m.rows() {
                    if let Some(u) = m.get(r, c).as_constant() {
                        if !u.is_zero() {
                            hit = Some((r, c, u));
                            break 'scan;
                        }
                    }
                }
            }
            let Some((pr, pc, u)) = hit else { break };
            let uinv = u.inv().expect("nonzero unit");
            let pivot_col = m.column(pc);
            let mut next = m.clone();
            for c in 0..m.cols() {
                if c == pc || m.get(pr, c).is_zero() {
                    continue;
                }
                let f = m.get(pr, c).scale(&uinv);
                for r in 0..m.rows() {
                    let v = m.get(r, c).sub(&f.mul(&pivot_col[r]));
                    next.set(r, c, ring.normal_form(&v));
                }
            }
            let keep_r: Vec<usize> = (0..m.rows()).filter(|&r| r != pr).collect();
            let keep_c: Vec<usize> = (0..m.cols()).filter(|&c| c != pc).collect();
            m = next.select(&keep_r, &keep_c);
            gens.remove(pr);
            rels.remove(pc);
        }
        let nz: Vec<usize> = (0..m.cols())
            .filter(|&c| (0..m.rows()).any(|r| !m.get(r, c).is_zero()))
            .collect();
        let all_r: Vec<usize> = (0..m.rows()).collect();
        ModulePresentation {
            gen_twists: gens,
            rel_twists: nz.iter().map(|&c| rels[c]).collect(),
            relations: m.select(&all_r, &nz),
        }
    }

    /// Same module with a minimal set of relations.
    pub fn minimize_relations(&self, ring: &GradedRing<F>) -> Result<Self, AlgebraError> {
        let cols: Vec<Vec<Poly<F>>> = (0..self.num_rels()).map(|c| self.relations.column(c)).collect();
        let mins = minimal_generators(ring, &cols, &self.gen_twists)?;
        let rel_twists: Vec<i64> = mins.iter().map(|(t, _)| *t).collect();
        let cols: Vec<Vec<Poly<F>>> = mins.into_iter().map(|(_, v)| v).collect();
        Ok(ModulePresentation {
            gen_twists: self.gen_twists.clone(),
            rel_twists,
            relations: PolyMatrix::from_columns(ring.nvars(), self.num_gens(), &cols),
        })
    }

    /// Graded pieces of the relation module, as a matrix `⊕R_{n+b_c} -> ⊕R_{n+a_r}`.
    pub fn degree_matrix(&self, ring: &GradedRing<F>, n: i64) -> Matrix<F> {
        map_in_degree(ring, &self.relations, &self.gen_twists, &self.rel_twists, n)
    }

    /// `dim_k M_n`.
    pub fn hilbert_value(&self, ring: &GradedRing<F>, n: i64) -> usize {
        let total: usize = self.gen_twists.iter().map(|&a| ring.dim(n + a)).sum();
        total - mfcat_linalg::rank(&self.degree_matrix(ring, n))
    }
}

/// The degree-`n` component of `φ: ⊕R(cols) -> ⊕R(rows)` in monomial bases.
pub fn map_in_degree<F: Field>(
    ring: &GradedRing<F>,
    phi: &PolyMatrix<F>,
    row_twists: &[i64],
    col_twists: &[i64],
    n: i64,
) -> Matrix<F> {
    let roff: Vec<usize> = offsets(row_twists.iter().map(|&a| ring.dim(n + a)));
    let coff: Vec<usize> = offsets(col_twists.iter().map(|&b| ring.dim(n + b)));
    let mut out = Matrix::zeros(*roff.last().unwrap(), *coff.last().unwrap());
    for r in 0..phi.rows() {
        for c in 0..phi.cols() {
            let p = phi.get(r, c);
            if p.is_zero() {
                continue;
            }
            let block = ring.multiplication_matrix(p, n + col_twists[c], n + row_twists[r]);
            for i in 0..block.rows() {
                for j in 0..block.cols() {
                    let v = block.get(i, j);
                    if !v.is_zero() {
                        out.add_at(roff[r] + i, coff[c] + j, v);
                    }
                }
            }
        }
    }
    out
}

fn offsets(dims: impl Iterator<Item = usize>) -> Vec<usize> {
    let mut v = vec![0];
    for d in dims {
        v.push(v.last().unwrap() + d);
    }
    v
}
