//! Hypercohomology over a polynomial ring by homological perturbation.
//!
//! The truncated Čech complex of every `O(t)` splits into multidegree
//! summands `K_N`, each with an explicit contraction onto its cohomology
//! (see [`crate::simplex`]). Perturbing by the row differential `t = (-1)^p ∂`
//! transfers the total differential to the small complex built from
//! `H^0(O(t))` (row `q`) and `H^m(O(t))` (row `q - m`):
//!
//! `D_H = Σ_k (-1)^k p (t h)^k t i`,
//!
//! where only `k = 0` (same Čech degree) and `k = m` (top to bottom) survive.

use std::collections::{BTreeMap, HashMap};

use mfcat_algebra::{Field, Monomial, PolyMatrix};
use mfcat_linalg::{rank, Matrix};

use crate::rows::Rows;
use crate::simplex::{full, homotopy, negative_support, projects, signed, Face};

type Key = (Face, usize, Vec<i64>);
type Cochain<F> = BTreeMap<Key, F>;

/// Basis of the small complex in one total degree: `(top, summand, multidegree)`.
struct SmallBasis {
    elems: Vec<(bool, usize, Vec<i64>)>,
    index: HashMap<(bool, usize, Vec<i64>), usize>,
}

/// Exponent vectors with entries in `[-b, -1]` summing to `t`.
fn negative_multidegrees(nv: usize, t: i64, b: u32) -> Vec<Vec<i64>> {
    let mut out = vec![];
    let mut cur = vec![0i64; nv];
    fn rec(i: usize, rest: i64, b: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        let nv = cur.len();
        if i + 1 == nv {
            if (-b..=-1).contains(&rest) {
                cur[i] = rest;
                out.push(cur.clone());
            }
            return;
        }
        let left = (nv - i - 1) as i64;
        for e in (-b..=-1).rev() {
            let r = rest - e;
            if r > -left || r < -b * left {
                continue;
            }
            cur[i] = e;
            rec(i + 1, r, b, cur, out);
        }
    }
    if nv > 0 {
        rec(0, t, b as i64, &mut cur, &mut out);
    }
    out
}

fn small_basis<F: Field>(rows: &dyn Rows<F>, nv: usize, q: i64, b: u32) -> SmallBasis {
    let m = nv as i64 - 1;
    let mut elems = vec![];
    for (k, &t) in rows.term(q).iter().enumerate() {
        if t >= 0 {
            for mono in Monomial::all_of_degree(nv, t as u32) {
                elems.push((false, k, mono.exponents().iter().map(|&e| e as i64).collect()));
            }
        }
    }
    for (k, &t) in rows.term(q - m).iter().enumerate() {
        for a in negative_multidegrees(nv, t, b) {
            elems.push((true, k, a));
        }
    }
    let index = elems.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
    SmallBasis { elems, index }
}

/// `(-1)^p ∂` on Čech degree `p`.
fn apply_row<F: Field>(v: &Cochain<F>, d: &PolyMatrix<F>, p: usize) -> Cochain<F> {
    let sign: F = signed(p % 2 == 1);
    let mut out: Cochain<F> = BTreeMap::new();
    for ((face, k, a), c) in v {
        let c = c.mul(&sign);
        for r in 0..d.rows() {
            for (mono, g) in d.get(r, *k).terms() {
                let b: Vec<i64> = a.iter().zip(mono.exponents()).map(|(x, &e)| x + e as i64).collect();
                let slot = out.entry((*face, r, b)).or_insert_with(F::zero);
                *slot = slot.add(&c.mul(g));
            }
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn apply_homotopy<F: Field>(v: &Cochain<F>, nv: usize) -> Cochain<F> {
    let mut out: Cochain<F> = BTreeMap::new();
    for ((face, k, a), c) in v {
        if let Some((i, neg)) = homotopy(nv, negative_support(a), *face) {
            let c = if neg { c.neg() } else { c.clone() };
            let slot = out.entry((i, *k, a.clone())).or_insert_with(F::zero);
            *slot = slot.add(&c);
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Matrix of `D_H: H_q -> H_{q+1}`.
fn transferred<F: Field>(rows: &dyn Rows<F>, nv: usize, q: i64, src: &SmallBasis, tgt: &SmallBasis) -> Matrix<F> {
    let m = nv - 1;
    let mi = m as i64;
    let mut out = Matrix::zeros(tgt.elems.len(), src.elems.len());
    let top = full(nv);
    let map_cache: HashMap<i64, Option<PolyMatrix<F>>> =
        (q - mi..=q).map(|row| (row, rows.map(row))).collect();
    let map = |row: i64| map_cache.get(&row).and_then(|d| d.as_ref());
    for (col, (is_top, k, a)) in src.elems.iter().enumerate() {
        if !is_top {
            // H^0 -> H^0: the map on global sections
            let Some(d) = map(q) else { continue };
            let v: Cochain<F> = BTreeMap::from([((1, *k, a.clone()), F::one())]);
            for ((_, r, bdeg), c) in apply_row(&v, d, 0) {
                if let Some(&i) = tgt.index.get(&(false, r, bdeg)) {
                    out.add_at(i, col, &c);
                }
            }
            continue;
        }
        let mut v: Cochain<F> = BTreeMap::from([((top, *k, a.clone()), F::one())]);
        // H^m -> H^m
        if let Some(d) = map(q - mi) {
            for ((face, r, bdeg), c) in apply_row(&v, d, m) {
                if face == top && negative_support(&bdeg) == top {
                    if let Some(&i) = tgt.index.get(&(true, r, bdeg)) {
                        out.add_at(i, col, &c);
                    }
                }
            }
        }
        // H^m -> H^0 through m homotopies
        for s in 0..=m {
            let Some(d) = map(q - mi + s as i64) else {
                v.clear();
                break;
            };
            v = apply_row(&v, d, m - s);
            if s < m {
                v = apply_homotopy(&v, nv);
            }
            if v.is_empty() {
                break;
            }
        }
        let sign: F = signed(m % 2 == 1);
        for ((face, r, bdeg), c) in v {
            if projects(nv, negative_support(&bdeg), face) {
                if let Some(&i) = tgt.index.get(&(false, r, bdeg)) {
                    out.add_at(i, col, &c.mul(&sign));
                }
            }
        }
    }
    out
}

/// `dim ℍ^q` of the Čech total complex of `rows` over the polynomial ring in
/// `nv` variables, truncated at `b`.
pub fn total_dim<F: Field>(rows: &dyn Rows<F>, nv: usize, q: i64, b: u32) -> usize {
    let here = small_basis(rows, nv, q, b);
    if here.elems.is_empty() {
        return 0;
    }
    let next = small_basis(rows, nv, q + 1, b);
    let prev = small_basis(rows, nv, q - 1, b);
    let out = rank(&transferred(rows, nv, q, &here, &next));
    let inc = rank(&transferred(rows, nv, q - 1, &prev, &here));
    here.elems.len() - out - inc
}
