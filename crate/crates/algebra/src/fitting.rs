//! Determinants, minors and Fitting ideals.

use std::collections::HashMap;

use mfcat_linalg::Field;

use crate::matrix::PolyMatrix;
use crate::module::ModulePresentation;
use crate::poly::Poly;
use crate::ring::GradedRing;

/// Determinant of a square matrix by dynamic programming over column subsets.
///
/// `2^n` states instead of `n!` permutations; fine up to n ≈ 12.
pub fn determinant<F: Field>(ring: &GradedRing<F>, m: &PolyMatrix<F>) -> Poly<F> {
    let n = m.rows();
    assert_eq!(n, m.cols(), "determinant of a non-square matrix");
    let nv = ring.nvars();
    let mut dp: HashMap<u32, Poly<F>> = HashMap::new();
    dp.insert(0, Poly::one(nv));
    for i in 0..n {
        let mut next: HashMap<u32, Poly<F>> = HashMap::new();
        for (mask, acc) in &dp {
            for j in 0..n {
                if mask & (1 << j) != 0 || m.get(i, j).is_zero() {
                    continue;
                }
                // inversions contributed by placing column j after the used ones
                let above = (mask >> (j + 1)).count_ones();
                let mut t = ring.mul(acc, m.get(i, j));
                if above % 2 == 1 {
                    t = t.neg();
                }
                if t.is_zero() {
                    continue;
                }
                let e = next.entry(mask | (1 << j)).or_insert_with(|| Poly::zero(nv));
                *e = e.add(&t);
            }
        }
        next.retain(|_, p| !p.is_zero());
        dp = next;
    }
    dp.remove(&((1u32 << n) - 1)).unwrap_or_else(|| Poly::zero(nv))
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    go(0, n, k, &mut cur, &mut out);
    out
}

/// All nonzero `k x k` minors, made monic and deduplicated.
pub fn minors<F: Field>(ring: &GradedRing<F>, m: &PolyMatrix<F>, k: usize) -> Vec<Poly<F>> {
    if k == 0 {
        return vec![ring.one()];
    }
    if k > m.rows() || k > m.cols() {
        return Vec::new();
    }
    let mut out: Vec<Poly<F>> = Vec::new();
    let cols = subsets(m.cols(), k);
    for rs in subsets(m.rows(), k) {
        for cs in &cols {
            let d = determinant(ring, &m.select(&rs, cs));
            if !d.is_zero() {
                let d = d.monic();
                if !out.contains(&d) {
                    out.push(d);
                }
            }
        }
    }
    out
}

/// Generators of `Fitt_r(M)`: the `(g - r)`-minors of a presentation with `g`
/// generators, and the unit ideal once `g - r <= 0`. Empty means the zero ideal.
pub fn fitting_ideal<F: Field>(
    ring: &GradedRing<F>,
    pres: &ModulePresentation<F>,
    r: usize,
) -> Vec<Poly<F>> {
    let g = pres.num_gens();
    if g <= r {
        return vec![ring.one()];
    }
    let mut gens = minors(ring, &pres.relations, g - r);
    if gens.iter().any(|p| p.as_constant().is_some()) {
        return vec![ring.one()];
    }
    gens.sort_by(|a, b| b.leading().map(|t| &t.0).cmp(&a.leading().map(|t| &t.0)));
    gens
}
