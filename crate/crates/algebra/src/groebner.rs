//! Buchberger's algorithm for ideals and for submodules of free modules.
//!
//! Module elements use a position-over-term order in which component 0 is the
//! largest, so a Gröbner basis of `⟨(f_i, e_i)⟩ ⊆ S^{r+n}` exposes the syzygy
//! module as the elements whose leading term sits past the first `r` slots.

use std::cmp::{Ordering, Reverse};
use std::collections::BinaryHeap;

use mfcat_linalg::Field;

use crate::monomial::Monomial;
use crate::poly::Poly;

/// An element of a free module `S^r`, terms sorted position-over-term.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ModVec<F> {
    nvars: usize,
    terms: Vec<(usize, Monomial, F)>,
}

/// `Greater` means earlier in the sorted order.
fn term_cmp(ak: usize, am: &Monomial, bk: usize, bm: &Monomial) -> Ordering {
    bk.cmp(&ak).then_with(|| am.cmp(bm))
}

impl<F: Field> ModVec<F> {
    pub fn zero(nvars: usize) -> Self {
        ModVec { nvars, terms: Vec::new() }
    }

    pub fn from_polys(nvars: usize, entries: &[Poly<F>]) -> Self {
        let mut terms = Vec::new();
        for (k, p) in entries.iter().enumerate() {
            for (m, c) in p.terms() {
                terms.push((k, m.clone(), c.clone()));
            }
        }
        // entries are sorted per component already
        ModVec { nvars, terms }
    }

    pub fn to_polys(&self, rank: usize) -> Vec<Poly<F>> {
        let mut buckets: Vec<Vec<(Monomial, F)>> = vec![Vec::new(); rank];
        for (k, m, c) in &self.terms {
            buckets[*k].push((m.clone(), c.clone()));
        }
        buckets
            .into_iter()
            .map(|t| Poly::from_terms(self.nvars, t))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> Option<(usize, &Monomial, &F)> {
        self.terms.first().map(|(k, m, c)| (*k, m, c))
    }

    pub fn terms(&self) -> &[(usize, Monomial, F)] {
        &self.terms
    }

    pub fn monic(&self) -> Self {
        match self.terms.first() {
            None => self.clone(),
            Some((_, _, c)) => {
                let inv = c.inv().expect("nonzero lead");
                ModVec {
                    nvars: self.nvars,
                    terms: self
                        .terms
                        .iter()
                        .map(|(k, m, x)| (*k, m.clone(), x.mul(&inv)))
                        .collect(),
                }
            }
        }
    }

    /// `self[from..] - c·m·g`, keeping `self[..from]` untouched.
    fn sub_scaled_tail(&self, from: usize, g: &ModVec<F>, m: &Monomial, c: &F) -> Self {
        let head = &self.terms[..from];
        let a = &self.terms[from..];
        let b: Vec<(usize, Monomial, F)> = g
            .terms
            .iter()
            .map(|(k, x, y)| (*k, x.mul(m), y.mul(c)))
            .collect();
        let mut out = Vec::with_capacity(self.terms.len() + b.len());
        out.extend_from_slice(head);
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match term_cmp(a[i].0, &a[i].1, b[j].0, &b[j].1) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((b[j].0, b[j].1.clone(), b[j].2.neg()));
                    j += 1;
                }
                Ordering::Equal => {
                    let v = a[i].2.sub(&b[j].2);
                    if !v.is_zero() {
                        out.push((a[i].0, a[i].1.clone(), v));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend(b[j..].iter().map(|(k, x, y)| (*k, x.clone(), y.neg())));
        ModVec { nvars: self.nvars, terms: out }
    }

    fn mul_term(&self, m: &Monomial) -> Self {
        ModVec {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(k, x, c)| (*k, x.mul(m), c.clone()))
                .collect(),
        }
    }

    fn sub(&self, rhs: &Self) -> Self {
        self.sub_scaled_tail(0, rhs, &Monomial::one(self.nvars), &F::one())
    }
}

/// Full reduction of `f` by the monic elements of `basis`.
pub fn reduce_vec<F: Field>(f: &ModVec<F>, basis: &[ModVec<F>]) -> ModVec<F> {
    let mut p = f.clone();
    let mut k = 0;
    while k < p.terms.len() {
        let (comp, mono, coeff) = {
            let t = &p.terms[k];
            (t.0, t.1.clone(), t.2.clone())
        };
        let divisor = basis.iter().find_map(|g| {
            let (gk, gm, _) = g.lead()?;
            if gk == comp {
                gm.quotient_of(&mono).map(|q| (g, q))
            } else {
                None
            }
        });
        match divisor {
            Some((g, q)) => p = p.sub_scaled_tail(k, g, &q, &coeff),
            None => k += 1,
        }
    }
    p
}

/// Reduced Gröbner basis of a submodule of `S^r`.
///
/// `shifts[k]` is the degree of the k-th basis vector and only steers the
/// pair-selection order. The product criterion is used for ideals only.
pub fn module_groebner<F: Field>(gens: &[ModVec<F>], shifts: &[i64]) -> Vec<ModVec<F>> {
    let ideal_case = shifts.len() <= 1;
    let sugar = |k: usize, m: &Monomial| m.degree() as i64 + shifts.get(k).copied().unwrap_or(0);
    let mut g: Vec<ModVec<F>> = Vec::new();
    let mut pairs: BinaryHeap<Reverse<(i64, usize, usize)>> = BinaryHeap::new();

    let push = |v: ModVec<F>, g: &mut Vec<ModVec<F>>, pairs: &mut BinaryHeap<Reverse<(i64, usize, usize)>>| {
        let v = v.monic();
        let (vk, vm, _) = v.lead().expect("nonzero");
        let idx = g.len();
        for (i, h) in g.iter().enumerate() {
            let (hk, hm, _) = h.lead().expect("nonzero");
            if hk == vk {
                pairs.push(Reverse((sugar(vk, &hm.lcm(vm)), i, idx)));
            }
        }
        g.push(v);
    };

    let mut sorted: Vec<ModVec<F>> = gens.iter().filter(|v| !v.is_zero()).cloned().collect();
    sorted.sort_by_key(|v| {
        let (k, m, _) = v.lead().expect("nonzero");
        sugar(k, m)
    });
    for v in sorted {
        let r = reduce_vec(&v, &g);
        if !r.is_zero() {
            push(r, &mut g, &mut pairs);
        }
    }

    while let Some(Reverse((_, i, j))) = pairs.pop() {
        let (_, mi, _) = g[i].lead().expect("nonzero");
        let (_, mj, _) = g[j].lead().expect("nonzero");
        if ideal_case && mi.is_coprime(mj) {
            continue;
        }
        let l = mi.lcm(mj);
        let ui = mi.quotient_of(&l).expect("lcm");
        let uj = mj.quotient_of(&l).expect("lcm");
        let s = g[i].mul_term(&ui).sub(&g[j].mul_term(&uj));
        let r = reduce_vec(&s, &g);
        if !r.is_zero() {
            push(r, &mut g, &mut pairs);
        }
    }

    interreduce(g)
}

/// Removes redundant leads and tail-reduces; output sorted by leading term, descending.
fn interreduce<F: Field>(g: Vec<ModVec<F>>) -> Vec<ModVec<F>> {
    let mut keep: Vec<ModVec<F>> = Vec::new();
    for (i, v) in g.iter().enumerate() {
        let (k, m, _) = v.lead().expect("nonzero");
        let redundant = g.iter().enumerate().any(|(j, w)| {
            if i == j {
                return false;
            }
            let (wk, wm, _) = w.lead().expect("nonzero");
            wk == k && wm.divides(m) && (wm != m || j < i)
        });
        if !redundant {
            keep.push(v.clone());
        }
    }
    let mut out = Vec::with_capacity(keep.len());
    for i in 0..keep.len() {
        let others: Vec<ModVec<F>> = keep
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, v)| v.clone())
            .collect();
        let head = ModVec {
            nvars: keep[i].nvars,
            terms: keep[i].terms[..1].to_vec(),
        };
        let tail = ModVec {
            nvars: keep[i].nvars,
            terms: keep[i].terms[1..].to_vec(),
        };
        let t = reduce_vec(&tail, &others);
        let mut terms = head.terms;
        terms.extend(t.terms);
        out.push(ModVec { nvars: keep[i].nvars, terms }.monic());
    }
    out.sort_by(|a, b| {
        let (ak, am, _) = a.lead().expect("nonzero");
        let (bk, bm, _) = b.lead().expect("nonzero");
        term_cmp(bk, bm, ak, am)
    });
    out
}

/// Reduced Gröbner basis of the ideal generated by `gens`.
pub fn groebner_basis<F: Field>(gens: &[Poly<F>]) -> Vec<Poly<F>> {
    let Some(nvars) = gens.first().map(|p| p.nvars()) else {
        return Vec::new();
    };
    let vs: Vec<ModVec<F>> = gens
        .iter()
        .map(|p| ModVec::from_polys(nvars, std::slice::from_ref(p)))
        .collect();
    module_groebner(&vs, &[0])
        .into_iter()
        .map(|v| v.to_polys(1).pop().expect("rank one"))
        .collect()
}

/// Remainder of `f` modulo a monic Gröbner basis of an ideal.
pub fn reduce_poly<F: Field>(f: &Poly<F>, gb: &[Poly<F>]) -> Poly<F> {
    if gb.is_empty() || f.is_zero() {
        return f.clone();
    }
    let mut p = f.clone().into_terms();
    let nvars = f.nvars();
    let mut rem: Vec<(Monomial, F)> = Vec::new();
    while !p.is_empty() {
        let (m, c) = p[0].clone();
        let hit = gb.iter().find_map(|g| {
            let (gm, gc) = g.leading()?;
            gm.quotient_of(&m).map(|q| (g, q, gc.clone()))
        });
        match hit {
            Some((g, q, gc)) => {
                let factor = c.div(&gc).expect("nonzero lead");
                let sub = g.mul_term(&q, &factor);
                p = Poly::from_terms(nvars, p).sub(&sub).into_terms();
            }
            None => {
                rem.push((m, c));
                p.remove(0);
            }
        }
    }
    Poly::from_terms(nvars, rem)
}

/// Every S-polynomial of `gb` reduces to zero.
pub fn is_groebner<F: Field>(gb: &[Poly<F>]) -> bool {
    for i in 0..gb.len() {
        for j in i + 1..gb.len() {
            let (mi, ci) = gb[i].leading().expect("nonzero");
            let (mj, cj) = gb[j].leading().expect("nonzero");
            let l = mi.lcm(mj);
            let a = gb[i].mul_term(&mi.quotient_of(&l).unwrap(), &ci.inv().unwrap());
            let b = gb[j].mul_term(&mj.quotient_of(&l).unwrap(), &cj.inv().unwrap());
            if !reduce_poly(&a.sub(&b), gb).is_zero() {
                return false;
            }
        }
    }
    true
}
