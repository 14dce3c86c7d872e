//! Faces of the standard cover and the Čech complex of a single Laurent
//! monomial.
//!
//! Opens are indexed by bitmasks over the variables. A Laurent monomial `a`
//! lives on `U_I` exactly when `neg(a) ⊆ I`, so for a fixed multidegree the
//! Čech complex is the complex `K_N` spanned by the faces containing
//! `N = neg(a)`. It is contractible unless `N` is empty (cohomology `k` in
//! degree 0) or everything (cohomology `k` in the top degree).

use mfcat_linalg::{rank, Field, Matrix};

pub type Face = u32;

pub fn full(nv: usize) -> Face {
    ((1u64 << nv) - 1) as Face
}

pub fn size(f: Face) -> usize {
    f.count_ones() as usize
}

/// Faces with `k` vertices, in increasing mask order.
pub fn faces_of_size(nv: usize, k: usize) -> Vec<Face> {
    (1..=full(nv)).filter(|&f| size(f) == k).collect()
}

/// Coefficient of `e_{I ∪ j}` in `δ e_I`: `(-1)^{#{i ∈ I : i < j}}`.
pub fn sign_negative(i: Face, j: usize) -> bool {
    (i & ((1u32 << j) - 1)).count_ones() % 2 == 1
}

pub fn signed<F: Field>(neg: bool) -> F {
    if neg {
        F::one().neg()
    } else {
        F::one()
    }
}

/// Support of the negative exponents.
pub fn negative_support(a: &[i64]) -> Face {
    a.iter()
        .enumerate()
        .filter(|(_, &e)| e < 0)
        .fold(0, |m, (i, _)| m | (1 << i))
}

/// The contracting homotopy on `K_N`: `e_J ↦ ±e_{J∖j0}` for the least
/// vertex `j0 ∉ N`, chosen so that `δh + hδ = 1 - ip`.
pub fn homotopy(nv: usize, n: Face, j: Face) -> Option<(Face, bool)> {
    if n == full(nv) {
        return None;
    }
    let j0 = (!n).trailing_zeros() as usize;
    let bit = 1u32 << j0;
    if j & bit == 0 || j == bit {
        return None;
    }
    let i = j & !bit;
    Some((i, sign_negative(i, j0)))
}

/// `p(e_J)` for the retraction onto cohomology: nonzero only for the
/// vertex `{0}` of `K_∅` and the top face of `K_all`.
pub fn projects(nv: usize, n: Face, j: Face) -> bool {
    (n == 0 && j == 1) || (n == full(nv) && j == full(nv))
}

/// `dim H^p(K_N)`, by ranks of the coboundaries.
pub fn support_cohomology<F: Field>(nv: usize, n: Face, p: usize) -> usize {
    let faces = |k: usize| -> Vec<Face> {
        if k == 0 {
            return vec![];
        }
        faces_of_size(nv, k).into_iter().filter(|f| f & n == n).collect()
    };
    let coboundary = |k: usize| -> Matrix<F> {
        let src = faces(k);
        let tgt = faces(k + 1);
        let mut m = Matrix::zeros(tgt.len(), src.len());
        for (c, &i) in src.iter().enumerate() {
            for j in 0..nv {
                if i & (1 << j) != 0 {
                    continue;
                }
                let r = tgt.iter().position(|&t| t == i | (1 << j)).expect("face");
                m.set(r, c, signed(sign_negative(i, j)));
            }
        }
        m
    };
    let dim = faces(p + 1).len();
    if dim == 0 {
        return 0;
    }
    let out = rank(&coboundary(p + 1));
    let inc = if p == 0 { 0 } else { rank(&coboundary(p)) };
    dim - out - inc
}

#[cfg(test)]
mod tests {
    use super::*;
    use mfcat_linalg::F32003;

    type F = F32003;

    // Dense matrices of δ, h, i∘p on K_N, checked against δh + hδ = 1 - ip.
    fn check_contraction(nv: usize, n: Face) {
        let faces: Vec<Face> = (1..=full(nv)).filter(|f| f & n == n).collect();
        let idx = |f: Face| faces.iter().position(|&g| g == f).unwrap();
        let k = faces.len();
        let mut delta = Matrix::<F>::zeros(k, k);
        let mut h = Matrix::<F>::zeros(k, k);
        let mut ip = Matrix::<F>::zeros(k, k);
        for &i in &faces {
            for j in 0..nv {
                if i & (1 << j) == 0 {
                    delta.set(idx(i | (1 << j)), idx(i), signed(sign_negative(i, j)));
                }
            }
            if let Some((t, neg)) = homotopy(nv, n, i) {
                h.set(idx(t), idx(i), signed(neg));
            }
        }
        // image of the cohomology class
        let class: Vec<Face> = if n == 0 {
            (0..nv).map(|j| 1 << j).collect()
        } else if n == full(nv) {
            vec![full(nv)]
        } else {
            vec![]
        };
        for &i in &faces {
            if projects(nv, n, i) {
                for &c in &class {
                    ip.set(idx(c), idx(i), F::one());
                }
            }
        }
        let lhs = delta.mul(&h).unwrap();
        let hd = h.mul(&delta).unwrap();
        for r in 0..k {
            for c in 0..k {
                let mut want = ip.get(r, c).neg();
                if r == c {
                    want = want.add(&F::one());
                }
                assert_eq!(lhs.get(r, c).add(hd.get(r, c)), want, "nv={nv} N={n:b} at ({r},{c})");
            }
        }
        // side conditions
        assert!(h.mul(&h).unwrap().is_zero());
        assert!(h.mul(&ip).unwrap().is_zero());
        assert!(ip.mul(&h).unwrap().is_zero());
    }

    #[test]
    fn contraction_identity_holds_on_every_support() {
        for nv in 1..=4 {
            for n in 0..=full(nv) {
                check_contraction(nv, n);
            }
        }
    }

    #[test]
    fn only_empty_and_full_supports_carry_cohomology() {
        for nv in 2..=4 {
            for n in 0..=full(nv) {
                let total: Vec<usize> = (0..nv).map(|p| support_cohomology::<F>(nv, n, p)).collect();
                let mut want = vec![0; nv];
                if n == 0 {
                    want[0] = 1;
                }
                if n == full(nv) {
                    want[nv - 1] += 1;
                }
                assert_eq!(total, want, "nv={nv} N={n:b}");
            }
        }
    }
}
