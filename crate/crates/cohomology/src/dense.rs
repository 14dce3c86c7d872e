//! Dense truncated Čech model, valid for any graded ring.
//!
//! A section of `O(t)` on `U_I` is written `f / x_I^B` with `f ∈ R_{t+B|I|}`;
//! it is zero when `x_I^B f = 0`. So every term of the total complex is a
//! quotient `C/K` with `K = ker Q`, `Q` being multiplication by `x_I^B`, and
//!
//! `dim H = rank Q_q - rank(Q_{q+1} D_q) - rank(Q_q D_{q-1})`.

use mfcat_algebra::{Field, GradedRing, Monomial, Poly};
use mfcat_linalg::{par, rank, Matrix};

use crate::rows::Rows;
use crate::simplex::{faces_of_size, sign_negative, signed, size, Face};

struct Block {
    p: usize,
    face: Face,
    row: i64,
    summand: usize,
    twist: i64,
}

fn blocks<F: Field>(rows: &dyn Rows<F>, nv: usize, q: i64) -> Vec<Block> {
    let mut out = vec![];
    for p in 0..nv {
        let row = q - p as i64;
        let twists = rows.term(row);
        for face in faces_of_size(nv, p + 1) {
            for (summand, &twist) in twists.iter().enumerate() {
                out.push(Block { p, face, row, summand, twist });
            }
        }
    }
    out
}

fn power(nv: usize, face: Face, b: u32) -> Monomial {
    let e = (0..nv).map(|i| if face & (1 << i) != 0 { b } else { 0 }).collect();
    Monomial::from_exponents(e)
}

fn src_degree(bl: &Block, b: u32) -> i64 {
    bl.twist + b as i64 * size(bl.face) as i64
}

fn tgt_degree(bl: &Block, b: u32) -> i64 {
    bl.twist + 2 * b as i64 * size(bl.face) as i64
}

fn rank_q<F: Field>(ring: &GradedRing<F>, bls: &[Block], b: u32) -> usize {
    let nv = ring.nvars();
    par::par_map(bls, |bl| {
        let x = Poly::term(power(nv, bl.face, b), F::one());
        rank(&ring.multiplication_matrix(&x, src_degree(bl, b), tgt_degree(bl, b)))
    })
    .into_iter()
    .sum()
}

/// `rank(Q_{q+1} D_q)`.
fn rank_qd<F: Field>(ring: &GradedRing<F>, rows: &dyn Rows<F>, src: &[Block], tgt: &[Block], b: u32) -> usize {
    let nv = ring.nvars();
    let offsets = |bls: &[Block], deg: &dyn Fn(&Block) -> i64| -> (Vec<usize>, usize) {
        let mut off = Vec::with_capacity(bls.len());
        let mut acc = 0;
        for bl in bls {
            off.push(acc);
            acc += ring.dim(deg(bl));
        }
        (off, acc)
    };
    let (col_off, ncols) = offsets(src, &|bl| src_degree(bl, b));
    let (row_off, nrows) = offsets(tgt, &|bl| tgt_degree(bl, b));
    if ncols == 0 || nrows == 0 {
        return 0;
    }
    let mut m = Matrix::<F>::zeros(nrows, ncols);
    let mut maps = std::collections::HashMap::new();
    for (ci, s) in src.iter().enumerate() {
        for (ri, t) in tgt.iter().enumerate() {
            let xt = power(nv, t.face, b);
            let poly = if t.row == s.row && t.summand == s.summand && t.face & s.face == s.face && t.p == s.p + 1 {
                // Čech: restriction from U_I to U_{I ∪ j}
                let j = (t.face & !s.face).trailing_zeros() as usize;
                let c: F = signed(sign_negative(s.face, j));
                Poly::term(xt.mul(&power(nv, 1 << j, b)), c)
            } else if t.row == s.row + 1 && t.face == s.face {
                let d = maps.entry(s.row).or_insert_with(|| rows.map(s.row));
                let Some(d) = d.as_ref() else { continue };
                let g = d.get(t.summand, s.summand);
                if g.is_zero() {
                    continue;
                }
                let c: F = signed(s.p % 2 == 1);
                g.mul_term(&xt, &c)
            } else {
                continue;
            };
            let block = ring.multiplication_matrix(&poly, src_degree(s, b), tgt_degree(t, b));
            for r in 0..block.rows() {
                for c in 0..block.cols() {
                    let v = block.get(r, c);
                    if !v.is_zero() {
                        m.set(row_off[ri] + r, col_off[ci] + c, v.clone());
                    }
                }
            }
        }
    }
    rank(&m)
}

/// `dim H^q` of the total complex of the Čech bicomplex of `rows`, truncated at `b`.
pub fn total_dim<F: Field>(ring: &GradedRing<F>, rows: &dyn Rows<F>, q: i64, b: u32) -> usize {
    let nv = ring.nvars();
    let here = blocks(rows, nv, q);
    let rq = rank_q(ring, &here, b);
    if rq == 0 {
        return 0;
    }
    let next = blocks(rows, nv, q + 1);
    let prev = blocks(rows, nv, q - 1);
    rq - rank_qd(ring, rows, &here, &next, b) - rank_qd(ring, rows, &prev, &here, b)
}
