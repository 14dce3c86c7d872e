//! Čech cohomology and hypercohomology against a literal truncated Laurent
//! model and against classical closed forms.

use std::sync::Arc;

use mfcat_algebra::{GradedRing, Monomial, Poly, PolyMatrix, F32003};
use mfcat_cohomology::{
    cech_cohomology, cech_hypercohomology, h_projective_space, CechSetup, Rows, Schedule,
};
use mfcat_linalg::{rank, Field, Matrix};
use mfcat_mfcore::build::{change_basis_e0, change_basis_e1, unit_piece};
use mfcat_mfcore::{
    mapping_complex, MFContext, MatrixFactorization, Mode, SheafMap, TwistSum, TwistedPeriodicComplex,
};
use proptest::prelude::*;

type F = F32003;

// ---------------------------------------------------------------------------
// Oracle: the truncated Čech total complex written out monomial by monomial.

/// Laurent exponent vectors of total degree `t` with `a_i >= -b` on `face`
/// and `a_i >= 0` elsewhere.
fn laurent(nv: usize, face: u32, t: i64, b: i64) -> Vec<Vec<i64>> {
    let lows: Vec<i64> = (0..nv).map(|i| if face & (1 << i) != 0 { -b } else { 0 }).collect();
    let room = t - lows.iter().sum::<i64>();
    if room < 0 {
        return vec![];
    }
    let mut out = vec![];
    let mut cur = vec![0i64; nv];
    loop {
        let used: i64 = cur[..nv - 1].iter().sum();
        if used <= room {
            let mut a: Vec<i64> = cur.iter().zip(&lows).map(|(c, l)| c + l).collect();
            a[nv - 1] = lows[nv - 1] + room - used;
            out.push(a);
        }
        let mut i = 0;
        loop {
            if i == nv - 1 {
                return out;
            }
            cur[i] += 1;
            if cur[i] <= room {
                break;
            }
            cur[i] = 0;
            i += 1;
        }
    }
}

type Cell = (u32, usize, Vec<i64>);

fn oracle_basis(rows: &dyn Rows<F>, nv: usize, q: i64, b: i64) -> Vec<Cell> {
    let mut out = vec![];
    for face in 1u32..(1 << nv) {
        let p = face.count_ones() as i64 - 1;
        for (k, &t) in rows.term(q - p).iter().enumerate() {
            for a in laurent(nv, face, t, b) {
                out.push((face, k, a));
            }
        }
    }
    out
}

fn oracle_differential(rows: &dyn Rows<F>, nv: usize, q: i64, b: i64) -> Matrix<F> {
    let src = oracle_basis(rows, nv, q, b);
    let tgt = oracle_basis(rows, nv, q + 1, b);
    let find = |c: &Cell| tgt.iter().position(|x| x == c).expect("target cell");
    let mut m = Matrix::zeros(tgt.len(), src.len());
    for (col, (face, k, a)) in src.iter().enumerate() {
        let p = face.count_ones() as i64 - 1;
        for j in 0..nv {
            if face & (1 << j) != 0 {
                continue;
            }
            let before = (face & ((1 << j) - 1)).count_ones();
            let s = if before % 2 == 1 { F::one().neg() } else { F::one() };
            m.add_at(find(&(face | (1 << j), *k, a.clone())), col, &s);
        }
        if let Some(d) = rows.map(q - p) {
            let s = if p % 2 == 1 { F::one().neg() } else { F::one() };
            for r in 0..d.rows() {
                for (mono, c) in d.get(r, *k).terms() {
                    let b: Vec<i64> = a.iter().zip(mono.exponents()).map(|(x, &e)| x + e as i64).collect();
                    m.add_at(find(&(*face, r, b)), col, &c.mul(&s));
                }
            }
        }
    }
    m
}

fn oracle_h(rows: &dyn Rows<F>, nv: usize, q: i64, b: i64) -> usize {
    let dim = oracle_basis(rows, nv, q, b).len();
    if dim == 0 {
        return 0;
    }
    dim - rank(&oracle_differential(rows, nv, q, b)) - rank(&oracle_differential(rows, nv, q - 1, b))
}

// ---------------------------------------------------------------------------
// Random periodic complexes: sums of `O(s - k) --f--> O(s)` and
// `O(s) --g--> O(s + k)` pieces over W = 0, conjugated by elementary moves.

fn homogeneous(ring: &GradedRing<F>, deg: i64, seed: u64) -> Poly<F> {
    let basis = ring.piece(deg).basis.clone();
    let terms: Vec<(Monomial, F)> = basis
        .into_iter()
        .enumerate()
        .map(|(i, m)| (m, F::from_i64(((seed >> (2 * i)) % 4) as i64 - 1)))
        .collect();
    let p = Poly::from_terms(ring.nvars(), terms);
    if p.is_zero() {
        Poly::term(ring.piece(deg).basis[0].clone(), F::one())
    } else {
        p
    }
}

#[derive(Clone, Debug)]
struct Recipe {
    nv: usize,
    d: i64,
    pieces: Vec<(bool, i64, i64, u64)>,
    ops: Vec<(bool, usize, usize, u64)>,
}

fn piece(ctx: &Arc<MFContext<F>>, forward: bool, s: i64, k: i64, seed: u64) -> MatrixFactorization<F> {
    let ring = ctx.ring();
    let nv = ring.nvars();
    let f = homogeneous(ring, k, seed);
    let d = ctx.d();
    let (c1, c0, a, b) = if forward {
        (s - k, s, f, Poly::zero(nv))
    } else {
        (s + k - d, s, Poly::zero(nv), f)
    };
    let c1 = TwistSum::new(vec![c1]);
    let c0 = TwistSum::new(vec![c0]);
    let e1 = SheafMap::new(ring, c1.clone(), c0.clone(), PolyMatrix::from_rows(nv, vec![vec![a]]).unwrap()).unwrap();
    let e0 = SheafMap::new(ring, c0, c1.twisted(d), PolyMatrix::from_rows(nv, vec![vec![b]]).unwrap()).unwrap();
    MatrixFactorization::checked(ctx.clone(), e1, e0).unwrap()
}

fn periodic_ctx(nv: usize, d: i64) -> Arc<MFContext<F>> {
    let names: Vec<String> = (0..nv).map(|i| format!("x{i}")).collect();
    let names: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    let ring = Arc::new(GradedRing::polynomial(&names));
    Arc::new(MFContext::periodic(ring, d, Mode::Projective))
}

fn build(r: &Recipe) -> TwistedPeriodicComplex<F> {
    let ctx = periodic_ctx(r.nv, r.d);
    let mut e: Option<MatrixFactorization<F>> = None;
    for &(fwd, s, k, seed) in &r.pieces {
        let p = piece(&ctx, fwd, s, k, seed);
        e = Some(match e {
            None => p,
            Some(x) => x.direct_sum(&p).unwrap(),
        });
    }
    let mut e = e.unwrap();
    for &(on_e0, i, j, seed) in &r.ops {
        let tw = if on_e0 { e.big0().clone() } else { e.big1().clone() };
        let n = tw.rank();
        let (i, j) = (i % n, j % n);
        let deg = tw.twists()[i] - tw.twists()[j];
        if i == j || deg < 0 {
            continue;
        }
        let p = homogeneous(ctx.ring(), deg, seed);
        e = if on_e0 { change_basis_e0(&e, i, j, &p) } else { change_basis_e1(&e, i, j, &p) }.unwrap();
    }
    TwistedPeriodicComplex { ctx: e.ctx.clone(), d_minus1: e.e1.clone(), d_zero: e.e0.clone() }
}

fn recipe() -> impl Strategy<Value = Recipe> {
    (
        2usize..=3,
        1i64..=2,
        prop::collection::vec((any::<bool>(), -3i64..=1, 0i64..=2, any::<u64>()), 1..=3),
        prop::collection::vec((any::<bool>(), 0usize..3, 0usize..3, any::<u64>()), 0..=3),
    )
        .prop_map(|(nv, d, pieces, ops)| Recipe { nv, d, pieces, ops })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn transferred_complex_matches_the_literal_model(r in recipe(), q in -2i64..=2, b in 1u32..=3) {
        let c = build(&r);
        let setup = CechSetup::new(c.ctx.ring_arc().clone(), b).unwrap();
        prop_assert_eq!(setup.hyper(&c, q), oracle_h(&c, r.nv, q, b as i64));
    }

    #[test]
    fn dense_model_matches_the_literal_model(r in recipe(), q in -1i64..=1) {
        let c = build(&r);
        let setup = CechSetup::new(c.ctx.ring_arc().clone(), 2).unwrap();
        prop_assert_eq!(setup.hyper_dense(&c, q), oracle_h(&c, r.nv, q, 2));
    }

    #[test]
    fn twisting_the_complex_shifts_by_two(r in recipe(), q in -2i64..=2) {
        let c = build(&r);
        let d = c.d();
        let twisted = TwistedPeriodicComplex {
            ctx: c.ctx.clone(),
            d_minus1: c.d_minus1.twisted(d),
            d_zero: c.d_zero.twisted(d),
        };
        let s = Schedule::default();
        let a = cech_hypercohomology(&twisted, q, &s).unwrap();
        let b = cech_hypercohomology(&c, q + 2, &s).unwrap();
        prop_assert!(a.stable && b.stable);
        prop_assert_eq!(a.dim, b.dim);
    }

    #[test]
    fn projective_space_matches_closed_form_and_euler_characteristic(m in 1usize..=3, n in -6i64..=6) {
        let names: Vec<String> = (0..=m).map(|i| format!("x{i}")).collect();
        let names: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
        let ring = Arc::new(GradedRing::<F>::polynomial(&names));
        let s = Schedule::default();
        let mut chi: i128 = 0;
        for p in 0..=m {
            let h = cech_cohomology(&ring, n, p, &s).unwrap();
            prop_assert!(h.stable);
            prop_assert!(h.bound.unwrap() <= 8);
            prop_assert_eq!(h.dim as u128, h_projective_space(m, n, p));
            chi += if p % 2 == 0 { h.dim as i128 } else { -(h.dim as i128) };
        }
        // C(n+m, m) as a polynomial in n
        let mut poly: i128 = 1;
        for i in 1..=m as i128 {
            poly *= n as i128 + i;
        }
        let fact: i128 = (1..=m as i128).product();
        prop_assert_eq!(chi, poly / fact);
    }
}

#[test]
fn conic_has_the_expected_euler_characteristic() {
    let node = Arc::new(GradedRing::<F>::parse(&["x", "y", "z"], &["x*y"]).unwrap());
    let s = Schedule::default();
    for n in -4i64..=4 {
        let h0 = cech_cohomology(&node, n, 0, &s).unwrap();
        let h1 = cech_cohomology(&node, n, 1, &s).unwrap();
        let h2 = cech_cohomology(&node, n, 2, &s).unwrap();
        assert!(h0.stable && h1.stable && h2.stable);
        assert_eq!(h2.dim, 0);
        assert_eq!(h0.dim as i64 - h1.dim as i64, 2 * n + 1, "n = {n}");
        if n >= 0 {
            assert_eq!(h0.dim, node.dim(n));
        }
    }
}

#[test]
fn contractible_object_has_no_hypercohomology() {
    let ring = Arc::new(GradedRing::<F>::polynomial(&["x0", "x1"]));
    let ctx = Arc::new(MFContext::parse(ring, "x0", Mode::Projective).unwrap());
    let e = unit_piece(&ctx, 0).unwrap();
    let c = mapping_complex(&e, &e).unwrap();
    for q in -2..=2 {
        let h = cech_hypercohomology(&c, q, &Schedule::default()).unwrap();
        assert_eq!((h.dim, h.stable), (0, true));
    }
}

#[test]
fn structure_sheaf_alone_in_degree_zero() {
    let ctx = periodic_ctx(2, 1);
    let nv = 2;
    let zero = TwistSum::zero();
    let o = TwistSum::new(vec![0]);
    let c = TwistedPeriodicComplex {
        ctx: ctx.clone(),
        d_minus1: SheafMap::zero(nv, zero.clone(), o.clone()),
        d_zero: SheafMap::zero(nv, o, zero.twisted(1)),
    };
    let h = cech_hypercohomology(&c, 0, &Schedule::default()).unwrap();
    assert_eq!((h.dim, h.stable), (1, true));
}

#[test]
fn affine_mode_uses_degree_zero_sections() {
    let ring = Arc::new(GradedRing::<F>::polynomial(&["u", "v"]));
    let ctx = Arc::new(MFContext::parse(ring.clone(), "u*v", Mode::AffineGraded).unwrap());
    let a1 = MatrixFactorization::parse(ctx, vec![-2], vec![-1], &[vec!["u".into()]], &[vec!["v".into()]]).unwrap();
    let c = mapping_complex(&a1, &a1).unwrap();
    let h0 = cech_hypercohomology(&c, 0, &Schedule::default()).unwrap();
    assert_eq!(h0.dim, 1);
    assert_eq!(h0.bound, None);
    assert_eq!(cech_hypercohomology(&c, 1, &Schedule::default()).unwrap().dim, 0);
}

#[test]
fn skyscraper_at_a_point_of_the_line() {
    // O(-1) --x0--> O with zero return map: the cokernel O_p sits in every even degree
    let r = Recipe { nv: 2, d: 1, pieces: vec![(true, 0, 1, 1)], ops: vec![] };
    let c = build(&r);
    assert_eq!(c.d_minus1.matrix.get(0, 0).terms().len(), 1);
    for (q, want) in [(-1, 0), (0, 1), (1, 0), (2, 1)] {
        let h = cech_hypercohomology(&c, q, &Schedule::default()).unwrap();
        assert_eq!((h.dim, h.stable), (want, true), "q = {q}");
        assert_eq!(oracle_h(&c, 2, q, 4), want);
    }
}
