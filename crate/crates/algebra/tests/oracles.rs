//! Brute-force linear-algebra oracles for the Gröbner machinery.
//!
//! The oracles never look at a Gröbner basis: the degree-n piece of an ideal
//! is spanned by monomial multiples of its generators.

use std::collections::HashMap;

use mfcat_algebra::module::map_in_degree;
use mfcat_algebra::{
    fitting_ideal, groebner_basis, syzygies, GradedRing, Monomial, ModulePresentation, Poly,
    PolyMatrix, F32003,
};
use mfcat_linalg::{rank, Field, Matrix};
use proptest::prelude::*;

type P = Poly<F32003>;

fn all_monomials(nvars: usize, d: i64) -> Vec<Monomial> {
    if d < 0 {
        return Vec::new();
    }
    // independent enumeration: odometer over exponent vectors
    let mut out = Vec::new();
    let mut e = vec![0u32; nvars];
    loop {
        if e.iter().sum::<u32>() as i64 == d {
            out.push(Monomial::from_exponents(e.clone()));
        }
        let mut k = 0;
        loop {
            if k == nvars {
                return out;
            }
            e[k] += 1;
            if e[k] as i64 <= d {
                break;
            }
            e[k] = 0;
            k += 1;
        }
    }
}

/// Rows spanning `I_n` in the monomial basis of `S_n`.
fn ideal_piece(nvars: usize, gens: &[P], n: i64) -> (Vec<Monomial>, Matrix<F32003>) {
    let mons = all_monomials(nvars, n);
    let idx: HashMap<&Monomial, usize> = mons.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut rows = Vec::new();
    for g in gens {
        let Some(dg) = g.degree() else { continue };
        for m in all_monomials(nvars, n - dg as i64) {
            let mut row = vec![F32003::zero(); mons.len()];
            for (x, c) in g.terms() {
                row[idx[&x.mul(&m)]] = c.clone();
            }
            rows.push(row);
        }
    }
    let m = if rows.is_empty() {
        Matrix::zeros(0, mons.len())
    } else {
        Matrix::from_rows(rows).unwrap()
    };
    (mons, m)
}

fn oracle_hilbert(nvars: usize, gens: &[P], n: i64) -> usize {
    let (mons, m) = ideal_piece(nvars, gens, n);
    mons.len() - rank(&m)
}

fn oracle_member(nvars: usize, gens: &[P], f: &P) -> bool {
    let Some(d) = f.degree() else { return true };
    let (mons, m) = ideal_piece(nvars, gens, d as i64);
    let idx: HashMap<&Monomial, usize> = mons.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut row = vec![F32003::zero(); mons.len()];
    for (x, c) in f.terms() {
        row[idx[x]] = c.clone();
    }
    let mut rows: Vec<Vec<F32003>> = (0..m.rows()).map(|i| m.row(i).to_vec()).collect();
    let before = rank(&m);
    rows.push(row);
    rank(&Matrix::from_rows(rows).unwrap()) == before
}

fn homogeneous(nvars: usize, deg: u32, coeffs: &[i64]) -> P {
    let mons = all_monomials(nvars, deg as i64);
    Poly::from_terms(
        nvars,
        mons.into_iter()
            .zip(coeffs.iter().cycle())
            .map(|(m, &c)| (m, F32003::from_i64(c)))
            .collect(),
    )
}

fn arb_homogeneous(nvars: usize, deg: std::ops::RangeInclusive<u32>) -> impl Strategy<Value = P> {
    (deg, prop::collection::vec(-2i64..=2, 1..12))
        .prop_map(move |(d, cs)| homogeneous(nvars, d, &cs))
}

fn names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("x{i}")).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn hilbert_function_matches_linear_algebra(
        gens in prop::collection::vec(arb_homogeneous(3, 1..=3), 1..4)
    ) {
        let ring = GradedRing::new(names(3), gens.clone()).unwrap();
        for n in 0..=6 {
            prop_assert_eq!(ring.dim(n), oracle_hilbert(3, &gens, n), "degree {}", n);
        }
    }

    #[test]
    fn membership_matches_linear_algebra(
        gens in prop::collection::vec(arb_homogeneous(3, 1..=2), 1..3),
        probe in arb_homogeneous(3, 1..=4),
        mult in arb_homogeneous(3, 0..=2),
    ) {
        let ring = GradedRing::new(names(3), gens.clone()).unwrap();
        let g0 = gens[0].clone();
        let inside = g0.mul(&mult);
        if inside.degree().map_or(true, |d| d <= 4) {
            prop_assert!(ring.normal_form(&inside).is_zero());
        }
        prop_assert_eq!(ring.normal_form(&probe).is_zero(), oracle_member(3, &gens, &probe));
    }

    #[test]
    fn syzygies_span_the_kernel_in_low_degrees(
        entries in prop::collection::vec(arb_homogeneous(3, 1..=2), 2..4),
        quotient in prop::bool::ANY,
    ) {
        let ideal = if quotient { vec!["x0*x1"] } else { vec![] };
        let ring = GradedRing::<F32003>::parse(&["x0", "x1", "x2"], &ideal).unwrap();
        let col_twists: Vec<i64> = entries.iter().map(|e| -(e.degree().unwrap_or(0) as i64)).collect();
        let m = PolyMatrix::from_rows(3, vec![entries.clone()]).unwrap();
        let (tw, s) = syzygies(&ring, &m, &[0], &col_twists).unwrap();
        // every generator is a syzygy
        prop_assert!(m.mul(&s, &ring).unwrap().is_zero());
        for t in 0..=4i64 {
            let phi = map_in_degree(&ring, &m, &[0], &col_twists, t);
            let kernel_dim = phi.cols() - rank(&phi);
            let span = map_in_degree(&ring, &s, &col_twists, &tw, t);
            prop_assert_eq!(rank(&span), kernel_dim, "degree {}", t);
        }
    }
}

fn ideal_gb(ring: &GradedRing<F32003>, gens: &[P]) -> Vec<P> {
    let mut all = gens.to_vec();
    all.extend(ring.gb().iter().cloned());
    groebner_basis(&all)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn fitting_ideals_ignore_zero_columns_and_row_operations(
        a in arb_homogeneous(2, 1..=1),
        b in arb_homogeneous(2, 1..=1),
        c in arb_homogeneous(2, 2..=2),
        mult in arb_homogeneous(2, 1..=1),
        k in -3i64..=3,
    ) {
        let ring = GradedRing::<F32003>::parse(&["u", "v"], &["u*v"]).unwrap();
        let zero = Poly::zero(2);
        // two generators in degrees 0 and 1; relations in degree 2
        let m = PolyMatrix::from_rows(2, vec![vec![c.clone(), a.mul(&b)], vec![a.clone(), b.clone()]]).unwrap();
        let p = ModulePresentation::new(&ring, vec![0, -1], vec![-2, -2], m.clone()).unwrap();

        let padded = ModulePresentation::new(
            &ring,
            vec![0, -1],
            vec![-2, -2, -3],
            m.hcat(&PolyMatrix::from_rows(2, vec![vec![zero.clone()], vec![zero.clone()]]).unwrap()).unwrap(),
        ).unwrap();

        // row 0 += (k * mult) * row 1 is an invertible graded change of generators
        let f = mult.scale(&F32003::from_i64(k));
        let ops = PolyMatrix::from_rows(2, vec![vec![Poly::one(2), f], vec![zero.clone(), Poly::one(2)]]).unwrap();
        let moved = ModulePresentation::new(&ring, vec![0, -1], vec![-2, -2], ops.mul(&m, &ring).unwrap()).unwrap();

        for r in 0..=2 {
            let base = ideal_gb(&ring, &fitting_ideal(&ring, &p, r));
            prop_assert_eq!(&base, &ideal_gb(&ring, &fitting_ideal(&ring, &padded, r)));
            prop_assert_eq!(&base, &ideal_gb(&ring, &fitting_ideal(&ring, &moved, r)));
        }
    }
}

#[test]
fn frozen_hilbert_values_of_the_node_and_a_complete_intersection() {
    let node = GradedRing::<F32003>::parse(&["x", "y", "z"], &["x*y"]).unwrap();
    let got: Vec<usize> = (0..6).map(|n| node.dim(n)).collect();
    assert_eq!(got, vec![1, 3, 5, 7, 9, 11]);
    let ci = GradedRing::<F32003>::parse(&["x", "y", "z"], &["x^2 - y*z", "y^2"]).unwrap();
    let got: Vec<usize> = (0..6).map(|n| ci.dim(n)).collect();
    assert_eq!(got, vec![1, 3, 4, 4, 4, 4]);
}
