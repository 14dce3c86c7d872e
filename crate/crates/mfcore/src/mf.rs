//! Matrix factorizations, twisted periodic complexes and strict morphisms.

use std::sync::Arc;

use mfcat_algebra::{Field, Poly, PolyMatrix};
use mfcat_linalg::par::par_map_range;

use crate::context::MFContext;
use crate::sheaf::{SheafMap, TwistSum};
use crate::MfError;

/// `E1 --e1--> E0 --e0--> E1(d)` with both composites multiplication by `W`.
#[derive(Clone, Debug)]
pub struct MatrixFactorization<F: Field> {
    pub ctx: Arc<MFContext<F>>,
    pub e1: SheafMap<F>,
    pub e0: SheafMap<F>,
}

/// The first failing entry of a composition identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub identity: String,
    pub row: usize,
    pub col: usize,
    pub found: String,
    pub expected: String,
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{} fails at ({}, {}): found {}, expected {}",
            self.identity, self.row, self.col, self.found, self.expected
        )
    }
}

/// Checks `a ∘ b = p · id` entrywise; `p = 0` checks that the composite vanishes.
fn check_composite<F: Field>(
    ctx: &MFContext<F>,
    name: &str,
    a: &SheafMap<F>,
    b: &SheafMap<F>,
    p: &Poly<F>,
) -> Result<(), Violation> {
    let ring = ctx.ring();
    let (rows, inner, cols) = (a.matrix.rows(), a.matrix.cols(), b.matrix.cols());
    let shape_err = |msg: String| Violation {
        identity: name.into(),
        row: 0,
        col: 0,
        found: msg,
        expected: "compatible shapes".into(),
    };
    if inner != b.matrix.rows() {
        return Err(shape_err(format!("{}x{} after {}x{}", rows, inner, b.matrix.rows(), cols)));
    }
    if p.degree().is_some() && rows != cols {
        return Err(shape_err(format!("a {rows}x{cols} composite")));
    }
    let failures = par_map_range(rows * cols, |idx| {
        let (r, c) = (idx / cols, idx % cols);
        let mut acc = Poly::zero(ring.nvars());
        for k in 0..inner {
            let (x, y) = (a.matrix.get(r, k), b.matrix.get(k, c));
            if !x.is_zero() && !y.is_zero() {
                acc = acc.add(&x.mul(y));
            }
        }
        let want = if r == c { p.clone() } else { Poly::zero(ring.nvars()) };
        let diff = ring.normal_form(&acc.sub(&want));
        if diff.is_zero() {
            None
        } else {
            Some((r, c, ring.display(&ring.normal_form(&acc)), ring.display(&want)))
        }
    });
    match failures.into_iter().flatten().next() {
        None => Ok(()),
        Some((row, col, found, expected)) => Err(Violation {
            identity: name.into(),
            row,
            col,
            found,
            expected,
        }),
    }
}

impl<F: Field> MatrixFactorization<F> {
    /// Checks shapes and degrees only; see [`mf_verify`] for the identities.
    pub fn new(ctx: Arc<MFContext<F>>, e1: SheafMap<F>, e0: SheafMap<F>) -> Result<Self, MfError> {
        if e0.source != e1.target {
            return Err(MfError::Shape(format!(
                "e0 starts at {:?} but e1 ends at {:?}",
                e0.source.twists(),
                e1.target.twists()
            )));
        }
        if e0.target != e1.source.twisted(ctx.d()) {
            return Err(MfError::Shape(format!(
                "e0 must end at E1(d) = {:?}, got {:?}",
                e1.source.twisted(ctx.d()).twists(),
                e0.target.twists()
            )));
        }
        Ok(MatrixFactorization { ctx, e1, e0 })
    }

    /// Builds and verifies.
    pub fn checked(ctx: Arc<MFContext<F>>, e1: SheafMap<F>, e0: SheafMap<F>) -> Result<Self, MfError> {
        let e = Self::new(ctx, e1, e0)?;
        mf_verify(&e).map_err(MfError::Violation)?;
        Ok(e)
    }

    /// Parses `e1: ⊕O(e1_twists) -> ⊕O(e0_twists)` and `e0: ⊕O(e0_twists) -> ⊕O(e1_twists)(d)`.
    pub fn parse(
        ctx: Arc<MFContext<F>>,
        e1_twists: Vec<i64>,
        e0_twists: Vec<i64>,
        e1_rows: &[Vec<String>],
        e0_rows: &[Vec<String>],
    ) -> Result<Self, MfError> {
        let ring = ctx.ring();
        let big1 = TwistSum::new(e1_twists);
        let big0 = TwistSum::new(e0_twists);
        let e1 = SheafMap::parse(ring, big1.clone(), big0.clone(), e1_rows)?;
        let e0 = SheafMap::parse(ring, big0, big1.twisted(ctx.d()), e0_rows)?;
        Self::new(ctx, e1, e0)
    }

    pub fn zero(ctx: Arc<MFContext<F>>) -> Self {
        let n = ctx.ring().nvars();
        MatrixFactorization {
            e1: SheafMap::zero(n, TwistSum::zero(), TwistSum::zero()),
            e0: SheafMap::zero(n, TwistSum::zero(), TwistSum::zero()),
            ctx,
        }
    }

    pub fn big1(&self) -> &TwistSum {
        &self.e1.source
    }

    pub fn big0(&self) -> &TwistSum {
        &self.e1.target
    }

    pub fn d(&self) -> i64 {
        self.ctx.d()
    }

    pub fn nvars(&self) -> usize {
        self.ctx.ring().nvars()
    }

    pub fn is_zero_object(&self) -> bool {
        self.big0().rank() == 0 && self.big1().rank() == 0
    }

    /// `E[1] = (E0 --(-e0)--> E1(d) --(-e1(d))--> E0(d))`.
    pub fn shift(&self) -> Self {
        MatrixFactorization {
            ctx: self.ctx.clone(),
            e1: self.e0.neg(),
            e0: self.e1.twisted(self.d()).neg(),
        }
    }

    /// `E[n]` for any integer `n`, using `E[2] = E(d)`.
    pub fn shifted(&self, n: i64) -> Self {
        let twisted = self.twist(n.div_euclid(2) * self.d());
        if n.rem_euclid(2) == 1 {
            twisted.shift()
        } else {
            twisted
        }
    }

    /// `E(n)`.
    pub fn twist(&self, n: i64) -> Self {
        MatrixFactorization {
            ctx: self.ctx.clone(),
            e1: self.e1.twisted(n),
            e0: self.e0.twisted(n),
        }
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self, MfError> {
        if !self.ctx.same_as(&other.ctx) {
            return Err(MfError::ContextMismatch);
        }
        Ok(MatrixFactorization {
            ctx: self.ctx.clone(),
            e1: self.e1.block_diag(&other.e1),
            e0: self.e0.block_diag(&other.e0),
        })
    }

    pub fn identity(&self) -> StrictMorphism<F> {
        StrictMorphism {
            source: self.clone(),
            target: self.clone(),
            g1: SheafMap::identity(self.nvars(), self.big1()),
            g0: SheafMap::identity(self.nvars(), self.big0()),
        }
    }

    /// Renders the two matrices with the ring's variable names.
    pub fn display_rows(&self) -> (Vec<Vec<String>>, Vec<Vec<String>>) {
        let ring = self.ctx.ring();
        (self.e1.matrix.display_rows(ring), self.e0.matrix.display_rows(ring))
    }
}

/// `Ok` iff `e0∘e1 = W·id` and `e1(d)∘e0 = W·id` after normal form.
pub fn mf_verify<F: Field>(e: &MatrixFactorization<F>) -> Result<(), Violation> {
    let w = e.ctx.w();
    check_composite(&e.ctx, "e0∘e1 = W", &e.e0, &e.e1, w)?;
    check_composite(&e.ctx, "e1(d)∘e0 = W", &e.e1, &e.e0, w)
}

/// `C^{-1} --∂^{-1}--> C^0 --∂^0--> C^{-1}(d)`, extended by `C^{q+2} = C^q(d)`.
#[derive(Clone, Debug)]
pub struct TwistedPeriodicComplex<F: Field> {
    pub ctx: Arc<MFContext<F>>,
    pub d_minus1: SheafMap<F>,
    pub d_zero: SheafMap<F>,
}

impl<F: Field> TwistedPeriodicComplex<F> {
    pub fn c_minus1(&self) -> &TwistSum {
        &self.d_minus1.source
    }

    pub fn c_zero(&self) -> &TwistSum {
        &self.d_minus1.target
    }

    pub fn d(&self) -> i64 {
        self.ctx.d()
    }

    /// `C^q`.
    pub fn term(&self, q: i64) -> TwistSum {
        let s = q.div_euclid(2);
        if q.rem_euclid(2) == 0 {
            self.c_zero().twisted(s * self.d())
        } else {
            self.c_minus1().twisted((s + 1) * self.d())
        }
    }

    /// `∂^q: C^q -> C^{q+1}`.
    pub fn differential(&self, q: i64) -> SheafMap<F> {
        let s = q.div_euclid(2);
        if q.rem_euclid(2) == 0 {
            self.d_zero.twisted(s * self.d())
        } else {
            self.d_minus1.twisted((s + 1) * self.d())
        }
    }

    /// Both composites vanish.
    pub fn verify(&self) -> Result<(), Violation> {
        let zero = Poly::zero(self.ctx.ring().nvars());
        check_composite(&self.ctx, "∂^0∘∂^{-1} = 0", &self.d_zero, &self.d_minus1, &zero)?;
        check_composite(&self.ctx, "∂^{-1}(d)∘∂^0 = 0", &self.d_minus1, &self.d_zero, &zero)
    }
}

/// `(g1, g0): E -> F` with `g0∘e1 = f1∘g1` and `g1(d)∘e0 = f0∘g0`.
#[derive(Clone, Debug)]
pub struct StrictMorphism<F: Field> {
    pub source: MatrixFactorization<F>,
    pub target: MatrixFactorization<F>,
    pub g1: SheafMap<F>,
    pub g0: SheafMap<F>,
}

impl<F: Field> StrictMorphism<F> {
    /// Checks twists and both squares.
    pub fn new(
        source: MatrixFactorization<F>,
        target: MatrixFactorization<F>,
        g1: SheafMap<F>,
        g0: SheafMap<F>,
    ) -> Result<Self, MfError> {
        if !source.ctx.same_as(&target.ctx) {
            return Err(MfError::ContextMismatch);
        }
        if &g1.source != source.big1()
            || &g1.target != target.big1()
            || &g0.source != source.big0()
            || &g0.target != target.big0()
        {
            return Err(MfError::Shape("morphism components do not match the objects".into()));
        }
        let m = StrictMorphism { source, target, g1, g0 };
        m.check_squares()?;
        Ok(m)
    }

    fn check_squares(&self) -> Result<(), MfError> {
        let ring = self.source.ctx.ring();
        let lhs = self.g0.compose(&self.source.e1, ring)?;
        let rhs = self.target.e1.compose(&self.g1, ring)?;
        if lhs.matrix != rhs.matrix {
            return Err(MfError::NotStrict("g0∘e1 ≠ f1∘g1".into()));
        }
        let lhs = self.g1.twisted(self.source.d()).compose(&self.source.e0, ring)?;
        let rhs = self.target.e0.compose(&self.g0, ring)?;
        if lhs.matrix != rhs.matrix {
            return Err(MfError::NotStrict("g1(d)∘e0 ≠ f0∘g0".into()));
        }
        Ok(())
    }

    pub fn zero(source: &MatrixFactorization<F>, target: &MatrixFactorization<F>) -> Self {
        let n = source.nvars();
        StrictMorphism {
            g1: SheafMap::zero(n, source.big1().clone(), target.big1().clone()),
            g0: SheafMap::zero(n, source.big0().clone(), target.big0().clone()),
            source: source.clone(),
            target: target.clone(),
        }
    }

    /// `self ∘ rhs`.
    pub fn compose(&self, rhs: &Self) -> Result<Self, MfError> {
        let ring = self.source.ctx.ring();
        Ok(StrictMorphism {
            source: rhs.source.clone(),
            target: self.target.clone(),
            g1: self.g1.compose(&rhs.g1, ring)?,
            g0: self.g0.compose(&rhs.g0, ring)?,
        })
    }

    pub fn add(&self, rhs: &Self) -> Result<Self, MfError> {
        Ok(StrictMorphism {
            source: self.source.clone(),
            target: self.target.clone(),
            g1: self.g1.add(&rhs.g1)?,
            g0: self.g0.add(&rhs.g0)?,
        })
    }

    pub fn scale(&self, c: &F) -> Self {
        StrictMorphism {
            source: self.source.clone(),
            target: self.target.clone(),
            g1: self.g1.scale(c),
            g0: self.g0.scale(c),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.g1.is_zero() && self.g0.is_zero()
    }

    /// `f[1] = (g0, g1(d))` between the shifted objects.
    pub fn shift(&self) -> Self {
        StrictMorphism {
            source: self.source.shift(),
            target: self.target.shift(),
            g1: self.g0.clone(),
            g0: self.g1.twisted(self.source.d()),
        }
    }

    pub fn twist(&self, n: i64) -> Self {
        StrictMorphism {
            source: self.source.twist(n),
            target: self.target.twist(n),
            g1: self.g1.twisted(n),
            g0: self.g0.twisted(n),
        }
    }
}

/// The mapping cone, with `cone_1 = E0 ⊕ F1`, `cone_0 = E1(d) ⊕ F0` and
/// `e1' = [[-e0, 0], [g0, f1]]`, `e0' = [[-e1(d), 0], [g1(d), f0]]`.
pub fn cone<F: Field>(f: &StrictMorphism<F>) -> Result<MatrixFactorization<F>, MfError> {
    f.check_squares()?;
    let (e, t) = (&f.source, &f.target);
    let n = e.nvars();
    let d = e.d();
    let neg_e0 = e.e0.matrix.neg();
    let neg_e1 = e.e1.matrix.neg();
    let g1d = f.g1.matrix.clone();
    let e1 = SheafMap::from_blocks(
        n,
        &[e.big0().clone(), t.big1().clone()],
        &[e.big1().twisted(d), t.big0().clone()],
        &[vec![Some(&neg_e0), None], vec![Some(&f.g0.matrix), Some(&t.e1.matrix)]],
    );
    let e0 = SheafMap::from_blocks(
        n,
        &[e.big1().twisted(d), t.big0().clone()],
        &[e.big0().twisted(d), t.big1().twisted(d)],
        &[vec![Some(&neg_e1), None], vec![Some(&g1d), Some(&t.e0.matrix)]],
    );
    MatrixFactorization::new(e.ctx.clone(), e1, e0)
}

/// The unit square polynomial matrix, for building factorizations by hand.
pub fn scalar_matrix<F: Field>(nvars: usize, n: usize, p: &Poly<F>) -> PolyMatrix<F> {
    PolyMatrix::from_fn(nvars, n, n, |r, c| if r == c { p.clone() } else { Poly::zero(nvars) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::context::Mode;
    use mfcat_algebra::{GradedRing, F32003};

    fn s(v: &[&[&str]]) -> Vec<Vec<String>> {
        v.iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect()
    }

    fn a1(e0: &str) -> MatrixFactorization<F32003> {
        let ring = Arc::new(GradedRing::polynomial(&["u", "v"]));
        let ctx = Arc::new(MFContext::parse(ring, "u*v", Mode::AffineGraded).unwrap());
        MatrixFactorization::parse(ctx, vec![-2], vec![-1], &s(&[&["u"]]), &s(&[&[e0]])).unwrap()
    }

    #[test]
    fn a1_verifies_and_its_perturbation_does_not() {
        assert!(mf_verify(&a1("v")).is_ok());
        let bad = a1("u");
        let v = mf_verify(&bad).unwrap_err();
        assert_eq!((v.row, v.col), (0, 0));
        assert_eq!(v.found, "u^2");
        assert_eq!(v.expected, "u*v");
    }

    #[test]
    fn double_shift_is_the_twist_by_d() {
        let e = a1("v");
        let twice = e.shift().shift();
        let t = e.twist(e.d());
        assert_eq!(twice.e1, t.e1);
        assert_eq!(twice.e0, t.e0);
        assert!(mf_verify(&e.shift()).is_ok());
        assert_eq!(e.shifted(-1).shift().e1, e.e1);
    }

    #[test]
    fn cone_of_identity_verifies() {
        let e = a1("v");
        let c = cone(&e.identity()).unwrap();
        assert!(mf_verify(&c).is_ok());
        assert_eq!(c.big1().twists(), &[-1, -2]);
        assert_eq!(c.big0().twists(), &[0, -1]);
    }

    #[test]
    fn periodic_complex_terms() {
        let e = a1("v");
        let t = TwistedPeriodicComplex {
            ctx: e.ctx.clone(),
            d_minus1: e.e1.clone(),
            d_zero: e.e0.clone(),
        };
        assert_eq!(t.term(0), *e.big0());
        assert_eq!(t.term(-1), *e.big1());
        assert_eq!(t.term(1), e.big1().twisted(2));
        assert_eq!(t.term(2), e.big0().twisted(2));
        assert_eq!(t.term(-2), e.big0().twisted(-2));
        assert_eq!(t.differential(1).source, t.term(1));
        assert_eq!(t.differential(-2).target, t.term(-1));
        // not a complex: u*v ≠ 0
        assert!(t.verify().is_err());
    }
}
