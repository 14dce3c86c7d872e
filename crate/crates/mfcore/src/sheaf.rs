//! Sums of line bundles `⊕ O(a_i)` and maps between them.

use mfcat_algebra::{Field, GradedRing, Poly, PolyMatrix};

use crate::MfError;

/// `⊕ O(a_i)`. Summands keep their given order, since map matrices index
/// into it; [`TwistSum::sorted`] gives the ascending normal form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct TwistSum(Vec<i64>);

impl TwistSum {
    pub fn new(twists: Vec<i64>) -> Self {
        TwistSum(twists)
    }

    pub fn zero() -> Self {
        TwistSum(Vec::new())
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn twists(&self) -> &[i64] {
        &self.0
    }

    pub fn twisted(&self, n: i64) -> Self {
        TwistSum(self.0.iter().map(|a| a + n).collect())
    }

    pub fn concat(&self, other: &Self) -> Self {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        TwistSum(v)
    }

    pub fn sorted(&self) -> Self {
        let mut v = self.0.clone();
        v.sort_unstable();
        TwistSum(v)
    }

    /// `Hom(self, other)` indexed by `r * rank(self) + c`, with twist `b_r - a_c`.
    pub fn hom_to(&self, other: &Self) -> Self {
        let mut v = Vec::with_capacity(self.rank() * other.rank());
        for b in &other.0 {
            for a in &self.0 {
                v.push(b - a);
            }
        }
        TwistSum(v)
    }

    /// `self ⊗ other`, indexed by `i * rank(other) + j`.
    pub fn tensor(&self, other: &Self) -> Self {
        let mut v = Vec::with_capacity(self.rank() * other.rank());
        for a in &self.0 {
            for b in &other.0 {
                v.push(a + b);
            }
        }
        TwistSum(v)
    }

    pub fn min(&self) -> Option<i64> {
        self.0.iter().copied().min()
    }

    pub fn max(&self) -> Option<i64> {
        self.0.iter().copied().max()
    }
}

/// A map `source -> target` of twist sums; entry `(r, c)` is homogeneous of
/// degree `target(r) - source(c)` or zero, and stored in normal form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SheafMap<F> {
    pub source: TwistSum,
    pub target: TwistSum,
    pub matrix: PolyMatrix<F>,
}

impl<F: Field> SheafMap<F> {
    pub fn new(
        ring: &GradedRing<F>,
        source: TwistSum,
        target: TwistSum,
        matrix: PolyMatrix<F>,
    ) -> Result<Self, MfError> {
        if matrix.rows() != target.rank() || matrix.cols() != source.rank() {
            return Err(MfError::Shape(format!(
                "{}x{} matrix for a map of rank {} -> {}",
                matrix.rows(),
                matrix.cols(),
                source.rank(),
                target.rank()
            )));
        }
        let matrix = matrix.normal_form(ring);
        for r in 0..matrix.rows() {
            for c in 0..matrix.cols() {
                let p = matrix.get(r, c);
                let want = target.twists()[r] - source.twists()[c];
                if !p.is_zero() && (!p.is_homogeneous() || p.degree() != u32::try_from(want).ok()) {
                    return Err(MfError::Degree {
                        row: r,
                        col: c,
                        entry: ring.display(p),
                        expected: want,
                    });
                }
            }
        }
        Ok(SheafMap { source, target, matrix })
    }

    /// Builds from polynomial strings.
    pub fn parse(
        ring: &GradedRing<F>,
        source: TwistSum,
        target: TwistSum,
        rows: &[Vec<String>],
    ) -> Result<Self, MfError> {
        let matrix = if rows.is_empty() {
            PolyMatrix::zeros(ring.nvars(), target.rank(), source.rank())
        } else {
            PolyMatrix::parse(ring, rows)?
        };
        Self::new(ring, source, target, matrix)
    }

    pub fn zero(nvars: usize, source: TwistSum, target: TwistSum) -> Self {
        let matrix = PolyMatrix::zeros(nvars, target.rank(), source.rank());
        SheafMap { source, target, matrix }
    }

    pub fn identity(nvars: usize, e: &TwistSum) -> Self {
        SheafMap {
            source: e.clone(),
            target: e.clone(),
            matrix: PolyMatrix::identity(nvars, e.rank()),
        }
    }

    /// `p · id: e -> e(deg p)`.
    pub fn scalar(e: &TwistSum, p: &Poly<F>, nvars: usize) -> Self {
        let n = e.rank();
        let deg = p.degree().unwrap_or(0) as i64;
        let matrix = PolyMatrix::from_fn(nvars, n, n, |r, c| {
            if r == c {
                p.clone()
            } else {
                Poly::zero(nvars)
            }
        });
        SheafMap { source: e.clone(), target: e.twisted(deg), matrix }
    }

    /// `self ∘ rhs`; the target of `rhs` must equal the source of `self` up to
    /// a common twist.
    pub fn compose(&self, rhs: &Self, ring: &GradedRing<F>) -> Result<Self, MfError> {
        if rhs.target.rank() != self.source.rank() {
            return Err(MfError::Shape(format!(
                "cannot compose rank {} -> {} after {} -> {}",
                self.source.rank(),
                self.target.rank(),
                rhs.source.rank(),
                rhs.target.rank()
            )));
        }
        let shift = match (rhs.target.twists().first(), self.source.twists().first()) {
            (Some(a), Some(b)) => a - b,
            _ => 0,
        };
        if rhs.target != self.source.twisted(shift) {
            return Err(MfError::Shape(format!(
                "twists {:?} do not match {:?} up to a common shift",
                rhs.target.twists(),
                self.source.twists()
            )));
        }
        let matrix = self.matrix.mul(&rhs.matrix, ring)?;
        Ok(SheafMap {
            source: rhs.source.clone(),
            target: self.target.twisted(shift),
            matrix,
        })
    }

    /// `self(n)`; the matrix is unchanged.
    pub fn twisted(&self, n: i64) -> Self {
        SheafMap {
            source: self.source.twisted(n),
            target: self.target.twisted(n),
            matrix: self.matrix.clone(),
        }
    }

    pub fn neg(&self) -> Self {
        SheafMap {
            source: self.source.clone(),
            target: self.target.clone(),
            matrix: self.matrix.neg(),
        }
    }

    pub fn scale(&self, c: &F) -> Self {
        SheafMap {
            source: self.source.clone(),
            target: self.target.clone(),
            matrix: self.matrix.scale(c),
        }
    }

    pub fn add(&self, rhs: &Self) -> Result<Self, MfError> {
        if self.source != rhs.source || self.target != rhs.target {
            return Err(MfError::Shape("adding maps with different twists".into()));
        }
        Ok(SheafMap {
            source: self.source.clone(),
            target: self.target.clone(),
            matrix: self.matrix.add(&rhs.matrix)?,
        })
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    pub fn block_diag(&self, rhs: &Self) -> Self {
        SheafMap {
            source: self.source.concat(&rhs.source),
            target: self.target.concat(&rhs.target),
            matrix: self.matrix.block_diag(&rhs.matrix),
        }
    }

    /// Assembles a map from a grid of blocks, `blocks[i][j]: sources[j] -> targets[i]`.
    pub fn from_blocks(
        nvars: usize,
        sources: &[TwistSum],
        targets: &[TwistSum],
        blocks: &[Vec<Option<&PolyMatrix<F>>>],
    ) -> Self {
        let source = sources.iter().fold(TwistSum::zero(), |a, b| a.concat(b));
        let target = targets.iter().fold(TwistSum::zero(), |a, b| a.concat(b));
        let mut m = PolyMatrix::zeros(nvars, target.rank(), source.rank());
        let mut roff = 0;
        for (i, t) in targets.iter().enumerate() {
            let mut coff = 0;
            for (j, s) in sources.iter().enumerate() {
                if let Some(b) = blocks[i][j] {
                    debug_assert_eq!((b.rows(), b.cols()), (t.rank(), s.rank()));
                    for r in 0..b.rows() {
                        for c in 0..b.cols() {
                            m.set(roff + r, coff + c, b.get(r, c).clone());
                        }
                    }
                }
                coff += s.rank();
            }
            roff += t.rank();
        }
        SheafMap { source, target, matrix: m }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use mfcat_algebra::F32003;

    #[test]
    fn hom_twists_follow_index_convention() {
        let a = TwistSum::new(vec![0, -1]);
        let b = TwistSum::new(vec![2]);
        // r * |A| + c with twist b_r - a_c
        assert_eq!(a.hom_to(&b).twists(), &[2, 3]);
        assert_eq!(b.hom_to(&a).twists(), &[-2, -3]);
        assert_eq!(a.sorted().twists(), &[-1, 0]);
    }

    #[test]
    fn degree_condition_is_enforced() {
        let r = GradedRing::<F32003>::polynomial(&["x", "y"]);
        let rows = vec![vec!["x".to_string()]];
        assert!(SheafMap::parse(&r, TwistSum::new(vec![-1]), TwistSum::new(vec![0]), &rows).is_ok());
        let e = SheafMap::parse(&r, TwistSum::new(vec![-2]), TwistSum::new(vec![0]), &rows).unwrap_err();
        assert!(matches!(e, MfError::Degree { row: 0, col: 0, expected: 2, .. }));
    }

    #[test]
    fn composition_tracks_common_shift() {
        let r = GradedRing::<F32003>::polynomial(&["x", "y"]);
        let f = SheafMap::parse(&r, TwistSum::new(vec![-1]), TwistSum::new(vec![0]), &[vec!["x".into()]]).unwrap();
        // f(1) ∘ f : O(-1) -> O(1)
        let g = f.twisted(1).compose(&f, &r).unwrap();
        assert_eq!(g.target.twists(), &[1]);
        assert_eq!(r.display(g.matrix.get(0, 0)), "x^2");
        // f ∘ f also works with an implicit twist
        let h = f.compose(&f, &r).unwrap();
        assert_eq!(h, g);
    }
}
