//! The ambient data `(X, L, W)`: a graded ring, a potential and its degree.

use std::sync::Arc;

use mfcat_algebra::{syzygies, Field, GradedRing, Poly, PolyMatrix};

use crate::MfError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    /// `X = Proj R` with `L = O(1)`; forces `deg W = 1`.
    Projective,
    /// Graded modules over a polynomial ring; `L` is the shift by `deg W`.
    AffineGraded,
}

#[derive(Clone)]
pub struct MFContext<F> {
    ring: Arc<GradedRing<F>>,
    w: Poly<F>,
    d: i64,
    mode: Mode,
    regular: bool,
}

impl<F: Field> std::fmt::Debug for MFContext<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "MFContext({:?}, W = {}, d = {}, {:?})",
            self.ring,
            self.ring.display(&self.w),
            self.d,
            self.mode
        )
    }
}

impl<F: Field> MFContext<F> {
    pub fn new(ring: Arc<GradedRing<F>>, w: Poly<F>, mode: Mode) -> Result<Self, MfError> {
        let w = ring.normal_form(&w);
        if w.is_zero() {
            return Err(MfError::Invalid("the potential W is zero in R".into()));
        }
        if !w.is_homogeneous() {
            return Err(MfError::Invalid(format!("W = {} is not homogeneous", ring.display(&w))));
        }
        let d = w.degree().expect("nonzero") as i64;
        match mode {
            Mode::Projective if d != 1 => {
                return Err(MfError::Invalid(format!(
                    "projective mode needs deg W = 1, got {d}"
                )))
            }
            Mode::AffineGraded if !ring.is_polynomial() => {
                return Err(MfError::Invalid(
                    "affine-graded mode needs a polynomial ring".into(),
                ))
            }
            _ => {}
        }
        // W is a nonzerodivisor iff the 1x1 matrix (W) has no syzygies over R
        let (tw, _) = syzygies(&ring, &PolyMatrix::from_rows(ring.nvars(), vec![vec![w.clone()]])?, &[0], &[-d])?;
        Ok(MFContext { regular: tw.is_empty(), ring, w, d, mode })
    }

    /// `W = 0`: matrix factorizations are then twisted periodic complexes.
    pub fn periodic(ring: Arc<GradedRing<F>>, d: i64, mode: Mode) -> Self {
        let w = ring.zero();
        MFContext { ring, w, d, mode, regular: false }
    }

    /// Parses `W` in the ring's variables.
    pub fn parse(ring: Arc<GradedRing<F>>, w: &str, mode: Mode) -> Result<Self, MfError> {
        let w = ring.parse_poly(w)?;
        Self::new(ring, w, mode)
    }

    pub fn ring(&self) -> &GradedRing<F> {
        &self.ring
    }

    pub fn ring_arc(&self) -> &Arc<GradedRing<F>> {
        &self.ring
    }

    pub fn w(&self) -> &Poly<F> {
        &self.w
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn is_regular(&self) -> bool {
        self.regular
    }

    /// `dim X`: `nvars - 1` for `P^m`, and the Krull dimension bound `nvars` otherwise.
    pub fn dim_x(&self) -> usize {
        match self.mode {
            Mode::Projective => self.ring.nvars() - 1,
            Mode::AffineGraded => self.ring.nvars(),
        }
    }

    /// The same `(X, L)` with `W = 0`.
    pub fn periodic_version(&self) -> Self {
        Self::periodic(self.ring.clone(), self.d, self.mode)
    }

    pub fn same_as(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.ring, &other.ring)
            || (self.ring.names() == other.ring.names() && self.ring.gb() == other.ring.gb()))
            && self.w == other.w
            && self.d == other.d
            && self.mode == other.mode
    }
}
