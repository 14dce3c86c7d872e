use std::fmt;

use mfcat_algebra::Field;
use mfcat_cohomology::Threshold;
use mfcat_linalg::{kernel_basis, Subquotient};
use mfcat_mfcore::{
    cycle_to_morphism, mapping_complex, morphism_to_cycle, sections_matrix, MatrixFactorization, Mode,
    StrictMorphism,
};

use crate::stabilize::{stabilize, stabilize_at, Stabilized};
use crate::{same_object, HomotopyError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Model {
    Naive,
    Hyper,
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Model::Naive => "naive",
            Model::Hyper => "hyper",
        })
    }
}

/// A Hom-set with a canonical basis of representing strict morphisms.
///
/// For the hyper model in projective mode the representatives start at the
/// stabilized source `E^(j)`; otherwise at `E` itself.
#[derive(Clone, Debug)]
pub struct HomSpace<F: Field> {
    pub source: MatrixFactorization<F>,
    pub target: MatrixFactorization<F>,
    pub model: Model,
    pub stabilization: Option<Stabilized<F>>,
    pub basis: Vec<StrictMorphism<F>>,
    quotient: Subquotient<F>,
}

impl<F: Field> HomSpace<F> {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn level(&self) -> Option<u32> {
        self.stabilization.as_ref().map(|s| s.j)
    }

    /// Where the representatives start.
    pub fn representing_source(&self) -> &MatrixFactorization<F> {
        self.stabilization.as_ref().map_or(&self.source, |s| &s.source)
    }

    /// Coordinates of the class of `g` in the canonical basis.
    pub fn coordinates(&self, g: &StrictMorphism<F>) -> Result<Vec<F>, HomotopyError> {
        if !same_object(&g.source, self.representing_source()) || !same_object(&g.target, &self.target) {
            return Err(HomotopyError::NotInSpace);
        }
        self.quotient.coordinates(&morphism_to_cycle(g))?.ok_or(HomotopyError::NotInSpace)
    }

    /// `Σ c_i b_i`.
    pub fn element(&self, coords: &[F]) -> Result<StrictMorphism<F>, HomotopyError> {
        if coords.len() != self.dim() {
            return Err(HomotopyError::Coordinates(coords.len(), self.dim()));
        }
        let mut acc = StrictMorphism::zero(self.representing_source(), &self.target);
        for (c, b) in coords.iter().zip(&self.basis) {
            if !c.is_zero() {
                acc = acc.add(&b.scale(c))?;
            }
        }
        Ok(acc)
    }
}

/// `Z^0 / B^0` of the degree-0 sections of `Hom(E, F)`, with coset
/// representatives taken from the kernel basis in order.
fn naive_quotient<F: Field>(
    e: &MatrixFactorization<F>,
    f: &MatrixFactorization<F>,
) -> Result<(Vec<StrictMorphism<F>>, Subquotient<F>), HomotopyError> {
    let c = mapping_complex(e, f)?;
    let ring = e.ctx.ring();
    let z = kernel_basis(&sections_matrix(ring, &c.d_zero, 0));
    let b = sections_matrix(ring, &c.d_minus1, 0);
    let q = Subquotient::new(&z, &b)?;
    let basis = q.representatives().columns().iter().map(|v| cycle_to_morphism(e, f, v)).collect();
    Ok((basis, q))
}

fn space<F: Field>(
    e: &MatrixFactorization<F>,
    f: &MatrixFactorization<F>,
    model: Model,
    stabilization: Option<Stabilized<F>>,
) -> Result<HomSpace<F>, HomotopyError> {
    let src = stabilization.as_ref().map_or(e, |s| &s.source);
    let (basis, quotient) = naive_quotient(src, f)?;
    Ok(HomSpace { source: e.clone(), target: f.clone(), model, stabilization, basis, quotient })
}

/// Strict morphisms modulo homotopy.
pub fn hom_naive<F: Field>(
    e: &MatrixFactorization<F>,
    f: &MatrixFactorization<F>,
) -> Result<HomSpace<F>, HomotopyError> {
    space(e, f, Model::Naive, None)
}

/// `Hom` in the hypercohomology homotopy category: naive Hom out of the
/// least certified `E^(j)`. In affine-graded mode the two models agree.
pub fn hom_h<F: Field>(
    e: &MatrixFactorization<F>,
    f: &MatrixFactorization<F>,
    threshold: &Threshold,
) -> Result<HomSpace<F>, HomotopyError> {
    if e.ctx.mode() == Mode::AffineGraded {
        return space(e, f, Model::Hyper, None);
    }
    let s = stabilize(e, f, 0, threshold)?;
    space(e, f, Model::Hyper, Some(s))
}

/// [`hom_h`] at a prescribed level, certified against `F` and `extra`.
pub fn hom_h_at_level<F: Field>(
    e: &MatrixFactorization<F>,
    f: &MatrixFactorization<F>,
    j: u32,
    extra: &[&MatrixFactorization<F>],
    threshold: &Threshold,
) -> Result<HomSpace<F>, HomotopyError> {
    if e.ctx.mode() == Mode::AffineGraded {
        return space(e, f, Model::Hyper, None);
    }
    let mut targets = vec![f];
    targets.extend_from_slice(extra);
    let s = stabilize_at(e, &targets, 0, j, threshold)?;
    space(e, f, Model::Hyper, Some(s))
}
