use std::sync::Arc;

use mfcat_algebra::Field;
use mfcat_cohomology::Threshold;
use mfcat_linalg::{kernel_basis, solve, Matrix};
use mfcat_mfcore::{
    cycle_to_morphism, mapping_complex, morphism_to_cycle, sections_matrix, StrictMorphism,
};

use crate::hom::{hom_h, hom_h_at_level, hom_naive, HomSpace, Model};
use crate::stabilize::required_level;
use crate::{same_object, HomotopyError};

/// An element of a Hom-space, in its canonical basis.
#[derive(Clone, Debug)]
pub struct HomClass<F: Field> {
    pub space: Arc<HomSpace<F>>,
    pub coords: Vec<F>,
}

impl<F: Field> HomClass<F> {
    pub fn new(space: Arc<HomSpace<F>>, coords: Vec<F>) -> Result<Self, HomotopyError> {
        if coords.len() != space.dim() {
            return Err(HomotopyError::Coordinates(coords.len(), space.dim()));
        }
        Ok(HomClass { space, coords })
    }

    pub fn zero(space: Arc<HomSpace<F>>) -> Self {
        let coords = vec![F::zero(); space.dim()];
        HomClass { space, coords }
    }

    /// The class of a strict morphism out of the representing source.
    pub fn of(space: Arc<HomSpace<F>>, g: &StrictMorphism<F>) -> Result<Self, HomotopyError> {
        let coords = space.coordinates(g)?;
        Ok(HomClass { space, coords })
    }

    pub fn representative(&self) -> Result<StrictMorphism<F>, HomotopyError> {
        self.space.element(&self.coords)
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }
}

/// A strict `z: A -> B` with `w∘z ≃ g`, for `w: B -> C` and `g: A -> C`.
///
/// Solved in the degree-0 sections: `w∘z - g` must be a boundary of `Hom(A, C)`.
pub fn lift_through<F: Field>(
    w: &StrictMorphism<F>,
    g: &StrictMorphism<F>,
) -> Result<StrictMorphism<F>, HomotopyError> {
    if !same_object(&w.target, &g.target) {
        return Err(HomotopyError::NotComposable("the lift and the map end at different objects".into()));
    }
    let (a, b) = (&g.source, &w.source);
    let ring = a.ctx.ring();
    let cab = mapping_complex(a, b)?;
    let z = kernel_basis(&sections_matrix(ring, &cab.d_zero, 0));
    let zs: Vec<StrictMorphism<F>> = z.columns().iter().map(|v| cycle_to_morphism(a, b, v)).collect();
    let cac = mapping_complex(a, &g.target)?;
    let bnd = sections_matrix(ring, &cac.d_minus1, 0);
    let rhs = morphism_to_cycle(g);
    let mut cols = Vec::with_capacity(zs.len() + bnd.cols());
    for zi in &zs {
        cols.push(morphism_to_cycle(&w.compose(zi)?));
    }
    cols.extend(bnd.columns());
    if cols.is_empty() {
        return if rhs.iter().all(|c| c.is_zero()) { Ok(StrictMorphism::zero(a, b)) } else { Err(HomotopyError::NotLiftable) };
    }
    let m = Matrix::from_columns(rhs.len(), &cols)?;
    let x = solve(&m, &rhs)?.ok_or(HomotopyError::NotLiftable)?;
    let mut acc = StrictMorphism::zero(a, b);
    for (c, zi) in x.iter().zip(&zs) {
        if !c.is_zero() {
            acc = acc.add(&zi.scale(c))?;
        }
    }
    Ok(acc)
}

/// Re-expresses a hyper class at stabilization level `j`.
pub fn transport<F: Field>(class: &HomClass<F>, j: u32, threshold: &Threshold) -> Result<HomClass<F>, HomotopyError> {
    let from = &class.space;
    let Some(stab) = &from.stabilization else { return Ok(class.clone()) };
    if stab.j == j {
        return Ok(class.clone());
    }
    if class.is_zero() {
        return Ok(HomClass::zero(Arc::new(hom_h_at_level(&from.source, &from.target, j, &[], threshold)?)));
    }
    let extra = [&stab.source, &from.source];
    let to = Arc::new(hom_h_at_level(&from.source, &from.target, j, &extra, threshold)?);
    if to.dim() == 0 {
        return Ok(HomClass::zero(to));
    }
    let aug_j = &to.stabilization.as_ref().expect("projective").augmentation;
    let z = lift_through(&stab.augmentation, aug_j)?;
    let rep = class.representative()?.compose(&z)?;
    HomClass::of(to, &rep)
}

/// `β∘α` in the canonical basis of `Hom(E, G)`.
///
/// Hyper classes are represented out of `E^(jα)` and `F^(jβ)`. A zero
/// product lands in [`hom_h`]`(E, G)` at its least level. Otherwise the
/// result lives at the least level `J ≥ jα, jβ` that is certified against
/// every object the lifts pass through; `α` is moved to `J`, lifted through
/// the augmentation `F^(jβ) -> F`, and composed with `β`. Because `F^(jβ)`
/// has twists near `-C(m+jβ, jβ)·jβ`, that `J` can exceed [`MAX_LEVEL`].
///
/// [`MAX_LEVEL`]: crate::MAX_LEVEL
pub fn compose_h<F: Field>(
    alpha: &HomClass<F>,
    beta: &HomClass<F>,
    threshold: &Threshold,
) -> Result<HomClass<F>, HomotopyError> {
    let (sa, sb) = (&alpha.space, &beta.space);
    if !same_object(&sa.target, &sb.source) {
        return Err(HomotopyError::NotComposable("the middle objects differ".into()));
    }
    if sa.model != sb.model {
        return Err(HomotopyError::NotComposable(format!("{} and {} classes", sa.model, sb.model)));
    }
    let (e, f, g) = (&sa.source, &sa.target, &sb.target);
    let (Some(stab_a), Some(stab_b)) = (&sa.stabilization, &sb.stabilization) else {
        // naive classes, or the affine case where the models coincide
        let space = Arc::new(match sa.model {
            Model::Naive => hom_naive(e, g)?,
            Model::Hyper => hom_h_at_level(e, g, 0, &[], threshold)?,
        });
        let rep = beta.representative()?.compose(&alpha.representative()?)?;
        return HomClass::of(space, &rep);
    };
    if alpha.is_zero() || beta.is_zero() {
        return Ok(HomClass::zero(Arc::new(hom_h(e, g, threshold)?)));
    }
    let least = hom_h(e, g, threshold)?;
    if least.dim() == 0 {
        return Ok(HomClass::zero(Arc::new(least)));
    }
    let f_stab = &stab_b.source;
    let j1 = stab_a.j.max(stab_b.j).max(required_level(e, &[f, f_stab, g], 0, threshold)?);
    let (j, extra) = if j1 == stab_a.j {
        (j1, vec![f, f_stab])
    } else {
        (j1.max(required_level(e, &[&stab_a.source, e], 0, threshold)?), vec![f, f_stab, &stab_a.source, e])
    };
    let space = Arc::new(hom_h_at_level(e, g, j, &extra, threshold)?);
    let aug_j = &space.stabilization.as_ref().expect("projective").augmentation;
    let mut a = alpha.representative()?;
    if j != stab_a.j {
        a = a.compose(&lift_through(&stab_a.augmentation, aug_j)?)?;
    }
    let lifted = lift_through(&stab_b.augmentation, &a)?;
    HomClass::of(space, &beta.representative()?.compose(&lifted)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::*;
    use crate::stabilize::stabilize_at;
    use mfcat_cohomology::ThresholdTag;
    use mfcat_mfcore::{solve_homotopy, Mode};

    fn thr(n0: i64) -> Threshold {
        Threshold { n0, tag: ThresholdTag::Exact }
    }

    #[test]
    fn affine_endomorphisms_multiply_like_scalars() {
        let (_, e) = a1();
        let t = thr(0);
        let s = Arc::new(hom_h(&e, &e, &t).unwrap());
        let times = |c: i64| HomClass::of(s.clone(), &e.identity().scale(&F::from_i64(c))).unwrap();
        let six = compose_h(&times(2), &times(3), &t).unwrap();
        assert_eq!(six.coords, times(6).coords);
        let back = compose_h(&times(1), &times(3), &t).unwrap();
        assert_eq!(back.coords, times(3).coords);
    }

    #[test]
    fn lifting_an_augmentation_through_itself_gives_the_identity_class() {
        let c = ctx(&["x0", "x1"], "x0", Mode::Projective);
        let e = mf(&c, &[-2, -1], &[-1, 0], &[&["x0", "0"], &["0", "x0"]], &[&["1", "0"], &["0", "1"]])
            .direct_sum(&mf(&c, &[0], &[0], &[&["1"]], &[&["x0"]]))
            .unwrap();
        let s1 = stabilize_at(&e, &[], 0, 1, &thr(-1)).unwrap();
        let s2 = stabilize_at(&e, &[&s1.source, &e], 0, 3, &thr(-1)).unwrap();
        let z = lift_through(&s1.augmentation, &s2.augmentation).unwrap();
        let diff = s1.augmentation.compose(&z).unwrap().add(&s2.augmentation.scale(&F::from_i64(-1))).unwrap();
        assert!(solve_homotopy(&diff).unwrap().is_some());
    }

    #[test]
    fn zero_spaces_compose_to_zero() {
        let (_, e) = p1_unit();
        let t = thr(-1);
        let s = Arc::new(hom_h(&e, &e, &t).unwrap());
        let z = HomClass::zero(s);
        let out = compose_h(&z, &z, &t).unwrap();
        assert!(out.is_zero());
        assert_eq!(out.space.dim(), 0);
        assert!(transport(&z, 2, &t).unwrap().is_zero());
    }

    #[test]
    fn models_do_not_mix() {
        let (_, e) = a1();
        let t = thr(0);
        let n = HomClass::zero(Arc::new(hom_naive(&e, &e).unwrap()));
        let h = HomClass::zero(Arc::new(hom_h(&e, &e, &t).unwrap()));
        assert!(matches!(compose_h(&n, &h, &t), Err(HomotopyError::NotComposable(_))));
    }
}
