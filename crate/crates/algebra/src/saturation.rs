//! Irrelevant-ideal powers, saturation by a variable and radical membership.

use mfcat_linalg::Field;

use crate::groebner::{groebner_basis, reduce_poly};
use crate::poly::Poly;
use crate::ring::GradedRing;
use crate::AlgebraError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IrrelevantPower {
    /// The least `N` with `(x_0..x_m)^N ⊆ J`.
    Yes(u32),
    NoWithinBound,
}

/// `2 · nvars · (maxdeg + 1)`.
pub fn default_saturation_bound(nvars: usize, max_degree: u32) -> u32 {
    2 * nvars as u32 * (max_degree + 1)
}

fn check_homogeneous<F: Field>(ring: &GradedRing<F>, j: &[Poly<F>]) -> Result<(), AlgebraError> {
    for p in j {
        if !p.is_homogeneous() {
            return Err(AlgebraError::NotHomogeneous(ring.display(p)));
        }
    }
    Ok(())
}

/// Searches `N = 1..=bound` for `(x_0..x_m)^N ⊆ J + I`.
pub fn contains_irrelevant_power<F: Field>(
    ring: &GradedRing<F>,
    j: &[Poly<F>],
    bound: u32,
) -> Result<IrrelevantPower, AlgebraError> {
    check_homogeneous(ring, j)?;
    if j.iter().any(|p| p.as_constant().map_or(false, |c| !c.is_zero())) {
        return Ok(if bound >= 1 {
            IrrelevantPower::Yes(1)
        } else {
            IrrelevantPower::NoWithinBound
        });
    }
    let q = ring.quotient(j)?;
    for n in 1..=bound {
        if q.dim(n as i64) == 0 {
            return Ok(IrrelevantPower::Yes(n));
        }
    }
    Ok(IrrelevantPower::NoWithinBound)
}

/// Gröbner basis, in the ambient polynomial ring, of `(I + J) : x_i^∞`.
///
/// Moves `x_i` to the last position, where grevlex lets the saturation be
/// read off a Gröbner basis by dividing out powers of that variable.
pub fn saturation_by_variable<F: Field>(
    ring: &GradedRing<F>,
    j: &[Poly<F>],
    i: usize,
) -> Result<Vec<Poly<F>>, AlgebraError> {
    check_homogeneous(ring, j)?;
    let n = ring.nvars();
    let mut perm: Vec<usize> = (0..n).collect();
    perm.swap(i, n - 1);
    let gens: Vec<Poly<F>> = ring
        .gb()
        .iter()
        .chain(j.iter())
        .filter(|p| !p.is_zero())
        .map(|p| p.permuted(&perm))
        .collect();
    let stripped: Vec<Poly<F>> = groebner_basis(&gens)
        .iter()
        .map(|p| p.strip_variable(n - 1).permuted(&perm))
        .collect();
    Ok(groebner_basis(&stripped))
}

/// Whether `f ∈ (I + J) : x_i^∞`.
pub fn in_saturation<F: Field>(
    ring: &GradedRing<F>,
    f: &Poly<F>,
    j: &[Poly<F>],
    i: usize,
) -> Result<bool, AlgebraError> {
    let sat = saturation_by_variable(ring, j, i)?;
    Ok(reduce_poly(f, &sat).is_zero())
}

/// Whether `x_i ∈ √(I + J)`, i.e. `(I + J) : x_i^∞` is the unit ideal.
pub fn variable_in_radical<F: Field>(
    ring: &GradedRing<F>,
    j: &[Poly<F>],
    i: usize,
) -> Result<bool, AlgebraError> {
    let sat = saturation_by_variable(ring, j, i)?;
    Ok(sat.iter().any(|p| p.as_constant().map_or(false, |c| !c.is_zero())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use mfcat_linalg::F32003;

    fn polys(r: &GradedRing<F32003>, v: &[&str]) -> Vec<Poly<F32003>> {
        v.iter().map(|s| r.parse_poly(s).unwrap()).collect()
    }

    #[test]
    fn irrelevant_power_examples() {
        let r = GradedRing::<F32003>::polynomial(&["x0", "x1"]);
        assert_eq!(
            contains_irrelevant_power(&r, &polys(&r, &["x0", "x1"]), 1).unwrap(),
            IrrelevantPower::Yes(1)
        );
        assert_eq!(
            contains_irrelevant_power(&r, &polys(&r, &["x0"]), 10).unwrap(),
            IrrelevantPower::NoWithinBound
        );
        let r = GradedRing::<F32003>::polynomial(&["x", "y"]);
        assert_eq!(
            contains_irrelevant_power(&r, &polys(&r, &["x^2", "x*y", "y^2"]), 3).unwrap(),
            IrrelevantPower::Yes(2)
        );
    }

    #[test]
    fn default_bound() {
        assert_eq!(default_saturation_bound(3, 2), 18);
    }

    #[test]
    fn saturation_removes_embedded_component() {
        let r = GradedRing::<F32003>::polynomial(&["x", "y", "z"]);
        // (x^2, x*y) = (x) ∩ (x^2, y); saturating by y leaves (x)
        let sat = saturation_by_variable(&r, &polys(&r, &["x^2", "x*y"]), 1).unwrap();
        assert_eq!(sat, polys(&r, &["x"]));
        assert!(in_saturation(&r, &r.var(0), &polys(&r, &["x^2", "x*y"]), 1).unwrap());
        assert!(!in_saturation(&r, &r.var(0), &polys(&r, &["x^2", "x*y"]), 2).unwrap());
    }

    #[test]
    fn radical_membership_of_a_variable() {
        let r = GradedRing::<F32003>::polynomial(&["x", "y"]);
        assert!(variable_in_radical(&r, &polys(&r, &["x^3", "y^2"]), 0).unwrap());
        assert!(!variable_in_radical(&r, &polys(&r, &["x*y"]), 0).unwrap());
        let node = GradedRing::<F32003>::parse(&["x", "y"], &["x^2"]).unwrap();
        assert!(variable_in_radical(&node, &[], 0).unwrap());
    }
}
