//! Replacing `E` by `E^(j) = Tot(P(j) ⊗ E)`, with `j` chosen so that every
//! term of `Hom(E^(j), F)` that can feed `ℍ^0` has vanishing higher
//! cohomology.

use std::collections::BTreeSet;

use mfcat_algebra::Field;
use mfcat_cohomology::Threshold;
use mfcat_mfcore::{
    koszul_augmentation, koszul_truncated, tensor_mf, tot, MatrixFactorization, Mode, StrictMorphism,
};

use crate::HomotopyError;

/// Levels above this are never tried; `P(j)` has `2^C(m+j, j) - 1` summands.
pub const MAX_LEVEL: u32 = 12;

/// Evidence that `Hom(E^(j), F)` has no higher cohomology in the rows that
/// matter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilizationCertificate {
    pub j: u32,
    /// `C(m + j, j)`, the number of degree-`j` monomials.
    pub k: usize,
    /// Distinct twists of `C^q` for each inspected row `q`.
    pub inventory: Vec<(i64, Vec<i64>)>,
    pub threshold: Threshold,
    /// Least inventory twist; `None` when the inventory is empty.
    pub min_twist: Option<i64>,
}

impl StabilizationCertificate {
    /// Recomputes the witness from the stored inventory.
    pub fn recheck(&self) -> bool {
        let min = self.inventory.iter().flat_map(|(_, t)| t.iter().copied()).min();
        min == self.min_twist && min.map_or(true, |m| m >= self.threshold.n0)
    }
}

/// A stabilized source together with its augmentation `E^(j) -> E`.
#[derive(Clone, Debug)]
pub struct Stabilized<F: Field> {
    pub j: u32,
    pub source: MatrixFactorization<F>,
    pub augmentation: StrictMorphism<F>,
    pub certificate: StabilizationCertificate,
}

fn binomial(n: usize, k: usize) -> usize {
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// `E^q` of the unfolded factorization.
fn unfolded<F: Field>(e: &MatrixFactorization<F>, q: i64) -> Vec<i64> {
    let d = e.d();
    if q.rem_euclid(2) == 0 {
        e.big0().twisted(q.div_euclid(2) * d).twists().to_vec()
    } else {
        e.big1().twisted((q + 1).div_euclid(2) * d).twists().to_vec()
    }
}

/// Distinct twists of `(E^(j)_1, E^(j)_0)`, read off the totalization without
/// building any matrices. `P(j)` has `O(-lj)^{C(k, l)}` in degree `1 - l`.
pub fn stabilized_twists<F: Field>(e: &MatrixFactorization<F>, k: usize, j: u32) -> (Vec<i64>, Vec<i64>) {
    let part = |n: i64| -> Vec<i64> {
        let mut out = BTreeSet::new();
        for l in 1..=k as i64 {
            let p = 1 - l;
            for a in unfolded(e, n - p) {
                out.insert(a - l * j as i64);
            }
        }
        out.into_iter().collect()
    };
    (part(-1), part(0))
}

fn hom_twists(a: &[i64], b: &[i64], shift: i64, out: &mut BTreeSet<i64>) {
    for y in b {
        for x in a {
            out.insert(y + shift - x);
        }
    }
}

/// Rows `q = lo..=hi` of the twist inventory of `Hom(E^(j), T)` over all targets.
pub fn inventory<F: Field>(
    e: &MatrixFactorization<F>,
    targets: &[&MatrixFactorization<F>],
    k: usize,
    j: u32,
    rows: std::ops::RangeInclusive<i64>,
) -> Vec<(i64, Vec<i64>)> {
    let d = e.d();
    let (s1, s0) = stabilized_twists(e, k, j);
    rows.map(|q| {
        let mut out = BTreeSet::new();
        for t in targets {
            let (t1, t0) = (t.big1().twists(), t.big0().twists());
            if q.rem_euclid(2) == 0 {
                let s = q.div_euclid(2) * d;
                hom_twists(&s0, t0, s, &mut out);
                hom_twists(&s1, t1, s, &mut out);
            } else {
                let s = (q + 1).div_euclid(2) * d;
                hom_twists(&s0, t1, s, &mut out);
                hom_twists(&s1, t0, s - d, &mut out);
            }
        }
        (q, out.into_iter().collect())
    })
    .collect()
}

fn dim_ambient<F: Field>(e: &MatrixFactorization<F>) -> Result<usize, HomotopyError> {
    match e.ctx.mode() {
        Mode::Projective => Ok(e.ctx.ring().nvars() - 1),
        Mode::AffineGraded => Err(HomotopyError::Affine),
    }
}

/// The certificate for level `j` against `targets`, rows `M - m - 1 ..= M`.
fn certificate<F: Field>(
    e: &MatrixFactorization<F>,
    targets: &[&MatrixFactorization<F>],
    row: i64,
    j: u32,
    threshold: &Threshold,
) -> Result<StabilizationCertificate, HomotopyError> {
    let m = dim_ambient(e)?;
    let k = binomial(m + j as usize, j as usize);
    let inv = if e.is_zero_object() { vec![] } else { inventory(e, targets, k, j, row - m as i64 - 1..=row) };
    let min_twist = inv.iter().flat_map(|(_, t)| t.iter().copied()).min();
    Ok(StabilizationCertificate { j, k, inventory: inv, threshold: *threshold, min_twist })
}

/// Least `j ≥ 1` whose certificate against every target holds.
///
/// Twists of `C^q` only grow with `q`, so the inspected rows bound all rows
/// above them.
pub fn required_level<F: Field>(
    e: &MatrixFactorization<F>,
    targets: &[&MatrixFactorization<F>],
    row: i64,
    threshold: &Threshold,
) -> Result<u32, HomotopyError> {
    for j in 1..=MAX_LEVEL {
        if certificate(e, targets, row, j, threshold)?.recheck() {
            return Ok(j);
        }
    }
    Err(HomotopyError::NoLevel(MAX_LEVEL))
}

/// `E^(j)` and its augmentation, certified against `targets`.
pub fn stabilize_at<F: Field>(
    e: &MatrixFactorization<F>,
    targets: &[&MatrixFactorization<F>],
    row: i64,
    j: u32,
    threshold: &Threshold,
) -> Result<Stabilized<F>, HomotopyError> {
    let certificate = certificate(e, targets, row, j, threshold)?;
    if !certificate.recheck() {
        return Err(HomotopyError::Uncertified {
            j,
            min: certificate.min_twist.unwrap_or(i64::MAX),
            n0: threshold.n0,
        });
    }
    if e.is_zero_object() {
        return Ok(Stabilized { j, source: e.clone(), augmentation: e.identity(), certificate });
    }
    let m = dim_ambient(e)?;
    let koszul = koszul_truncated(e.ctx.ring(), m, j)?;
    let augmentation = koszul_augmentation(&koszul, e)?;
    let source = augmentation.source.clone();
    debug_assert!(crate::same_object(&source, &tot(&tensor_mf(&koszul.complex, e)?)?));
    Ok(Stabilized { j, source, augmentation, certificate })
}

/// `E' = E^(j)` for the least certified `j` against `F`.
pub fn stabilize<F: Field>(
    e: &MatrixFactorization<F>,
    f: &MatrixFactorization<F>,
    row: i64,
    threshold: &Threshold,
) -> Result<Stabilized<F>, HomotopyError> {
    let j = required_level(e, &[f], row, threshold)?;
    stabilize_at(e, &[f], row, j, threshold)
}

/// Sorted twists of a sum, for comparing with [`stabilized_twists`].
#[cfg(test)]
fn distinct(t: &mfcat_mfcore::TwistSum) -> Vec<i64> {
    t.twists().iter().copied().collect::<BTreeSet<_>>().into_iter().collect()
}
