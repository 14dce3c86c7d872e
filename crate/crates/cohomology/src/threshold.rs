use std::fmt;
use std::sync::Arc;

use mfcat_algebra::{Field, GradedRing};

use crate::{cohomology_report, CohomologyError, Schedule};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ThresholdTag {
    Exact,
    Scanned,
    Override,
}

impl fmt::Display for ThresholdTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ThresholdTag::Exact => "exact",
            ThresholdTag::Scanned => "scanned",
            ThresholdTag::Override => "override",
        })
    }
}

/// `n0` with `H^p(X, O(n)) = 0` for `p > 0`, `n >= n0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Threshold {
    pub n0: i64,
    pub tag: ThresholdTag,
}

/// Exact for projective space; otherwise the least `n0` such that every
/// scanned `H^p(O(n))`, `p ≥ 1`, `n0 ≤ n ≤ n_hi`, vanishes and is stable.
/// The scan is evidence, not proof, which is why an override is accepted.
pub fn vanishing_threshold<F: Field>(
    ring: &Arc<GradedRing<F>>,
    user: Option<i64>,
    schedule: &Schedule,
) -> Result<Threshold, CohomologyError> {
    if let Some(n0) = user {
        return Ok(Threshold { n0, tag: ThresholdTag::Override });
    }
    let nv = ring.nvars();
    if nv < 2 {
        return Err(CohomologyError::TooFewVariables(nv));
    }
    let m = (nv - 1) as i64;
    if ring.is_polynomial() {
        return Ok(Threshold { n0: -m, tag: ThresholdTag::Exact });
    }
    let deg = ring.max_generator_degree() as i64;
    let (lo, hi) = (-(m + 1) * deg - 1, m * deg + 1);
    let report = cohomology_report(ring, 1..=(nv - 1), lo..=hi, schedule)?;
    let mut n0 = lo;
    for n in (lo..=hi).rev() {
        let col: Vec<_> = (1..nv).map(|p| report.get(p, n).expect("scanned")).collect();
        if let Some(bad) = col.iter().position(|s| !s.stable) {
            return Err(CohomologyError::Inconclusive(format!("H^{}(O({n})) did not stabilize", bad + 1)));
        }
        if col.iter().any(|s| s.dim > 0) {
            n0 = n + 1;
            break;
        }
    }
    if n0 > hi {
        return Err(CohomologyError::Inconclusive(format!("higher cohomology persists up to O({hi})")));
    }
    Ok(Threshold { n0, tag: ThresholdTag::Scanned })
}
