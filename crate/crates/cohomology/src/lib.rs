//! Truncated Čech cohomology on `X = Proj R` for the standard cover by the
//! opens `x_i ≠ 0`, and hypercohomology of twisted periodic complexes.
//!
//! Sections on `U_I` are truncated to Laurent expressions whose inverted
//! variables have exponent at least `-B`. Results come with a stability flag:
//! see [`Schedule`].

mod dense;
mod report;
mod rows;
mod schedule;
mod simplex;
mod threshold;
mod transfer;

use std::sync::Arc;

use thiserror::Error;

use mfcat_algebra::{Field, GradedRing};
use mfcat_linalg::rank;
use mfcat_mfcore::{sections_dim, sections_matrix, Mode, TwistedPeriodicComplex};

pub use report::{cohomology_report, CohomologyReport};
pub use rows::{Rows, Single};
pub use schedule::{Schedule, Stable, DEFAULT_MAX, DEFAULT_START};
pub use threshold::{vanishing_threshold, Threshold, ThresholdTag};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CohomologyError {
    #[error("the truncation bound must be at least 1")]
    ZeroBound,
    #[error("Proj of a ring in {0} variable(s) has no standard cover of positive dimension")]
    TooFewVariables(usize),
    #[error("vanishing threshold scan inconclusive ({0}); supply an explicit threshold")]
    Inconclusive(String),
}

/// `dim H^p(P^m, O(n))`.
pub fn h_projective_space(m: usize, n: i64, p: usize) -> u128 {
    if p == 0 && n >= 0 {
        binomial(n as u128 + m as u128, m as u128)
    } else if p == m && n <= -(m as i64) - 1 {
        binomial((-n - 1) as u128, m as u128)
    } else {
        0
    }
}

fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) / (i + 1))
}

/// The standard cover of `Proj R` at a fixed truncation bound.
#[derive(Clone, Debug)]
pub struct CechSetup<F: Field> {
    ring: Arc<GradedRing<F>>,
    bound: u32,
}

impl<F: Field> CechSetup<F> {
    pub fn new(ring: Arc<GradedRing<F>>, bound: u32) -> Result<Self, CohomologyError> {
        if bound == 0 {
            return Err(CohomologyError::ZeroBound);
        }
        if ring.nvars() < 2 {
            return Err(CohomologyError::TooFewVariables(ring.nvars()));
        }
        Ok(CechSetup { ring, bound })
    }

    pub fn ring(&self) -> &GradedRing<F> {
        &self.ring
    }

    pub fn bound(&self) -> u32 {
        self.bound
    }

    /// `m` for `X ⊆ P^m`.
    pub fn dim_ambient(&self) -> usize {
        self.ring.nvars() - 1
    }

    /// The opens, as bitmasks of inverted variables.
    pub fn cover(&self) -> Vec<u32> {
        (0..self.ring.nvars()).map(|i| 1 << i).collect()
    }

    /// `dim H^p` of the truncated Čech complex of `O(n)`.
    pub fn h(&self, n: i64, p: usize) -> usize {
        let nv = self.ring.nvars();
        if p >= nv {
            return 0;
        }
        if self.ring.is_polynomial() {
            polynomial_h::<F>(nv, n, p, self.bound)
        } else {
            dense::total_dim(&self.ring, &Single(n), p as i64, self.bound)
        }
    }

    /// `dim ℍ^q` of the truncated Čech total complex of a complex of sums of
    /// line bundles.
    pub fn hyper(&self, rows: &dyn Rows<F>, q: i64) -> usize {
        if self.ring.is_polynomial() {
            transfer::total_dim(rows, self.ring.nvars(), q, self.bound)
        } else {
            dense::total_dim(&self.ring, rows, q, self.bound)
        }
    }

    /// Same as [`CechSetup::hyper`] but always through the dense model.
    pub fn hyper_dense(&self, rows: &dyn Rows<F>, q: i64) -> usize {
        dense::total_dim(&self.ring, rows, q, self.bound)
    }

    /// Same as [`CechSetup::h`] but always through the dense model.
    pub fn h_dense(&self, n: i64, p: usize) -> usize {
        dense::total_dim(&self.ring, &Single(n), p as i64, self.bound)
    }
}

/// Over a polynomial ring the truncated complex splits by multidegree `a`;
/// the summand only depends on the support of the negative exponents.
fn polynomial_h<F: Field>(nv: usize, n: i64, p: usize, b: u32) -> usize {
    let mut total = 0u128;
    for support in 0..=simplex::full(nv) {
        let h = simplex::support_cohomology::<F>(nv, support, p);
        if h > 0 {
            total += h as u128 * count_support(nv, support, n, b);
        }
    }
    total as usize
}

/// Number of `a` with `Σ a = n`, `a_i ∈ [-b, -1]` on `support` and `a_i ≥ 0` elsewhere.
fn count_support(nv: usize, support: u32, n: i64, b: u32) -> u128 {
    let s = support.count_ones() as usize;
    let k = nv - s;
    let b = b as usize;
    // ways[u] = compositions of u into s parts in [1, b]
    let mut ways = vec![0u128; s * b + 1];
    ways[0] = 1;
    for _ in 0..s {
        let mut next = vec![0u128; s * b + 1];
        for (u, &w) in ways.iter().enumerate() {
            if w == 0 {
                continue;
            }
            for e in 1..=b {
                if u + e < next.len() {
                    next[u + e] += w;
                }
            }
        }
        ways = next;
    }
    let mut total = 0u128;
    for (u, &w) in ways.iter().enumerate() {
        if w == 0 {
            continue;
        }
        let r = n + u as i64;
        if r < 0 {
            continue;
        }
        let c = if k == 0 {
            u128::from(r == 0)
        } else {
            binomial(r as u128 + k as u128 - 1, k as u128 - 1)
        };
        total += w * c;
    }
    total
}

/// `dim H^p(X, O(n))` along the truncation schedule.
pub fn cech_cohomology<F: Field>(
    ring: &Arc<GradedRing<F>>,
    n: i64,
    p: usize,
    schedule: &Schedule,
) -> Result<Stable, CohomologyError> {
    CechSetup::new(ring.clone(), 1)?;
    Ok(schedule.run(|b| CechSetup { ring: ring.clone(), bound: b }.h(n, p)))
}

/// `dim ℍ^q` of a twisted periodic complex along the truncation schedule.
///
/// In affine-graded mode the cover is trivial and this is the cohomology of
/// the degree-0 sections, with no truncation involved.
pub fn cech_hypercohomology<F: Field>(
    c: &TwistedPeriodicComplex<F>,
    q: i64,
    schedule: &Schedule,
) -> Result<Stable, CohomologyError> {
    let ring = c.ctx.ring_arc();
    if c.ctx.mode() == Mode::AffineGraded {
        return Ok(Stable::exact(affine_h(c, q)));
    }
    CechSetup::new(ring.clone(), 1)?;
    Ok(schedule.run(|b| CechSetup { ring: ring.clone(), bound: b }.hyper(c, q)))
}

fn affine_h<F: Field>(c: &TwistedPeriodicComplex<F>, q: i64) -> usize {
    let ring = c.ctx.ring();
    let dim = sections_dim(ring, &c.term(q), 0);
    if dim == 0 {
        return 0;
    }
    let out = rank(&sections_matrix(ring, &c.differential(q), 0));
    let inc = rank(&sections_matrix(ring, &c.differential(q - 1), 0));
    dim - out - inc
}
