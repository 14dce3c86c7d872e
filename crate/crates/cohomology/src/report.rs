use std::collections::BTreeMap;
use std::ops::RangeInclusive;
use std::sync::Arc;

use mfcat_algebra::{Field, GradedRing};
use mfcat_linalg::par;

use crate::{cech_cohomology, CohomologyError, Schedule, Stable};

/// `dim H^p(X, O(n))` over a grid of `(p, n)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CohomologyReport {
    pub entries: BTreeMap<(usize, i64), Stable>,
}

impl CohomologyReport {
    pub fn get(&self, p: usize, n: i64) -> Option<Stable> {
        self.entries.get(&(p, n)).copied()
    }

    pub fn all_stable(&self) -> bool {
        self.entries.values().all(|s| s.stable)
    }

    /// Rows `p`, columns `n`; unstable entries carry a `?`.
    pub fn table(&self) -> String {
        let ns: Vec<i64> = {
            let mut v: Vec<i64> = self.entries.keys().map(|&(_, n)| n).collect();
            v.sort_unstable();
            v.dedup();
            v
        };
        let ps: Vec<usize> = {
            let mut v: Vec<usize> = self.entries.keys().map(|&(p, _)| p).collect();
            v.sort_unstable();
            v.dedup();
            v
        };
        let mut cells: Vec<Vec<String>> = vec![];
        let mut head = vec!["p\\n".to_string()];
        head.extend(ns.iter().map(|n| n.to_string()));
        cells.push(head);
        for &p in &ps {
            let mut row = vec![p.to_string()];
            for &n in &ns {
                row.push(self.get(p, n).map(|s| s.to_string()).unwrap_or_default());
            }
            cells.push(row);
        }
        let widths: Vec<usize> =
            (0..cells[0].len()).map(|c| cells.iter().map(|r| r[c].chars().count()).max().unwrap_or(0)).collect();
        cells
            .iter()
            .map(|r| {
                r.iter()
                    .zip(&widths)
                    .map(|(s, w)| format!("{s:>w$}"))
                    .collect::<Vec<_>>()
                    .join("  ")
            })
            .collect::<Vec<_>>()
            .join("\n")
    }
}

/// Computes the grid in parallel.
pub fn cohomology_report<F: Field>(
    ring: &Arc<GradedRing<F>>,
    ps: RangeInclusive<usize>,
    ns: RangeInclusive<i64>,
    schedule: &Schedule,
) -> Result<CohomologyReport, CohomologyError> {
    let grid: Vec<(usize, i64)> = ps.flat_map(|p| ns.clone().map(move |n| (p, n))).collect();
    let vals = par::par_map(&grid, |&(p, n)| cech_cohomology(ring, n, p, schedule));
    let mut entries = BTreeMap::new();
    for (k, v) in grid.into_iter().zip(vals) {
        entries.insert(k, v?);
    }
    Ok(CohomologyReport { entries })
}
