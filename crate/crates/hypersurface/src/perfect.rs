use mfcat_algebra::{syzygies, Field, GradedRing, ModulePresentation, PolyMatrix};

use crate::{push_forward, HypersurfaceContext, HypersurfaceError};

/// Outcome of the syzygy iteration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RelPerfect {
    /// A free resolution of length `steps` was found.
    True { steps: usize },
    /// The relation matrices started repeating with period two; the pair is
    /// shown as rows of polynomial strings.
    FalseWithinBound { cycle: [Vec<Vec<String>>; 2] },
    Inconclusive,
}

impl RelPerfect {
    pub fn label(&self) -> &'static str {
        match self {
            RelPerfect::True { .. } => "true",
            RelPerfect::FalseWithinBound { .. } => "false-within-bound",
            RelPerfect::Inconclusive => "inconclusive",
        }
    }
}

/// Columns made monic at their first nonzero entry, then sorted. Twists are
/// ignored: equal matrices up to column permutation and unit scaling have
/// equal keys.
fn cycle_key<F: Field>(ring: &GradedRing<F>, m: &PolyMatrix<F>) -> (usize, Vec<Vec<String>>) {
    let mut cols: Vec<Vec<String>> = (0..m.cols())
        .map(|c| {
            let col = m.column(c);
            let lead = col.iter().find(|p| !p.is_zero()).and_then(|p| p.terms().first().map(|(_, c)| c.clone()));
            let inv = lead.map(|c| c.inv().expect("nonzero"));
            col.iter()
                .map(|p| ring.display(&inv.as_ref().map_or_else(|| p.clone(), |u| p.scale(u))))
                .collect()
        })
        .collect();
    cols.sort();
    (m.rows(), cols)
}

/// Whether `m` has a finite free resolution over `ring`, iterating syzygies at
/// most `bound` times.
pub fn is_perfect_over<F: Field>(
    ring: &GradedRing<F>,
    m: &ModulePresentation<F>,
    bound: usize,
) -> Result<RelPerfect, HypersurfaceError> {
    let m = m.eliminate_units(ring).minimize_relations(ring)?;
    if m.num_rels() == 0 {
        return Ok(RelPerfect::True { steps: 0 });
    }
    // maps[k - 1] = φ_k: F_k -> F_{k-1}
    let mut maps = vec![m.relations.clone()];
    let mut rows = m.gen_twists.clone();
    let mut cols = m.rel_twists.clone();
    for k in 1..=bound {
        let (next_cols, next) = syzygies(ring, &maps[k - 1], &rows, &cols)?;
        if next_cols.is_empty() {
            return Ok(RelPerfect::True { steps: k });
        }
        maps.push(next);
        rows = std::mem::replace(&mut cols, next_cols);
        if k >= 2 && cycle_key(ring, &maps[k]) == cycle_key(ring, &maps[k - 2]) {
            let show = |p: &PolyMatrix<F>| p.display_rows(ring);
            return Ok(RelPerfect::FalseWithinBound { cycle: [show(&maps[k - 1]), show(&maps[k])] });
        }
    }
    Ok(RelPerfect::Inconclusive)
}

/// A module over `R_Y` is relatively perfect when its pushforward to `R` is perfect.
pub fn is_relatively_perfect<F: Field>(
    h: &HypersurfaceContext<F>,
    m: &ModulePresentation<F>,
    bound: usize,
) -> Result<RelPerfect, HypersurfaceError> {
    is_perfect_over(h.ctx().ring(), &push_forward(h, m)?, bound)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coker_module;
    use crate::fixtures::*;
    use mfcat_mfcore::Mode;
    use std::sync::Arc;

    fn module(ring: &GradedRing<F>, gens: Vec<i64>, rels: Vec<i64>, m: &[&[&str]]) -> ModulePresentation<F> {
        let rows: Vec<Vec<String>> = m.iter().map(|r| r.iter().map(|s| s.to_string()).collect()).collect();
        ModulePresentation::new(ring, gens, rels, PolyMatrix::parse(ring, &rows).unwrap()).unwrap()
    }

    #[test]
    fn node_residue_field_cycles() {
        let r = Arc::new(GradedRing::<F>::parse(&["x", "y", "z"], &["x*y"]).unwrap());
        let m = module(&r, vec![0], vec![-1, -1], &[&["x", "y"]]);
        let out = is_perfect_over(&r, &m, 6).unwrap();
        let RelPerfect::FalseWithinBound { cycle } = out else { panic!("{out:?}") };
        let mut pair: Vec<Vec<Vec<String>>> = cycle.to_vec();
        pair.sort();
        assert_eq!(pair[0], vec![vec!["x", "0"], vec!["0", "y"]]);
        assert_eq!(pair[1], vec![vec!["y", "0"], vec!["0", "x"]]);
        assert_eq!(is_perfect_over(&r, &m, 2).unwrap(), RelPerfect::Inconclusive);
    }

    #[test]
    fn polynomial_rings_resolve() {
        let s = GradedRing::<F>::parse(&["x0", "x1", "x2"], &[]).unwrap();
        let free = ModulePresentation::free(3, vec![0, 2]);
        assert_eq!(is_perfect_over(&s, &free, 0).unwrap(), RelPerfect::True { steps: 0 });
        let k = module(&s, vec![0], vec![-1, -1, -1], &[&["x0", "x1", "x2"]]);
        assert_eq!(is_perfect_over(&s, &k, 5).unwrap(), RelPerfect::True { steps: 3 });
        // a unit relation collapses the module before iterating
        let unit = module(&s, vec![0, -1], vec![-1], &[&["x0"], &["1"]]);
        assert_eq!(is_perfect_over(&s, &unit, 0).unwrap(), RelPerfect::True { steps: 0 });
    }

    #[test]
    fn cokernels_on_a_regular_zero_scheme() {
        let p2 = hctx(&["x0", "x1", "x2"], "x2", Mode::Projective);
        let e = mf(&p2, &[-1, -2], &[0, -1], &[&["x2", "x0*x2"], &["0", "x2"]], &[&["1", "-x0"], &["0", "1"]]);
        let m = coker_module(&p2, &e).unwrap();
        assert!(matches!(is_relatively_perfect(&p2, &m, 4).unwrap(), RelPerfect::True { steps } if steps <= 4));
    }
}
