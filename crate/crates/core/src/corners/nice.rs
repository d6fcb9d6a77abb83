use std::collections::BTreeSet;

use serde::Serialize;

use crate::corners::{intersections, CornersModel};
use crate::delta::{SimplexRef, Subcomplex};
use crate::index_set::IndexSet;

const LISTED: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum NiceViolation {
    /// A component of an intersection has the wrong dimension for the
    /// number of facets containing it.
    Dimension { strata: IndexSet, found: usize, expected: usize },
    /// The facets do not cover exactly the boundary.
    Boundary { uncovered: Vec<SimplexRef>, outside: Vec<SimplexRef> },
    /// A simplex in only one top simplex lies in the wrong number of facets.
    Corner { simplex: SimplexRef, strata: IndexSet, expected: usize },
}

#[derive(Clone, Debug, Serialize)]
pub struct NiceReport {
    pub ok: bool,
    pub strata_checked: usize,
    pub violations: Vec<NiceViolation>,
}

/// Combinatorial niceness check.
///
/// Every component of every nonempty `F_∩S` must have dimension
/// `dim Q - |I|`, where `I` is the set of facets containing it; the facets
/// must cover exactly the simplices of the combinatorial boundary; and a
/// simplex of dimension `d` lying in exactly one top simplex must lie in
/// exactly `dim Q - d` facets. The last rule rejects a boundary that hides
/// a corner inside a single facet. It can misfire on a boundary "ear" (a
/// top simplex meeting the boundary in two codimension-one faces at a
/// smooth point), so bundled triangulations avoid ears.
pub fn validate_nice(q: &CornersModel) -> NiceReport {
    let x = q.complex();
    let n = q.dim();
    let mut violations = Vec::new();
    let mut strata_checked = 0;
    let mut reported: BTreeSet<(IndexSet, usize)> = BTreeSet::new();

    for (_, inter) in intersections(x, q.facets()) {
        for c in inter.components(x) {
            strata_checked += 1;
            let strata = q.strata_index_of(&c);
            let found = c.dim().expect("nonempty component");
            let expected = n.saturating_sub(strata.len());
            if (found != expected || strata.len() > n) && reported.insert((strata, found)) {
                violations.push(NiceViolation::Dimension { strata, found, expected });
            }
        }
    }

    let boundary = q.combinatorial_boundary();
    let covered = q.facet_union(IndexSet::all(q.m())).expect("all facets");
    if boundary != covered {
        let uncovered = boundary.simplices().into_iter().filter(|&(d, i)| !covered.contains(d, i)).collect::<Vec<_>>();
        let outside = covered.simplices().into_iter().filter(|&(d, i)| !boundary.contains(d, i)).collect::<Vec<_>>();
        violations.push(NiceViolation::Boundary {
            uncovered: uncovered.into_iter().take(LISTED).collect(),
            outside: outside.into_iter().take(LISTED).collect(),
        });
    }

    // number of distinct top simplices containing each simplex
    let mut tops: Vec<Vec<usize>> = (0..x.num_dims()).map(|d| vec![0; x.count(d)]).collect();
    for t in 0..x.count(n) {
        let closure = Subcomplex::closure(x, &[(n, t)]).expect("in range");
        for (d, i) in closure.simplices() {
            tops[d][i] += 1;
        }
    }
    for (d, per_dim) in tops.iter().enumerate().take(n) {
        for (i, &count) in per_dim.iter().enumerate() {
            if count == 1 {
                let strata = q.strata_index(d, i);
                if strata.len() != n - d {
                    violations.push(NiceViolation::Corner { simplex: (d, i), strata, expected: n - d });
                }
            }
        }
    }

    NiceReport { ok: violations.is_empty(), strata_checked, violations }
}

impl NiceReport {
    pub fn summary(&self) -> String {
        if self.ok {
            return format!("nice: {} strata checked", self.strata_checked);
        }
        let mut lines = vec![format!("not nice: {} violation(s)", self.violations.len())];
        for v in &self.violations {
            lines.push(match v {
                NiceViolation::Dimension { strata, found, expected } => {
                    format!("  stratum {strata}: component of dimension {found}, expected {expected}")
                }
                NiceViolation::Boundary { uncovered, outside } => {
                    format!("  facets do not match the boundary: uncovered {uncovered:?}, outside {outside:?}")
                }
                NiceViolation::Corner { simplex, strata, expected } => {
                    format!("  simplex {simplex:?} lies in facets {strata} but needs {expected} facets (corner)")
                }
            });
        }
        lines.join("\n")
    }
}
