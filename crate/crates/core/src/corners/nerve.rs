use std::collections::BTreeSet;

use serde::Serialize;

use crate::corners::intersections;
use crate::delta::{DeltaComplex, Subcomplex};
use crate::index_set::IndexSet;

/// Abstract simplicial complex on `k` vertices: `S` is a face iff the
/// corresponding intersection is nonempty.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Nerve {
    pub vertices: usize,
    /// Nonempty faces, ordered by size then bitmask.
    pub faces: Vec<IndexSet>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub warning: Option<String>,
}

impl Nerve {
    pub fn of_sets(x: &DeltaComplex, sets: &[Subcomplex]) -> Self {
        let found: BTreeSet<(usize, IndexSet)> =
            intersections(x, sets).into_iter().map(|(s, _)| (s.len(), s)).collect();
        let warning = sets.is_empty().then(|| "empty boundary: the nerve is empty".to_string());
        Nerve { vertices: sets.len(), faces: found.into_iter().map(|(_, s)| s).collect(), warning }
    }

    pub fn contains(&self, s: IndexSet) -> bool {
        s.is_empty() || self.faces.binary_search_by_key(&(s.len(), s), |f| (f.len(), *f)).is_ok()
    }

    /// All faces including the empty one.
    pub fn faces_with_empty(&self) -> impl Iterator<Item = IndexSet> + '_ {
        std::iter::once(IndexSet::EMPTY).chain(self.faces.iter().copied())
    }

    pub fn dim(&self) -> Option<usize> {
        self.faces.last().map(|f| f.len() - 1)
    }

    /// `f_{-1}, f_0, f_1, ..`.
    pub fn f_vector(&self) -> Vec<usize> {
        let top = self.faces.last().map_or(0, |f| f.len());
        (0..=top).map(|d| if d == 0 { 1 } else { self.faces.iter().filter(|f| f.len() == d).count() }).collect()
    }

    /// Maximal faces.
    pub fn facets(&self) -> Vec<IndexSet> {
        self.faces.iter().copied().filter(|&f| !self.faces.iter().any(|&g| g != f && f.is_subset(g))).collect()
    }
}
