use crate::corners::{intersection_of, union_of, CornersError, CornersModel, Nerve};
use crate::delta::{DeltaComplex, Subcomplex};
use crate::index_set::IndexSet;

/// A partition `{J_1, .., J_k}` of the facet indices. Block order is the
/// panel order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Partition {
    m: usize,
    blocks: Vec<IndexSet>,
}

impl Partition {
    pub fn new(blocks: Vec<IndexSet>, m: usize) -> Result<Self, CornersError> {
        let mut seen = IndexSet::EMPTY;
        for (i, &b) in blocks.iter().enumerate() {
            if b.is_empty() {
                return Err(CornersError::BadPartition(format!("block {} is empty", i + 1)));
            }
            if !b.is_subset(IndexSet::all(m)) {
                return Err(CornersError::BadPartition(format!("block {} = {b} mentions a facet beyond {m}", i + 1)));
            }
            if !seen.intersection(b).is_empty() {
                return Err(CornersError::BadPartition(format!("block {} = {b} overlaps an earlier block", i + 1)));
            }
            seen = seen.union(b);
        }
        if seen != IndexSet::all(m) {
            let missing = IndexSet::all(m).difference(seen);
            return Err(CornersError::BadPartition(format!("facets {missing} are not covered")));
        }
        Ok(Partition { m, blocks })
    }

    /// `{{1}, .., {m}}`.
    pub fn trivial(m: usize) -> Self {
        Partition { m, blocks: (0..m).map(IndexSet::singleton).collect() }
    }

    /// The single block `[m]` (empty when `m = 0`).
    pub fn whole(m: usize) -> Self {
        Partition { m, blocks: if m == 0 { Vec::new() } else { vec![IndexSet::all(m)] } }
    }

    pub fn from_one_based(blocks: &[Vec<usize>], m: usize) -> Result<Self, CornersError> {
        let sets = blocks
            .iter()
            .map(|b| {
                if b.iter().any(|&i| i == 0 || i > m) {
                    return Err(CornersError::BadPartition(format!("block {b:?} has an index outside 1..={m}")));
                }
                let s = IndexSet::from_one_based(b.iter().copied()).expect("checked range");
                if s.len() != b.len() {
                    return Err(CornersError::BadPartition(format!("block {b:?} repeats an index")));
                }
                Ok(s)
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(sets, m)
    }

    /// Parse `"1,3|2,4"`.
    pub fn parse(s: &str, m: usize) -> Result<Self, CornersError> {
        let blocks = s
            .split('|')
            .map(|b| {
                b.split(',')
                    .map(|t| {
                        t.trim().parse::<usize>().map_err(|_| CornersError::BadPartition(format!("bad index {t:?}")))
                    })
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_one_based(&blocks, m)
    }

    pub fn one_based(&self) -> Vec<Vec<usize>> {
        self.blocks.iter().map(|b| b.one_based()).collect()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn k(&self) -> usize {
        self.blocks.len()
    }

    pub fn blocks(&self) -> &[IndexSet] {
        &self.blocks
    }

    pub fn is_trivial(&self) -> bool {
        self.blocks.iter().all(|b| b.len() == 1)
    }

    /// `∪_{i ∈ ω} J_i`.
    pub fn facets_of(&self, omega: IndexSet) -> IndexSet {
        omega.iter().fold(IndexSet::EMPTY, |acc, i| acc.union(self.blocks[i]))
    }
}

impl std::fmt::Display for Partition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> =
            self.one_based().iter().map(|b| b.iter().map(usize::to_string).collect::<Vec<_>>().join(",")).collect();
        write!(f, "{}", parts.join("|"))
    }
}

/// Panels `F_{J_1}, .., F_{J_k}` of a partition.
#[derive(Clone, Debug)]
pub struct PanelStructure<'a> {
    model: &'a CornersModel,
    partition: Partition,
    panels: Vec<Subcomplex>,
}

impl<'a> PanelStructure<'a> {
    pub fn new(model: &'a CornersModel, partition: Partition) -> Result<Self, CornersError> {
        if partition.m() != model.m() {
            return Err(CornersError::BadPartition(format!(
                "partition of {} indices for a model with {} facets",
                partition.m(),
                model.m()
            )));
        }
        let panels = partition.blocks().iter().map(|&b| model.facet_union(b).expect("validated partition")).collect();
        Ok(PanelStructure { model, partition, panels })
    }

    pub fn model(&self) -> &'a CornersModel {
        self.model
    }

    pub fn complex(&self) -> &'a DeltaComplex {
        self.model.complex()
    }

    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    pub fn k(&self) -> usize {
        self.panels.len()
    }

    pub fn panel(&self, i: usize) -> &Subcomplex {
        &self.panels[i]
    }

    pub fn panels(&self) -> &[Subcomplex] {
        &self.panels
    }

    fn check(&self, omega: IndexSet) -> Result<(), CornersError> {
        if !omega.is_subset(IndexSet::all(self.k())) {
            return Err(CornersError::IndexOutOfRange { set: omega, k: self.k() });
        }
        Ok(())
    }

    /// `F_ω = ∪_{i ∈ ω} F_{J_i}`.
    pub fn union(&self, omega: IndexSet) -> Result<Subcomplex, CornersError> {
        self.check(omega)?;
        Ok(union_of(self.complex(), &self.panels, omega))
    }

    /// `F_∩ω = ∩_{i ∈ ω} F_{J_i}`, with `F_∩∅ = Q`.
    pub fn intersection(&self, omega: IndexSet) -> Result<Subcomplex, CornersError> {
        self.check(omega)?;
        Ok(intersection_of(self.complex(), &self.panels, omega))
    }

    /// Panels containing the simplex.
    pub fn strata_index(&self, n: usize, i: usize) -> IndexSet {
        IndexSet::from_indices((0..self.k()).filter(|&p| self.panels[p].contains(n, i)))
    }

    pub fn nerve(&self) -> Nerve {
        Nerve::of_sets(self.complex(), &self.panels)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_validate() {
        let p = Partition::parse("1,3|2,4", 4).unwrap();
        assert_eq!(p.k(), 2);
        assert_eq!(p.to_string(), "1,3|2,4");
        assert_eq!(p.facets_of(IndexSet::singleton(1)), IndexSet::from_indices([1, 3]));
        assert!(Partition::parse("1,3|2", 4).is_err());
        assert!(Partition::parse("1,3|3,2,4", 4).is_err());
        assert!(Partition::parse("1,5|2,3,4", 4).is_err());
        assert!(Partition::parse("1,x", 4).is_err());
        assert!(Partition::trivial(3).is_trivial());
        assert_eq!(Partition::whole(3).k(), 1);
    }
}
