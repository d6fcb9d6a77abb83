//! Combinatorial manifolds with corners: a Δ-complex with facet
//! subcomplexes, derived faces, nerve and panel partitions.

mod nerve;
mod nice;
mod partition;
mod poset;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::delta::{DeltaComplex, DeltaError, SimplexRef, Subcomplex};
use crate::index_set::{IndexSet, MAX_INDEX};

pub use nerve::Nerve;
pub use nice::{validate_nice, NiceReport, NiceViolation};
pub use partition::{PanelStructure, Partition};
pub use poset::{intersections, Face, FacePoset};

/// Default cap on the number of facets (and panels) for subset enumeration.
pub const DEFAULT_FACET_LIMIT: usize = 24;

#[derive(Debug, Error)]
pub enum CornersError {
    #[error("malformed model: {0}")]
    Schema(#[from] serde_json::Error),
    #[error("declared dimension {declared} but the complex has dimension {actual:?}")]
    DimensionMismatch { declared: usize, actual: Option<usize> },
    #[error("facet {0} is empty")]
    EmptyFacet(usize),
    #[error("facet {facet} is not a closed subcomplex: {source}")]
    FacetNotClosed { facet: usize, source: DeltaError },
    #[error("facet {facet} has dimension {found:?}, expected {expected}")]
    FacetDimension { facet: usize, expected: usize, found: Option<usize> },
    #[error("{m} facets exceeds the enumeration limit of {limit}")]
    TooManyFacets { m: usize, limit: usize },
    #[error("invalid partition: {0}")]
    BadPartition(String),
    #[error("index set {set} out of range for {k} indices")]
    IndexOutOfRange { set: IndexSet, k: usize },
}

/// JSON form of a model.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CornersSpec {
    pub complex: DeltaComplex,
    pub dim: usize,
    pub facets: Vec<Vec<SimplexRef>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub partition: Option<Vec<Vec<usize>>>,
}

/// A validated model `Q` with facets `F_1, .., F_m` in input order.
#[derive(Clone, Debug)]
pub struct CornersModel {
    complex: DeltaComplex,
    dim: usize,
    facets: Vec<Subcomplex>,
    partition: Option<Partition>,
}

impl CornersModel {
    pub fn new(complex: DeltaComplex, dim: usize, facets: Vec<Vec<SimplexRef>>) -> Result<Self, CornersError> {
        Self::with_limit(complex, dim, facets, DEFAULT_FACET_LIMIT)
    }

    pub fn with_limit(
        complex: DeltaComplex,
        dim: usize,
        facets: Vec<Vec<SimplexRef>>,
        limit: usize,
    ) -> Result<Self, CornersError> {
        if complex.dim() != Some(dim) {
            return Err(CornersError::DimensionMismatch { declared: dim, actual: complex.dim() });
        }
        let limit = limit.min(MAX_INDEX - 1);
        if facets.len() > limit {
            return Err(CornersError::TooManyFacets { m: facets.len(), limit });
        }
        let mut subs = Vec::with_capacity(facets.len());
        for (j, refs) in facets.iter().enumerate() {
            let facet = j + 1;
            if refs.is_empty() {
                return Err(CornersError::EmptyFacet(facet));
            }
            let s = Subcomplex::from_simplices(&complex, refs)
                .map_err(|source| CornersError::FacetNotClosed { facet, source })?;
            let expected =
                dim.checked_sub(1).ok_or(CornersError::FacetDimension { facet, expected: 0, found: s.dim() })?;
            if s.dim() != Some(expected) {
                return Err(CornersError::FacetDimension { facet, expected, found: s.dim() });
            }
            subs.push(s);
        }
        Ok(CornersModel { complex, dim, facets: subs, partition: None })
    }

    pub fn from_spec(spec: CornersSpec) -> Result<Self, CornersError> {
        let mut model = Self::new(spec.complex, spec.dim, spec.facets)?;
        if let Some(blocks) = spec.partition {
            model.partition = Some(Partition::from_one_based(&blocks, model.m())?);
        }
        Ok(model)
    }

    pub fn from_json(s: &str) -> Result<Self, CornersError> {
        Self::from_spec(serde_json::from_str(s)?)
    }

    pub fn to_spec(&self) -> CornersSpec {
        CornersSpec {
            complex: self.complex.clone(),
            dim: self.dim,
            facets: self.facets.iter().map(Subcomplex::simplices).collect(),
            partition: self.partition.as_ref().map(Partition::one_based),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_spec()).expect("serializable")
    }

    pub fn complex(&self) -> &DeltaComplex {
        &self.complex
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of facets.
    pub fn m(&self) -> usize {
        self.facets.len()
    }

    /// Facet `F_{j+1}` (0-based index).
    pub fn facet(&self, j: usize) -> &Subcomplex {
        &self.facets[j]
    }

    pub fn facets(&self) -> &[Subcomplex] {
        &self.facets
    }

    /// The partition bundled with the model, if any.
    pub fn bundled_partition(&self) -> Option<&Partition> {
        self.partition.as_ref()
    }

    pub fn set_partition(&mut self, p: Option<Partition>) {
        self.partition = p;
    }

    fn check_set(&self, j: IndexSet) -> Result<(), CornersError> {
        if !j.is_subset(IndexSet::all(self.m())) {
            return Err(CornersError::IndexOutOfRange { set: j, k: self.m() });
        }
        Ok(())
    }

    /// `F_J`, with `F_∅ = ∅`.
    pub fn facet_union(&self, j: IndexSet) -> Result<Subcomplex, CornersError> {
        self.check_set(j)?;
        Ok(union_of(&self.complex, &self.facets, j))
    }

    /// `F_∩J`, with `F_∩∅ = Q`.
    pub fn facet_intersection(&self, j: IndexSet) -> Result<Subcomplex, CornersError> {
        self.check_set(j)?;
        Ok(intersection_of(&self.complex, &self.facets, j))
    }

    /// `F_∩J` together with its connected components.
    pub fn facet_intersection_components(&self, j: IndexSet) -> Result<(Subcomplex, Vec<Subcomplex>), CornersError> {
        let s = self.facet_intersection(j)?;
        let comps = s.components(&self.complex);
        Ok((s, comps))
    }

    /// Facets containing the simplex.
    pub fn strata_index(&self, n: usize, i: usize) -> IndexSet {
        IndexSet::from_indices((0..self.m()).filter(|&j| self.facets[j].contains(n, i)))
    }

    /// Facets containing every simplex of `c`.
    pub fn strata_index_of(&self, c: &Subcomplex) -> IndexSet {
        IndexSet::from_indices((0..self.m()).filter(|&j| c.is_subset(&self.facets[j])))
    }

    /// Closure of the codimension-one simplices lying in exactly one top
    /// simplex.
    pub fn combinatorial_boundary(&self) -> Subcomplex {
        let n = self.dim;
        if n == 0 {
            return Subcomplex::empty(&self.complex);
        }
        let counts = self.complex.coface_counts(n);
        let refs: Vec<SimplexRef> =
            counts.iter().enumerate().filter(|(_, &c)| c == 1).map(|(i, _)| (n - 1, i)).collect();
        Subcomplex::closure(&self.complex, &refs).expect("indices in range")
    }

    pub fn trivial_partition(&self) -> Partition {
        Partition::trivial(self.m())
    }

    pub fn panels(&self, partition: &Partition) -> Result<PanelStructure<'_>, CornersError> {
        PanelStructure::new(self, partition.clone())
    }

    pub fn face_poset(&self) -> FacePoset {
        FacePoset::new(self)
    }

    pub fn nerve(&self) -> Nerve {
        Nerve::of_sets(&self.complex, &self.facets)
    }
}

pub(crate) fn union_of(x: &DeltaComplex, sets: &[Subcomplex], j: IndexSet) -> Subcomplex {
    j.iter().fold(Subcomplex::empty(x), |acc, i| acc.union(&sets[i]))
}

pub(crate) fn intersection_of(x: &DeltaComplex, sets: &[Subcomplex], j: IndexSet) -> Subcomplex {
    j.iter().fold(Subcomplex::full(x), |acc, i| acc.intersection(&sets[i]))
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn interval() -> CornersModel {
        let x = DeltaComplex::from_simplices(&[vec![0, 1]]);
        CornersModel::new(x, 1, vec![vec![(0, 0)], vec![(0, 1)]]).unwrap()
    }

    #[test]
    fn interval_unions() {
        let q = interval();
        let both = IndexSet::all(2);
        assert_eq!(q.facet_union(both).unwrap().count(0), 2);
        assert!(q.facet_intersection(both).unwrap().is_empty());
        assert!(q.facet_union(IndexSet::EMPTY).unwrap().is_empty());
        assert_eq!(q.facet_intersection(IndexSet::EMPTY).unwrap(), Subcomplex::full(q.complex()));
        assert!(q.facet_union(IndexSet::singleton(2)).is_err());
        assert_eq!(q.combinatorial_boundary(), q.facet_union(both).unwrap());
    }

    #[test]
    fn load_errors() {
        let x = DeltaComplex::from_simplices(&[vec![0, 1, 2]]);
        // edge without its vertices
        let e = CornersModel::new(x.clone(), 2, vec![vec![(1, 0)]]).unwrap_err();
        assert!(matches!(e, CornersError::FacetNotClosed { facet: 1, .. }));
        let e = CornersModel::new(x.clone(), 2, vec![vec![(0, 0)]]).unwrap_err();
        assert!(matches!(e, CornersError::FacetDimension { facet: 1, expected: 1, found: Some(0) }));
        let e = CornersModel::new(x.clone(), 2, vec![vec![]]).unwrap_err();
        assert!(matches!(e, CornersError::EmptyFacet(1)));
        let e = CornersModel::new(x, 3, vec![]).unwrap_err();
        assert!(matches!(e, CornersError::DimensionMismatch { .. }));
    }

    #[test]
    fn json_round_trip() {
        let q = interval();
        let s = q.to_json();
        let back = CornersModel::from_json(&s).unwrap();
        assert_eq!(back.to_json(), s);
        assert!(matches!(CornersModel::from_json("{"), Err(CornersError::Schema(_))));
    }
}
