use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::coeffs::Coeffs;
use crate::delta::chain::ChainComplex;
use crate::delta::matrix::SparseMatrix;
use crate::delta::DeltaError;

/// One simplex of a [`DeltaComplex`]. For an `n`-simplex with `n >= 1`,
/// `faces[i]` is the index of the `(n-1)`-simplex obtained by deleting
/// vertex `i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Simplex {
    pub faces: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

impl Simplex {
    pub fn new(faces: Vec<usize>) -> Self {
        Simplex { faces, label: None }
    }

    pub fn vertex() -> Self {
        Simplex { faces: Vec::new(), label: None }
    }

    pub fn labeled(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }
}

/// `(dimension, index)` of a simplex.
pub type SimplexRef = (usize, usize);

/// A Δ-complex: simplices of each dimension with ordered face maps.
///
/// Distinct simplices may share their vertex sets, so glued doubles and
/// one-vertex models of surfaces are representable.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "DeltaComplexRepr", into = "DeltaComplexRepr")]
pub struct DeltaComplex {
    dims: Vec<Vec<Simplex>>,
}

#[derive(Serialize, Deserialize)]
struct DimRepr {
    simplices: Vec<Simplex>,
}

#[derive(Serialize, Deserialize)]
struct DeltaComplexRepr {
    dims: Vec<DimRepr>,
}

impl TryFrom<DeltaComplexRepr> for DeltaComplex {
    type Error = DeltaError;

    fn try_from(r: DeltaComplexRepr) -> Result<Self, Self::Error> {
        DeltaComplex::new(r.dims.into_iter().map(|d| d.simplices).collect())
    }
}

impl From<DeltaComplex> for DeltaComplexRepr {
    fn from(c: DeltaComplex) -> Self {
        DeltaComplexRepr { dims: c.dims.into_iter().map(|simplices| DimRepr { simplices }).collect() }
    }
}

impl DeltaComplex {
    /// Validate and build. Trailing empty dimensions are dropped.
    pub fn new(mut dims: Vec<Vec<Simplex>>) -> Result<Self, DeltaError> {
        while dims.last().is_some_and(Vec::is_empty) {
            dims.pop();
        }
        for (n, simplices) in dims.iter().enumerate() {
            for (index, s) in simplices.iter().enumerate() {
                let expected = if n == 0 { 0 } else { n + 1 };
                if s.faces.len() != expected {
                    return Err(DeltaError::FaceCount { dim: n, index, expected, found: s.faces.len() });
                }
                if n > 0 {
                    let count = dims[n - 1].len();
                    if let Some(&face) = s.faces.iter().find(|&&f| f >= count) {
                        return Err(DeltaError::FaceOutOfRange { dim: n, index, face, count });
                    }
                }
            }
        }
        let complex = DeltaComplex { dims };
        complex.check_simplicial_identities()?;
        Ok(complex)
    }

    pub fn empty() -> Self {
        DeltaComplex { dims: Vec::new() }
    }

    fn check_simplicial_identities(&self) -> Result<(), DeltaError> {
        for n in 2..self.dims.len() {
            for (index, s) in self.dims[n].iter().enumerate() {
                for j in 1..=n {
                    for i in 0..j {
                        let lhs = self.dims[n - 1][s.faces[j]].faces[i];
                        let rhs = self.dims[n - 1][s.faces[i]].faces[j - 1];
                        if lhs != rhs {
                            return Err(DeltaError::SimplicialIdentity { dim: n, index, i, j });
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// The ordered simplicial complex generated by the given simplices
    /// (vertex lists). Vertex order inside each simplex is the numeric order
    /// of the vertex ids; simplices of each dimension are sorted
    /// lexicographically. Vertices are labeled by their ids.
    pub fn from_simplices<S: AsRef<[usize]>>(tops: &[S]) -> Self {
        let mut by_dim: BTreeMap<usize, BTreeSet<Vec<usize>>> = BTreeMap::new();
        for top in tops {
            let mut verts = top.as_ref().to_vec();
            verts.sort_unstable();
            verts.dedup();
            let n = verts.len();
            // all nonempty subsets
            for mask in 1u64..(1u64 << n) {
                let sub: Vec<usize> = (0..n).filter(|b| mask >> b & 1 == 1).map(|b| verts[b]).collect();
                by_dim.entry(sub.len() - 1).or_default().insert(sub);
            }
        }
        let top_dim = by_dim.keys().next_back().copied();
        let mut dims: Vec<Vec<Simplex>> = Vec::new();
        let mut index_of: Vec<BTreeMap<Vec<usize>, usize>> = Vec::new();
        if let Some(top_dim) = top_dim {
            for n in 0..=top_dim {
                let list: Vec<Vec<usize>> = by_dim.get(&n).map(|s| s.iter().cloned().collect()).unwrap_or_default();
                let mut idx = BTreeMap::new();
                let mut simplices = Vec::with_capacity(list.len());
                for (i, verts) in list.iter().enumerate() {
                    idx.insert(verts.clone(), i);
                    if n == 0 {
                        simplices.push(Simplex::vertex().labeled(verts[0].to_string()));
                    } else {
                        let faces = (0..=n)
                            .map(|k| {
                                let mut f = verts.clone();
                                f.remove(k);
                                index_of[n - 1][&f]
                            })
                            .collect();
                        simplices.push(Simplex::new(faces));
                    }
                }
                dims.push(simplices);
                index_of.push(idx);
            }
        }
        DeltaComplex::new(dims).expect("ordered simplicial complexes satisfy the simplicial identities")
    }

    /// Disjoint union; simplices of later parts are appended after earlier ones.
    pub fn disjoint_union(parts: &[DeltaComplex]) -> Self {
        let top = parts.iter().map(|p| p.dims.len()).max().unwrap_or(0);
        let mut dims: Vec<Vec<Simplex>> = vec![Vec::new(); top];
        let mut offsets = vec![0usize; top];
        for part in parts {
            for (n, simplices) in part.dims.iter().enumerate() {
                for s in simplices {
                    let faces = if n == 0 { Vec::new() } else { s.faces.iter().map(|f| f + offsets[n - 1]).collect() };
                    dims[n].push(Simplex { faces, label: s.label.clone() });
                }
            }
            for (n, simplices) in part.dims.iter().enumerate() {
                offsets[n] += simplices.len();
            }
        }
        DeltaComplex::new(dims).expect("disjoint union of valid complexes")
    }

    /// Highest dimension with a simplex; `None` for the empty complex.
    pub fn dim(&self) -> Option<usize> {
        self.dims.len().checked_sub(1)
    }

    /// Number of dimensions stored (top dimension + 1).
    pub fn num_dims(&self) -> usize {
        self.dims.len()
    }

    pub fn count(&self, n: usize) -> usize {
        self.dims.get(n).map_or(0, Vec::len)
    }

    pub fn total_simplices(&self) -> usize {
        self.dims.iter().map(Vec::len).sum()
    }

    pub fn simplices(&self, n: usize) -> &[Simplex] {
        self.dims.get(n).map_or(&[], Vec::as_slice)
    }

    pub fn simplex(&self, n: usize, i: usize) -> &Simplex {
        &self.dims[n][i]
    }

    pub fn contains(&self, r: SimplexRef) -> bool {
        r.1 < self.count(r.0)
    }

    #[inline]
    pub fn faces(&self, n: usize, i: usize) -> &[usize] {
        &self.dims[n][i].faces
    }

    #[inline]
    pub fn face(&self, n: usize, i: usize, k: usize) -> usize {
        self.dims[n][i].faces[k]
    }

    /// Index of the `p`-dimensional front face (vertices `0..=p`).
    pub fn front_face(&self, n: usize, i: usize, p: usize) -> usize {
        debug_assert!(p <= n);
        let mut cur = i;
        for d in (p + 1..=n).rev() {
            cur = self.face(d, cur, d);
        }
        cur
    }

    /// Index of the `q`-dimensional back face (vertices `n-q..=n`).
    pub fn back_face(&self, n: usize, i: usize, q: usize) -> usize {
        debug_assert!(q <= n);
        let mut cur = i;
        for d in (q + 1..=n).rev() {
            cur = self.face(d, cur, 0);
        }
        cur
    }

    /// The vertices of a simplex in order, as indices of 0-simplices.
    pub fn vertices(&self, n: usize, i: usize) -> Vec<usize> {
        (0..=n)
            .map(|k| {
                let front = self.front_face(n, i, k);
                self.back_face(k, front, 0)
            })
            .collect()
    }

    /// The boundary matrix `∂_n` (rows: `(n-1)`-simplices, columns:
    /// `n`-simplices), with `∂σ = Σ (-1)^i d_i σ`.
    pub fn boundary_matrix(&self, n: usize, coeffs: Coeffs) -> SparseMatrix {
        assert!(n >= 1);
        let triplets =
            self.simplices(n).iter().enumerate().flat_map(|(j, s)| {
                s.faces.iter().enumerate().map(move |(k, &f)| (f, j, if k % 2 == 0 { 1 } else { -1 }))
            });
        SparseMatrix::from_triplets(self.count(n - 1), self.count(n), triplets, coeffs)
    }

    pub fn chain_complex(&self, coeffs: Coeffs) -> ChainComplex {
        let ranks: Vec<usize> = (0..self.num_dims()).map(|n| self.count(n)).collect();
        let boundaries = (1..self.num_dims()).map(|n| self.boundary_matrix(n, coeffs)).collect();
        ChainComplex::new(coeffs, ranks, boundaries).expect("simplicial identities give ∂∂ = 0")
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.dims.iter().enumerate().map(|(n, s)| if n % 2 == 0 { s.len() as i64 } else { -(s.len() as i64) }).sum()
    }

    /// Number of `n`-simplices having simplex `(n-1, i)` as a face, counted
    /// with multiplicity over face positions.
    pub fn coface_counts(&self, n: usize) -> Vec<usize> {
        let mut counts = vec![0; self.count(n.saturating_sub(1))];
        if n == 0 {
            return counts;
        }
        for s in self.simplices(n) {
            for &f in &s.faces {
                counts[f] += 1;
            }
        }
        counts
    }
}
