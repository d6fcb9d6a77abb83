use std::collections::HashSet;

use crate::corners::CornersModel;
use crate::delta::{DeltaComplex, Subcomplex};
use crate::index_set::IndexSet;

/// All nonempty `S` with `∩_{i ∈ S} sets[i]` nonempty, with that
/// intersection, in depth-first order. Supersets of an `S` with empty
/// intersection are never visited.
pub fn intersections(x: &DeltaComplex, sets: &[Subcomplex]) -> Vec<(IndexSet, Subcomplex)> {
    let mut out = Vec::new();
    let mut stack: Vec<(IndexSet, Subcomplex, usize)> = vec![(IndexSet::EMPTY, Subcomplex::full(x), 0)];
    while let Some((s, inter, next)) = stack.pop() {
        // push in reverse so lower indices are explored first
        for j in (next..sets.len()).rev() {
            let t = inter.intersection(&sets[j]);
            if !t.is_empty() {
                stack.push((s.with(j), t, j + 1));
            }
        }
        if !s.is_empty() {
            out.push((s, inter));
        }
    }
    out
}

/// A face of `Q`: a connected component of some `F_∩S`, with its strata
/// index (all facets containing it).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub component: Subcomplex,
    pub strata: IndexSet,
    pub dim: usize,
}

#[derive(Clone, Debug)]
pub struct FacePoset {
    faces: Vec<Face>,
}

impl FacePoset {
    pub fn new(q: &CornersModel) -> Self {
        let x = q.complex();
        let mut seen: HashSet<Subcomplex> = HashSet::new();
        let mut faces = Vec::new();
        let mut add = |c: Subcomplex, faces: &mut Vec<Face>| {
            if seen.insert(c.clone()) {
                let strata = q.strata_index_of(&c);
                let dim = c.dim().expect("components are nonempty");
                faces.push(Face { component: c, strata, dim });
            }
        };
        for c in Subcomplex::full(x).components(x) {
            add(c, &mut faces);
        }
        for (_, inter) in intersections(x, q.facets()) {
            for c in inter.components(x) {
                add(c, &mut faces);
            }
        }
        faces.sort_by_key(|f| (f.strata.len(), f.strata, f.component.indices(0).next()));
        FacePoset { faces }
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    /// `faces[a] ⊆ faces[b]`.
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.faces[a].component.is_subset(&self.faces[b].component)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::delta::SimplexRef;

    fn square() -> CornersModel {
        // fan with center 4 and corners 0..3; facet j is the edge (j-1, j)
        let x = DeltaComplex::from_simplices(&[vec![0, 1, 4], vec![1, 2, 4], vec![2, 3, 4], vec![0, 3, 4]]);
        let edge = |a: usize, b: usize| -> Vec<SimplexRef> {
            let e = (0..x.count(1)).find(|&e| {
                let mut v = x.vertices(1, e);
                v.sort();
                v == vec![a.min(b), a.max(b)]
            });
            vec![(1, e.unwrap()), (0, a), (0, b)]
        };
        let facets = vec![edge(3, 0), edge(0, 1), edge(1, 2), edge(2, 3)];
        CornersModel::new(x, 2, facets).unwrap()
    }

    #[test]
    fn square_poset() {
        let q = square();
        let p = q.face_poset();
        let by_codim = |k: usize| p.faces().iter().filter(|f| f.strata.len() == k).count();
        assert_eq!((by_codim(0), by_codim(1), by_codim(2)), (1, 4, 4));
        for f in p.faces() {
            assert_eq!(f.dim, 2 - f.strata.len());
            for j in 0..q.m() {
                assert_eq!(f.component.is_subset(q.facet(j)), f.strata.contains(j));
            }
            if f.strata.len() == 2 {
                let v: Vec<usize> = f.strata.iter().collect();
                assert!(v[1] - v[0] == 1 || (v[0] == 0 && v[1] == 3));
            }
        }
        assert_eq!(intersections(q.complex(), q.facets()).len(), 8);
    }
}
