//! Bundled triangulated models with facet labelings.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::corners::{CornersModel, Partition};
use crate::delta::{DeltaComplex, SimplexRef, Subcomplex};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CorpusError {
    #[error("unknown corpus model {0:?}")]
    Unknown(String),
    #[error("parameter out of range for {0}")]
    BadParameter(String),
}

/// A bundled model with its coarse partition, if it has one.
#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub name: String,
    pub model: CornersModel,
    pub coarse: Option<Partition>,
}

impl CorpusEntry {
    /// Golden fixture file name under `tests/golden`.
    pub fn fixture(&self) -> String {
        format!("{}.json", self.name.replace(['(', ')'], "_").trim_end_matches('_'))
    }
}

/// Names of the acceptance corpus.
pub const CORPUS: &[&str] = &[
    "interval",
    "triangle",
    "square",
    "pentagon",
    "hexagon",
    "cube",
    "mobius",
    "annulus",
    "pair_of_pants",
    "torus_minus_disk",
];

pub fn all() -> Vec<CorpusEntry> {
    CORPUS.iter().map(|n| by_name(n).expect("bundled name")).collect()
}

fn param(name: &str, prefix: &str) -> Option<Result<usize, CorpusError>> {
    let rest = name.strip_prefix(prefix)?.strip_prefix('(')?.strip_suffix(')')?;
    Some(rest.trim().parse::<usize>().map_err(|_| CorpusError::BadParameter(name.to_string())))
}

pub fn by_name(name: &str) -> Result<CorpusEntry, CorpusError> {
    let (model, coarse) = match name {
        "interval" => interval(),
        "triangle" => polygon(3),
        "square" => polygon(4),
        "pentagon" => polygon(5),
        "hexagon" => polygon(6),
        "cube" => cube(),
        "mobius" => mobius(),
        "annulus" => annulus(),
        "pair_of_pants" => pair_of_pants(),
        "torus_minus_disk" => torus_minus_disk(),
        _ => {
            if let Some(m) = param(name, "polygon") {
                let m = m?;
                if !(3..=24).contains(&m) {
                    return Err(CorpusError::BadParameter(name.to_string()));
                }
                polygon(m)
            } else if let Some(n) = param(name, "simplex") {
                let n = n?;
                if !(1..=8).contains(&n) {
                    return Err(CorpusError::BadParameter(name.to_string()));
                }
                simplex(n)
            } else {
                return Err(CorpusError::Unknown(name.to_string()));
            }
        }
    };
    Ok(CorpusEntry { name: name.to_string(), model, coarse })
}

/// Simplex of `x` with the given vertex set (vertex `v` has index `v`).
fn find(x: &DeltaComplex, verts: &[usize]) -> SimplexRef {
    let mut want = verts.to_vec();
    want.sort_unstable();
    let n = want.len() - 1;
    let i = (0..x.count(n)).find(|&i| x.vertices(n, i) == want).unwrap_or_else(|| panic!("no simplex on {want:?}"));
    (n, i)
}

/// Closure of the given vertex sets, as a membership list.
fn closed(x: &DeltaComplex, tops: &[Vec<usize>]) -> Vec<SimplexRef> {
    let refs: Vec<SimplexRef> = tops.iter().map(|t| find(x, t)).collect();
    Subcomplex::closure(x, &refs).expect("in range").simplices()
}

/// All simplices whose vertices lie in `verts`.
fn full_on(x: &DeltaComplex, verts: &[usize]) -> Vec<SimplexRef> {
    let set: BTreeSet<usize> = verts.iter().copied().collect();
    (0..x.num_dims())
        .flat_map(|n| (0..x.count(n)).map(move |i| (n, i)))
        .filter(|&(n, i)| x.vertices(n, i).iter().all(|v| set.contains(v)))
        .collect()
}

fn model(x: DeltaComplex, dim: usize, facets: Vec<Vec<SimplexRef>>) -> CornersModel {
    CornersModel::new(x, dim, facets).expect("bundled model is valid")
}

fn blocks(b: &[&[usize]], m: usize) -> Option<Partition> {
    let v: Vec<Vec<usize>> = b.iter().map(|s| s.to_vec()).collect();
    Some(Partition::from_one_based(&v, m).expect("bundled partition"))
}

fn interval() -> (CornersModel, Option<Partition>) {
    let x = DeltaComplex::from_simplices(&[vec![0, 1]]);
    let facets = vec![vec![(0, 0)], vec![(0, 1)]];
    (model(x, 1, facets), blocks(&[&[1, 2]], 2))
}

/// Fan triangulation: corners `0..m`, center `m`; facet `j` is the edge
/// from corner `j-1` to corner `j mod m`.
fn polygon(m: usize) -> (CornersModel, Option<Partition>) {
    let tris: Vec<Vec<usize>> = (0..m).map(|j| vec![j, (j + 1) % m, m]).collect();
    let x = DeltaComplex::from_simplices(&tris);
    let facets = (1..=m).map(|j| closed(&x, &[vec![j - 1, j % m]])).collect();
    let coarse = if m == 3 {
        blocks(&[&[1, 2], &[3]], 3)
    } else if m.is_multiple_of(2) {
        let b: Vec<Vec<usize>> = (1..=m / 2).map(|i| vec![i, i + m / 2]).collect();
        Some(Partition::from_one_based(&b, m).expect("opposite pairs"))
    } else {
        let rest: Vec<usize> = (5..=m).collect();
        let mut b = vec![vec![1, 3], vec![2, 4]];
        b.push(rest);
        Some(Partition::from_one_based(&b, m).expect("bundled partition"))
    };
    (model(x, 2, facets), coarse)
}

/// One `n`-simplex; facet `j` is opposite vertex `j-1`.
fn simplex(n: usize) -> (CornersModel, Option<Partition>) {
    let x = DeltaComplex::from_simplices(&[(0..=n).collect::<Vec<_>>()]);
    let facets = (0..=n)
        .map(|j| {
            let verts: Vec<usize> = (0..=n).filter(|&v| v != j).collect();
            closed(&x, &[verts])
        })
        .collect();
    let m = n + 1;
    let coarse = if m >= 3 {
        let rest: Vec<usize> = (3..=m).collect();
        blocks(&[&[1, 2], &rest], m)
    } else {
        None
    };
    (model(x, n, facets), coarse)
}

/// Kuhn triangulation of `[0,1]^3`: vertex `x + 2y + 4z`, six tetrahedra
/// along monotone paths from 0 to 7. Facets in order `x=0, x=1, y=0, y=1,
/// z=0, z=1`.
fn cube() -> (CornersModel, Option<Partition>) {
    let mut tets = Vec::new();
    for a in 0..3 {
        for b in 0..3 {
            if a != b {
                let (ea, eb) = (1 << a, 1 << b);
                tets.push(vec![0, ea, ea | eb, 7]);
            }
        }
    }
    let x = DeltaComplex::from_simplices(&tets);
    let side = |bit: usize, val: usize| -> Vec<usize> { (0..8).filter(|v| (v >> bit) & 1 == val).collect() };
    let facets =
        [(0, 0), (0, 1), (1, 0), (1, 1), (2, 0), (2, 1)].iter().map(|&(b, v)| full_on(&x, &side(b, v))).collect();
    (model(x, 3, facets), blocks(&[&[1, 2], &[3, 4], &[5, 6]], 6))
}

/// Five triangles `{i, i+1, i+2}` mod 5; the boundary is the circle of
/// edges `{i, i+2}`.
fn mobius() -> (CornersModel, Option<Partition>) {
    let tris: Vec<Vec<usize>> = (0..5).map(|i| vec![i, (i + 1) % 5, (i + 2) % 5]).collect();
    let x = DeltaComplex::from_simplices(&tris);
    let edges: Vec<Vec<usize>> = (0..5).map(|i| vec![i, (i + 2) % 5]).collect();
    let facets = vec![closed(&x, &edges)];
    (model(x, 2, facets), None)
}

/// Six triangles between the circles `0-1-2` and `3-4-5`.
fn annulus() -> (CornersModel, Option<Partition>) {
    let tris = vec![vec![0, 1, 3], vec![1, 3, 4], vec![1, 2, 4], vec![2, 4, 5], vec![0, 2, 5], vec![0, 3, 5]];
    let x = DeltaComplex::from_simplices(&tris);
    let bottom = closed(&x, &[vec![0, 1], vec![1, 2], vec![0, 2]]);
    let top = closed(&x, &[vec![3, 4], vec![4, 5], vec![3, 5]]);
    (model(x, 2, vec![bottom, top]), blocks(&[&[1, 2]], 2))
}

fn triangle_boundary(t: [usize; 3]) -> Vec<Vec<usize>> {
    vec![vec![t[0], t[1]], vec![t[1], t[2]], vec![t[0], t[2]]]
}

/// Icosahedron with three vertex-disjoint faces removed.
fn pair_of_pants() -> (CornersModel, Option<Partition>) {
    let (north, south) = (0, 11);
    let u = |i: usize| 1 + i % 5;
    let l = |i: usize| 6 + i % 5;
    let mut faces = Vec::new();
    for i in 0..5 {
        faces.push(vec![north, u(i), u(i + 1)]);
        faces.push(vec![u(i), u(i + 1), l(i)]);
        faces.push(vec![u(i + 1), l(i), l(i + 1)]);
        faces.push(vec![l(i), l(i + 1), south]);
    }
    let holes = [[0, 1, 2], [9, 10, 11], [3, 4, 8]];
    let norm = |f: &[usize]| {
        let mut v = f.to_vec();
        v.sort_unstable();
        v
    };
    faces.retain(|f| !holes.iter().any(|h| norm(f) == norm(h)));
    assert_eq!(faces.len(), 17, "three faces removed");
    let x = DeltaComplex::from_simplices(&faces);
    let facets = holes.iter().map(|&h| closed(&x, &triangle_boundary(h))).collect();
    (model(x, 2, facets), blocks(&[&[1, 2], &[3]], 3))
}

/// Seven-vertex torus with the triangle `{0, 1, 3}` removed.
fn torus_minus_disk() -> (CornersModel, Option<Partition>) {
    let mut faces = Vec::new();
    for i in 0..7 {
        faces.push(vec![i, (i + 1) % 7, (i + 3) % 7]);
        faces.push(vec![i, (i + 2) % 7, (i + 3) % 7]);
    }
    faces.retain(|f| {
        let mut v = f.clone();
        v.sort_unstable();
        v != vec![0, 1, 3]
    });
    let x = DeltaComplex::from_simplices(&faces);
    let facets = vec![closed(&x, &triangle_boundary([0, 1, 3]))];
    (model(x, 2, facets), None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corners::validate_nice;
    use crate::Coeffs;

    #[test]
    fn every_entry_is_nice_and_round_trips() {
        for name in CORPUS.iter().copied().chain(["polygon(7)", "simplex(1)", "simplex(3)"]) {
            let e = by_name(name).unwrap();
            let report = validate_nice(&e.model);
            assert!(report.ok, "{name}: {}", report.summary());
            let back = CornersModel::from_json(&e.model.to_json()).unwrap();
            assert_eq!(back.to_json(), e.model.to_json());
            if let Some(p) = &e.coarse {
                assert!(e.model.panels(p).is_ok());
            }
        }
        assert!(by_name("polygon(2)").is_err());
        assert!(by_name("klein").is_err());
    }

    #[test]
    fn surfaces_have_expected_homology() {
        let betti =
            |name: &str| by_name(name).unwrap().model.complex().chain_complex(Coeffs::Integers).homology().betti();
        assert_eq!(betti("mobius"), vec![1, 1]);
        assert_eq!(betti("annulus"), vec![1, 1]);
        assert_eq!(betti("pair_of_pants"), vec![1, 2]);
        assert_eq!(betti("torus_minus_disk"), vec![1, 2]);
        assert_eq!(betti("cube"), vec![1]);
        assert_eq!(by_name("cube").unwrap().model.complex().count(3), 6);
    }
}
