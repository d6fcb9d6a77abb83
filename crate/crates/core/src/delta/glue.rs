use crate::delta::{DeltaComplex, DeltaError, Simplex, SimplexRef};

/// Identify simplices of `sheet_a` with simplices of `sheet_b`, pairwise.
#[derive(Clone, Debug)]
pub struct Identification {
    pub sheet_a: usize,
    pub sheet_b: usize,
    pub pairs: Vec<(SimplexRef, SimplexRef)>,
}

#[derive(Clone, Debug)]
pub struct GlueResult {
    pub complex: DeltaComplex,
    /// `class_of[sheet][dim][index]` is the simplex of the quotient.
    pub class_of: Vec<Vec<Vec<usize>>>,
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn find(&mut self, mut a: usize) -> usize {
        while self.parent[a] != a {
            self.parent[a] = self.parent[self.parent[a]];
            a = self.parent[a];
        }
        a
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}

/// Quotient of the disjoint union of `sheets` by the equivalence relation
/// generated by `identifications`. Quotient simplices are ordered by their
/// first member in (sheet, index) order.
pub fn glue(sheets: &[DeltaComplex], identifications: &[Identification]) -> Result<GlueResult, DeltaError> {
    let top = sheets.iter().map(DeltaComplex::num_dims).max().unwrap_or(0);
    // global id of (sheet, dim, idx) = offset[sheet][dim] + idx
    let mut offset = vec![vec![0usize; top]; sheets.len()];
    let mut total = 0;
    for (s, sheet) in sheets.iter().enumerate() {
        for (n, o) in offset[s].iter_mut().enumerate() {
            *o = total;
            total += sheet.count(n);
        }
    }
    let mut uf = UnionFind { parent: (0..total).collect() };
    for id in identifications {
        let bad = |reason: String| DeltaError::BadIdentification { sheet_a: id.sheet_a, sheet_b: id.sheet_b, reason };
        if id.sheet_a >= sheets.len() || id.sheet_b >= sheets.len() {
            return Err(bad("sheet index out of range".into()));
        }
        for &((da, ia), (db, ib)) in &id.pairs {
            if da != db {
                return Err(bad(format!("pairs a {da}-simplex with a {db}-simplex")));
            }
            if !sheets[id.sheet_a].contains((da, ia)) || !sheets[id.sheet_b].contains((db, ib)) {
                return Err(bad(format!("simplex ({da}, {ia}) or ({db}, {ib}) out of range")));
            }
            uf.union(offset[id.sheet_a][da] + ia, offset[id.sheet_b][db] + ib);
        }
    }

    let mut class_of: Vec<Vec<Vec<usize>>> =
        sheets.iter().map(|sh| (0..top).map(|n| vec![0; sh.count(n)]).collect()).collect();
    let mut dims: Vec<Vec<Simplex>> = vec![Vec::new(); top];
    let mut class_of_root = vec![usize::MAX; total];
    for n in 0..top {
        for (s, sheet) in sheets.iter().enumerate() {
            for i in 0..sheet.count(n) {
                let root = uf.find(offset[s][n] + i);
                if class_of_root[root] == usize::MAX {
                    class_of_root[root] = dims[n].len();
                    let faces = if n == 0 {
                        Vec::new()
                    } else {
                        sheet.faces(n, i).iter().map(|&f| class_of[s][n - 1][f]).collect()
                    };
                    dims[n].push(Simplex { faces, label: sheet.simplex(n, i).label.clone() });
                }
                let c = class_of_root[root];
                class_of[s][n][i] = c;
                if n > 0 {
                    let same =
                        sheet.faces(n, i).iter().zip(&dims[n][c].faces).all(|(&f, &g)| class_of[s][n - 1][f] == g);
                    if !same {
                        return Err(DeltaError::IncompatibleFaces { dim: n });
                    }
                }
            }
        }
    }
    for (s, per_dim) in class_of.iter().enumerate() {
        for (n, classes) in per_dim.iter().enumerate() {
            let mut seen = vec![false; dims[n].len()];
            for &c in classes {
                if std::mem::replace(&mut seen[c], true) {
                    return Err(DeltaError::SheetCollision { sheet: s, dim: n });
                }
            }
        }
    }
    let complex = DeltaComplex::new(dims)?;
    Ok(GlueResult { complex, class_of })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffs::Coeffs;

    fn edge() -> DeltaComplex {
        DeltaComplex::from_simplices(&[vec![0, 1]])
    }

    #[test]
    fn two_intervals_make_a_circle() {
        let ids = [Identification { sheet_a: 0, sheet_b: 1, pairs: vec![((0, 0), (0, 0)), ((0, 1), (0, 1))] }];
        let g = glue(&[edge(), edge()], &ids).unwrap();
        assert_eq!((g.complex.count(0), g.complex.count(1)), (2, 2));
        assert_eq!(g.complex.chain_complex(Coeffs::Integers).homology().betti(), vec![1, 1]);
    }

    #[test]
    fn incompatible_faces() {
        // identify the edges but swap the endpoints
        let ids = [Identification {
            sheet_a: 0,
            sheet_b: 1,
            pairs: vec![((1, 0), (1, 0)), ((0, 0), (0, 1)), ((0, 1), (0, 0))],
        }];
        let err = glue(&[edge(), edge()], &ids).unwrap_err();
        assert!(matches!(err, DeltaError::IncompatibleFaces { .. } | DeltaError::SheetCollision { .. }));
    }

    #[test]
    fn collision_within_a_sheet() {
        let ids = [Identification { sheet_a: 0, sheet_b: 0, pairs: vec![((0, 0), (0, 1))] }];
        assert!(matches!(glue(&[edge()], &ids), Err(DeltaError::SheetCollision { sheet: 0, dim: 0 })));
    }
}
