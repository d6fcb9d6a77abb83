//! Canonical cohomology bases of pairs, computed from Smith forms of the
//! relative coboundary maps.

use crate::coeffs::Coeffs;
use crate::delta::snf::{smith_form, Track};
use crate::delta::{CochainComplex, DeltaComplex, DeltaError, DenseMatrix, RelativeCells, Subcomplex};
use crate::group::{AbelianGroup, GradedAbelianGroup};

/// Generators of `H^n(Y, A)` in one degree.
#[derive(Clone, Debug, Default)]
pub struct DegreeBasis {
    /// Generator cocycles, indexed by parent simplices (zero off `Y \ A`).
    pub generators: Vec<Vec<i64>>,
    /// Order of each generator, `0` for free generators. Free generators
    /// come first, then torsion in increasing order.
    pub orders: Vec<u64>,
    /// Rows map a local cocycle to generator coordinates.
    express: Option<DenseMatrix>,
}

impl DegreeBasis {
    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn free_rank(&self) -> usize {
        self.orders.iter().filter(|&&o| o == 0).count()
    }

    pub fn group(&self) -> AbelianGroup {
        AbelianGroup::new(self.free_rank(), self.orders.iter().copied().filter(|&o| o > 0))
    }
}

/// Canonical basis of `H^*(Y, A; k)` for subcomplexes `A`, `Y` of a parent
/// Δ-complex. `A` should lie in `Y`; cochains are taken on the cells of
/// `Y \ A`.
#[derive(Clone, Debug)]
pub struct CohomologyBasis {
    coeffs: Coeffs,
    y: Subcomplex,
    a: Subcomplex,
    cells: RelativeCells,
    complex: CochainComplex,
    parent_counts: Vec<usize>,
    degrees: Vec<DegreeBasis>,
}

fn degree_basis(complex: &CochainComplex, cells: &RelativeCells, parent_counts: &[usize], n: usize) -> DegreeBasis {
    let coeffs = complex.coeffs();
    let c = complex.ranks()[n];
    if c == 0 {
        return DegreeBasis::default();
    }
    let dn = complex.coboundary(n).map_or_else(|| DenseMatrix::zeros(0, c), |m| m.to_dense());
    let f = smith_form(&dn, coeffs, Track { v: true, v_inv: true, ..Track::NONE });
    let r = f.rank();
    let v = f.v.expect("tracked");
    let v_inv = f.v_inv.expect("tracked");
    let kdim = c - r;
    if kdim == 0 {
        return DegreeBasis::default();
    }
    // image of δ_{n-1} in kernel coordinates
    let x = match n.checked_sub(1).and_then(|k| complex.coboundary(k)) {
        Some(prev) => prev.left_mul_dense(&v_inv, r..c, coeffs),
        None => DenseMatrix::zeros(kdim, 0),
    };
    let f2 = smith_form(&x, coeffs, Track { u: true, u_inv: true, ..Track::NONE });
    let s = f2.rank();
    let u2 = f2.u.expect("tracked");
    let u2_inv = f2.u_inv.expect("tracked");

    let mut picks: Vec<(usize, u64)> = (s..kdim).map(|i| (i, 0)).collect();
    for (i, &d) in f2.diagonal.iter().enumerate().take(s) {
        if !coeffs.is_unit(d) {
            picks.push((i, d.unsigned_abs()));
        }
    }

    let mut generators = Vec::with_capacity(picks.len());
    let mut orders = Vec::with_capacity(picks.len());
    let mut express = DenseMatrix::zeros(picks.len(), c);
    for (g, &(i, order)) in picks.iter().enumerate() {
        // local cocycle = V[:, r..] * (column i of U2^{-1})
        let mut local = vec![0i64; c];
        for t in 0..kdim {
            let w = u2_inv.get(t, i);
            if w == 0 {
                continue;
            }
            for (row, slot) in local.iter_mut().enumerate() {
                let a = v.get(row, r + t);
                if a != 0 {
                    *slot = coeffs.add(*slot, coeffs.mul(w, a));
                }
            }
        }
        generators.push(cells.extend(n, &local, parent_counts[n]));
        orders.push(order);
        // expression row = (row i of U2) * V^{-1}[r.., :]
        for t in 0..kdim {
            let w = u2.get(i, t);
            if w == 0 {
                continue;
            }
            for col in 0..c {
                let a = v_inv.get(r + t, col);
                if a != 0 {
                    let cur = express.get(g, col);
                    express.set(g, col, coeffs.add(cur, coeffs.mul(w, a)));
                }
            }
        }
    }
    DegreeBasis { generators, orders, express: Some(express) }
}

impl CohomologyBasis {
    pub fn new(x: &DeltaComplex, y: &Subcomplex, a: &Subcomplex, coeffs: Coeffs) -> Result<Self, DeltaError> {
        let cells = RelativeCells::new(x, y, a)?;
        let complex = cells.cochain_complex(x, coeffs);
        let parent_counts: Vec<usize> = (0..x.num_dims()).map(|n| x.count(n)).collect();
        let degrees = (0..x.num_dims()).map(|n| degree_basis(&complex, &cells, &parent_counts, n)).collect();
        Ok(CohomologyBasis { coeffs, y: y.clone(), a: a.clone(), cells, complex, parent_counts, degrees })
    }

    /// Absolute cohomology of the subcomplex `Y`.
    pub fn absolute(x: &DeltaComplex, y: &Subcomplex, coeffs: Coeffs) -> Result<Self, DeltaError> {
        Self::new(x, y, &Subcomplex::empty(x), coeffs)
    }

    /// Cohomology of the whole complex.
    pub fn of_complex(x: &DeltaComplex, coeffs: Coeffs) -> Self {
        Self::absolute(x, &Subcomplex::full(x), coeffs).expect("full subcomplex matches its parent")
    }

    pub fn coeffs(&self) -> Coeffs {
        self.coeffs
    }

    pub fn space(&self) -> &Subcomplex {
        &self.y
    }

    pub fn relative_to(&self) -> &Subcomplex {
        &self.a
    }

    pub fn cochain_complex(&self) -> &CochainComplex {
        &self.complex
    }

    pub fn num_degrees(&self) -> usize {
        self.degrees.len()
    }

    pub fn degree(&self, n: usize) -> &DegreeBasis {
        static EMPTY: DegreeBasis = DegreeBasis { generators: Vec::new(), orders: Vec::new(), express: None };
        self.degrees.get(n).unwrap_or(&EMPTY)
    }

    pub fn rank(&self, n: usize) -> usize {
        self.degree(n).len()
    }

    pub fn groups(&self) -> GradedAbelianGroup {
        GradedAbelianGroup::from_groups(self.degrees.iter().enumerate().map(|(n, d)| (n, d.group())))
    }

    pub fn parent_count(&self, n: usize) -> usize {
        self.parent_counts.get(n).copied().unwrap_or(0)
    }

    /// Checks that a parent cochain vanishes on `A` and restricts to a
    /// cocycle of the pair.
    pub fn check_cocycle(&self, n: usize, z: &[i64]) -> Result<(), DeltaError> {
        if z.len() != self.parent_count(n) {
            return Err(DeltaError::CochainLength(n));
        }
        if self.a.indices(n).any(|i| self.coeffs.reduce(z[i]) != 0) {
            return Err(DeltaError::DoesNotVanish(n));
        }
        let local = self.cells.restrict(n, z);
        if let Some(d) = self.complex.coboundary(n) {
            if d.mul_vec(&local, self.coeffs).iter().any(|&v| v != 0) {
                return Err(DeltaError::NotCocycle(n));
            }
        }
        Ok(())
    }

    /// Coordinates of the class of `z` in the canonical generators.
    pub fn express(&self, n: usize, z: &[i64]) -> Result<Vec<i64>, DeltaError> {
        self.check_cocycle(n, z)?;
        let basis = self.degree(n);
        let Some(express) = &basis.express else {
            return Ok(Vec::new());
        };
        let local = self.cells.restrict(n, z);
        let raw = express.mul_vec(&local, self.coeffs);
        Ok(self.reduce(n, &raw))
    }

    /// Reduce coordinates modulo generator orders.
    pub fn reduce(&self, n: usize, coords: &[i64]) -> Vec<i64> {
        coords.iter().zip(&self.degree(n).orders).map(|(&c, &o)| self.coeffs.reduce_mod_order(c, o)).collect()
    }

    /// A representative cocycle of the class with the given coordinates.
    pub fn reconstitute(&self, n: usize, coords: &[i64]) -> Vec<i64> {
        let mut out = vec![0; self.parent_count(n)];
        for (g, &c) in self.degree(n).generators.iter().zip(coords) {
            if c == 0 {
                continue;
            }
            for (o, &v) in out.iter_mut().zip(g) {
                if v != 0 {
                    *o = self.coeffs.add(*o, self.coeffs.mul(c, v));
                }
            }
        }
        out
    }

    /// Matrix of the restriction `H^n(Y, A) -> H^n(Y', A')` for
    /// `Y' ⊆ Y`, `A' ⊆ A`; columns are source generators.
    pub fn induced_map(&self, target: &CohomologyBasis, n: usize) -> Result<DenseMatrix, DeltaError> {
        if self.coeffs != target.coeffs {
            return Err(DeltaError::CoeffMismatch);
        }
        if !target.y.is_subset(&self.y) || !target.a.is_subset(&self.a) {
            return Err(DeltaError::NotNested);
        }
        let src = self.degree(n);
        let mut m = DenseMatrix::zeros(target.rank(n), src.len());
        for (j, g) in src.generators.iter().enumerate() {
            let mut restricted = g.clone();
            for (i, v) in restricted.iter_mut().enumerate() {
                if !target.y.contains(n, i) {
                    *v = 0;
                }
            }
            for (i, c) in target.express(n, &restricted)?.into_iter().enumerate() {
                m.set(i, j, c);
            }
        }
        Ok(m)
    }
}

/// `H^*(X, A)` with coefficients in `coeffs`, from the dual complex.
pub fn relative_cohomology(x: &DeltaComplex, a: &Subcomplex, coeffs: Coeffs) -> Result<GradedAbelianGroup, DeltaError> {
    let cells = RelativeCells::new(x, &Subcomplex::full(x), a)?;
    Ok(cells.cochain_complex(x, coeffs).cohomology())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::delta::Simplex;

    fn edge() -> DeltaComplex {
        DeltaComplex::from_simplices(&[vec![0, 1]])
    }

    #[test]
    fn disk_rel_boundary() {
        let x = edge();
        let a = Subcomplex::from_simplices(&x, &[(0, 0), (0, 1)]).unwrap();
        let h = relative_cohomology(&x, &a, Coeffs::Integers).unwrap();
        assert_eq!(h.betti(), vec![0, 1]);
        let full = Subcomplex::full(&x);
        assert!(relative_cohomology(&x, &full, Coeffs::Integers).unwrap().is_zero());
        let abs = relative_cohomology(&x, &Subcomplex::empty(&x), Coeffs::Integers).unwrap();
        assert_eq!(abs.betti(), vec![1]);
    }

    #[test]
    fn klein_bottle_torsion_in_h2() {
        let k = DeltaComplex::new(vec![
            vec![Simplex::vertex()],
            vec![Simplex::new(vec![0, 0]); 3],
            vec![Simplex::new(vec![0, 2, 1]), Simplex::new(vec![0, 1, 2])],
        ])
        .unwrap();
        let b = CohomologyBasis::of_complex(&k, Coeffs::Integers);
        assert_eq!(b.groups().get(1), AbelianGroup::free(1));
        assert_eq!(b.groups().get(2), AbelianGroup::new(0, [2]));
        assert_eq!(b.groups(), k.chain_complex(Coeffs::Integers).cohomology());
    }

    #[test]
    fn express_round_trip() {
        let x = DeltaComplex::from_simplices(&[vec![0, 1], vec![1, 2], vec![0, 2]]);
        let b = CohomologyBasis::of_complex(&x, Coeffs::Integers);
        assert_eq!(b.rank(1), 1);
        let g = b.degree(1).generators[0].clone();
        assert_eq!(b.express(1, &g).unwrap(), vec![1]);
        // adding a coboundary does not change the class
        let mut shifted = g.clone();
        let d0 = x.boundary_matrix(1, Coeffs::Integers).transpose();
        let cob = d0.mul_vec(&[1, 0, 0], Coeffs::Integers);
        for (s, c) in shifted.iter_mut().zip(&cob) {
            *s += 3 * c;
        }
        assert_eq!(b.express(1, &shifted).unwrap(), vec![1]);
        assert!(matches!(b.express(1, &[1, 0]), Err(DeltaError::CochainLength(1))));
    }

    #[test]
    fn point_into_circle_is_zero_in_degree_one() {
        let x = DeltaComplex::from_simplices(&[vec![0, 1], vec![1, 2], vec![0, 2]]);
        let circle = CohomologyBasis::of_complex(&x, Coeffs::Integers);
        let pt = CohomologyBasis::absolute(&x, &Subcomplex::closure(&x, &[(0, 0)]).unwrap(), Coeffs::Integers).unwrap();
        let m = circle.induced_map(&pt, 1).unwrap();
        assert_eq!((m.nrows(), m.ncols()), (0, 1));
        let m0 = circle.induced_map(&pt, 0).unwrap();
        assert_eq!(m0, DenseMatrix::from_rows(&[[1]]));
        assert!(matches!(pt.induced_map(&circle, 0), Err(DeltaError::NotNested)));
    }

    #[test]
    fn projective_plane() {
        // edges a, b loops at v0; c from v1 to v0; triangles (a, b, a), (b, c, c)
        let rp2 = DeltaComplex::new(vec![
            vec![Simplex::vertex(), Simplex::vertex()],
            vec![Simplex::new(vec![0, 0]), Simplex::new(vec![0, 0]), Simplex::new(vec![0, 1])],
            vec![Simplex::new(vec![0, 1, 0]), Simplex::new(vec![1, 2, 2])],
        ])
        .unwrap();
        let z = CohomologyBasis::of_complex(&rp2, Coeffs::Integers);
        assert_eq!(z.groups().betti(), vec![1, 0, 0]);
        assert_eq!(z.groups().get(2), AbelianGroup::new(0, [2]));
        let f2 = Coeffs::Mod(2);
        let b = CohomologyBasis::of_complex(&rp2, f2);
        assert_eq!(b.groups().betti(), vec![1, 1, 1]);
        let alpha = &b.degree(1).generators[0];
        let sq = crate::delta::cup_product(&rp2, 1, alpha, 1, alpha, f2);
        assert_eq!(b.express(2, &sq).unwrap(), vec![1]);
    }

    #[test]
    fn mobius_boundary_restriction_is_twice_a_generator() {
        let m = crate::corpus::by_name("mobius").unwrap().model;
        let x = m.complex();
        let whole = CohomologyBasis::of_complex(x, Coeffs::Integers);
        let edge = CohomologyBasis::absolute(x, m.facet(0), Coeffs::Integers).unwrap();
        let r = whole.induced_map(&edge, 1).unwrap();
        assert_eq!((r.nrows(), r.ncols()), (1, 1));
        assert_eq!(r.get(0, 0).abs(), 2);
        let mod2 = CohomologyBasis::of_complex(x, Coeffs::Mod(2))
            .induced_map(&CohomologyBasis::absolute(x, m.facet(0), Coeffs::Mod(2)).unwrap(), 1)
            .unwrap();
        assert!(mod2.is_zero());
    }
}
