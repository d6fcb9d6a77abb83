use rayon::prelude::*;

use crate::coeffs::Coeffs;
use crate::delta::snf::invariant_factors;
use crate::delta::{DeltaComplex, DeltaError, SparseMatrix, Subcomplex};
use crate::group::{AbelianGroup, GradedAbelianGroup};

/// Free chain complex `C_0 <- C_1 <- ...`. `boundaries[n-1]` is `∂_n`
/// with rows indexed by `(n-1)`-cells and columns by `n`-cells.
#[derive(Clone, Debug)]
pub struct ChainComplex {
    coeffs: Coeffs,
    ranks: Vec<usize>,
    boundaries: Vec<SparseMatrix>,
}

/// Cochain complex `C^0 -> C^1 -> ...`. `coboundaries[n]` is `δ_n` with
/// rows indexed by `(n+1)`-cells and columns by `n`-cells.
#[derive(Clone, Debug)]
pub struct CochainComplex {
    coeffs: Coeffs,
    ranks: Vec<usize>,
    coboundaries: Vec<SparseMatrix>,
}

/// Homology-type groups of a sequence of maps. `out_map(n)` leaves degree
/// `n`, `in_map(n)` arrives in degree `n`.
fn graded_groups<'a>(
    coeffs: Coeffs,
    ranks: &[usize],
    out_map: impl Fn(usize) -> Option<&'a SparseMatrix> + Sync,
    in_map: impl Fn(usize) -> Option<&'a SparseMatrix> + Sync,
) -> GradedAbelianGroup {
    let factors: Vec<(usize, Vec<i64>)> = (0..ranks.len())
        .into_par_iter()
        .map(|n| {
            let out_rank = out_map(n).map_or(0, |m| invariant_factors(m, coeffs).len());
            let in_factors = in_map(n).map(|m| invariant_factors(m, coeffs)).unwrap_or_default();
            (out_rank, in_factors)
        })
        .collect();
    GradedAbelianGroup::from_groups(ranks.iter().enumerate().map(|(n, &c)| {
        let (out_rank, ref in_factors) = factors[n];
        let free = c - out_rank - in_factors.len();
        let torsion =
            if coeffs.is_field() { Vec::new() } else { in_factors.iter().map(|d| d.unsigned_abs()).collect() };
        (n, AbelianGroup::new(free, torsion))
    }))
}

fn check_composition(mats: &[SparseMatrix], coeffs: Coeffs, offset: usize) -> Result<(), DeltaError> {
    for (k, pair) in mats.windows(2).enumerate() {
        if !pair[0].mul(&pair[1], coeffs).is_zero() {
            return Err(DeltaError::BoundarySquare(k + offset));
        }
    }
    Ok(())
}

impl ChainComplex {
    pub fn new(coeffs: Coeffs, ranks: Vec<usize>, boundaries: Vec<SparseMatrix>) -> Result<Self, DeltaError> {
        if boundaries.len() + 1 != ranks.len().max(1) {
            return Err(DeltaError::ShapeMismatch(boundaries.len()));
        }
        for (k, b) in boundaries.iter().enumerate() {
            let n = k + 1;
            if b.nrows() != ranks[n - 1] || b.ncols() != ranks[n] {
                return Err(DeltaError::ShapeMismatch(n));
            }
        }
        check_composition(&boundaries, coeffs, 1)?;
        Ok(ChainComplex { coeffs, ranks, boundaries })
    }

    pub fn coeffs(&self) -> Coeffs {
        self.coeffs
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    /// `∂_n`, for `n >= 1` within range.
    pub fn boundary(&self, n: usize) -> Option<&SparseMatrix> {
        n.checked_sub(1).and_then(|k| self.boundaries.get(k))
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.ranks.iter().enumerate().map(|(n, &c)| if n % 2 == 0 { c as i64 } else { -(c as i64) }).sum()
    }

    /// `H_n = ker ∂_n / im ∂_{n+1}`; over a field only ranks are reported.
    pub fn homology(&self) -> GradedAbelianGroup {
        graded_groups(self.coeffs, &self.ranks, |n| self.boundary(n), |n| self.boundary(n + 1))
    }

    pub fn dual(&self) -> CochainComplex {
        CochainComplex {
            coeffs: self.coeffs,
            ranks: self.ranks.clone(),
            coboundaries: self.boundaries.iter().map(SparseMatrix::transpose).collect(),
        }
    }

    /// Cohomology of the dual complex, computed from the coboundary matrices.
    pub fn cohomology(&self) -> GradedAbelianGroup {
        self.dual().cohomology()
    }
}

impl CochainComplex {
    pub fn new(coeffs: Coeffs, ranks: Vec<usize>, coboundaries: Vec<SparseMatrix>) -> Result<Self, DeltaError> {
        if coboundaries.len() + 1 != ranks.len().max(1) {
            return Err(DeltaError::ShapeMismatch(coboundaries.len()));
        }
        for (n, d) in coboundaries.iter().enumerate() {
            if d.nrows() != ranks[n + 1] || d.ncols() != ranks[n] {
                return Err(DeltaError::ShapeMismatch(n));
            }
        }
        let reversed: Vec<SparseMatrix> = coboundaries.iter().rev().cloned().collect();
        check_composition(&reversed, coeffs, 0)?;
        Ok(CochainComplex { coeffs, ranks, coboundaries })
    }

    pub fn coeffs(&self) -> Coeffs {
        self.coeffs
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    /// `δ_n : C^n -> C^{n+1}`.
    pub fn coboundary(&self, n: usize) -> Option<&SparseMatrix> {
        self.coboundaries.get(n)
    }

    /// `H^n = ker δ_n / im δ_{n-1}`; over a field only ranks are reported.
    pub fn cohomology(&self) -> GradedAbelianGroup {
        graded_groups(
            self.coeffs,
            &self.ranks,
            |n| self.coboundary(n),
            |n| n.checked_sub(1).and_then(|k| self.coboundary(k)),
        )
    }
}

/// The cells of `Y \ A` in each dimension, with maps between parent and
/// local indices.
#[derive(Clone, Debug)]
pub struct RelativeCells {
    pub global: Vec<Vec<usize>>,
    pub local: Vec<Vec<Option<usize>>>,
}

impl RelativeCells {
    pub fn new(x: &DeltaComplex, y: &Subcomplex, a: &Subcomplex) -> Result<Self, DeltaError> {
        y.check_shape(x)?;
        a.check_shape(x)?;
        let mut global = Vec::with_capacity(x.num_dims());
        let mut local = Vec::with_capacity(x.num_dims());
        for n in 0..x.num_dims() {
            let mut g = Vec::new();
            let mut l = vec![None; x.count(n)];
            for (i, slot) in l.iter_mut().enumerate() {
                if y.contains(n, i) && !a.contains(n, i) {
                    *slot = Some(g.len());
                    g.push(i);
                }
            }
            global.push(g);
            local.push(l);
        }
        Ok(RelativeCells { global, local })
    }

    pub fn count(&self, n: usize) -> usize {
        self.global.get(n).map_or(0, Vec::len)
    }

    pub fn num_dims(&self) -> usize {
        self.global.len()
    }

    /// Restrict a parent cochain to the local cells.
    pub fn restrict(&self, n: usize, cochain: &[i64]) -> Vec<i64> {
        self.global.get(n).map_or_else(Vec::new, |g| g.iter().map(|&i| cochain[i]).collect())
    }

    /// Extend a local cochain by zero to the parent.
    pub fn extend(&self, n: usize, local: &[i64], parent_count: usize) -> Vec<i64> {
        let mut out = vec![0; parent_count];
        if let Some(g) = self.global.get(n) {
            for (k, &i) in g.iter().enumerate() {
                out[i] = local[k];
            }
        }
        out
    }

    /// Relative cochain complex of the pair: cochains on `Y` vanishing on `A`.
    pub fn cochain_complex(&self, x: &DeltaComplex, coeffs: Coeffs) -> CochainComplex {
        let ranks: Vec<usize> = (0..self.num_dims()).map(|n| self.count(n)).collect();
        let coboundaries = (0..self.num_dims().saturating_sub(1))
            .map(|n| {
                let triplets = self.global[n + 1].iter().enumerate().flat_map(|(row, &s)| {
                    x.faces(n + 1, s).iter().enumerate().filter_map(move |(k, &f)| {
                        self.local[n][f].map(|col| (row, col, if k % 2 == 0 { 1 } else { -1 }))
                    })
                });
                SparseMatrix::from_triplets(ranks[n + 1], ranks[n], triplets, coeffs)
            })
            .collect();
        CochainComplex::new(coeffs, ranks, coboundaries).expect("relative cochains of a Δ-complex form a complex")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::delta::Simplex;

    fn circle() -> DeltaComplex {
        DeltaComplex::new(vec![vec![Simplex::vertex()], vec![Simplex::new(vec![0, 0])]]).unwrap()
    }

    #[test]
    fn circle_homology() {
        let h = circle().chain_complex(Coeffs::Integers).homology();
        assert_eq!(h.betti(), vec![1, 1]);
    }

    #[test]
    fn two_points() {
        let x = DeltaComplex::new(vec![vec![Simplex::vertex(), Simplex::vertex()]]).unwrap();
        let h = x.chain_complex(Coeffs::Integers).homology();
        assert_eq!(h.get(0), AbelianGroup::free(2));
    }

    #[test]
    fn bad_composition_rejected() {
        let d1 = SparseMatrix::from_triplets(1, 1, [(0, 0, 1)], Coeffs::Integers);
        let d2 = SparseMatrix::from_triplets(1, 1, [(0, 0, 1)], Coeffs::Integers);
        let err = ChainComplex::new(Coeffs::Integers, vec![1, 1, 1], vec![d1, d2]).unwrap_err();
        assert_eq!(err, DeltaError::BoundarySquare(1));
    }

    #[test]
    fn empty_complex() {
        let x = DeltaComplex::empty();
        assert!(x.chain_complex(Coeffs::Integers).homology().is_zero());
    }
}
