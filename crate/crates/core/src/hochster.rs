//! Group-level decompositions: cohomology of moment-angle manifolds and of
//! polyhedral products of disk–sphere pairs as direct sums of relative
//! cohomology groups `H^*(Q, F_ω)` with degree shifts.

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::coeffs::Coeffs;
use crate::corners::PanelStructure;
use crate::delta::{CohomologyBasis, DeltaComplex, Subcomplex};
use crate::group::{AbelianGroup, GradedAbelianGroup};
use crate::index_set::IndexSet;
use crate::series::Series;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum HochsterError {
    #[error("sphere dimension vector has length {found}, expected {expected}")]
    LawLength { expected: usize, found: usize },
    #[error("bad sphere dimension vector {0:?}")]
    BadLaw(String),
    #[error("reduced series {0} has a nonzero constant term")]
    ConstantTerm(usize),
    #[error("expected {expected} series, got {found}")]
    SeriesCount { expected: usize, found: usize },
}

/// Sphere dimensions `n_1, .., n_k` of the pairs `(D^{n_i+1}, S^{n_i})`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SphereDims(Vec<usize>);

impl SphereDims {
    pub fn new(n: Vec<usize>) -> Self {
        SphereDims(n)
    }

    /// All ones: the moment-angle case.
    pub fn complex(k: usize) -> Self {
        SphereDims(vec![1; k])
    }

    /// All zeros: the real moment-angle case.
    pub fn real(k: usize) -> Self {
        SphereDims(vec![0; k])
    }

    pub fn parse(s: &str) -> Result<Self, HochsterError> {
        if s.trim().is_empty() {
            return Ok(SphereDims(Vec::new()));
        }
        s.split(',')
            .map(|t| t.trim().parse::<usize>().map_err(|_| HochsterError::BadLaw(s.to_string())))
            .collect::<Result<Vec<_>, _>>()
            .map(SphereDims)
    }

    pub fn k(&self) -> usize {
        self.0.len()
    }

    pub fn dims(&self) -> &[usize] {
        &self.0
    }

    pub fn check_len(&self, k: usize) -> Result<(), HochsterError> {
        if self.k() != k {
            return Err(HochsterError::LawLength { expected: k, found: self.k() });
        }
        Ok(())
    }

    /// `J_0 = {i : n_i = 0}`.
    pub fn j0(&self) -> IndexSet {
        IndexSet::from_indices((0..self.k()).filter(|&i| self.0[i] == 0))
    }

    /// `N_ω = Σ_{i ∈ ω} n_i`.
    pub fn n_of(&self, omega: IndexSet) -> usize {
        omega.iter().map(|i| self.0[i]).sum()
    }

    pub fn is_complex(&self) -> bool {
        self.0.iter().all(|&n| n == 1)
    }

    pub fn is_real(&self) -> bool {
        self.0.iter().all(|&n| n == 0)
    }
}

/// `H^*(Q, F_ω)` for every `ω ⊆ [k]`, with canonical bases.
#[derive(Clone, Debug)]
pub struct HochsterTable {
    k: usize,
    complex: DeltaComplex,
    coeffs: Coeffs,
    entries: Vec<CohomologyBasis>,
}

#[derive(Clone, Debug, Serialize)]
pub struct TableRow {
    pub omega: IndexSet,
    pub p: usize,
    pub rank: usize,
    pub torsion: Vec<u64>,
    pub shifted_degree: usize,
}

impl HochsterTable {
    pub fn new(panels: &PanelStructure<'_>, coeffs: Coeffs) -> Self {
        let k = panels.k();
        let x = panels.complex();
        let full = Subcomplex::full(x);
        let entries = IndexSet::subsets(k)
            .collect::<Vec<_>>()
            .into_par_iter()
            .map(|omega| {
                let a = panels.union(omega).expect("ω in range");
                CohomologyBasis::new(x, &full, &a, coeffs).expect("subcomplexes of the model")
            })
            .collect();
        HochsterTable { k, complex: x.clone(), coeffs, entries }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn coeffs(&self) -> Coeffs {
        self.coeffs
    }

    pub fn complex(&self) -> &DeltaComplex {
        &self.complex
    }

    /// Basis of `H^*(Q, F_ω)`.
    pub fn entry(&self, omega: IndexSet) -> &CohomologyBasis {
        &self.entries[omega.0 as usize]
    }

    pub fn groups(&self, omega: IndexSet) -> GradedAbelianGroup {
        self.entry(omega).groups()
    }

    pub fn omegas(&self) -> impl Iterator<Item = IndexSet> {
        IndexSet::subsets(self.k)
    }

    /// `⊕_ω H^{p - shift(ω)}(Q, F_ω)`.
    pub fn total(&self, shift: impl Fn(IndexSet) -> usize) -> GradedAbelianGroup {
        let mut out = GradedAbelianGroup::new();
        for omega in self.omegas() {
            out.add_shifted(&self.groups(omega), shift(omega));
        }
        out
    }

    pub fn rows(&self, shift: impl Fn(IndexSet) -> usize) -> Vec<TableRow> {
        let mut rows = Vec::new();
        for omega in self.omegas() {
            for (p, g) in self.groups(omega).iter() {
                rows.push(TableRow {
                    omega,
                    p,
                    rank: g.rank,
                    torsion: g.torsion.clone(),
                    shifted_degree: p + shift(omega),
                });
            }
        }
        rows
    }

    /// `Σ_ω χ(Q, F_ω)`.
    pub fn euler_characteristic(&self) -> i64 {
        self.omegas().map(|o| self.groups(o).euler_characteristic()).sum()
    }
}

/// Output document: total groups by degree plus the table.
#[derive(Clone, Debug, Serialize)]
pub struct GroupsReport {
    pub groups: std::collections::BTreeMap<String, AbelianGroup>,
    pub table: Vec<TableRow>,
}

impl GroupsReport {
    pub fn new(table: &HochsterTable, dims: &SphereDims) -> Self {
        let total = table.total(|o| dims.n_of(o));
        GroupsReport {
            groups: total.iter().map(|(p, g)| (p.to_string(), g.clone())).collect(),
            table: table.rows(|o| dims.n_of(o)),
        }
    }
}

/// `H^p(Z_Q) = ⊕_ω H^{p-|ω|}(Q, F_ω)`.
pub fn moment_angle_groups(panels: &PanelStructure<'_>) -> GradedAbelianGroup {
    HochsterTable::new(panels, Coeffs::Integers).total(|o| o.len())
}

/// `H^p(RZ_Q) = ⊕_ω H^p(Q, F_ω)`.
pub fn real_moment_angle_groups(panels: &PanelStructure<'_>, coeffs: Coeffs) -> GradedAbelianGroup {
    HochsterTable::new(panels, coeffs).total(|_| 0)
}

/// `⊕_ω H^{p-N_ω}(Q, F_ω)` for the pairs `(D^{n_i+1}, S^{n_i})`.
pub fn sphere_product_groups(
    panels: &PanelStructure<'_>,
    dims: &SphereDims,
) -> Result<GradedAbelianGroup, HochsterError> {
    dims.check_len(panels.k())?;
    Ok(HochsterTable::new(panels, Coeffs::Integers).total(|o| dims.n_of(o)))
}

/// Poincaré series (free ranks) of the absolute cohomology of a subcomplex.
pub fn poincare_series_of(panels: &PanelStructure<'_>, y: &Subcomplex, coeffs: Coeffs, t: usize) -> Series {
    let x = panels.complex();
    let g = CohomologyBasis::absolute(x, y, coeffs).expect("subcomplex of the model").groups();
    Series::from_coeffs((0..=t).map(|p| g.get(p).rank as i64).collect(), t)
}

/// `Σ_ω P(F_∩ω; t) · Π_{i ∈ ω} P̃_i(t)`, truncated at `t`, for polyhedral
/// products with contractible `A_i`. Coefficients are free ranks;
/// freeness of the factors is assumed.
pub fn contractible_a_series(
    panels: &PanelStructure<'_>,
    reduced: &[Series],
    t: usize,
) -> Result<Series, HochsterError> {
    if reduced.len() != panels.k() {
        return Err(HochsterError::SeriesCount { expected: panels.k(), found: reduced.len() });
    }
    if let Some(i) = reduced.iter().position(|s| s.coeff(0) != 0) {
        return Err(HochsterError::ConstantTerm(i + 1));
    }
    let terms: Vec<Series> = IndexSet::subsets(panels.k())
        .collect::<Vec<_>>()
        .into_par_iter()
        .filter_map(|omega| {
            let y = panels.intersection(omega).expect("ω in range");
            if y.is_empty() {
                return None;
            }
            let base = poincare_series_of(panels, &y, Coeffs::Integers, t);
            Some(omega.iter().fold(base, |acc, i| acc.mul(&reduced[i].truncate(t))))
        })
        .collect();
    Ok(terms.iter().fold(Series::zero(t), |acc, s| acc.add(s)))
}

/// For `ω ≠ ∅`, compare `H^p(Q, F_ω)` with `H̃^{p-1}(F_ω)`. Returns the
/// offending `ω` values; meaningful when `Q` is acyclic.
pub fn degeneration_mismatches(panels: &PanelStructure<'_>, table: &HochsterTable) -> Vec<IndexSet> {
    let x = panels.complex();
    table
        .omegas()
        .filter(|o| !o.is_empty())
        .filter(|&omega| {
            let f = panels.union(omega).expect("ω in range");
            let reduced = CohomologyBasis::absolute(x, &f, table.coeffs()).expect("subcomplex").groups().reduced();
            let mut shifted = GradedAbelianGroup::new();
            shifted.add_shifted(&reduced, 1);
            shifted != table.groups(omega)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corners::{CornersModel, Partition};

    fn interval() -> CornersModel {
        let x = DeltaComplex::from_simplices(&[vec![0, 1]]);
        CornersModel::new(x, 1, vec![vec![(0, 0)], vec![(0, 1)]]).unwrap()
    }

    #[test]
    fn interval_table_and_totals() {
        let q = interval();
        let p = q.panels(&Partition::trivial(2)).unwrap();
        let t = HochsterTable::new(&p, Coeffs::Integers);
        assert_eq!(t.groups(IndexSet::EMPTY).betti(), vec![1]);
        assert!(t.groups(IndexSet::singleton(0)).is_zero());
        assert!(t.groups(IndexSet::singleton(1)).is_zero());
        assert_eq!(t.groups(IndexSet::all(2)).betti(), vec![0, 1]);
        assert_eq!(moment_angle_groups(&p).betti(), vec![1, 0, 0, 1]);
        assert_eq!(real_moment_angle_groups(&p, Coeffs::Integers).betti(), vec![1, 1]);
        let s5 = sphere_product_groups(&p, &SphereDims::new(vec![2, 2])).unwrap();
        assert_eq!(s5.betti(), vec![1, 0, 0, 0, 0, 1]);
        assert!(sphere_product_groups(&p, &SphereDims::new(vec![1])).is_err());
        assert!(degeneration_mismatches(&p, &t).is_empty());
    }

    #[test]
    fn interval_contractible_series() {
        let q = interval();
        let p = q.panels(&Partition::trivial(2)).unwrap();
        let t = 6;
        let zero = contractible_a_series(&p, &[Series::zero(t), Series::zero(t)], t).unwrap();
        assert_eq!(zero, Series::one(t));
        // spheres S^1, S^2 with A = point: 1 + t + t^2
        let s = contractible_a_series(&p, &[Series::monomial(1, t), Series::monomial(2, t)], t).unwrap();
        assert_eq!(s.coeffs(), &[1, 1, 1, 0, 0, 0, 0]);
        assert!(contractible_a_series(&p, &[Series::one(t), Series::zero(t)], t).is_err());
    }

    #[test]
    fn sphere_dims() {
        let d = SphereDims::parse("0,2,1").unwrap();
        assert_eq!(d.j0(), IndexSet::singleton(0));
        assert_eq!(d.n_of(IndexSet::all(3)), 3);
        assert!(SphereDims::parse("1,x").is_err());
        assert!(SphereDims::complex(3).is_complex());
    }
}
