//! Brute-force constructions of the spaces themselves: the real
//! moment-angle manifold as a glued Δ-complex of `2^k` sheets, and the
//! moment-angle manifold as the cellular chain complex of the polyhedral
//! product of `(D^2, S^1)` with cells `{v, e, D}`.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;
use thiserror::Error;

use crate::coeffs::Coeffs;
use crate::corners::PanelStructure;
use crate::delta::snf::rank;
use crate::delta::{
    cup_product, glue, ChainComplex, CohomologyBasis, DeltaComplex, DeltaError, Identification, SparseMatrix,
};
use crate::group::{AbelianGroup, GradedAbelianGroup};
use crate::hochster::HochsterTable;
use crate::rings::{CohomologyRing, RingLaw};

pub const DEFAULT_CELL_BUDGET: usize = 500_000;
pub const BUDGET_ENV: &str = "STRATA_CELL_BUDGET";

#[derive(Debug, Error)]
pub enum OracleError {
    #[error("construction needs about {estimate} cells, over the budget of {budget} (set {BUDGET_ENV} to raise it)")]
    Budget { estimate: usize, budget: usize },
    #[error(transparent)]
    Delta(#[from] DeltaError),
    #[error("sheet complex has {found} simplices, expected {expected}")]
    SheetCount { expected: usize, found: usize },
}

/// Cell budget from the environment, or the default.
pub fn cell_budget() -> usize {
    std::env::var(BUDGET_ENV).ok().and_then(|v| v.trim().parse().ok()).unwrap_or(DEFAULT_CELL_BUDGET)
}

/// The glued Δ-complex of the real moment-angle manifold.
#[derive(Clone, Debug)]
pub struct SheetComplex {
    pub complex: DeltaComplex,
    /// `class_of[g][n][i]`: the simplex of the quotient carrying `(σ, g)`.
    pub class_of: Vec<Vec<Vec<usize>>>,
}

/// `Σ_σ 2^{k - |I_σ|}` over simplices of `Q`.
pub fn expected_sheet_simplices(panels: &PanelStructure<'_>) -> usize {
    let x = panels.complex();
    let k = panels.k();
    (0..x.num_dims())
        .flat_map(|n| (0..x.count(n)).map(move |i| (n, i)))
        .map(|(n, i)| 1usize << (k - panels.strata_index(n, i).len()))
        .sum()
}

pub fn build_real_zq(panels: &PanelStructure<'_>, budget: usize) -> Result<SheetComplex, OracleError> {
    let x = panels.complex();
    let k = panels.k();
    let raw = x.total_simplices().saturating_mul(1usize.checked_shl(k as u32).unwrap_or(usize::MAX));
    if k >= usize::BITS as usize - 1 || raw > budget {
        return Err(OracleError::Budget { estimate: raw, budget });
    }
    let sheets = vec![x.clone(); 1 << k];
    let panel_refs: Vec<Vec<(usize, usize)>> = panels.panels().iter().map(|p| p.simplices()).collect();
    let mut ids = Vec::new();
    for g in 0..1usize << k {
        for (i, refs) in panel_refs.iter().enumerate() {
            if g >> i & 1 == 0 {
                ids.push(Identification {
                    sheet_a: g,
                    sheet_b: g | 1 << i,
                    pairs: refs.iter().map(|&r| (r, r)).collect(),
                });
            }
        }
    }
    let glued = glue(&sheets, &ids)?;
    let expected = expected_sheet_simplices(panels);
    let found = glued.complex.total_simplices();
    if found != expected {
        return Err(OracleError::SheetCount { expected, found });
    }
    Ok(SheetComplex { complex: glued.complex, class_of: glued.class_of })
}

/// Cellular chain complex of `(D^2, S^1)^Q` for a panel structure.
#[derive(Clone, Debug)]
pub struct CellularZQ {
    pub chain: ChainComplex,
    pub cells: usize,
}

/// `Σ_σ 2^{k - |I_σ|} 3^{|I_σ|}`.
pub fn expected_zq_cells(panels: &PanelStructure<'_>) -> usize {
    let x = panels.complex();
    let k = panels.k() as u32;
    (0..x.num_dims())
        .flat_map(|n| (0..x.count(n)).map(move |i| (n, i)))
        .map(|(n, i)| {
            let s = panels.strata_index(n, i).len() as u32;
            2usize.saturating_pow(k - s).saturating_mul(3usize.saturating_pow(s))
        })
        .fold(0usize, usize::saturating_add)
}

const V: u8 = 0;
const E: u8 = 1;
const D: u8 = 2;

pub fn build_zq_chain(panels: &PanelStructure<'_>, coeffs: Coeffs, budget: usize) -> Result<CellularZQ, OracleError> {
    let estimate = expected_zq_cells(panels);
    if estimate > budget {
        return Err(OracleError::Budget { estimate, budget });
    }
    let x = panels.complex();
    let k = panels.k();
    let top = x.num_dims() + 2 * k;
    // cells by total dimension: (σ dim, σ index, disk factors)
    let mut cells: Vec<Vec<(usize, usize, Vec<u8>)>> = vec![Vec::new(); top];
    let mut index: HashMap<(usize, usize, Vec<u8>), usize> = HashMap::new();
    for n in 0..x.num_dims() {
        for i in 0..x.count(n) {
            let strata = panels.strata_index(n, i);
            let mut c = vec![V; k];
            loop {
                let d = n + c.iter().map(|&f| f as usize).sum::<usize>();
                index.insert((n, i, c.clone()), cells[d].len());
                cells[d].push((n, i, c.clone()));
                // odometer over {v, e} off the strata and {v, e, D} on it
                let mut pos = 0;
                loop {
                    if pos == k {
                        break;
                    }
                    let max = if strata.contains(pos) { D } else { E };
                    if c[pos] < max {
                        c[pos] += 1;
                        break;
                    }
                    c[pos] = V;
                    pos += 1;
                }
                if pos == k {
                    break;
                }
            }
        }
    }
    while cells.last().is_some_and(Vec::is_empty) {
        cells.pop();
    }
    let ranks: Vec<usize> = cells.iter().map(Vec::len).collect();
    let mut boundaries = Vec::new();
    for d in 1..cells.len() {
        let mut triplets = Vec::new();
        for (col, (n, i, c)) in cells[d].iter().enumerate() {
            if *n > 0 {
                for (t, &f) in x.faces(*n, *i).iter().enumerate() {
                    let row = index.get(&(n - 1, f, c.clone())).expect("faces stay in the same intersection");
                    triplets.push((*row, col, if t % 2 == 0 { 1 } else { -1 }));
                }
            }
            let mut before = *n;
            for j in 0..k {
                if c[j] == D {
                    let mut b = c.clone();
                    b[j] = E;
                    let row = index.get(&(*n, *i, b)).expect("boundary of a disk cell is present");
                    triplets.push((*row, col, if before % 2 == 0 { 1 } else { -1 }));
                }
                before += c[j] as usize;
            }
        }
        boundaries.push(SparseMatrix::from_triplets(ranks[d - 1], ranks[d], triplets, coeffs));
    }
    let chain = ChainComplex::new(coeffs, ranks, boundaries)?;
    Ok(CellularZQ { chain, cells: estimate })
}

/// Multiplication ranks `rank(H^p ⊗ H^q -> H^{p+q})` by bidegree. Over
/// the integers only free parts count (rank over the rationals).
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct PairingRanks(pub BTreeMap<String, usize>);

impl PairingRanks {
    pub fn key(p: usize, q: usize) -> String {
        format!("{p},{q}")
    }

    pub fn get(&self, p: usize, q: usize) -> usize {
        self.0.get(&Self::key(p, q)).copied().unwrap_or(0)
    }

    pub fn set(&mut self, p: usize, q: usize, r: usize) {
        if r > 0 {
            self.0.insert(Self::key(p, q), r);
        }
    }
}

/// Rank of a set of product coordinate vectors. Over the integers, only
/// the coordinates of free generators (order 0) are kept.
pub fn product_rank(rows: &[Vec<i64>], orders: &[u64], coeffs: Coeffs) -> usize {
    let keep: Vec<usize> = (0..orders.len()).filter(|&i| coeffs.is_field() || orders[i] == 0).collect();
    let triplets = rows.iter().enumerate().flat_map(|(r, v)| keep.iter().enumerate().map(move |(c, &i)| (r, c, v[i])));
    let m = SparseMatrix::from_triplets(rows.len(), keep.len(), triplets, coeffs);
    rank(&m, coeffs)
}

/// Ranks of the cup-product pairing on the glued Δ-complex.
pub fn oracle_real_ring(sheets: &SheetComplex, coeffs: Coeffs) -> PairingRanks {
    let x = &sheets.complex;
    let basis = CohomologyBasis::of_complex(x, coeffs);
    let mut out = PairingRanks::default();
    let top = x.num_dims();
    for p in 1..top {
        for q in 1..top - p {
            let (gp, gq) = (basis.degree(p), basis.degree(q));
            let mut rows = Vec::new();
            for (a, oa) in gp.generators.iter().zip(&gp.orders) {
                for (b, ob) in gq.generators.iter().zip(&gq.orders) {
                    if !coeffs.is_field() && (*oa != 0 || *ob != 0) {
                        continue;
                    }
                    let w = cup_product(x, p, a, q, b, coeffs);
                    rows.push(basis.express(p + q, &w).expect("cup of cocycles is a cocycle"));
                }
            }
            out.set(p, q, product_rank(&rows, &basis.degree(p + q).orders, coeffs));
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupDiff {
    pub degree: usize,
    pub formula: AbelianGroup,
    pub oracle: AbelianGroup,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankDiff {
    pub bidegree: String,
    pub formula: usize,
    pub oracle: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Comparison {
    pub ok: bool,
    pub group_diffs: Vec<GroupDiff>,
    pub rank_diffs: Vec<RankDiff>,
}

impl Comparison {
    pub fn merge(mut self, other: Comparison) -> Comparison {
        self.ok &= other.ok;
        self.group_diffs.extend(other.group_diffs);
        self.rank_diffs.extend(other.rank_diffs);
        self
    }

    pub fn passing() -> Self {
        Comparison { ok: true, ..Default::default() }
    }
}

/// Exact comparison: ranks and invariant factors in every degree.
pub fn compare_groups(formula: &GradedAbelianGroup, oracle: &GradedAbelianGroup) -> Comparison {
    let top = formula.top_degree().max(oracle.top_degree()).unwrap_or(0);
    let group_diffs: Vec<GroupDiff> = (0..=top)
        .filter(|&p| formula.get(p) != oracle.get(p))
        .map(|p| GroupDiff { degree: p, formula: formula.get(p), oracle: oracle.get(p) })
        .collect();
    Comparison { ok: group_diffs.is_empty(), group_diffs, rank_diffs: Vec::new() }
}

pub fn compare_ranks(formula: &PairingRanks, oracle: &PairingRanks) -> Comparison {
    let keys: std::collections::BTreeSet<&String> = formula.0.keys().chain(oracle.0.keys()).collect();
    let rank_diffs: Vec<RankDiff> = keys
        .into_iter()
        .filter_map(|key| {
            let (f, o) = (formula.0.get(key).copied().unwrap_or(0), oracle.0.get(key).copied().unwrap_or(0));
            (f != o).then(|| RankDiff { bidegree: key.clone(), formula: f, oracle: o })
        })
        .collect();
    Comparison { ok: rank_diffs.is_empty(), group_diffs: Vec::new(), rank_diffs }
}

/// Formula versus glued complex for the real moment-angle manifold:
/// groups, and multiplication ranks when `with_ring` is set.
pub fn compare_real(
    panels: &PanelStructure<'_>,
    coeffs: Coeffs,
    budget: usize,
    with_ring: bool,
) -> Result<Comparison, OracleError> {
    let sheets = build_real_zq(panels, budget)?;
    let table = HochsterTable::new(panels, coeffs);
    let formula = table.total(|_| 0);
    let oracle = sheets.complex.chain_complex(coeffs).cohomology();
    let mut out = compare_groups(&formula, &oracle);
    if with_ring {
        let ring = CohomologyRing::new(&table, RingLaw::real(panels.k())).expect("law sized to the table");
        let ranks = ring.structure_constants().multiplication_ranks();
        out = out.merge(compare_ranks(&ranks, &oracle_real_ring(&sheets, coeffs)));
    }
    Ok(out)
}

/// Formula versus the cellular chain complex of the moment-angle
/// manifold. Over the integers the oracle's cohomology is taken both from
/// its homology by universal coefficients and from the dual complex.
pub fn compare_complex(panels: &PanelStructure<'_>, coeffs: Coeffs, budget: usize) -> Result<Comparison, OracleError> {
    let cells = build_zq_chain(panels, coeffs, budget)?;
    let formula = HochsterTable::new(panels, coeffs).total(|o| o.len());
    let direct = compare_groups(&formula, &cells.chain.cohomology());
    if coeffs.is_field() {
        return Ok(direct);
    }
    let uct = GradedAbelianGroup::cohomology_from_homology(&cells.chain.homology());
    Ok(direct.merge(compare_groups(&formula, &uct)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corners::Partition;
    use crate::corpus::by_name;

    #[test]
    fn interval_real_is_a_four_edge_circle() {
        let e = by_name("interval").unwrap();
        let p = e.model.panels(&Partition::trivial(2)).unwrap();
        let s = build_real_zq(&p, DEFAULT_CELL_BUDGET).unwrap();
        assert_eq!((s.complex.count(0), s.complex.count(1)), (4, 4));
        assert_eq!(s.complex.chain_complex(Coeffs::Integers).homology().betti(), vec![1, 1]);
    }

    #[test]
    fn interval_complex_is_s3() {
        let e = by_name("interval").unwrap();
        let p = e.model.panels(&Partition::trivial(2)).unwrap();
        let z = build_zq_chain(&p, Coeffs::Integers, DEFAULT_CELL_BUDGET).unwrap();
        // 16 of the 3 * 3^2 = 27 cells of I x (D^2)^2 lie in the subcomplex
        assert_eq!(z.chain.ranks().iter().sum::<usize>(), 16);
        assert_eq!(z.cells, 16);
        assert_eq!(z.chain.homology().betti(), vec![1, 0, 0, 1]);
    }

    #[test]
    fn budget_is_enforced() {
        let e = by_name("interval").unwrap();
        let p = e.model.panels(&Partition::trivial(2)).unwrap();
        assert!(matches!(
            build_zq_chain(&p, Coeffs::Integers, 10),
            Err(OracleError::Budget { estimate: 16, budget: 10 })
        ));
        assert!(matches!(build_real_zq(&p, 3), Err(OracleError::Budget { .. })));
    }

    #[test]
    fn comparisons_pinpoint_differences() {
        let a = GradedAbelianGroup::from_groups([(1, AbelianGroup::new(0, [4]))]);
        let b = GradedAbelianGroup::from_groups([(1, AbelianGroup::new(0, [2, 2]))]);
        let c = compare_groups(&a, &b);
        assert!(!c.ok);
        assert_eq!(c.group_diffs[0].degree, 1);
        assert!(compare_groups(&a, &a).ok);
        let r1 = GradedAbelianGroup::from_betti(&[1, 2]);
        let r2 = GradedAbelianGroup::from_betti(&[1, 1]);
        assert_eq!(compare_groups(&r1, &r2).group_diffs.len(), 1);
    }
}
