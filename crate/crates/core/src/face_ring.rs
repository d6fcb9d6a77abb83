//! The topological face ring `𝐤⟨Q⟩ = ⊕_ω H^*(F_∩ω; 𝐤) ⊗ R^ω`, where
//! `R^ω` is spanned by monomials whose support is exactly `ω`.
//!
//! `(φ ⊗ f) ⋆ (φ' ⊗ f') = (κ^*φ ∪ κ^*φ') ⊗ f f'`, with `κ` the inclusion of
//! `F_∩(ω ∪ ω')`; the product is zero when that intersection is empty.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::coeffs::Coeffs;
use crate::corners::{Nerve, PanelStructure};
use crate::delta::{cup_product, CohomologyBasis, DeltaComplex, DeltaError};
use crate::index_set::IndexSet;
use crate::series::Series;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FaceRingError {
    #[error("coefficient rings differ")]
    CoeffMismatch,
    #[error("grading has {found} degrees for {expected} panels")]
    GradingLength { expected: usize, found: usize },
    #[error("generator degrees must be positive")]
    ZeroDegree,
    #[error("panel {0} out of range")]
    PanelOutOfRange(usize),
    #[error("bad term: {0}")]
    BadTerm(String),
    #[error("module action disagrees with the product by x_{0}")]
    RouteMismatch(usize),
    #[error(transparent)]
    Delta(#[from] DeltaError),
}

/// Degrees of the polynomial generators `x_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FaceRingGrading {
    degrees: Vec<usize>,
}

impl FaceRingGrading {
    pub fn new(degrees: Vec<usize>) -> Result<Self, FaceRingError> {
        if degrees.contains(&0) {
            return Err(FaceRingError::ZeroDegree);
        }
        Ok(FaceRingGrading { degrees })
    }

    pub fn uniform(k: usize, d: usize) -> Result<Self, FaceRingError> {
        Self::new(vec![d; k])
    }

    /// 2 over the integers, 1 over `ℤ/2`.
    pub fn standard(k: usize, coeffs: Coeffs) -> Self {
        let d = if coeffs == Coeffs::Mod(2) { 1 } else { 2 };
        FaceRingGrading { degrees: vec![d; k] }
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    /// 20 when every generator has degree at least 2, else 10.
    pub fn default_truncation(&self) -> usize {
        if self.degrees.iter().all(|&d| d >= 2) {
            20
        } else {
            10
        }
    }
}

/// Key of a homogeneous term `φ ⊗ x^e` with `φ ∈ H^p(F_∩ω)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct TermKey {
    pub omega: IndexSet,
    pub exponents: Vec<u32>,
    pub p: usize,
}

/// Finite sum of terms; coordinates are over the canonical basis of
/// `H^p(F_∩ω)` and reduced modulo generator orders.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceRingElement {
    coeffs: Coeffs,
    terms: BTreeMap<TermKey, Vec<i64>>,
}

impl FaceRingElement {
    pub fn coeffs(&self) -> Coeffs {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&TermKey, &[i64])> {
        self.terms.iter().map(|(k, v)| (k, v.as_slice()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SegreMismatch {
    pub omega: IndexSet,
    pub degree: usize,
    pub expected: usize,
    pub found: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum StanleyReisnerReport {
    Applicable {
        equal: bool,
        truncation: usize,
        face_ring: Series,
        stanley_reisner: Series,
        first_mismatch: Option<usize>,
    },
    NotApplicable {
        reason: String,
        omega: IndexSet,
    },
}

impl StanleyReisnerReport {
    pub fn is_equal(&self) -> bool {
        matches!(self, StanleyReisnerReport::Applicable { equal: true, .. })
    }
}

/// Bases of `H^*(F_∩ω)` for every face `ω` of the nerve, including
/// `F_∩∅ = Q`.
#[derive(Clone, Debug)]
pub struct FaceRing {
    k: usize,
    coeffs: Coeffs,
    grading: FaceRingGrading,
    complex: DeltaComplex,
    nerve: Nerve,
    bases: BTreeMap<IndexSet, CohomologyBasis>,
}

impl FaceRing {
    pub fn new(panels: &PanelStructure<'_>, coeffs: Coeffs, grading: FaceRingGrading) -> Result<Self, FaceRingError> {
        let k = panels.k();
        if grading.degrees.len() != k {
            return Err(FaceRingError::GradingLength { expected: k, found: grading.degrees.len() });
        }
        let x = panels.complex();
        let nerve = panels.nerve();
        let omegas: Vec<IndexSet> = nerve.faces_with_empty().collect();
        let bases = omegas
            .par_iter()
            .map(|&omega| {
                let y = panels.intersection(omega).expect("ω in range");
                CohomologyBasis::absolute(x, &y, coeffs).map(|b| (omega, b))
            })
            .collect::<Result<BTreeMap<_, _>, _>>()?;
        Ok(FaceRing { k, coeffs, grading, complex: x.clone(), nerve, bases })
    }

    /// Standard grading for the coefficient ring.
    pub fn standard(panels: &PanelStructure<'_>, coeffs: Coeffs) -> Result<Self, FaceRingError> {
        Self::new(panels, coeffs, FaceRingGrading::standard(panels.k(), coeffs))
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn coeffs(&self) -> Coeffs {
        self.coeffs
    }

    pub fn grading(&self) -> &FaceRingGrading {
        &self.grading
    }

    pub fn nerve(&self) -> &Nerve {
        &self.nerve
    }

    /// Basis of `H^*(F_∩ω)`, or `None` when the intersection is empty.
    pub fn basis(&self, omega: IndexSet) -> Option<&CohomologyBasis> {
        self.bases.get(&omega)
    }

    pub fn zero(&self) -> FaceRingElement {
        FaceRingElement { coeffs: self.coeffs, terms: BTreeMap::new() }
    }

    /// `1_Q ⊗ 1`.
    pub fn one(&self) -> FaceRingElement {
        self.unit_on(IndexSet::EMPTY, vec![0; self.k]).expect("valid unit")
    }

    /// `1 ∈ H^0(F_∩{i})` times `x_i`.
    pub fn x(&self, i: usize) -> Result<FaceRingElement, FaceRingError> {
        if i >= self.k {
            return Err(FaceRingError::PanelOutOfRange(i));
        }
        let mut e = vec![0; self.k];
        e[i] = 1;
        self.unit_on(IndexSet::singleton(i), e)
    }

    /// `1_{F_∩ω} ⊗ x^e`.
    pub fn unit_on(&self, omega: IndexSet, exponents: Vec<u32>) -> Result<FaceRingElement, FaceRingError> {
        self.check_exponents(omega, &exponents)?;
        let Some(b) = self.basis(omega) else {
            return Ok(self.zero());
        };
        let ones: Vec<i64> = (0..b.parent_count(0)).map(|v| i64::from(b.space().contains(0, v))).collect();
        let coords = b.express(0, &ones)?;
        self.term(omega, 0, coords, exponents)
    }

    fn check_exponents(&self, omega: IndexSet, exponents: &[u32]) -> Result<(), FaceRingError> {
        if exponents.len() != self.k {
            return Err(FaceRingError::BadTerm(format!("{} exponents for {} panels", exponents.len(), self.k)));
        }
        if omega.iter().any(|i| i >= self.k) {
            return Err(FaceRingError::BadTerm(format!("{omega} out of range")));
        }
        for (i, &e) in exponents.iter().enumerate() {
            if (e > 0) != omega.contains(i) {
                return Err(FaceRingError::BadTerm(format!("exponent support differs from {omega}")));
            }
        }
        Ok(())
    }

    /// A single term; zero when `F_∩ω` is empty.
    pub fn term(
        &self,
        omega: IndexSet,
        p: usize,
        coords: Vec<i64>,
        exponents: Vec<u32>,
    ) -> Result<FaceRingElement, FaceRingError> {
        self.check_exponents(omega, &exponents)?;
        let mut out = self.zero();
        let Some(b) = self.basis(omega) else {
            return Ok(out);
        };
        if coords.len() != b.rank(p) {
            return Err(FaceRingError::BadTerm(format!(
                "{} coordinates, H^{p} has {} generators",
                coords.len(),
                b.rank(p)
            )));
        }
        let reduced = b.reduce(p, &coords);
        if reduced.iter().any(|&c| c != 0) {
            out.terms.insert(TermKey { omega, exponents, p }, reduced);
        }
        Ok(out)
    }

    /// Total degree `p + Σ e_i deg(x_i)`.
    pub fn degree(&self, key: &TermKey) -> usize {
        key.p + key.exponents.iter().zip(&self.grading.degrees).map(|(&e, &d)| e as usize * d).sum::<usize>()
    }

    fn accumulate(&self, out: &mut BTreeMap<TermKey, Vec<i64>>, key: TermKey, coords: &[i64]) {
        let c = self.coeffs;
        let slot = out.entry(key).or_insert_with(|| vec![0; coords.len()]);
        for (s, &v) in slot.iter_mut().zip(coords) {
            *s = c.add(*s, v);
        }
    }

    fn normalize(&self, terms: BTreeMap<TermKey, Vec<i64>>) -> FaceRingElement {
        let mut terms = terms;
        for (k, v) in terms.iter_mut() {
            *v = self.bases[&k.omega].reduce(k.p, v);
        }
        terms.retain(|_, v| v.iter().any(|&x| x != 0));
        FaceRingElement { coeffs: self.coeffs, terms }
    }

    fn check_coeffs(&self, a: &FaceRingElement) -> Result<(), FaceRingError> {
        if a.coeffs != self.coeffs {
            return Err(FaceRingError::CoeffMismatch);
        }
        Ok(())
    }

    pub fn add(&self, a: &FaceRingElement, b: &FaceRingElement) -> Result<FaceRingElement, FaceRingError> {
        self.check_coeffs(a)?;
        self.check_coeffs(b)?;
        let mut terms = a.terms.clone();
        for (k, v) in &b.terms {
            self.accumulate(&mut terms, k.clone(), v);
        }
        Ok(self.normalize(terms))
    }

    pub fn scale(&self, a: &FaceRingElement, s: i64) -> FaceRingElement {
        let terms =
            a.terms.iter().map(|(k, v)| (k.clone(), v.iter().map(|&x| self.coeffs.mul(x, s)).collect())).collect();
        self.normalize(terms)
    }

    /// Restriction `H^p(F_∩ω) -> H^p(F_∩ω')` for `ω ⊆ ω'`.
    fn restrict(&self, from: IndexSet, to: IndexSet, p: usize, coords: &[i64]) -> Result<Vec<i64>, FaceRingError> {
        if from == to {
            return Ok(coords.to_vec());
        }
        let m = self.bases[&from].induced_map(&self.bases[&to], p)?;
        Ok(m.mul_vec(coords, self.coeffs))
    }

    pub fn star(&self, a: &FaceRingElement, b: &FaceRingElement) -> Result<FaceRingElement, FaceRingError> {
        self.check_coeffs(a)?;
        self.check_coeffs(b)?;
        let c = self.coeffs;
        let mut out = BTreeMap::new();
        for (ka, va) in &a.terms {
            for (kb, vb) in &b.terms {
                let omega = ka.omega.union(kb.omega);
                let Some(target) = self.basis(omega) else {
                    continue;
                };
                let deg = ka.p + kb.p;
                if target.rank(deg) == 0 {
                    continue;
                }
                let ra = target.reconstitute(ka.p, &self.restrict(ka.omega, omega, ka.p, va)?);
                let rb = target.reconstitute(kb.p, &self.restrict(kb.omega, omega, kb.p, vb)?);
                let w = cup_product(&self.complex, ka.p, &ra, kb.p, &rb, c);
                let coords = target.express(deg, &w)?;
                let exponents = ka.exponents.iter().zip(&kb.exponents).map(|(x, y)| x + y).collect();
                self.accumulate(&mut out, TermKey { omega, exponents, p: deg }, &coords);
            }
        }
        Ok(self.normalize(out))
    }

    /// `x_i · (φ ⊗ f) = κ^*φ ⊗ x_i f`, checked against `x_i ⋆ a`.
    pub fn module_action(&self, i: usize, a: &FaceRingElement) -> Result<FaceRingElement, FaceRingError> {
        self.check_coeffs(a)?;
        if i >= self.k {
            return Err(FaceRingError::PanelOutOfRange(i));
        }
        let mut out = BTreeMap::new();
        for (key, v) in &a.terms {
            let omega = key.omega.with(i);
            if self.basis(omega).is_none() {
                continue;
            }
            let coords = self.restrict(key.omega, omega, key.p, v)?;
            let mut exponents = key.exponents.clone();
            exponents[i] += 1;
            self.accumulate(&mut out, TermKey { omega, exponents, p: key.p }, &coords);
        }
        let direct = self.normalize(out);
        if direct != self.star(&self.x(i)?, a)? {
            return Err(FaceRingError::RouteMismatch(i + 1));
        }
        Ok(direct)
    }

    fn ranks(&self, omega: IndexSet, t: usize) -> Series {
        let b = &self.bases[&omega];
        Series::from_coeffs((0..=t).map(|p| b.degree(p).free_rank() as i64).collect(), t)
    }

    fn torsion_counts(&self, omega: IndexSet, t: usize) -> Series {
        let b = &self.bases[&omega];
        Series::from_coeffs((0..=t).map(|p| (b.rank(p) - b.degree(p).free_rank()) as i64).collect(), t)
    }

    fn monomial_series(&self, omega: IndexSet, t: usize) -> Series {
        omega.iter().fold(Series::one(t), |acc, i| acc.mul(&Series::geometric(self.grading.degrees[i], t)))
    }

    fn sum_over_nerve(&self, t: usize, per: impl Fn(IndexSet) -> Series + Sync) -> Series {
        let omegas: Vec<IndexSet> = self.bases.keys().copied().collect();
        let terms: Vec<Series> = omegas.par_iter().map(|&o| per(o).mul(&self.monomial_series(o, t))).collect();
        terms.iter().fold(Series::zero(t), |acc, s| acc.add(s))
    }

    /// `Σ_ω P(F_∩ω) Π_{i ∈ ω} t^{d_i} / (1 - t^{d_i})`, free ranks only.
    pub fn hilbert_series(&self, t: usize) -> Series {
        self.sum_over_nerve(t, |o| self.ranks(o, t))
    }

    /// Number of torsion summands per total degree.
    pub fn torsion_series(&self, t: usize) -> Series {
        self.sum_over_nerve(t, |o| self.torsion_counts(o, t))
    }

    /// Exponent vectors with support exactly `ω` and `x`-degree `<= t`.
    pub fn monomials(&self, omega: IndexSet, t: usize) -> Vec<Vec<u32>> {
        let idx: Vec<usize> = omega.iter().collect();
        let mut out = Vec::new();
        let mut cur = vec![0u32; self.k];
        self.monomials_rec(&idx, 0, t, &mut cur, &mut out);
        out
    }

    fn monomials_rec(&self, idx: &[usize], pos: usize, budget: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if pos == idx.len() {
            out.push(cur.clone());
            return;
        }
        let i = idx[pos];
        let d = self.grading.degrees[i];
        let mut e = 1;
        while e * d <= budget {
            cur[i] = e as u32;
            self.monomials_rec(idx, pos + 1, budget - e * d, cur, out);
            e += 1;
        }
        cur[i] = 0;
    }

    /// Ranks by `(ω, total degree)` from an explicit basis of the ring.
    pub fn bigraded_ranks(&self, t: usize) -> BTreeMap<(IndexSet, usize), usize> {
        let mut out = BTreeMap::new();
        for (&omega, b) in &self.bases {
            for e in self.monomials(omega, t) {
                for p in 0..b.num_degrees() {
                    let key = TermKey { omega, exponents: e.clone(), p };
                    let d = self.degree(&key);
                    let r = b.degree(p).free_rank();
                    if d <= t && r > 0 {
                        *out.entry((omega, d)).or_insert(0) += r;
                    }
                }
            }
        }
        out
    }

    /// Compares the explicit basis count with `rank H^*(F_∩ω)` times the
    /// number of monomials per degree.
    pub fn segre_check(&self, t: usize) -> Vec<SegreMismatch> {
        let found = self.bigraded_ranks(t);
        let mut bad = Vec::new();
        for &omega in self.bases.keys() {
            let expected = self.ranks(omega, t).mul(&self.monomial_series(omega, t));
            for d in 0..=t {
                let e = expected.coeff(d) as usize;
                let f = found.get(&(omega, d)).copied().unwrap_or(0);
                if e != f {
                    bad.push(SegreMismatch { omega, degree: d, expected: e, found: f });
                }
            }
        }
        bad
    }

    /// Compares the Hilbert series with the Stanley–Reisner series of the
    /// nerve when every `F_∩S` (including `Q`) is acyclic over the integers.
    pub fn stanley_reisner_compare(
        panels: &PanelStructure<'_>,
        t: usize,
    ) -> Result<StanleyReisnerReport, FaceRingError> {
        let ring = Self::standard(panels, Coeffs::Integers)?;
        for (&omega, b) in &ring.bases {
            let g = b.groups();
            let acyclic = g.get(0).rank == 1 && g.get(0).torsion.is_empty() && g.reduced().is_zero();
            if !acyclic {
                return Ok(StanleyReisnerReport::NotApplicable {
                    reason: format!("intersection {omega} is not acyclic"),
                    omega,
                });
            }
        }
        let face_ring = ring.hilbert_series(t);
        let stanley_reisner = stanley_reisner_series(&ring.nerve, t);
        let first_mismatch = (0..=t).find(|&d| face_ring.coeff(d) != stanley_reisner.coeff(d));
        Ok(StanleyReisnerReport::Applicable {
            equal: first_mismatch.is_none(),
            truncation: t,
            face_ring,
            stanley_reisner,
            first_mismatch,
        })
    }
}

/// `Σ_{S ∈ K} (t^2 / (1 - t^2))^{|S|}`, the empty face included.
pub fn stanley_reisner_series(nerve: &Nerve, t: usize) -> Series {
    let g = Series::geometric(2, t);
    nerve.faces_with_empty().fold(Series::zero(t), |acc, s| {
        let term = (0..s.len()).fold(Series::one(t), |a, _| a.mul(&g));
        acc.add(&term)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corners::Partition;
    use crate::corpus::by_name;

    fn ring(name: &str, coeffs: Coeffs) -> FaceRing {
        let e = by_name(name).unwrap();
        let p = e.model.panels(&Partition::trivial(e.model.m())).unwrap();
        FaceRing::standard(&p, coeffs).unwrap()
    }

    #[test]
    fn interval_relation() {
        let r = ring("interval", Coeffs::Integers);
        assert_eq!(r.hilbert_series(8).coeffs(), &[1, 0, 2, 0, 2, 0, 2, 0, 2]);
        let x1 = r.x(0).unwrap();
        let x2 = r.x(1).unwrap();
        assert!(r.star(&x1, &x2).unwrap().is_zero());
        assert!(r.module_action(1, &x1).unwrap().is_zero());
        let x1sq = r.star(&x1, &x1).unwrap();
        assert_eq!(r.module_action(0, &x1).unwrap(), x1sq);
        let one = r.one();
        assert_eq!(r.star(&one, &x1).unwrap(), x1);
        assert_eq!(r.module_action(0, &one).unwrap(), x1);
    }

    #[test]
    fn mobius_mod_two_series() {
        let r = ring("mobius", Coeffs::Mod(2));
        assert_eq!(r.hilbert_series(4).coeffs(), &[1, 2, 2, 2, 2]);
        let b = r.basis(IndexSet::singleton(0)).unwrap();
        assert_eq!(b.rank(1), 1);
        let alpha = r.term(IndexSet::singleton(0), 1, vec![1], vec![1]).unwrap();
        assert!(r.star(&alpha, &alpha).unwrap().is_zero());
    }

    #[test]
    fn stanley_reisner_applicability() {
        for name in ["triangle", "square", "pentagon", "cube"] {
            let e = by_name(name).unwrap();
            let p = e.model.panels(&Partition::trivial(e.model.m())).unwrap();
            assert!(FaceRing::stanley_reisner_compare(&p, 10).unwrap().is_equal(), "{name}");
        }
        let e = by_name("annulus").unwrap();
        let p = e.model.panels(&Partition::trivial(2)).unwrap();
        let report = FaceRing::stanley_reisner_compare(&p, 10).unwrap();
        assert!(matches!(report, StanleyReisnerReport::NotApplicable { .. }));
    }

    #[test]
    fn segre_and_torsion() {
        for name in ["square", "annulus", "mobius"] {
            let r = ring(name, Coeffs::Integers);
            assert!(r.segre_check(12).is_empty(), "{name}");
            assert!(r.torsion_series(12).is_zero());
        }
    }

    #[test]
    fn rejects_bad_terms() {
        let r = ring("square", Coeffs::Integers);
        assert!(r.term(IndexSet::singleton(0), 0, vec![1], vec![0, 1, 0, 0]).is_err());
        assert!(r.term(IndexSet::singleton(0), 0, vec![1, 1], vec![1, 0, 0, 0]).is_err());
        // opposite sides do not meet
        assert!(r.unit_on(IndexSet::from_indices([0, 2]), vec![1, 0, 1, 0]).unwrap().is_zero());
        let other = ring("square", Coeffs::Mod(2));
        assert_eq!(r.star(&r.one(), &other.one()), Err(FaceRingError::CoeffMismatch));
        assert!(FaceRingGrading::new(vec![2, 0]).is_err());
    }
}
