//! Ring structure on `⊕_ω H^*(Q, F_ω)`: products by relative cup product,
//! killed when the index sets share a panel with a positive-dimensional
//! sphere, with degrees shifted by `N_ω`.
//!
//! Products carry the sign `(-1)^{N_ω q + Σ n_i n_j}`, the sum over
//! `i ∈ ω`, `j ∈ ω'` with `i > j`, for `g ∈ H^p(Q, F_ω)` and
//! `h ∈ H^q(Q, F_ω')`. It moves the suspension coordinates of `g` past `h`
//! and makes the table graded-commutative in shifted degrees. Under the
//! real law every sign is `+1`.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::coeffs::Coeffs;
use crate::delta::snf::rank;
use crate::delta::{cup_product, SparseMatrix};
use crate::hochster::{HochsterTable, SphereDims};
use crate::index_set::IndexSet;
use crate::oracle::{product_rank, PairingRanks};
use crate::series::poly_string;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RingError {
    #[error("law has {found} sphere dimensions for {expected} panels")]
    LawLength { expected: usize, found: usize },
    #[error("no generator ({omega}, {p}, {index})")]
    NoGenerator { omega: IndexSet, p: usize, index: usize },
    #[error("component ({omega}, {p}) has {found} coordinates, expected {expected}")]
    ComponentLength { omega: IndexSet, p: usize, expected: usize, found: usize },
}

/// Multiplication law determined by sphere dimensions per panel.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingLaw {
    dims: SphereDims,
}

impl RingLaw {
    pub fn new(dims: SphereDims) -> Self {
        RingLaw { dims }
    }

    pub fn complex(k: usize) -> Self {
        Self::new(SphereDims::complex(k))
    }

    pub fn real(k: usize) -> Self {
        Self::new(SphereDims::real(k))
    }

    pub fn dims(&self) -> &SphereDims {
        &self.dims
    }

    /// Products vanish when `ω ∩ ω'` contains a panel with `n_i >= 1`.
    pub fn trivial(&self, a: IndexSet, b: IndexSet) -> bool {
        a.intersection(b).iter().any(|i| self.dims.dims()[i] >= 1)
    }

    /// `N_{ω \ J_0}`.
    pub fn shift(&self, omega: IndexSet) -> usize {
        self.dims.n_of(omega.difference(self.dims.j0()))
    }

    pub fn sign(&self, a: IndexSet, q: usize, b: IndexSet) -> i64 {
        let n = self.dims.dims();
        let mut e = self.shift(a) * q;
        for i in a.iter() {
            for j in b.iter().filter(|&j| j < i) {
                e += n[i] * n[j];
            }
        }
        if e.is_multiple_of(2) {
            1
        } else {
            -1
        }
    }
}

/// A basis generator: index `index` of the basis of `H^p(Q, F_ω)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Generator {
    pub omega: IndexSet,
    pub p: usize,
    pub index: usize,
}

impl Serialize for Generator {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(3))?;
        seq.serialize_element(&self.omega)?;
        seq.serialize_element(&self.p)?;
        seq.serialize_element(&self.index)?;
        seq.end()
    }
}

/// Sum of homogeneous components `(ω, p) -> coordinates`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RingElement {
    components: BTreeMap<(IndexSet, usize), Vec<i64>>,
}

impl RingElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn components(&self) -> impl Iterator<Item = (IndexSet, usize, &[i64])> {
        self.components.iter().map(|(&(o, p), v)| (o, p, v.as_slice()))
    }

    pub fn component(&self, omega: IndexSet, p: usize) -> Option<&[i64]> {
        self.components.get(&(omega, p)).map(Vec::as_slice)
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }
}

/// Ring structure over a Hochster table.
pub struct CohomologyRing<'t> {
    table: &'t HochsterTable,
    law: RingLaw,
}

#[derive(Clone, Debug, Serialize)]
pub struct GeneratorInfo {
    pub generator: Generator,
    pub order: u64,
    pub shifted_degree: usize,
}

impl<'t> CohomologyRing<'t> {
    pub fn new(table: &'t HochsterTable, law: RingLaw) -> Result<Self, RingError> {
        if law.dims.k() != table.k() {
            return Err(RingError::LawLength { expected: table.k(), found: law.dims.k() });
        }
        Ok(CohomologyRing { table, law })
    }

    pub fn law(&self) -> &RingLaw {
        &self.law
    }

    pub fn table(&self) -> &HochsterTable {
        self.table
    }

    pub fn coeffs(&self) -> Coeffs {
        self.table.coeffs()
    }

    pub fn generators(&self) -> Vec<GeneratorInfo> {
        let mut out = Vec::new();
        for omega in self.table.omegas() {
            let b = self.table.entry(omega);
            for p in 0..b.num_degrees() {
                for (index, &order) in b.degree(p).orders.iter().enumerate() {
                    out.push(GeneratorInfo {
                        generator: Generator { omega, p, index },
                        order,
                        shifted_degree: p + self.law.shift(omega),
                    });
                }
            }
        }
        out
    }

    /// The class of a single generator.
    pub fn generator(&self, g: Generator) -> Result<RingElement, RingError> {
        let rank = self.table.entry(g.omega).rank(g.p);
        if g.index >= rank {
            return Err(RingError::NoGenerator { omega: g.omega, p: g.p, index: g.index });
        }
        let mut v = vec![0; rank];
        v[g.index] = 1;
        let mut e = RingElement::zero();
        e.components.insert((g.omega, g.p), v);
        Ok(e)
    }

    /// The unit: class of the constant cochain in `H^0(Q)`.
    pub fn unit(&self) -> RingElement {
        let b = self.table.entry(IndexSet::EMPTY);
        let ones = vec![1; b.parent_count(0)];
        let coords = b.express(0, &ones).expect("constants are cocycles");
        self.element(IndexSet::EMPTY, 0, coords).expect("lengths match")
    }

    /// Element with one component; coordinates are reduced.
    pub fn element(&self, omega: IndexSet, p: usize, coords: Vec<i64>) -> Result<RingElement, RingError> {
        let b = self.table.entry(omega);
        if coords.len() != b.rank(p) {
            return Err(RingError::ComponentLength { omega, p, expected: b.rank(p), found: coords.len() });
        }
        let reduced = b.reduce(p, &coords);
        let mut e = RingElement::zero();
        if reduced.iter().any(|&c| c != 0) {
            e.components.insert((omega, p), reduced);
        }
        Ok(e)
    }

    pub fn add(&self, a: &RingElement, b: &RingElement) -> RingElement {
        let c = self.coeffs();
        let mut out = a.clone();
        for (&(o, p), v) in &b.components {
            let slot = out.components.entry((o, p)).or_insert_with(|| vec![0; v.len()]);
            for (s, &x) in slot.iter_mut().zip(v) {
                *s = c.add(*s, x);
            }
        }
        self.normalize(out)
    }

    pub fn scale(&self, a: &RingElement, k: i64) -> RingElement {
        let c = self.coeffs();
        let mut out = a.clone();
        for v in out.components.values_mut() {
            for x in v.iter_mut() {
                *x = c.mul(*x, k);
            }
        }
        self.normalize(out)
    }

    fn normalize(&self, mut e: RingElement) -> RingElement {
        for (&(o, p), v) in e.components.iter_mut() {
            *v = self.table.entry(o).reduce(p, v);
        }
        e.components.retain(|_, v| v.iter().any(|&x| x != 0));
        e
    }

    /// Product of two generators, as coordinates in `(ω ∪ ω', p + q)`.
    pub fn multiply_generators(&self, g: Generator, h: Generator) -> Vec<i64> {
        let target = g.omega.union(h.omega);
        let tb = self.table.entry(target);
        let len = tb.rank(g.p + h.p);
        if len == 0 || self.law.trivial(g.omega, h.omega) {
            return vec![0; len];
        }
        let gb = self.table.entry(g.omega);
        let hb = self.table.entry(h.omega);
        let u = &gb.degree(g.p).generators[g.index];
        let v = &hb.degree(h.p).generators[h.index];
        let w = cup_product(self.table.complex(), g.p, u, h.p, v, self.coeffs());
        let coords = tb.express(g.p + h.p, &w).expect("relative cup of relative cocycles vanishes on the union");
        let s = self.law.sign(g.omega, h.p, h.omega);
        if s == 1 {
            coords
        } else {
            let neg: Vec<i64> = coords.iter().map(|&c| self.coeffs().neg(c)).collect();
            tb.reduce(g.p + h.p, &neg)
        }
    }

    /// Bilinear product of arbitrary elements.
    pub fn multiply(&self, a: &RingElement, b: &RingElement) -> RingElement {
        let c = self.coeffs();
        let mut out = RingElement::zero();
        for (&(oa, pa), va) in &a.components {
            for (&(ob, pb), vb) in &b.components {
                if self.law.trivial(oa, ob) {
                    continue;
                }
                let target = (oa.union(ob), pa + pb);
                let len = self.table.entry(target.0).rank(target.1);
                if len == 0 {
                    continue;
                }
                let mut acc = vec![0i64; len];
                for (i, &x) in va.iter().enumerate().filter(|(_, &x)| x != 0) {
                    for (j, &y) in vb.iter().enumerate().filter(|(_, &y)| y != 0) {
                        let prod = self.multiply_generators(
                            Generator { omega: oa, p: pa, index: i },
                            Generator { omega: ob, p: pb, index: j },
                        );
                        let k = c.mul(x, y);
                        for (s, &z) in acc.iter_mut().zip(&prod) {
                            *s = c.add(*s, c.mul(k, z));
                        }
                    }
                }
                let slot = out.components.entry(target).or_insert_with(|| vec![0; len]);
                for (s, z) in slot.iter_mut().zip(acc) {
                    *s = c.add(*s, z);
                }
            }
        }
        self.normalize(out)
    }

    /// The complete multiplication table among generators.
    pub fn structure_constants(&self) -> StructureConstantTable {
        let generators = self.generators();
        let pairs: Vec<(usize, usize)> =
            (0..generators.len()).flat_map(|i| (0..generators.len()).map(move |j| (i, j))).collect();
        let products: Vec<Vec<i64>> = pairs
            .par_iter()
            .map(|&(i, j)| self.multiply_generators(generators[i].generator, generators[j].generator))
            .collect();
        let index: HashMap<Generator, usize> = generators.iter().enumerate().map(|(i, g)| (g.generator, i)).collect();
        StructureConstantTable {
            coeffs: self.coeffs(),
            dims: self.law.dims.clone(),
            n: generators.len(),
            generators,
            index,
            products,
        }
    }
}

/// Products of all generator pairs. `products[i * n + j]` holds the
/// coordinates of `g_i · g_j` in the basis of `(ω_i ∪ ω_j, p_i + p_j)`.
#[derive(Clone, Debug)]
pub struct StructureConstantTable {
    coeffs: Coeffs,
    dims: SphereDims,
    n: usize,
    generators: Vec<GeneratorInfo>,
    index: HashMap<Generator, usize>,
    products: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ProductTerm {
    pub index: usize,
    pub coeff: i64,
}

#[derive(Clone, Debug, Serialize)]
pub struct TableEntry {
    pub g: Generator,
    pub h: Generator,
    pub product: Vec<ProductTerm>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CommutativityReport {
    pub ok: bool,
    pub pairs_checked: usize,
    pub violations: Vec<(Generator, Generator)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct DualityDiagnostic {
    pub top_degree: usize,
    /// Bidegrees `(P, top - P)` whose pairing is not perfect.
    pub imperfect: Vec<usize>,
}

/// Sparse representation of an element as generator-index coefficients.
type Vector = BTreeMap<usize, i64>;

impl StructureConstantTable {
    pub fn coeffs(&self) -> Coeffs {
        self.coeffs
    }

    pub fn dims(&self) -> &SphereDims {
        &self.dims
    }

    pub fn generators(&self) -> &[GeneratorInfo] {
        &self.generators
    }

    pub fn position(&self, g: Generator) -> Option<usize> {
        self.index.get(&g).copied()
    }

    pub fn product(&self, i: usize, j: usize) -> &[i64] {
        &self.products[i * self.n + j]
    }

    /// Overwrite one product (negative controls in tests).
    pub fn set_product(&mut self, i: usize, j: usize, coords: Vec<i64>) {
        self.products[i * self.n + j] = coords;
    }

    fn target_of(&self, i: usize, j: usize) -> (IndexSet, usize) {
        let (g, h) = (self.generators[i].generator, self.generators[j].generator);
        (g.omega.union(h.omega), g.p + h.p)
    }

    /// `g_i · g_j` as a sparse vector over generator indices.
    fn product_vector(&self, i: usize, j: usize) -> Vector {
        let (omega, p) = self.target_of(i, j);
        let mut v = Vector::new();
        for (t, &c) in self.product(i, j).iter().enumerate() {
            if c != 0 {
                let pos = self.index[&Generator { omega, p, index: t }];
                v.insert(pos, c);
            }
        }
        v
    }

    fn reduce_vector(&self, v: &mut Vector) {
        for (&i, c) in v.iter_mut() {
            *c = self.coeffs.reduce_mod_order(*c, self.generators[i].order);
        }
        v.retain(|_, c| *c != 0);
    }

    /// Bilinear product of sparse vectors.
    pub fn multiply_vectors(&self, a: &Vector, b: &Vector) -> Vector {
        let c = self.coeffs;
        let mut out = Vector::new();
        for (&i, &x) in a {
            for (&j, &y) in b {
                let k = c.mul(x, y);
                for (t, z) in self.product_vector(i, j) {
                    let e = out.entry(t).or_insert(0);
                    *e = c.add(*e, c.mul(k, z));
                }
            }
        }
        self.reduce_vector(&mut out);
        out
    }

    fn unit_vector(i: usize) -> Vector {
        Vector::from([(i, 1)])
    }

    /// Products with `ω ∩ ω'` meeting a positive sphere dimension are zero.
    pub fn check_annihilation(&self) -> Vec<(Generator, Generator)> {
        let law = RingLaw::new(self.dims.clone());
        let mut bad = Vec::new();
        for i in 0..self.n {
            for j in 0..self.n {
                let (g, h) = (self.generators[i].generator, self.generators[j].generator);
                if law.trivial(g.omega, h.omega) && self.product(i, j).iter().any(|&c| c != 0) {
                    bad.push((g, h));
                }
            }
        }
        bad
    }

    /// `(g h) l = g (h l)` on all generator triples; returns violations.
    pub fn check_associativity(&self) -> Vec<(Generator, Generator, Generator)> {
        let n = self.n;
        let bad: Vec<(usize, usize, usize)> = (0..n)
            .into_par_iter()
            .flat_map_iter(|i| {
                let mut local = Vec::new();
                for j in 0..n {
                    let gh = self.product_vector(i, j);
                    for l in 0..n {
                        let left = self.multiply_vectors(&gh, &Self::unit_vector(l));
                        let hl = self.product_vector(j, l);
                        let right = self.multiply_vectors(&Self::unit_vector(i), &hl);
                        if left != right {
                            local.push((i, j, l));
                        }
                    }
                }
                local
            })
            .collect();
        bad.into_iter()
            .map(|(i, j, l)| (self.generators[i].generator, self.generators[j].generator, self.generators[l].generator))
            .collect()
    }

    /// `g h = (-1)^{deg g deg h} h g` in shifted degrees.
    pub fn graded_commutativity_check(&self) -> CommutativityReport {
        let c = self.coeffs;
        let mut violations = Vec::new();
        let mut pairs_checked = 0;
        for i in 0..self.n {
            for j in i..self.n {
                pairs_checked += 1;
                let (di, dj) = (self.generators[i].shifted_degree, self.generators[j].shifted_degree);
                let sign = if (di * dj) % 2 == 0 { 1 } else { -1 };
                let mut gh = self.product_vector(i, j);
                let mut hg: Vector = self.product_vector(j, i).into_iter().map(|(t, v)| (t, c.mul(sign, v))).collect();
                self.reduce_vector(&mut gh);
                self.reduce_vector(&mut hg);
                if gh != hg {
                    violations.push((self.generators[i].generator, self.generators[j].generator));
                }
            }
        }
        CommutativityReport { ok: violations.is_empty(), pairs_checked, violations }
    }

    /// `Σ t^{shifted degree}` over free generators.
    pub fn poincare_polynomial(&self) -> Vec<i64> {
        let top = self.generators.iter().map(|g| g.shifted_degree).max().unwrap_or(0);
        let mut p = vec![0i64; top + 1];
        for g in self.generators.iter().filter(|g| g.order == 0) {
            p[g.shifted_degree] += 1;
        }
        while p.len() > 1 && p.last() == Some(&0) {
            p.pop();
        }
        p
    }

    pub fn poincare_string(&self) -> String {
        let p = self.poincare_polynomial();
        poly_string(&p, p.len().saturating_sub(1), false)
    }

    /// Torsion generators as `(shifted degree, order)`.
    pub fn torsion(&self) -> Vec<(usize, u64)> {
        self.generators.iter().filter(|g| g.order > 0).map(|g| (g.shifted_degree, g.order)).collect()
    }

    fn degree_columns(&self, d: usize) -> HashMap<usize, usize> {
        self.generators
            .iter()
            .enumerate()
            .filter(|(_, g)| g.shifted_degree == d)
            .enumerate()
            .map(|(col, (i, _))| (i, col))
            .collect()
    }

    /// Ranks of `H^P ⊗ H^Q -> H^{P+Q}` in shifted degrees, `P, Q >= 1`.
    pub fn multiplication_ranks(&self) -> PairingRanks {
        let top = self.generators.iter().map(|g| g.shifted_degree).max().unwrap_or(0);
        let mut out = PairingRanks::default();
        for p in 1..=top {
            for q in 1..=top.saturating_sub(p) {
                let cols = self.degree_columns(p + q);
                if cols.is_empty() {
                    continue;
                }
                let mut orders = vec![0u64; cols.len()];
                for (&i, &col) in &cols {
                    orders[col] = self.generators[i].order;
                }
                let usable =
                    |g: &GeneratorInfo, d: usize| g.shifted_degree == d && (self.coeffs.is_field() || g.order == 0);
                let mut rows = Vec::new();
                for i in (0..self.n).filter(|&i| usable(&self.generators[i], p)) {
                    for j in (0..self.n).filter(|&j| usable(&self.generators[j], q)) {
                        let mut row = vec![0i64; cols.len()];
                        for (t, v) in self.product_vector(i, j) {
                            row[cols[&t]] = v;
                        }
                        rows.push(row);
                    }
                }
                out.set(p, q, product_rank(&rows, &orders, self.coeffs));
            }
        }
        out
    }

    /// Whether the pairings into the top degree look perfect (free parts,
    /// over the rationals for integer tables). A diagnostic only; the
    /// table does not assume orientability.
    pub fn duality_diagnostic(&self) -> Option<DualityDiagnostic> {
        let top = self.generators.iter().filter(|g| g.order == 0).map(|g| g.shifted_degree).max()?;
        let top_gens: Vec<usize> = (0..self.n)
            .filter(|&i| self.generators[i].shifted_degree == top && self.generators[i].order == 0)
            .collect();
        if top_gens.len() != 1 {
            return None;
        }
        let t = top_gens[0];
        let mut imperfect = Vec::new();
        for p in 0..=top {
            let a: Vec<usize> = (0..self.n)
                .filter(|&i| self.generators[i].shifted_degree == p && self.generators[i].order == 0)
                .collect();
            let b: Vec<usize> = (0..self.n)
                .filter(|&i| self.generators[i].shifted_degree == top - p && self.generators[i].order == 0)
                .collect();
            if a.len() != b.len() {
                imperfect.push(p);
                continue;
            }
            let triplets = a.iter().enumerate().flat_map(|(r, &i)| {
                b.iter().enumerate().map(move |(c, &j)| (r, c, self.product_vector(i, j).get(&t).copied().unwrap_or(0)))
            });
            let m = SparseMatrix::from_triplets(a.len(), b.len(), triplets.collect::<Vec<_>>(), self.coeffs);
            if rank(&m, self.coeffs) != a.len() {
                imperfect.push(p);
            }
        }
        Some(DualityDiagnostic { top_degree: top, imperfect })
    }

    pub fn entries(&self) -> Vec<TableEntry> {
        let mut out = Vec::with_capacity(self.n * self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                out.push(TableEntry {
                    g: self.generators[i].generator,
                    h: self.generators[j].generator,
                    product: self
                        .product(i, j)
                        .iter()
                        .enumerate()
                        .filter(|(_, &c)| c != 0)
                        .map(|(index, &coeff)| ProductTerm { index, coeff })
                        .collect(),
                });
            }
        }
        out
    }
}

impl Serialize for StructureConstantTable {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.entries().serialize(s)
    }
}
