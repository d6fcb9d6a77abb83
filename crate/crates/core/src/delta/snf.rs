//! Smith normal form over `Z` and `Z/p`.
//!
//! Two routes share one contract. [`smith_form`] works on a dense matrix and
//! can record the unimodular transforms (`U M V = D`) together with their
//! inverses; it backs every basis computation. [`invariant_factors`] works on
//! a sparse matrix, eliminates unit pivots in place with a Markowitz-style
//! choice, and only densifies the small non-unit remainder. It is what the
//! large oracle complexes go through.
//!
//! Pivot rule: smallest norm first, ties broken by lowest column, then lowest
//! row. Diagonal entries come out positive over `Z` and equal to `1` over a
//! field, in divisibility order.

use std::collections::BTreeSet;

use crate::coeffs::Coeffs;
use crate::delta::matrix::{DenseMatrix, SparseMatrix};

/// Which transforms to record while reducing.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Track {
    pub u: bool,
    pub u_inv: bool,
    pub v: bool,
    pub v_inv: bool,
}

impl Track {
    pub const NONE: Track = Track { u: false, u_inv: false, v: false, v_inv: false };
    pub const ALL: Track = Track { u: true, u_inv: true, v: true, v_inv: true };
}

/// Result of a dense reduction: `U * M * V = D` with `D` diagonal.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub coeffs: Coeffs,
    pub nrows: usize,
    pub ncols: usize,
    /// Nonzero diagonal entries `d_1 | d_2 | ...`.
    pub diagonal: Vec<i64>,
    pub u: Option<DenseMatrix>,
    pub u_inv: Option<DenseMatrix>,
    pub v: Option<DenseMatrix>,
    pub v_inv: Option<DenseMatrix>,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.diagonal.len()
    }

    /// The diagonal matrix `D`.
    pub fn d(&self) -> DenseMatrix {
        DenseMatrix::from_diagonal(self.nrows, self.ncols, &self.diagonal)
    }

    /// Invariant factors different from one.
    pub fn torsion(&self) -> Vec<u64> {
        self.diagonal.iter().filter(|d| **d > 1).map(|d| *d as u64).collect()
    }
}

/// Smith normal form over the integers with all transforms recorded.
pub fn smith_normal_form(m: &DenseMatrix) -> SmithForm {
    smith_form(m, Coeffs::Integers, Track::ALL)
}

/// Dense Smith normal form over `coeffs`.
pub fn smith_form(m: &DenseMatrix, coeffs: Coeffs, track: Track) -> SmithForm {
    let (r, c) = (m.nrows(), m.ncols());
    let mut a = m.clone();
    for x in a.data_mut() {
        *x = coeffs.reduce(*x);
    }
    let mut w = Reducer {
        coeffs,
        a,
        u: track.u.then(|| DenseMatrix::identity(r)),
        u_inv: track.u_inv.then(|| DenseMatrix::identity(r)),
        v: track.v.then(|| DenseMatrix::identity(c)),
        v_inv: track.v_inv.then(|| DenseMatrix::identity(c)),
    };
    let diagonal = w.run();
    SmithForm { coeffs, nrows: r, ncols: c, diagonal, u: w.u, u_inv: w.u_inv, v: w.v, v_inv: w.v_inv }
}

struct Reducer {
    coeffs: Coeffs,
    a: DenseMatrix,
    u: Option<DenseMatrix>,
    u_inv: Option<DenseMatrix>,
    v: Option<DenseMatrix>,
    v_inv: Option<DenseMatrix>,
}

fn swap_rows(m: &mut DenseMatrix, i: usize, j: usize) {
    if i == j {
        return;
    }
    let n = m.ncols();
    let (lo, hi) = (i.min(j), i.max(j));
    let data = m.data_mut();
    let (head, tail) = data.split_at_mut(hi * n);
    head[lo * n..lo * n + n].swap_with_slice(&mut tail[..n]);
}

fn swap_cols(m: &mut DenseMatrix, i: usize, j: usize) {
    if i == j {
        return;
    }
    for r in 0..m.nrows() {
        let row = m.row_mut(r);
        row.swap(i, j);
    }
}

/// `row_dst += q * row_src`, columns `from..`.
fn add_row(m: &mut DenseMatrix, dst: usize, src: usize, q: i64, from: usize, coeffs: Coeffs) {
    if q == 0 {
        return;
    }
    let n = m.ncols();
    let data = m.data_mut();
    for j in from..n {
        let s = data[src * n + j];
        if s != 0 {
            let d = &mut data[dst * n + j];
            *d = coeffs.add(*d, coeffs.mul(q, s));
        }
    }
}

/// `col_dst += q * col_src`, rows `from..`.
fn add_col(m: &mut DenseMatrix, dst: usize, src: usize, q: i64, from: usize, coeffs: Coeffs) {
    if q == 0 {
        return;
    }
    for r in from..m.nrows() {
        let row = m.row_mut(r);
        let s = row[src];
        if s != 0 {
            row[dst] = coeffs.add(row[dst], coeffs.mul(q, s));
        }
    }
}

fn scale_row(m: &mut DenseMatrix, i: usize, s: i64, coeffs: Coeffs) {
    for x in m.row_mut(i) {
        *x = coeffs.mul(*x, s);
    }
}

fn scale_col(m: &mut DenseMatrix, j: usize, s: i64, coeffs: Coeffs) {
    for r in 0..m.nrows() {
        let row = m.row_mut(r);
        row[j] = coeffs.mul(row[j], s);
    }
}

impl Reducer {
    fn op_swap_rows(&mut self, i: usize, j: usize) {
        swap_rows(&mut self.a, i, j);
        if let Some(u) = &mut self.u {
            swap_rows(u, i, j);
        }
        if let Some(ui) = &mut self.u_inv {
            swap_cols(ui, i, j);
        }
    }

    fn op_swap_cols(&mut self, i: usize, j: usize) {
        swap_cols(&mut self.a, i, j);
        if let Some(v) = &mut self.v {
            swap_cols(v, i, j);
        }
        if let Some(vi) = &mut self.v_inv {
            swap_rows(vi, i, j);
        }
    }

    fn op_add_row(&mut self, dst: usize, src: usize, q: i64, from: usize) {
        let c = self.coeffs;
        add_row(&mut self.a, dst, src, q, from, c);
        if let Some(u) = &mut self.u {
            add_row(u, dst, src, q, 0, c);
        }
        if let Some(ui) = &mut self.u_inv {
            add_col(ui, src, dst, c.neg(q), 0, c);
        }
    }

    fn op_add_col(&mut self, dst: usize, src: usize, q: i64, from: usize) {
        let c = self.coeffs;
        add_col(&mut self.a, dst, src, q, from, c);
        if let Some(v) = &mut self.v {
            add_col(v, dst, src, q, 0, c);
        }
        if let Some(vi) = &mut self.v_inv {
            add_row(vi, src, dst, c.neg(q), 0, c);
        }
    }

    /// Multiply row `i` by the unit `s`.
    fn op_scale_row(&mut self, i: usize, s: i64) {
        let c = self.coeffs;
        let s_inv = c.inverse(s).expect("scaling by a unit");
        scale_row(&mut self.a, i, s, c);
        if let Some(u) = &mut self.u {
            scale_row(u, i, s, c);
        }
        if let Some(ui) = &mut self.u_inv {
            scale_col(ui, i, s_inv, c);
        }
    }

    fn find_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let (r, c) = (self.a.nrows(), self.a.ncols());
        let mut best: Option<(u64, usize, usize)> = None;
        for j in t..c {
            for i in t..r {
                let x = self.a.get(i, j);
                if x == 0 {
                    continue;
                }
                let n = self.coeffs.norm(x);
                if n == 1 {
                    return Some((i, j));
                }
                if best.is_none_or(|b| n < b.0) {
                    best = Some((n, i, j));
                }
            }
        }
        best.map(|b| (b.1, b.2))
    }

    fn run(&mut self) -> Vec<i64> {
        let coeffs = self.coeffs;
        let (r, c) = (self.a.nrows(), self.a.ncols());
        let mut diagonal = Vec::new();
        let mut t = 0;
        while t < r.min(c) {
            let Some((pi, pj)) = self.find_pivot(t) else { break };
            self.op_swap_rows(t, pi);
            self.op_swap_cols(t, pj);
            loop {
                let piv = self.a.get(t, t);
                let mut remainder = false;
                for i in t + 1..r {
                    let x = self.a.get(i, t);
                    if x != 0 {
                        let q = coeffs.quotient(x, piv);
                        self.op_add_row(i, t, coeffs.neg(q), t);
                        remainder |= self.a.get(i, t) != 0;
                    }
                }
                if remainder {
                    let i = (t..r)
                        .filter(|&i| self.a.get(i, t) != 0)
                        .min_by_key(|&i| (coeffs.norm(self.a.get(i, t)), i))
                        .expect("nonzero remainder");
                    self.op_swap_rows(t, i);
                    continue;
                }
                for j in t + 1..c {
                    let x = self.a.get(t, j);
                    if x != 0 {
                        let q = coeffs.quotient(x, piv);
                        self.op_add_col(j, t, coeffs.neg(q), t);
                        remainder |= self.a.get(t, j) != 0;
                    }
                }
                if remainder {
                    let j = (t..c)
                        .filter(|&j| self.a.get(t, j) != 0)
                        .min_by_key(|&j| (coeffs.norm(self.a.get(t, j)), j))
                        .expect("nonzero remainder");
                    self.op_swap_cols(t, j);
                    continue;
                }
                if !coeffs.is_unit(piv) {
                    let offending = (t + 1..r).find(|&i| (t + 1..c).any(|j| !coeffs.divides(piv, self.a.get(i, j))));
                    if let Some(i) = offending {
                        self.op_add_row(t, i, 1, t);
                        continue;
                    }
                }
                break;
            }
            let piv = self.a.get(t, t);
            match coeffs {
                Coeffs::Integers if piv < 0 => self.op_scale_row(t, -1),
                Coeffs::Mod(_) if piv != 1 => {
                    let inv = coeffs.inverse(piv).expect("field pivot");
                    self.op_scale_row(t, inv);
                }
                _ => {}
            }
            diagonal.push(self.a.get(t, t));
            t += 1;
        }
        diagonal
    }
}

/// Nonzero invariant factors of a sparse matrix, in divisibility order.
pub fn invariant_factors(m: &SparseMatrix, coeffs: Coeffs) -> Vec<i64> {
    let ncols = m.ncols();
    let mut rows: Vec<Vec<(usize, i64)>> = (0..m.nrows())
        .map(|i| m.row(i).iter().map(|&(j, v)| (j, coeffs.reduce(v))).filter(|e| e.1 != 0).collect())
        .collect();
    let mut col_rows: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); ncols];
    for (i, row) in rows.iter().enumerate() {
        for &(j, _) in row {
            col_rows[j].insert(i);
        }
    }
    let mut alive = vec![true; rows.len()];
    let mut ones = 0usize;

    let mut order: Vec<usize> = (0..rows.len()).collect();
    order.sort_by_key(|&i| (rows[i].len(), i));

    loop {
        let mut progress = false;
        for &pr in &order {
            if !alive[pr] || rows[pr].is_empty() {
                continue;
            }
            let Some(&(pc, pv)) =
                rows[pr].iter().filter(|e| coeffs.is_unit(e.1)).min_by_key(|e| (col_rows[e.0].len(), e.0))
            else {
                continue;
            };
            let inv = coeffs.inverse(pv).expect("unit pivot");
            let targets: Vec<usize> = col_rows[pc].iter().copied().filter(|&r| r != pr).collect();
            let pivot_row = std::mem::take(&mut rows[pr]);
            for r in targets {
                let x = rows[r].binary_search_by_key(&pc, |e| e.0).map(|k| rows[r][k].1).expect("occupancy in sync");
                let factor = coeffs.mul(x, inv);
                let old = std::mem::take(&mut rows[r]);
                let merged = sub_scaled(&old, &pivot_row, factor, coeffs);
                update_occupancy(&mut col_rows, r, &old, &merged);
                rows[r] = merged;
            }
            for &(j, _) in &pivot_row {
                col_rows[j].remove(&pr);
            }
            alive[pr] = false;
            ones += 1;
            progress = true;
        }
        if !progress {
            break;
        }
    }

    // Dense remainder with no unit entries.
    let rest_rows: Vec<usize> = (0..rows.len()).filter(|&i| alive[i] && !rows[i].is_empty()).collect();
    let mut result = vec![1i64; ones];
    if !rest_rows.is_empty() {
        let mut cols: Vec<usize> = rest_rows.iter().flat_map(|&i| rows[i].iter().map(|e| e.0)).collect();
        cols.sort_unstable();
        cols.dedup();
        let mut dense = DenseMatrix::zeros(rest_rows.len(), cols.len());
        for (di, &i) in rest_rows.iter().enumerate() {
            for &(j, v) in &rows[i] {
                let dj = cols.binary_search(&j).expect("column present");
                dense.set(di, dj, v);
            }
        }
        let snf = smith_form(&dense, coeffs, Track::NONE);
        result.extend(snf.diagonal);
    }
    result
}

/// `a - factor * b` for sorted sparse rows.
fn sub_scaled(a: &[(usize, i64)], b: &[(usize, i64)], factor: i64, coeffs: Coeffs) -> Vec<(usize, i64)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j >= b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i >= a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i]);
            i += 1;
        } else if take_b {
            let v = coeffs.neg(coeffs.mul(factor, b[j].1));
            if v != 0 {
                out.push((b[j].0, v));
            }
            j += 1;
        } else {
            let v = coeffs.sub_mul(a[i].1, factor, b[j].1);
            if v != 0 {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

fn update_occupancy(col_rows: &mut [BTreeSet<usize>], r: usize, old: &[(usize, i64)], new: &[(usize, i64)]) {
    let (mut i, mut j) = (0, 0);
    while i < old.len() || j < new.len() {
        if j >= new.len() || (i < old.len() && old[i].0 < new[j].0) {
            col_rows[old[i].0].remove(&r);
            i += 1;
        } else if i >= old.len() || new[j].0 < old[i].0 {
            col_rows[new[j].0].insert(r);
            j += 1;
        } else {
            i += 1;
            j += 1;
        }
    }
}

/// Rank of a sparse matrix over `coeffs` (over `Z` this is the rank over `Q`).
pub fn rank(m: &SparseMatrix, coeffs: Coeffs) -> usize {
    invariant_factors(m, coeffs).len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn check_form(m: &DenseMatrix, s: &SmithForm) {
        let c = s.coeffs;
        let u = s.u.as_ref().unwrap();
        let v = s.v.as_ref().unwrap();
        assert_eq!(u.mul(m, c).mul(v, c), s.d(), "U M V != D");
        assert_eq!(u.mul(s.u_inv.as_ref().unwrap(), c), DenseMatrix::identity(m.nrows()));
        assert_eq!(v.mul(s.v_inv.as_ref().unwrap(), c), DenseMatrix::identity(m.ncols()));
        for w in s.diagonal.windows(2) {
            assert!(c.divides(w[0], w[1]), "divisibility chain broken: {:?}", s.diagonal);
        }
        if c == Coeffs::Integers {
            assert_eq!(u.determinant().abs(), 1);
            assert_eq!(v.determinant().abs(), 1);
            assert!(s.diagonal.iter().all(|d| *d > 0));
        }
    }

    #[test]
    fn two_by_two_example() {
        let m = DenseMatrix::from_rows(&[[2, 4], [6, 8]]);
        let s = smith_normal_form(&m);
        check_form(&m, &s);
        assert_eq!(s.diagonal, vec![2, 4]);
    }

    #[test]
    fn zero_and_identity() {
        let z = DenseMatrix::zeros(2, 3);
        let s = smith_normal_form(&z);
        assert!(s.diagonal.is_empty());
        assert_eq!(s.u.as_ref().unwrap(), &DenseMatrix::identity(2));
        assert_eq!(s.v.as_ref().unwrap(), &DenseMatrix::identity(3));
        let id = DenseMatrix::identity(3);
        let s = smith_normal_form(&id);
        assert_eq!(s.d(), id);
        check_form(&id, &s);
    }

    #[test]
    fn divisibility_is_enforced() {
        let m = DenseMatrix::from_rows(&[[2, 0], [0, 3]]);
        let s = smith_normal_form(&m);
        check_form(&m, &s);
        assert_eq!(s.diagonal, vec![1, 6]);
    }

    #[test]
    fn field_reduction() {
        let m = DenseMatrix::from_rows(&[[2, 4], [6, 8]]);
        let s = smith_form(&m, Coeffs::Mod(2), Track::ALL);
        assert_eq!(s.rank(), 0);
        let s = smith_form(&m, Coeffs::Mod(3), Track::ALL);
        check_form(&m, &s);
        assert_eq!(s.diagonal, vec![1, 1]);
    }

    #[test]
    fn sparse_route_matches_known_torsion() {
        let m = DenseMatrix::from_rows(&[[1, 1], [1, -1], [-1, 1]]);
        assert_eq!(invariant_factors(&SparseMatrix::from_dense(&m), Coeffs::Integers), vec![1, 2]);
        assert_eq!(invariant_factors(&SparseMatrix::from_dense(&m), Coeffs::Mod(2)), vec![1]);
    }

    fn small_matrix() -> impl Strategy<Value = DenseMatrix> {
        (1usize..6, 1usize..6).prop_flat_map(|(r, c)| {
            proptest::collection::vec(-6i64..=6, r * c).prop_map(move |v| {
                let rows: Vec<Vec<i64>> = v.chunks(c).map(<[i64]>::to_vec).collect();
                DenseMatrix::from_rows(&rows)
            })
        })
    }

    proptest! {
        #[test]
        fn dense_form_is_valid(m in small_matrix()) {
            let s = smith_normal_form(&m);
            check_form(&m, &s);
        }

        #[test]
        fn sparse_and_dense_routes_agree(m in small_matrix(), p in prop::sample::select(vec![0u32, 2, 3, 5])) {
            let c = if p == 0 { Coeffs::Integers } else { Coeffs::Mod(p) };
            let dense = smith_form(&m, c, Track::NONE).diagonal;
            let sparse = invariant_factors(&SparseMatrix::from_dense(&m), c);
            prop_assert_eq!(dense, sparse);
        }

        #[test]
        fn field_form_is_valid(m in small_matrix()) {
            let s = smith_form(&m, Coeffs::Mod(5), Track::ALL);
            let mut reduced = m.clone();
            for x in reduced.data_mut() { *x = x.rem_euclid(5); }
            check_form(&reduced, &s);
        }
    }
}
