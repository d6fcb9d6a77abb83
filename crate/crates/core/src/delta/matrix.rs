use std::fmt;

use crate::coeffs::Coeffs;

/// Row-major dense integer matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct DenseMatrix {
    nrows: usize,
    ncols: usize,
    data: Vec<i64>,
}

impl DenseMatrix {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        DenseMatrix { nrows, ncols, data: vec![0; nrows * ncols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Build from rows; panics on ragged input.
    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(nrows * ncols);
        for r in rows {
            assert_eq!(r.as_ref().len(), ncols, "ragged rows");
            data.extend_from_slice(r.as_ref());
        }
        DenseMatrix { nrows, ncols, data }
    }

    pub fn from_diagonal(nrows: usize, ncols: usize, diag: &[i64]) -> Self {
        let mut m = Self::zeros(nrows, ncols);
        for (i, &d) in diag.iter().enumerate() {
            m.set(i, i, d);
        }
        m
    }

    #[inline]
    pub fn nrows(&self) -> usize {
        self.nrows
    }

    #[inline]
    pub fn ncols(&self) -> usize {
        self.ncols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.ncols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.ncols + j] = v;
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.ncols..(i + 1) * self.ncols]
    }

    #[inline]
    pub fn row_mut(&mut self, i: usize) -> &mut [i64] {
        &mut self.data[i * self.ncols..(i + 1) * self.ncols]
    }

    pub fn column(&self, j: usize) -> Vec<i64> {
        (0..self.nrows).map(|i| self.get(i, j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.ncols, self.nrows);
        for i in 0..self.nrows {
            for j in 0..self.ncols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn mul(&self, other: &DenseMatrix, coeffs: Coeffs) -> DenseMatrix {
        assert_eq!(self.ncols, other.nrows, "dimension mismatch in product");
        let mut out = DenseMatrix::zeros(self.nrows, other.ncols);
        for i in 0..self.nrows {
            for k in 0..self.ncols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                let orow = other.row(k);
                let base = i * out.ncols;
                for (j, &b) in orow.iter().enumerate() {
                    if b != 0 {
                        out.data[base + j] = coeffs.add(out.data[base + j], coeffs.mul(a, b));
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[i64], coeffs: Coeffs) -> Vec<i64> {
        assert_eq!(self.ncols, v.len(), "dimension mismatch in product");
        (0..self.nrows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| **a != 0 && **b != 0)
                    .fold(0, |acc, (&a, &b)| coeffs.add(acc, coeffs.mul(a, b)))
            })
            .collect()
    }

    /// Determinant over the integers via fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> i64 {
        assert_eq!(self.nrows, self.ncols, "determinant of non-square matrix");
        let n = self.nrows;
        if n == 0 {
            return 1;
        }
        let mut a: Vec<Vec<i128>> = (0..n).map(|i| self.row(i).iter().map(|&x| x as i128).collect()).collect();
        let mut sign = 1i128;
        let mut prev = 1i128;
        for k in 0..n - 1 {
            if a[k][k] == 0 {
                match (k + 1..n).find(|&i| a[i][k] != 0) {
                    Some(i) => {
                        a.swap(i, k);
                        sign = -sign;
                    }
                    None => return 0,
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
                }
            }
            prev = a[k][k];
        }
        i64::try_from(sign * a[n - 1][n - 1]).expect("determinant overflow")
    }

    pub(crate) fn data_mut(&mut self) -> &mut [i64] {
        &mut self.data
    }
}

impl fmt::Debug for DenseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "DenseMatrix {}x{} [", self.nrows, self.ncols)?;
        for i in 0..self.nrows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        write!(f, "]")
    }
}

/// Sparse integer matrix stored by rows; each row is sorted by column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    nrows: usize,
    ncols: usize,
    rows: Vec<Vec<(usize, i64)>>,
}

impl SparseMatrix {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        SparseMatrix { nrows, ncols, rows: vec![Vec::new(); nrows] }
    }

    /// Build from `(row, col, value)` triplets; duplicates are summed and
    /// zeros dropped.
    pub fn from_triplets(
        nrows: usize,
        ncols: usize,
        triplets: impl IntoIterator<Item = (usize, usize, i64)>,
        coeffs: Coeffs,
    ) -> Self {
        let mut rows: Vec<Vec<(usize, i64)>> = vec![Vec::new(); nrows];
        for (i, j, v) in triplets {
            assert!(i < nrows && j < ncols, "triplet out of range");
            rows[i].push((j, v));
        }
        for row in &mut rows {
            row.sort_unstable_by_key(|e| e.0);
            let mut merged: Vec<(usize, i64)> = Vec::with_capacity(row.len());
            for &(j, v) in row.iter() {
                match merged.last_mut() {
                    Some(last) if last.0 == j => last.1 = coeffs.add(last.1, v),
                    _ => merged.push((j, coeffs.reduce(v))),
                }
            }
            merged.retain(|e| e.1 != 0);
            *row = merged;
        }
        SparseMatrix { nrows, ncols, rows }
    }

    pub fn from_dense(m: &DenseMatrix) -> Self {
        let rows = (0..m.nrows())
            .map(|i| m.row(i).iter().enumerate().filter(|(_, &v)| v != 0).map(|(j, &v)| (j, v)).collect())
            .collect();
        SparseMatrix { nrows: m.nrows(), ncols: m.ncols(), rows }
    }

    #[inline]
    pub fn nrows(&self) -> usize {
        self.nrows
    }

    #[inline]
    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn row(&self, i: usize) -> &[(usize, i64)] {
        &self.rows[i]
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(Vec::is_empty)
    }

    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, i64)> + '_ {
        self.rows.iter().enumerate().flat_map(|(i, r)| r.iter().map(move |&(j, v)| (i, j, v)))
    }

    pub fn transpose(&self) -> Self {
        let mut rows: Vec<Vec<(usize, i64)>> = vec![Vec::new(); self.ncols];
        for (i, j, v) in self.triplets() {
            rows[j].push((i, v));
        }
        SparseMatrix { nrows: self.ncols, ncols: self.nrows, rows }
    }

    pub fn to_dense(&self) -> DenseMatrix {
        let mut m = DenseMatrix::zeros(self.nrows, self.ncols);
        for (i, j, v) in self.triplets() {
            m.set(i, j, v);
        }
        m
    }

    pub fn mul_vec(&self, v: &[i64], coeffs: Coeffs) -> Vec<i64> {
        assert_eq!(v.len(), self.ncols, "dimension mismatch in product");
        self.rows.iter().map(|r| r.iter().fold(0, |acc, &(j, a)| coeffs.add(acc, coeffs.mul(a, v[j])))).collect()
    }

    /// `self * other` with a sparse left factor and sparse right factor.
    pub fn mul(&self, other: &SparseMatrix, coeffs: Coeffs) -> SparseMatrix {
        assert_eq!(self.ncols, other.nrows, "dimension mismatch in product");
        let triplets = self.rows.iter().enumerate().flat_map(|(i, r)| {
            r.iter().flat_map(move |&(k, a)| other.rows[k].iter().map(move |&(j, b)| (i, j, coeffs.mul(a, b))))
        });
        SparseMatrix::from_triplets(self.nrows, other.ncols, triplets, coeffs)
    }

    /// Dense `d * self`: rows of `d` combine rows of `self`.
    pub fn left_mul_dense(&self, d: &DenseMatrix, row_range: std::ops::Range<usize>, coeffs: Coeffs) -> DenseMatrix {
        assert_eq!(d.ncols(), self.nrows, "dimension mismatch in product");
        let mut out = DenseMatrix::zeros(row_range.len(), self.ncols);
        for (oi, i) in row_range.enumerate() {
            let drow = d.row(i);
            for (k, &a) in drow.iter().enumerate() {
                if a == 0 {
                    continue;
                }
                for &(j, b) in &self.rows[k] {
                    let cur = out.get(oi, j);
                    out.set(oi, j, coeffs.add(cur, coeffs.mul(a, b)));
                }
            }
        }
        out
    }
}
