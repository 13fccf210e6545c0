use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Sparse vector: sorted `(index, value)` pairs with no stored zeros.
pub type SparseVec<S> = Vec<(usize, S)>;

/// Sum duplicate indices and drop zeros.
pub fn accumulate<S: Scalar, I: IntoIterator<Item = (usize, S)>>(items: I) -> SparseVec<S> {
    let mut acc: BTreeMap<usize, S> = BTreeMap::new();
    for (i, v) in items {
        match acc.get_mut(&i) {
            Some(slot) => {
                let cur = std::mem::replace(slot, S::zero());
                *slot = cur + v;
            }
            None => {
                acc.insert(i, v);
            }
        }
    }
    acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
}

pub fn sparse_from_dense<S: Scalar>(v: &[S]) -> SparseVec<S> {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

pub fn dense_from_sparse<S: Scalar>(v: &[(usize, S)], len: usize) -> Vec<S> {
    let mut out = vec![S::zero(); len];
    for (i, x) in v {
        out[*i] = x.clone();
    }
    out
}

/// `true` if every entry is negligible under the scalar comparator.
pub fn is_negligible_vec<S: Scalar>(v: &[S]) -> bool {
    v.iter().all(|x| x.is_negligible())
}

/// Sparse matrix stored by columns.
///
/// Columns are the natural unit here: the image of basis vector `j` under a
/// linear map is column `j`.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    columns: Vec<SparseVec<S>>,
}

impl<S: Scalar> Matrix<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, columns: vec![Vec::new(); cols] }
    }

    pub fn identity(n: usize) -> Self {
        Matrix {
            rows: n,
            cols: n,
            columns: (0..n).map(|i| vec![(i, S::one())]).collect(),
        }
    }

    /// Build from `(row, col, value)` triplets; duplicate positions are an error.
    pub fn from_triplets(rows: usize, cols: usize, triplets: Vec<(usize, usize, S)>) -> Result<Self> {
        let mut columns: Vec<BTreeMap<usize, S>> = vec![BTreeMap::new(); cols];
        for (r, c, v) in triplets {
            if r >= rows || c >= cols {
                return Err(Error::shape(format!("entry ({r},{c}) outside {rows}x{cols}")));
            }
            if columns[c].insert(r, v).is_some() {
                return Err(Error::shape(format!("duplicate entry ({r},{c})")));
            }
        }
        Ok(Matrix {
            rows,
            cols,
            columns: columns
                .into_iter()
                .map(|m| m.into_iter().filter(|(_, v)| !v.is_zero()).collect())
                .collect(),
        })
    }

    /// Build from columns given as (possibly unsorted, possibly repeated) sparse vectors.
    pub fn from_columns(rows: usize, columns: Vec<SparseVec<S>>) -> Self {
        let cols = columns.len();
        let columns = columns.into_iter().map(accumulate).collect::<Vec<_>>();
        debug_assert!(columns.iter().all(|c| c.iter().all(|(r, _)| *r < rows)));
        Matrix { rows, cols, columns }
    }

    pub fn from_dense(rows: &[Vec<S>]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        let columns = (0..ncols)
            .map(|c| {
                (0..nrows)
                    .filter(|&r| !rows[r][c].is_zero())
                    .map(|r| (r, rows[r][c].clone()))
                    .collect()
            })
            .collect();
        Matrix { rows: nrows, cols: ncols, columns }
    }

    /// Matrix whose columns are the given dense vectors.
    pub fn from_dense_columns(rows: usize, cols: &[Vec<S>]) -> Self {
        Matrix {
            rows,
            cols: cols.len(),
            columns: cols.iter().map(|c| sparse_from_dense(c)).collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn column(&self, c: usize) -> &[(usize, S)] {
        &self.columns[c]
    }

    pub fn columns(&self) -> &[SparseVec<S>] {
        &self.columns
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(|c| c.len()).sum()
    }

    pub fn get(&self, r: usize, c: usize) -> S {
        match self.columns[c].binary_search_by_key(&r, |(i, _)| *i) {
            Ok(k) => self.columns[c][k].1.clone(),
            Err(_) => S::zero(),
        }
    }

    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, &S)> + '_ {
        self.columns
            .iter()
            .enumerate()
            .flat_map(|(c, col)| col.iter().map(move |(r, v)| (*r, c, v)))
    }

    /// Replace one entry (used for fault injection and tests).
    pub fn set(&mut self, r: usize, c: usize, v: S) {
        let col = &mut self.columns[c];
        match col.binary_search_by_key(&r, |(i, _)| *i) {
            Ok(k) => {
                if v.is_zero() {
                    col.remove(k);
                } else {
                    col[k].1 = v;
                }
            }
            Err(k) => {
                if !v.is_zero() {
                    col.insert(k, (r, v));
                }
            }
        }
    }

    pub fn to_dense(&self) -> Vec<Vec<S>> {
        let mut out = vec![vec![S::zero(); self.cols]; self.rows];
        for (r, c, v) in self.triplets() {
            out[r][c] = v.clone();
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let mut columns: Vec<SparseVec<S>> = vec![Vec::new(); self.rows];
        for (c, col) in self.columns.iter().enumerate() {
            for (r, v) in col {
                columns[*r].push((c, v.clone()));
            }
        }
        Matrix { rows: self.cols, cols: self.rows, columns }
    }

    pub fn conj_transpose(&self) -> Self {
        let mut t = self.transpose();
        for col in t.columns.iter_mut() {
            for (_, v) in col.iter_mut() {
                *v = v.conj();
            }
        }
        t
    }

    pub fn apply(&self, x: &[S]) -> Vec<S> {
        assert_eq!(x.len(), self.cols, "apply: dimension mismatch");
        let mut out = vec![S::zero(); self.rows];
        for (c, xc) in x.iter().enumerate() {
            if xc.is_zero() {
                continue;
            }
            for (r, v) in &self.columns[c] {
                let cur = std::mem::replace(&mut out[*r], S::zero());
                out[*r] = cur + v.clone() * xc;
            }
        }
        out
    }

    pub fn apply_sparse(&self, x: &[(usize, S)]) -> SparseVec<S> {
        accumulate(
            x.iter()
                .flat_map(|(c, xc)| self.columns[*c].iter().map(move |(r, v)| (*r, v.clone() * xc))),
        )
    }

    pub fn mul(&self, other: &Matrix<S>) -> Result<Matrix<S>> {
        if self.cols != other.rows {
            return Err(Error::shape(format!(
                "product of {}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let columns = other.columns.iter().map(|c| self.apply_sparse(c)).collect();
        Ok(Matrix { rows: self.rows, cols: other.cols, columns })
    }

    pub fn add(&self, other: &Matrix<S>) -> Result<Matrix<S>> {
        self.check_same(other)?;
        let columns = self
            .columns
            .iter()
            .zip(&other.columns)
            .map(|(a, b)| accumulate(a.iter().cloned().chain(b.iter().cloned())))
            .collect();
        Ok(Matrix { rows: self.rows, cols: self.cols, columns })
    }

    pub fn sub(&self, other: &Matrix<S>) -> Result<Matrix<S>> {
        self.add(&other.scale(&(-S::one())))
    }

    pub fn scale(&self, s: &S) -> Matrix<S> {
        let columns = self
            .columns
            .iter()
            .map(|c| {
                c.iter()
                    .map(|(r, v)| (*r, v.clone() * s))
                    .filter(|(_, v)| !v.is_zero())
                    .collect()
            })
            .collect();
        Matrix { rows: self.rows, cols: self.cols, columns }
    }

    /// Kronecker product; row and column `(i, j)` map to `i * other_dim + j`.
    pub fn kron(&self, other: &Matrix<S>) -> Matrix<S> {
        let rows = self.rows * other.rows;
        let mut columns = Vec::with_capacity(self.cols * other.cols);
        for ca in &self.columns {
            for cb in &other.columns {
                let mut col = Vec::with_capacity(ca.len() * cb.len());
                for (ra, va) in ca {
                    for (rb, vb) in cb {
                        let v = va.clone() * vb;
                        if !v.is_zero() {
                            col.push((ra * other.rows + rb, v));
                        }
                    }
                }
                columns.push(col);
            }
        }
        Matrix { rows, cols: self.cols * other.cols, columns }
    }

    /// Every entry negligible under the scalar comparator.
    pub fn is_negligible(&self) -> bool {
        self.columns.iter().all(|c| c.iter().all(|(_, v)| v.is_negligible()))
    }

    pub fn approx_eq(&self, other: &Matrix<S>) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && self.sub(other).map(|d| d.is_negligible()).unwrap_or(false)
    }

    /// Largest entry magnitude, for residual reporting.
    pub fn max_abs(&self) -> f64 {
        self.triplets().map(|(_, _, v)| v.magnitude()).fold(0.0, f64::max)
    }

    pub fn trace(&self) -> Result<S> {
        if !self.is_square() {
            return Err(Error::NotSquare { rows: self.rows, cols: self.cols });
        }
        Ok((0..self.rows).fold(S::zero(), |acc, i| acc + self.get(i, i)))
    }

    fn check_same(&self, other: &Matrix<S>) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::shape(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }
}
