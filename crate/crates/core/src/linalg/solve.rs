//! Exact (or tolerance-aware) Gauss–Jordan elimination.
//!
//! [`RowReducer`] consumes equations one at a time and keeps them in reduced
//! row-echelon form, so very tall stacked systems (thousands of invariance
//! equations in a few dozen unknowns) never have to be materialised.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

use super::matrix::{Matrix, SparseVec};

#[derive(Clone, Debug)]
struct Row<S> {
    pivot: usize,
    coeffs: SparseVec<S>,
    rhs: Vec<S>,
}

/// `dst -= factor * src` on sparse vectors.
fn axpy<S: Scalar>(dst: &SparseVec<S>, factor: &S, src: &SparseVec<S>) -> SparseVec<S> {
    let mut out = Vec::with_capacity(dst.len() + src.len());
    let (mut i, mut j) = (0, 0);
    while i < dst.len() || j < src.len() {
        let take_dst = j >= src.len() || (i < dst.len() && dst[i].0 < src[j].0);
        let take_src = i >= dst.len() || (j < src.len() && src[j].0 < dst[i].0);
        if take_dst {
            out.push(dst[i].clone());
            i += 1;
        } else if take_src {
            let v = -(src[j].1.clone() * factor);
            if !v.is_zero() {
                out.push((src[j].0, v));
            }
            j += 1;
        } else {
            let v = dst[i].1.clone() - src[j].1.clone() * factor;
            if !v.is_zero() {
                out.push((dst[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

fn rhs_axpy<S: Scalar>(dst: &mut [S], factor: &S, src: &[S]) {
    for (d, s) in dst.iter_mut().zip(src) {
        if !s.is_zero() {
            let cur = std::mem::replace(d, S::zero());
            *d = cur - s.clone() * factor;
        }
    }
}

/// Incremental reduced row-echelon form over `ncols` unknowns with `nrhs`
/// right-hand sides.
#[derive(Clone, Debug)]
pub struct RowReducer<S> {
    ncols: usize,
    nrhs: usize,
    rows: Vec<Row<S>>,
    /// pivot column -> row index
    pivot_row: Vec<Option<usize>>,
    inconsistent: bool,
}

impl<S: Scalar> RowReducer<S> {
    pub fn new(ncols: usize, nrhs: usize) -> Self {
        RowReducer {
            ncols,
            nrhs,
            rows: Vec::new(),
            pivot_row: vec![None; ncols],
            inconsistent: false,
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_inconsistent(&self) -> bool {
        self.inconsistent
    }

    fn reduce(&self, mut coeffs: SparseVec<S>, mut rhs: Vec<S>) -> (SparseVec<S>, Vec<S>) {
        // Rows are fully reduced, so one pass over the incoming row's pivot
        // entries suffices.
        let mut k = 0;
        while k < coeffs.len() {
            let (c, v) = (coeffs[k].0, coeffs[k].1.clone());
            match self.pivot_row[c] {
                Some(r) => {
                    let row = &self.rows[r];
                    coeffs = axpy(&coeffs, &v, &row.coeffs);
                    rhs_axpy(&mut rhs, &v, &row.rhs);
                    // everything at or before c is now free-column only
                    k = coeffs.partition_point(|(i, _)| *i <= c);
                }
                None => k += 1,
            }
        }
        if !S::EXACT {
            coeffs.retain(|(_, v)| !v.is_negligible());
        }
        (coeffs, rhs)
    }

    /// Add the equation `coeffs · x = rhs`. Returns `true` if it raised the rank.
    pub fn push(&mut self, coeffs: SparseVec<S>, rhs: Vec<S>) -> bool {
        debug_assert_eq!(rhs.len(), self.nrhs);
        let (coeffs, mut rhs) = self.reduce(coeffs, rhs);
        if coeffs.is_empty() {
            if rhs.iter().any(|v| !v.is_negligible()) {
                self.inconsistent = true;
            }
            return false;
        }
        let pick = if S::EXACT {
            0
        } else {
            let mut best = 0;
            for (k, (_, v)) in coeffs.iter().enumerate() {
                if v.magnitude() > coeffs[best].1.magnitude() {
                    best = k;
                }
            }
            best
        };
        let pivot = coeffs[pick].0;
        let inv = S::one() / &coeffs[pick].1;
        let coeffs: SparseVec<S> = coeffs
            .into_iter()
            .map(|(c, v)| if c == pivot { (c, S::one()) } else { (c, v * &inv) })
            .collect();
        for v in rhs.iter_mut() {
            *v = v.clone() * &inv;
        }
        // clear the new pivot column from existing rows
        for row in self.rows.iter_mut() {
            if let Ok(k) = row.coeffs.binary_search_by_key(&pivot, |(c, _)| *c) {
                let f = row.coeffs[k].1.clone();
                row.coeffs = axpy(&row.coeffs, &f, &coeffs);
                rhs_axpy(&mut row.rhs, &f, &rhs);
                if !S::EXACT {
                    row.coeffs.retain(|(c, v)| *c == row.pivot || !v.is_negligible());
                }
            }
        }
        self.pivot_row[pivot] = Some(self.rows.len());
        self.rows.push(Row { pivot, coeffs, rhs });
        true
    }

    pub fn push_dense(&mut self, coeffs: &[S], rhs: Vec<S>) -> bool {
        self.push(super::matrix::sparse_from_dense(coeffs), rhs)
    }

    pub fn pivot_columns(&self) -> Vec<usize> {
        let mut p: Vec<usize> = self.rows.iter().map(|r| r.pivot).collect();
        p.sort_unstable();
        p
    }

    /// Basis of the solution space of the homogeneous system, one vector per
    /// free column (in increasing column order).
    pub fn kernel(&self) -> Vec<Vec<S>> {
        let mut out = Vec::new();
        for free in 0..self.ncols {
            if self.pivot_row[free].is_some() {
                continue;
            }
            let mut v = vec![S::zero(); self.ncols];
            v[free] = S::one();
            for row in &self.rows {
                if let Ok(k) = row.coeffs.binary_search_by_key(&free, |(c, _)| *c) {
                    v[row.pivot] = -row.coeffs[k].1.clone();
                }
            }
            out.push(v);
        }
        out
    }

    /// Particular solution with free variables set to zero, one column per rhs.
    pub fn particular(&self) -> Result<Vec<Vec<S>>> {
        if self.inconsistent {
            return Err(Error::Inconsistent);
        }
        let mut cols = vec![vec![S::zero(); self.ncols]; self.nrhs];
        for row in &self.rows {
            for (k, col) in cols.iter_mut().enumerate() {
                col[row.pivot] = row.rhs[k].clone();
            }
        }
        Ok(cols)
    }
}

/// Result of [`solve_linear_system`].
#[derive(Clone, Debug)]
pub struct Solution<S> {
    /// `cols(A) x cols(b)` particular solution.
    pub particular: Matrix<S>,
    /// Basis of `ker A`.
    pub kernel: Vec<Vec<S>>,
}

/// Solve `A X = B`; returns a particular solution and a kernel basis of `A`.
pub fn solve_linear_system<S: Scalar>(a: &Matrix<S>, b: &Matrix<S>) -> Result<Solution<S>> {
    if a.rows() != b.rows() {
        return Err(Error::shape(format!(
            "system {}x{} with right-hand side {}x{}",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        )));
    }
    let at = a.transpose();
    let bt = b.transpose();
    let mut red = RowReducer::new(a.cols(), b.cols());
    for r in 0..a.rows() {
        let rhs = super::matrix::dense_from_sparse(bt.column(r), b.cols());
        red.push(at.column(r).to_vec(), rhs);
    }
    let particular = red.particular()?;
    Ok(Solution {
        particular: Matrix::from_dense_columns(a.cols(), &particular),
        kernel: red.kernel(),
    })
}

/// Kernel of `A`.
pub fn kernel<S: Scalar>(a: &Matrix<S>) -> Vec<Vec<S>> {
    let at = a.transpose();
    let mut red = RowReducer::new(a.cols(), 0);
    for r in 0..a.rows() {
        red.push(at.column(r).to_vec(), Vec::new());
    }
    red.kernel()
}

pub fn rank<S: Scalar>(a: &Matrix<S>) -> usize {
    let at = a.transpose();
    let mut red = RowReducer::new(a.cols(), 0);
    for r in 0..a.rows() {
        red.push(at.column(r).to_vec(), Vec::new());
    }
    red.rank()
}

/// Rank of a family of dense vectors.
pub fn rank_of_vectors<S: Scalar>(dim: usize, vectors: &[Vec<S>]) -> usize {
    let mut red = RowReducer::new(dim, 0);
    for v in vectors {
        red.push_dense(v, Vec::new());
    }
    red.rank()
}

/// Indices of a maximal linearly independent subfamily (greedy, in order).
pub fn independent_subset<S: Scalar>(dim: usize, vectors: &[Vec<S>]) -> Vec<usize> {
    let mut red = RowReducer::new(dim, 0);
    vectors
        .iter()
        .enumerate()
        .filter(|(_, v)| red.push_dense(v, Vec::new()))
        .map(|(i, _)| i)
        .collect()
}

/// Coordinates of `target` in the span of `basis`, if it lies there.
pub fn express_in_span<S: Scalar>(basis: &[Vec<S>], target: &[S]) -> Option<Vec<S>> {
    let dim = target.len();
    let a = Matrix::from_dense_columns(dim, basis);
    let b = Matrix::from_dense_columns(dim, &[target.to_vec()]);
    let sol = solve_linear_system(&a, &b).ok()?;
    Some(super::matrix::dense_from_sparse(sol.particular.column(0), basis.len()))
}

pub fn inverse<S: Scalar>(a: &Matrix<S>) -> Result<Matrix<S>> {
    if !a.is_square() {
        return Err(Error::NotSquare { rows: a.rows(), cols: a.cols() });
    }
    let n = a.rows();
    let sol = solve_linear_system(a, &Matrix::identity(n))?;
    if !sol.kernel.is_empty() {
        return Err(Error::structural("matrix is singular"));
    }
    Ok(sol.particular)
}

/// Determinant by fraction-free (Bareiss) elimination.
pub fn determinant<S: Scalar>(a: &Matrix<S>) -> Result<S> {
    if !a.is_square() {
        return Err(Error::NotSquare { rows: a.rows(), cols: a.cols() });
    }
    let n = a.rows();
    if n == 0 {
        return Ok(S::one());
    }
    let mut m = a.to_dense();
    let mut sign = S::one();
    let mut prev = S::one();
    for k in 0..n - 1 {
        if m[k][k].is_negligible() {
            let swap = (k + 1..n).find(|&r| !m[r][k].is_negligible());
            match swap {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return Ok(S::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (m[i][j].clone() * &m[k][k] - m[i][k].clone() * &m[k][j]) / &prev;
                m[i][j] = v;
            }
            m[i][k] = S::zero();
        }
        prev = m[k][k].clone();
    }
    Ok(sign * &m[n - 1][n - 1])
}
