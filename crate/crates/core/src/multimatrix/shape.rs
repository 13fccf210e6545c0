use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{accumulate, Matrix, SparseVec};
use crate::scalar::Scalar;

/// Block dimensions `(n₁, …, n_k)` of a multimatrix algebra `⊕ M_{nᵢ}(ℂ)`.
///
/// Element coordinates are the matrix-unit coefficients, blocks concatenated,
/// each block row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "Vec<usize>", into = "Vec<usize>")]
pub struct BlockShape {
    dims: Vec<usize>,
    offsets: Vec<usize>,
    /// first global row id of each block
    row_base: Vec<usize>,
    total: usize,
}

impl From<Vec<usize>> for BlockShape {
    fn from(dims: Vec<usize>) -> Self {
        BlockShape::new(dims)
    }
}

impl From<BlockShape> for Vec<usize> {
    fn from(s: BlockShape) -> Self {
        s.dims
    }
}

/// Location of a matrix unit `e^{(block)}_{row,col}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Unit {
    pub block: usize,
    pub row: usize,
    pub col: usize,
}

impl BlockShape {
    pub fn new(dims: Vec<usize>) -> Self {
        let mut offsets = Vec::with_capacity(dims.len());
        let mut row_base = Vec::with_capacity(dims.len());
        let (mut off, mut rb) = (0, 0);
        for &n in &dims {
            offsets.push(off);
            row_base.push(rb);
            off += n * n;
            rb += n;
        }
        BlockShape { dims, offsets, row_base, total: off }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn num_blocks(&self) -> usize {
        self.dims.len()
    }

    /// Total dimension `Σ nᵢ²`.
    pub fn dim(&self) -> usize {
        self.total
    }

    /// `Σ nᵢ`, the number of global row ids.
    pub fn row_count(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_commutative(&self) -> bool {
        self.dims.iter().all(|&n| n == 1)
    }

    pub fn offset(&self, block: usize) -> usize {
        self.offsets[block]
    }

    pub fn block_range(&self, block: usize) -> std::ops::Range<usize> {
        self.offsets[block]..self.offsets[block] + self.dims[block] * self.dims[block]
    }

    pub fn index(&self, block: usize, row: usize, col: usize) -> usize {
        self.offsets[block] + row * self.dims[block] + col
    }

    pub fn locate(&self, idx: usize) -> Unit {
        let block = match self.offsets.binary_search(&idx) {
            Ok(b) => {
                // skip zero-sized blocks (never constructed, but be safe)
                let mut b = b;
                while b + 1 < self.offsets.len() && self.offsets[b + 1] == idx {
                    b += 1;
                }
                b
            }
            Err(b) => b - 1,
        };
        let n = self.dims[block];
        let local = idx - self.offsets[block];
        Unit { block, row: local / n, col: local % n }
    }

    /// Global row id of a matrix unit's row (and of its column, for [`Self::col_id`]).
    pub fn row_id(&self, idx: usize) -> usize {
        let u = self.locate(idx);
        self.row_base[u.block] + u.row
    }

    pub fn col_id(&self, idx: usize) -> usize {
        let u = self.locate(idx);
        self.row_base[u.block] + u.col
    }

    /// Matrix unit with the given global row and column ids (same block).
    pub fn unit_from_ids(&self, row_id: usize, col_id: usize) -> Option<usize> {
        let block = match self.row_base.binary_search(&row_id) {
            Ok(b) => b,
            Err(b) => b - 1,
        };
        let base = self.row_base[block];
        let n = self.dims[block];
        if col_id < base || col_id >= base + n {
            return None;
        }
        Some(self.index(block, row_id - base, col_id - base))
    }

    /// `e_a · e_b` for matrix units: another matrix unit or zero.
    pub fn unit_product(&self, a: usize, b: usize) -> Option<usize> {
        let ua = self.locate(a);
        let ub = self.locate(b);
        if ua.block == ub.block && ua.col == ub.row {
            Some(self.index(ua.block, ua.row, ub.col))
        } else {
            None
        }
    }

    pub fn unit_star(&self, a: usize) -> usize {
        let u = self.locate(a);
        self.index(u.block, u.col, u.row)
    }

    pub fn zero<S: Scalar>(&self) -> Vec<S> {
        vec![S::zero(); self.total]
    }

    pub fn unit<S: Scalar>(&self) -> Vec<S> {
        let mut x = self.zero();
        for b in 0..self.num_blocks() {
            for r in 0..self.dims[b] {
                x[self.index(b, r, r)] = S::one();
            }
        }
        x
    }

    pub fn basis_vector<S: Scalar>(&self, idx: usize) -> Vec<S> {
        let mut x = self.zero();
        x[idx] = S::one();
        x
    }

    /// Identity of block `b`: the minimal central projection `z_b`.
    pub fn block_identity<S: Scalar>(&self, block: usize) -> Vec<S> {
        let mut x = self.zero();
        for r in 0..self.dims[block] {
            x[self.index(block, r, r)] = S::one();
        }
        x
    }

    /// Minimal projection `e^{(b)}_{11}`.
    pub fn minimal_projection<S: Scalar>(&self, block: usize) -> Vec<S> {
        self.basis_vector(self.index(block, 0, 0))
    }

    fn check_len<S>(&self, x: &[S]) -> Result<()> {
        if x.len() != self.total {
            return Err(Error::shape(format!(
                "element of length {} in algebra of dimension {}",
                x.len(),
                self.total
            )));
        }
        Ok(())
    }

    /// Blockwise matrix product.
    pub fn mul<S: Scalar>(&self, x: &[S], y: &[S]) -> Vec<S> {
        debug_assert!(self.check_len(x).is_ok() && self.check_len(y).is_ok());
        let mut out = self.zero();
        for (b, &n) in self.dims.iter().enumerate() {
            let off = self.offsets[b];
            for r in 0..n {
                for k in 0..n {
                    let xv = &x[off + r * n + k];
                    if xv.is_zero() {
                        continue;
                    }
                    for c in 0..n {
                        let yv = &y[off + k * n + c];
                        if yv.is_zero() {
                            continue;
                        }
                        let slot = &mut out[off + r * n + c];
                        let cur = std::mem::replace(slot, S::zero());
                        *slot = cur + xv.clone() * yv;
                    }
                }
            }
        }
        out
    }

    pub fn try_mul<S: Scalar>(&self, x: &[S], y: &[S]) -> Result<Vec<S>> {
        self.check_len(x)?;
        self.check_len(y)?;
        Ok(self.mul(x, y))
    }

    /// Blockwise conjugate transpose.
    pub fn star<S: Scalar>(&self, x: &[S]) -> Vec<S> {
        let mut out = self.zero();
        for (idx, v) in x.iter().enumerate() {
            if !v.is_zero() {
                out[self.unit_star(idx)] = v.conj();
            }
        }
        out
    }

    /// Product of sparse elements.
    pub fn mul_sparse<S: Scalar>(&self, x: &[(usize, S)], y: &[(usize, S)]) -> SparseVec<S> {
        if x.len() * y.len() <= 64 {
            return accumulate(x.iter().flat_map(|(a, va)| {
                y.iter().filter_map(move |(b, vb)| {
                    self.unit_product(*a, *b).map(|m| (m, va.clone() * vb))
                })
            }));
        }
        // index y by row id so only matching (col, row) pairs are visited
        let mut by_row: HashMap<usize, Vec<(usize, &S)>> = HashMap::new();
        for (b, vb) in y {
            by_row.entry(self.row_id(*b)).or_default().push((self.col_id(*b), vb));
        }
        let mut out = Vec::new();
        for (a, va) in x {
            if let Some(list) = by_row.get(&self.col_id(*a)) {
                let r = self.row_id(*a);
                for (c, vb) in list {
                    let m = self.unit_from_ids(r, *c).expect("same block");
                    out.push((m, va.clone() * *vb));
                }
            }
        }
        accumulate(out)
    }

    /// Blockwise conjugate transpose of a sparse element.
    pub fn star_sparse<S: Scalar>(&self, x: &[(usize, S)]) -> SparseVec<S> {
        accumulate(x.iter().map(|(a, v)| (self.unit_star(*a), v.conj())))
    }

    /// The canonical trace `τ(x) = Σ nᵢ Trᵢ(xᵢ) / Σ nⱼ²` as a functional.
    pub fn canonical_trace<S: Scalar>(&self) -> Vec<S> {
        let total = S::from_i64(self.total as i64);
        let mut f = self.zero();
        for (b, &n) in self.dims.iter().enumerate() {
            let w = S::from_i64(n as i64) / &total;
            for r in 0..n {
                f[self.index(b, r, r)] = w.clone();
            }
        }
        f
    }

    /// Basis of the centre: the block identities.
    pub fn center_basis<S: Scalar>(&self) -> Vec<Vec<S>> {
        (0..self.num_blocks()).map(|b| self.block_identity(b)).collect()
    }

    /// Tensor product shape with blocks `(i, j)` in lexicographic order, and
    /// the re-indexing `a·dim(other) + b ↦` coordinate in the tensor shape.
    pub fn tensor(&self, other: &BlockShape) -> (BlockShape, Vec<usize>) {
        let mut dims = Vec::with_capacity(self.num_blocks() * other.num_blocks());
        for &n in &self.dims {
            for &m in &other.dims {
                dims.push(n * m);
            }
        }
        let shape = BlockShape::new(dims);
        let mut reindex = vec![0; self.total * other.total];
        for a in 0..self.total {
            let ua = self.locate(a);
            for b in 0..other.total {
                let ub = other.locate(b);
                let m = other.dims[ub.block];
                let block = ua.block * other.num_blocks() + ub.block;
                reindex[a * other.total + b] =
                    shape.index(block, ua.row * m + ub.row, ua.col * m + ub.col);
            }
        }
        (shape, reindex)
    }

    /// Matrix of left multiplication `y ↦ x·y` (the regular representation).
    pub fn left_mult_matrix<S: Scalar>(&self, x: &[S]) -> Matrix<S> {
        let cols = (0..self.total)
            .map(|b| {
                let xs: Vec<(usize, S)> = x
                    .iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .map(|(i, v)| (i, v.clone()))
                    .collect();
                self.mul_sparse(&xs, &[(b, S::one())])
            })
            .collect();
        Matrix::from_columns(self.total, cols)
    }

    /// Block `b` of `x` as a dense `n × n` matrix.
    pub fn block_matrix<S: Scalar>(&self, x: &[S], block: usize) -> Vec<Vec<S>> {
        let n = self.dims[block];
        let off = self.offsets[block];
        (0..n)
            .map(|r| (0..n).map(|c| x[off + r * n + c].clone()).collect())
            .collect()
    }

    /// Which block, if any, `x` is the identity of.
    pub fn which_block_identity<S: Scalar>(&self, x: &[S]) -> Option<usize> {
        (0..self.num_blocks()).find(|&b| {
            let z = self.block_identity::<S>(b);
            z.iter().zip(x).all(|(a, b)| a.approx_eq(b))
        })
    }
}

/// The tensor product `A ⊗ B` of two shapes, with coordinates in the
/// Kronecker ordering `a·dim(B) + b` and multiplication routed through the
/// block form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorShape {
    pub left: BlockShape,
    pub right: BlockShape,
    pub shape: BlockShape,
    /// Kronecker index to block coordinate.
    pub to_block: Vec<usize>,
    /// Block coordinate to Kronecker index.
    pub from_block: Vec<usize>,
}

impl TensorShape {
    pub fn new(left: &BlockShape, right: &BlockShape) -> Self {
        let (shape, to_block) = left.tensor(right);
        let mut from_block = vec![0; to_block.len()];
        for (k, &t) in to_block.iter().enumerate() {
            from_block[t] = k;
        }
        TensorShape { left: left.clone(), right: right.clone(), shape, to_block, from_block }
    }

    pub fn dim(&self) -> usize {
        self.to_block.len()
    }

    pub fn index(&self, a: usize, b: usize) -> usize {
        a * self.right.dim() + b
    }

    pub fn split(&self, k: usize) -> (usize, usize) {
        (k / self.right.dim(), k % self.right.dim())
    }

    pub fn to_blocks<S: Scalar>(&self, x: &[(usize, S)]) -> SparseVec<S> {
        accumulate(x.iter().map(|(k, v)| (self.to_block[*k], v.clone())))
    }

    pub fn from_blocks<S: Scalar>(&self, x: &[(usize, S)]) -> SparseVec<S> {
        accumulate(x.iter().map(|(k, v)| (self.from_block[*k], v.clone())))
    }

    /// Product in Kronecker coordinates.
    pub fn mul_sparse<S: Scalar>(&self, x: &[(usize, S)], y: &[(usize, S)]) -> SparseVec<S> {
        let p = self.shape.mul_sparse(&self.to_blocks(x), &self.to_blocks(y));
        self.from_blocks(&p)
    }

    /// Product of block-coordinate elements (no re-indexing).
    pub fn mul_blocks<S: Scalar>(&self, x: &[(usize, S)], y: &[(usize, S)]) -> SparseVec<S> {
        self.shape.mul_sparse(x, y)
    }

    pub fn star_sparse<S: Scalar>(&self, x: &[(usize, S)]) -> SparseVec<S> {
        let rd = self.right.dim();
        accumulate(x.iter().map(|(k, v)| {
            let (a, b) = (k / rd, k % rd);
            (self.left.unit_star(a) * rd + self.right.unit_star(b), v.conj())
        }))
    }

    pub fn unit<S: Scalar>(&self) -> SparseVec<S> {
        let l = sparse_unit::<S>(&self.left);
        let r = sparse_unit::<S>(&self.right);
        let rd = self.right.dim();
        accumulate(l.iter().flat_map(|(a, _)| r.iter().map(move |(b, _)| (a * rd + b, S::one()))))
    }
}

fn sparse_unit<S: Scalar>(shape: &BlockShape) -> SparseVec<S> {
    (0..shape.num_blocks())
        .flat_map(|b| (0..shape.dims()[b]).map(move |r| (shape.index(b, r, r), S::one())))
        .collect()
}
