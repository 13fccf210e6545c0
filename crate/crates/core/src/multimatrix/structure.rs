use crate::error::{Error, Result};
use crate::linalg::{accumulate, inverse, kernel, Matrix, SparseVec};
use crate::scalar::Scalar;

use super::shape::BlockShape;

/// An abstract finite-dimensional *-algebra given by structure constants in
/// some basis `e_1 … e_d`.
#[derive(Clone, Debug)]
pub struct StructureConstants<S> {
    dim: usize,
    /// `product[i * dim + j]` holds the coordinates of `e_i · e_j`.
    product: Vec<SparseVec<S>>,
    /// Column `i` holds the coordinates of `e_i*`; extended conjugate-linearly.
    involution: Matrix<S>,
    unit: Vec<S>,
}

impl<S: Scalar> StructureConstants<S> {
    pub fn new(
        dim: usize,
        product: Vec<SparseVec<S>>,
        involution: Matrix<S>,
        unit: Vec<S>,
    ) -> Result<Self> {
        if product.len() != dim * dim || involution.rows() != dim || involution.cols() != dim || unit.len() != dim {
            return Err(Error::shape("structure constants of inconsistent size"));
        }
        Ok(StructureConstants { dim, product, involution, unit })
    }

    /// The structure constants of a multimatrix algebra in its matrix-unit basis.
    pub fn from_shape(shape: &BlockShape) -> Self {
        let d = shape.dim();
        let mut product = Vec::with_capacity(d * d);
        for a in 0..d {
            for b in 0..d {
                product.push(match shape.unit_product(a, b) {
                    Some(m) => vec![(m, S::one())],
                    None => Vec::new(),
                });
            }
        }
        let involution = Matrix::from_columns(d, (0..d).map(|a| vec![(shape.unit_star(a), S::one())]).collect());
        StructureConstants { dim: d, product, involution, unit: shape.unit() }
    }

    /// Re-express in the basis `f_j = Σ_i P_{ij} e_i` (columns of `p`).
    pub fn change_basis(&self, p: &Matrix<S>) -> Result<Self> {
        let pinv = inverse(p)?;
        let d = self.dim;
        let cols: Vec<Vec<S>> = (0..d)
            .map(|j| crate::linalg::dense_from_sparse(p.column(j), d))
            .collect();
        let mut product = Vec::with_capacity(d * d);
        for a in 0..d {
            for b in 0..d {
                let xy = self.mul(&cols[a], &cols[b]);
                product.push(crate::linalg::sparse_from_dense(&pinv.apply(&xy)));
            }
        }
        let inv_cols = (0..d)
            .map(|a| crate::linalg::sparse_from_dense(&pinv.apply(&self.star(&cols[a]))))
            .collect();
        let involution = Matrix::from_columns(d, inv_cols);
        let unit = pinv.apply(&self.unit);
        Ok(StructureConstants { dim: d, product, involution, unit })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn unit(&self) -> &[S] {
        &self.unit
    }

    pub fn product_of_basis(&self, i: usize, j: usize) -> &[(usize, S)] {
        &self.product[i * self.dim + j]
    }

    pub fn involution_matrix(&self) -> &Matrix<S> {
        &self.involution
    }

    pub fn mul(&self, x: &[S], y: &[S]) -> Vec<S> {
        let mut out = vec![S::zero(); self.dim];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let c = xi.clone() * yj;
                for (k, v) in &self.product[i * self.dim + j] {
                    let cur = std::mem::replace(&mut out[*k], S::zero());
                    out[*k] = cur + v.clone() * &c;
                }
            }
        }
        out
    }

    pub fn mul_sparse(&self, x: &[(usize, S)], y: &[(usize, S)]) -> SparseVec<S> {
        accumulate(x.iter().flat_map(|(i, xi)| {
            y.iter().flat_map(move |(j, yj)| {
                let c = xi.clone() * yj;
                self.product[i * self.dim + j].iter().map(move |(k, v)| (*k, v.clone() * &c))
            })
        }))
    }

    /// Conjugate-linear involution.
    pub fn star(&self, x: &[S]) -> Vec<S> {
        let conj: Vec<S> = x.iter().map(|v| v.conj()).collect();
        self.involution.apply(&conj)
    }

    pub fn basis_vector(&self, i: usize) -> Vec<S> {
        let mut v = vec![S::zero(); self.dim];
        v[i] = S::one();
        v
    }

    /// Associativity, unit and involution axioms on basis triples/pairs.
    pub fn check_axioms(&self) -> Result<()> {
        let d = self.dim;
        let basis: Vec<Vec<S>> = (0..d).map(|i| self.basis_vector(i)).collect();
        for i in 0..d {
            if !approx(&self.mul(&self.unit, &basis[i]), &basis[i]) || !approx(&self.mul(&basis[i], &self.unit), &basis[i]) {
                return Err(Error::structural(format!("unit law fails on e_{i}")));
            }
            if !approx(&self.star(&self.star(&basis[i])), &basis[i]) {
                return Err(Error::structural(format!("involution is not involutive on e_{i}")));
            }
            for j in 0..d {
                let ij = self.mul(&basis[i], &basis[j]);
                let lhs = self.star(&ij);
                let rhs = self.mul(&self.star(&basis[j]), &self.star(&basis[i]));
                if !approx(&lhs, &rhs) {
                    return Err(Error::structural(format!("involution not anti-multiplicative on (e_{i}, e_{j})")));
                }
                for k in 0..d {
                    let l = self.mul(&ij, &basis[k]);
                    let r = self.mul(&basis[i], &self.mul(&basis[j], &basis[k]));
                    if !approx(&l, &r) {
                        return Err(Error::structural(format!("associativity fails on (e_{i}, e_{j}, e_{k})")));
                    }
                }
            }
        }
        Ok(())
    }

    /// Basis of the centre `{z : z x = x z ∀x}`.
    pub fn center_basis(&self) -> Vec<Vec<S>> {
        let d = self.dim;
        // unknown z; for each basis e_i: Σ_j z_j (c_{ji} - c_{ij}) = 0
        let mut columns: Vec<SparseVec<S>> = vec![Vec::new(); d];
        for i in 0..d {
            for j in 0..d {
                let entries = self.product[j * d + i]
                    .iter()
                    .map(|(k, v)| (i * d + k, v.clone()))
                    .chain(self.product[i * d + j].iter().map(|(k, v)| (i * d + k, -v.clone())));
                columns[j].extend(entries);
            }
        }
        kernel(&Matrix::from_columns(d * d, columns))
    }

    /// Matrix of left multiplication by `x`.
    pub fn left_mult_matrix(&self, x: &[S]) -> Matrix<S> {
        let cols = (0..self.dim)
            .map(|j| crate::linalg::sparse_from_dense(&self.mul(x, &self.basis_vector(j))))
            .collect();
        Matrix::from_columns(self.dim, cols)
    }

    /// Dimension of the radical, via the kernel of the trace form
    /// `(x, y) ↦ Tr(L_{xy})`.
    pub fn radical_dim(&self) -> usize {
        let d = self.dim;
        // Tr(L_{e_k}) = Σ_m c_{km}^m
        let traces: Vec<S> = (0..d)
            .map(|k| {
                (0..d).fold(S::zero(), |acc, m| {
                    let entry = self.product[k * d + m]
                        .iter()
                        .find(|(i, _)| *i == m)
                        .map(|(_, v)| v.clone())
                        .unwrap_or_else(S::zero);
                    acc + entry
                })
            })
            .collect();
        let rows: Vec<Vec<S>> = (0..d)
            .map(|i| {
                (0..d)
                    .map(|j| {
                        self.product[i * d + j]
                            .iter()
                            .fold(S::zero(), |acc, (k, v)| acc + v.clone() * &traces[*k])
                    })
                    .collect()
            })
            .collect();
        kernel(&Matrix::from_dense(&rows)).len()
    }
}

pub(crate) fn approx<S: Scalar>(a: &[S], b: &[S]) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x.approx_eq(y))
}
