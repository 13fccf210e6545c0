use crate::error::{Error, Result};
use crate::scalar::Scalar;

use super::matrix::{Matrix, SparseVec};

/// Linear map between coordinate spaces in fixed bases.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearMap<S> {
    matrix: Matrix<S>,
}

impl<S: Scalar> LinearMap<S> {
    /// `matrix` must be `codomain_dim x domain_dim`.
    pub fn new(matrix: Matrix<S>) -> Self {
        LinearMap { matrix }
    }

    pub fn identity(n: usize) -> Self {
        LinearMap::new(Matrix::identity(n))
    }

    /// The flip `σ: ℂ^a ⊗ ℂ^b → ℂ^b ⊗ ℂ^a`.
    pub fn flip(a: usize, b: usize) -> Self {
        let cols = (0..a * b)
            .map(|idx| {
                let (i, j) = (idx / b, idx % b);
                vec![(j * a + i, S::one())]
            })
            .collect();
        LinearMap::new(Matrix::from_columns(a * b, cols))
    }

    pub fn domain_dim(&self) -> usize {
        self.matrix.cols()
    }

    pub fn codomain_dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &Matrix<S> {
        &self.matrix
    }

    pub fn into_matrix(self) -> Matrix<S> {
        self.matrix
    }

    pub fn apply(&self, x: &[S]) -> Vec<S> {
        self.matrix.apply(x)
    }

    pub fn apply_sparse(&self, x: &[(usize, S)]) -> SparseVec<S> {
        self.matrix.apply_sparse(x)
    }

    /// Image of basis vector `j`.
    pub fn image_of_basis(&self, j: usize) -> &[(usize, S)] {
        self.matrix.column(j)
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &LinearMap<S>) -> Result<LinearMap<S>> {
        if self.domain_dim() != inner.codomain_dim() {
            return Err(Error::shape(format!(
                "cannot compose map from {} with map into {}",
                self.domain_dim(),
                inner.codomain_dim()
            )));
        }
        Ok(LinearMap::new(self.matrix.mul(&inner.matrix)?))
    }

    pub fn approx_eq(&self, other: &LinearMap<S>) -> bool {
        self.matrix.approx_eq(&other.matrix)
    }
}

/// Kronecker product of maps in the tensor ordering `e_i ⊗ e_j ↦ i·dim_B + j`.
pub fn kron<S: Scalar>(a: &LinearMap<S>, b: &LinearMap<S>) -> LinearMap<S> {
    LinearMap::new(a.matrix.kron(&b.matrix))
}

impl LinearMap<crate::scalar::CF64> {
    /// Copy with every entry tagged with comparison tolerance `tol`.
    pub fn with_tolerance(&self, tol: f64) -> Self {
        let cols = self.matrix.columns().iter().map(|c| c.iter().map(|(r, v)| (*r, v.with_tol(tol))).collect()).collect();
        LinearMap::new(Matrix::from_columns(self.codomain_dim(), cols))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::GaussRat;

    type Q = GaussRat;

    fn m2(a: i64, b: i64, c: i64, d: i64) -> LinearMap<Q> {
        LinearMap::new(Matrix::from_dense(&[
            vec![Q::from_i64(a), Q::from_i64(b)],
            vec![Q::from_i64(c), Q::from_i64(d)],
        ]))
    }

    #[test]
    fn kron_of_identities() {
        assert_eq!(kron(&LinearMap::<Q>::identity(2), &LinearMap::identity(3)), LinearMap::identity(6));
    }

    #[test]
    fn flip_naturality() {
        let a = m2(1, 2, -3, 4);
        let b = m2(0, 5, 7, -1);
        let s = LinearMap::<Q>::flip(2, 2);
        let lhs = s.compose(&kron(&a, &b)).unwrap().compose(&s).unwrap();
        assert_eq!(lhs, kron(&b, &a));
    }

    #[test]
    fn mixed_product() {
        let (a, b, c, d) = (m2(1, 2, 3, 4), m2(0, 1, 1, 0), m2(2, 0, 1, 1), m2(1, -1, 0, 3));
        let lhs = kron(&a, &b).compose(&kron(&c, &d)).unwrap();
        let rhs = kron(&a.compose(&c).unwrap(), &b.compose(&d).unwrap());
        assert_eq!(lhs, rhs);
    }
}
