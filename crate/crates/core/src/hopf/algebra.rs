use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::{accumulate, LinearMap, SparseVec};
use crate::multimatrix::{BlockShape, TensorShape};
use crate::scalar::Scalar;

/// A finite-dimensional Hopf *-algebra on a multimatrix algebra: the product
/// and involution are the blockwise ones, the coalgebra structure is explicit.
///
/// `Δ` maps into `A ⊗ A` in Kronecker coordinates `a·dim + b`.
#[derive(Clone, Debug)]
pub struct HopfAlgebra<S> {
    name: String,
    shape: Arc<BlockShape>,
    tensor: Arc<TensorShape>,
    coproduct: LinearMap<S>,
    counit: Vec<S>,
    antipode: LinearMap<S>,
}

impl<S: Scalar> HopfAlgebra<S> {
    pub fn new(
        name: impl Into<String>,
        shape: BlockShape,
        coproduct: LinearMap<S>,
        counit: Vec<S>,
        antipode: LinearMap<S>,
    ) -> Result<Self> {
        let d = shape.dim();
        if coproduct.domain_dim() != d || coproduct.codomain_dim() != d * d {
            return Err(Error::structural(format!(
                "coproduct is {}x{}, expected {}x{d}",
                coproduct.codomain_dim(),
                coproduct.domain_dim(),
                d * d
            )));
        }
        if counit.len() != d {
            return Err(Error::structural(format!("counit has length {}, expected {d}", counit.len())));
        }
        if antipode.domain_dim() != d || antipode.codomain_dim() != d {
            return Err(Error::structural(format!(
                "antipode is {}x{}, expected {d}x{d}",
                antipode.codomain_dim(),
                antipode.domain_dim()
            )));
        }
        let tensor = Arc::new(TensorShape::new(&shape, &shape));
        Ok(HopfAlgebra { name: name.into(), shape: Arc::new(shape), tensor, coproduct, counit, antipode })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn shape(&self) -> &BlockShape {
        &self.shape
    }

    pub fn shape_arc(&self) -> Arc<BlockShape> {
        self.shape.clone()
    }

    pub fn tensor(&self) -> &TensorShape {
        &self.tensor
    }

    pub fn dim(&self) -> usize {
        self.shape.dim()
    }

    pub fn coproduct(&self) -> &LinearMap<S> {
        &self.coproduct
    }

    pub fn counit(&self) -> &[S] {
        &self.counit
    }

    pub fn antipode(&self) -> &LinearMap<S> {
        &self.antipode
    }

    /// `Δ(e_a)` in Kronecker coordinates.
    pub fn delta(&self, a: usize) -> &[(usize, S)] {
        self.coproduct.image_of_basis(a)
    }

    pub fn delta_sparse(&self, x: &[(usize, S)]) -> SparseVec<S> {
        self.coproduct.apply_sparse(x)
    }

    pub fn mul(&self, x: &[S], y: &[S]) -> Vec<S> {
        self.shape.mul(x, y)
    }

    pub fn star(&self, x: &[S]) -> Vec<S> {
        self.shape.star(x)
    }

    pub fn counit_of(&self, x: &[S]) -> S {
        crate::multimatrix::evaluate(&self.counit, x)
    }

    pub fn counit_sparse(&self, x: &[(usize, S)]) -> S {
        x.iter().fold(S::zero(), |acc, (k, v)| acc + self.counit[*k].clone() * v)
    }

    /// The flip `σ` on `A ⊗ A` in Kronecker coordinates.
    pub fn flip_sparse(&self, x: &[(usize, S)]) -> SparseVec<S> {
        let d = self.dim();
        accumulate(x.iter().map(|(k, v)| ((k % d) * d + k / d, v.clone())))
    }

    pub fn is_commutative(&self) -> bool {
        self.shape.is_commutative()
    }

    pub fn is_cocommutative(&self) -> bool {
        (0..self.dim()).all(|a| {
            let d = self.delta(a);
            sparse_eq(d, &self.flip_sparse(d))
        })
    }

    /// Replace the coalgebra data (used for fault injection and transport).
    pub fn with_maps(&self, coproduct: LinearMap<S>, counit: Vec<S>, antipode: LinearMap<S>) -> Result<Self> {
        HopfAlgebra::new(self.name.clone(), (*self.shape).clone(), coproduct, counit, antipode)
    }
}

impl HopfAlgebra<crate::scalar::CF64> {
    /// Copy whose structure constants carry comparison tolerance `tol`.
    pub fn with_tolerance(&self, tol: f64) -> Self {
        let counit = self.counit.iter().map(|v| v.with_tol(tol)).collect();
        self.with_maps(self.coproduct.with_tolerance(tol), counit, self.antipode.with_tolerance(tol))
            .expect("same dimensions")
    }
}

/// Entrywise comparison of sparse vectors through the scalar comparator.
pub fn sparse_eq<S: Scalar>(x: &[(usize, S)], y: &[(usize, S)]) -> bool {
    sparse_residual(x, y).is_none()
}

/// First index where `x` and `y` differ, with the magnitude of the difference.
pub fn sparse_residual<S: Scalar>(x: &[(usize, S)], y: &[(usize, S)]) -> Option<(usize, f64)> {
    let diff = accumulate(x.iter().cloned().chain(y.iter().map(|(k, v)| (*k, -v.clone()))));
    diff.into_iter()
        .find(|(_, v)| !v.is_negligible())
        .map(|(k, v)| (k, v.magnitude()))
}
