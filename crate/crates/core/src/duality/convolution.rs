use std::sync::Arc;

use crate::error::{Error, Result};
use crate::hopf::HopfAlgebra;
use crate::linalg::{accumulate, LinearMap, Matrix, SparseVec};
use crate::scalar::Scalar;

/// A linear map `C → A` tagged with its coalgebra and algebra, so that
/// convolution of maps between different pairs is rejected at runtime.
#[derive(Clone, Debug)]
pub struct MapConvolutionElement<S> {
    pub map: LinearMap<S>,
    coalgebra: Arc<HopfAlgebra<S>>,
    algebra: Arc<HopfAlgebra<S>>,
}

impl<S: Scalar> MapConvolutionElement<S> {
    pub fn new(map: LinearMap<S>, coalgebra: Arc<HopfAlgebra<S>>, algebra: Arc<HopfAlgebra<S>>) -> Result<Self> {
        if map.domain_dim() != coalgebra.dim() || map.codomain_dim() != algebra.dim() {
            return Err(Error::shape(format!(
                "map is {}→{}, expected {}→{}",
                map.domain_dim(),
                map.codomain_dim(),
                coalgebra.dim(),
                algebra.dim()
            )));
        }
        Ok(MapConvolutionElement { map, coalgebra, algebra })
    }

    /// The convolution unit `x ↦ ε_C(x) 1_A`.
    pub fn unit(coalgebra: Arc<HopfAlgebra<S>>, algebra: Arc<HopfAlgebra<S>>) -> Self {
        let one = crate::linalg::sparse_from_dense(&algebra.shape().unit::<S>());
        let cols = coalgebra
            .counit()
            .iter()
            .map(|e| one.iter().map(|(k, v)| (*k, v.clone() * e)).filter(|(_, v)| !v.is_zero()).collect())
            .collect();
        let map = LinearMap::new(Matrix::from_columns(algebra.dim(), cols));
        MapConvolutionElement { map, coalgebra, algebra }
    }

    pub fn tag(&self) -> (&str, &str) {
        (self.coalgebra.name(), self.algebra.name())
    }

    fn same_tag(&self, other: &Self) -> bool {
        let same = |x: &Arc<HopfAlgebra<S>>, y: &Arc<HopfAlgebra<S>>| {
            Arc::ptr_eq(x, y) || (x.name() == y.name() && x.shape() == y.shape())
        };
        same(&self.coalgebra, &other.coalgebra) && same(&self.algebra, &other.algebra)
    }

    /// `(f ∗ g)(x) = m_A (f ⊗ g) Δ_C(x)`.
    pub fn convolve(&self, other: &Self) -> Result<Self> {
        if !self.same_tag(other) {
            let (c1, a1) = self.tag();
            let (c2, a2) = other.tag();
            return Err(Error::TagMismatch(format!("({c1}, {a1}) vs ({c2}, {a2})")));
        }
        let d = self.coalgebra.dim();
        let shape = self.algebra.shape();
        let cols: Vec<SparseVec<S>> = (0..d)
            .map(|x| {
                accumulate(self.coalgebra.delta(x).iter().flat_map(|(ij, c)| {
                    let (i, j) = (ij / d, ij % d);
                    shape
                        .mul_sparse(self.map.image_of_basis(i), other.map.image_of_basis(j))
                        .into_iter()
                        .map(move |(k, v)| (k, v * c))
                }))
            })
            .collect();
        Ok(MapConvolutionElement {
            map: LinearMap::new(Matrix::from_columns(self.algebra.dim(), cols)),
            coalgebra: self.coalgebra.clone(),
            algebra: self.algebra.clone(),
        })
    }

    pub fn approx_eq(&self, other: &Self) -> bool {
        self.same_tag(other) && self.map.approx_eq(&other.map)
    }
}

/// Convenience wrapper over [`MapConvolutionElement::convolve`].
pub fn map_convolve<S: Scalar>(
    f: &MapConvolutionElement<S>,
    g: &MapConvolutionElement<S>,
) -> Result<MapConvolutionElement<S>> {
    f.convolve(g)
}
