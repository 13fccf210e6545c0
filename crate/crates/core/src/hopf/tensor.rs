use crate::error::Result;
use crate::linalg::{accumulate, LinearMap, Matrix, SparseVec};
use crate::multimatrix::TensorShape;
use crate::scalar::Scalar;

use super::algebra::HopfAlgebra;

/// `H₁ ⊗ H₂` on the tensor shape (blocks `(i, j)` in lexicographic order),
/// with `Δ = (id⊗σ⊗id)(Δ₁⊗Δ₂)`, `ε = ε₁⊗ε₂`, `κ = κ₁⊗κ₂`.
pub fn tensor_hopf<S: Scalar>(h1: &HopfAlgebra<S>, h2: &HopfAlgebra<S>) -> Result<HopfAlgebra<S>> {
    let ts = TensorShape::new(h1.shape(), h2.shape());
    let (d1, d2) = (h1.dim(), h2.dim());
    let dt = d1 * d2;
    // block coordinate of e_a ⊗ e_b
    let r = |a: usize, b: usize| ts.to_block[a * d2 + b];

    let mut delta_cols: Vec<SparseVec<S>> = vec![Vec::new(); dt];
    let mut counit = vec![S::zero(); dt];
    let mut kappa_cols: Vec<SparseVec<S>> = vec![Vec::new(); dt];
    for a in 0..d1 {
        for b in 0..d2 {
            let t = r(a, b);
            delta_cols[t] = accumulate(h1.delta(a).iter().flat_map(|(ij, c)| {
                let (i, j) = (ij / d1, ij % d1);
                h2.delta(b).iter().map(move |(kl, v)| {
                    let (k, l) = (kl / d2, kl % d2);
                    (r(i, k) * dt + r(j, l), c.clone() * v)
                })
            }));
            counit[t] = h1.counit()[a].clone() * &h2.counit()[b];
            kappa_cols[t] = accumulate(h1.antipode().image_of_basis(a).iter().flat_map(|(i, c)| {
                h2.antipode().image_of_basis(b).iter().map(move |(k, v)| (r(*i, *k), c.clone() * v))
            }));
        }
    }
    HopfAlgebra::new(
        format!("{}⊗{}", h1.name(), h2.name()),
        ts.shape.clone(),
        LinearMap::new(Matrix::from_columns(dt * dt, delta_cols)),
        counit,
        LinearMap::new(Matrix::from_columns(dt, kappa_cols)),
    )
}

/// `h₁ ⊗ h₂` as a functional on the tensor shape.
pub fn tensor_functional<S: Scalar>(h1: &HopfAlgebra<S>, f1: &[S], h2: &HopfAlgebra<S>, f2: &[S]) -> Vec<S> {
    let ts = TensorShape::new(h1.shape(), h2.shape());
    let mut out = vec![S::zero(); ts.dim()];
    for (a, x) in f1.iter().enumerate() {
        for (b, y) in f2.iter().enumerate() {
            out[ts.to_block[a * h2.dim() + b]] = x.clone() * y;
        }
    }
    out
}

/// `n`-fold tensor power.
pub fn tensor_power<S: Scalar>(h: &HopfAlgebra<S>, n: usize) -> Result<HopfAlgebra<S>> {
    let mut acc = h.clone();
    for _ in 1..n {
        acc = tensor_hopf(&acc, h)?;
    }
    Ok(acc)
}
