use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::linalg::{express_in_span, independent_subset, kernel, Matrix, RowReducer, SparseVec};
use crate::scalar::Scalar;

use super::algebra::HopfAlgebra;

/// The Haar state as a functional `h_k = h(e_k)`, normalized by `h(1) = 1`.
///
/// Solves left and right invariance `(id⊗h)Δ(e_a) = h(e_a)1 = (h⊗id)Δ(e_a)`
/// together with the normalization in one over-determined system, then
/// checks the solution is tracial and positive.
pub fn haar_state<S: Scalar>(h: &HopfAlgebra<S>) -> Result<Vec<S>> {
    let d = h.dim();
    let unit = h.shape().unit::<S>();
    let mut reducer = RowReducer::new(d, 1);
    // equation rows indexed by (a, output coordinate i): Σ_j c_{ij} h_j − h_a·1_i = 0
    for a in 0..d {
        let mut right: Vec<SparseVec<S>> = vec![Vec::new(); d];
        let mut left: Vec<SparseVec<S>> = vec![Vec::new(); d];
        for (k, c) in h.delta(a) {
            let (i, j) = (k / d, k % d);
            right[i].push((j, c.clone()));
            left[j].push((i, c.clone()));
        }
        for i in 0..d {
            for rows in [&mut right, &mut left] {
                let mut row = std::mem::take(&mut rows[i]);
                if !unit[i].is_zero() {
                    row.push((a, -unit[i].clone()));
                }
                let row = crate::linalg::accumulate(row);
                if !row.is_empty() {
                    reducer.push(row, vec![S::zero()]);
                }
            }
        }
    }
    reducer.push(crate::linalg::sparse_from_dense(&unit), vec![S::one()]);
    if reducer.is_inconsistent() {
        return Err(Error::structural("Haar invariance system is inconsistent"));
    }
    if reducer.rank() < d {
        return Err(Error::structural(format!(
            "Haar invariance system has a {}-dimensional solution space",
            d - reducer.rank()
        )));
    }
    let haar: Vec<S> = reducer.particular()?.remove(0);
    if !is_tracial(h, &haar) {
        return Err(Error::structural("Haar state is not tracial"));
    }
    if !is_positive(h, &haar) {
        return Err(Error::structural("Haar state is not positive"));
    }
    Ok(haar)
}

/// `φ(e_a e_b) = φ(e_b e_a)` on matrix units: off-diagonal values vanish and
/// diagonal values are constant within each block.
pub fn is_tracial<S: Scalar>(h: &HopfAlgebra<S>, phi: &[S]) -> bool {
    let shape = h.shape();
    (0..shape.num_blocks()).all(|b| {
        let n = shape.dims()[b];
        let d0 = &phi[shape.index(b, 0, 0)];
        (0..n).all(|r| {
            (0..n).all(|c| {
                let v = &phi[shape.index(b, r, c)];
                if r == c {
                    v.approx_eq(d0)
                } else {
                    v.is_negligible()
                }
            })
        })
    })
}

/// For a tracial functional, positivity means nonnegative diagonal values.
pub fn is_positive<S: Scalar>(h: &HopfAlgebra<S>, phi: &[S]) -> bool {
    let shape = h.shape();
    (0..shape.num_blocks()).all(|b| {
        matches!(phi[shape.index(b, 0, 0)].real_sign(), Some(Ordering::Greater) | Some(Ordering::Equal))
    })
}

/// Basis of `{x : Δ(x) = σΔ(x)}`, checked to be closed under multiplication.
pub fn cocentre_basis<S: Scalar>(h: &HopfAlgebra<S>) -> Result<Vec<Vec<S>>> {
    let d = h.dim();
    let cols = (0..d)
        .map(|a| {
            let delta = h.delta(a);
            let flipped = h.flip_sparse(delta);
            crate::linalg::accumulate(delta.iter().cloned().chain(flipped.into_iter().map(|(k, v)| (k, -v))))
        })
        .collect();
    let basis = kernel(&Matrix::from_columns(d * d, cols));
    for x in &basis {
        for y in &basis {
            if express_in_span(&basis, &h.mul(x, y)).is_none() {
                return Err(Error::structural("co-centre is not closed under multiplication"));
            }
        }
    }
    Ok(basis)
}

/// The real subspace `R_A = {x : κ(x*) = x}`.
#[derive(Clone, Debug)]
pub struct KappaSymmetric<S> {
    /// A real-linear basis.
    pub basis: Vec<Vec<S>>,
    /// Real dimension, equal to the complex dimension of `A`.
    pub real_dim: usize,
    /// `xy + yx ∈ R_A` for basis pairs.
    pub jordan_closed: bool,
    /// `xy ∈ R_A` for basis pairs; recorded, not required.
    pub product_closed: bool,
}

/// `T(x) = κ(x*)`, conjugate-linear.
pub fn kappa_star<S: Scalar>(h: &HopfAlgebra<S>, x: &[S]) -> Vec<S> {
    h.antipode().apply(&h.star(x))
}

pub fn kappa_symmetric_basis<S: Scalar>(h: &HopfAlgebra<S>) -> Result<KappaSymmetric<S>> {
    let d = h.dim();
    let i = S::i();
    let mut candidates = Vec::with_capacity(2 * d);
    for a in 0..d {
        let e = h.shape().basis_vector::<S>(a);
        let t = kappa_star(h, &e);
        candidates.push(e.iter().zip(&t).map(|(x, y)| x.clone() + y).collect::<Vec<S>>());
        candidates.push(e.iter().zip(&t).map(|(x, y)| (x.clone() - y) * &i).collect::<Vec<S>>());
    }
    // real independence: split into real and imaginary parts
    let realified: Vec<Vec<S>> = candidates
        .iter()
        .map(|v| v.iter().map(|x| x.re()).chain(v.iter().map(|x| x.im())).collect())
        .collect();
    let keep = independent_subset(2 * d, &realified);
    let basis: Vec<Vec<S>> = keep.into_iter().map(|k| candidates[k].clone()).collect();
    let real_dim = basis.len();
    if real_dim != d {
        return Err(Error::structural(format!("κ-symmetric part has real dimension {real_dim}, expected {d}")));
    }
    let fixed = |x: &[S]| kappa_star(h, x).iter().zip(x).all(|(a, b)| a.approx_eq(b));
    if let Some(bad) = basis.iter().position(|x| !fixed(x)) {
        return Err(Error::structural(format!("candidate {bad} is not κ-symmetric")));
    }
    let mut jordan_closed = true;
    let mut product_closed = true;
    for x in &basis {
        for y in &basis {
            let xy = h.mul(x, y);
            let yx = h.mul(y, x);
            let sym: Vec<S> = xy.iter().zip(&yx).map(|(a, b)| a.clone() + b).collect();
            jordan_closed &= fixed(&sym);
            product_closed &= fixed(&xy);
        }
    }
    Ok(KappaSymmetric { basis, real_dim, jordan_closed, product_closed })
}

/// The minimal projection of block `b` under the Haar state: `h(e^{(b)}_{11})`.
pub fn haar_values<S: Scalar>(h: &HopfAlgebra<S>, haar: &[S]) -> Vec<S> {
    (0..h.shape().num_blocks()).map(|b| haar[h.shape().index(b, 0, 0)].clone()).collect()
}
