use crate::error::{Error, Result};
use crate::scalar::Scalar;

use super::matrix::Matrix;

/// Characteristic polynomial `det(t·I − M)`, coefficients from the leading
/// `1` down to the constant term.
///
/// Berkowitz's algorithm: division-free, so exact mode never leaves the ring
/// generated by the entries.
pub fn char_poly<S: Scalar>(m: &Matrix<S>) -> Result<Vec<S>> {
    if !m.is_square() {
        return Err(Error::NotSquare { rows: m.rows(), cols: m.cols() });
    }
    let a = m.to_dense();
    let n = a.len();
    let mut poly = vec![S::one()];
    for i in 0..n {
        // leading principal block [[M, R], [C, a_ii]] with M of size i
        let mut toeplitz = Vec::with_capacity(i + 2);
        toeplitz.push(S::one());
        toeplitz.push(-a[i][i].clone());
        // v = M^k R, starting from R
        let mut v: Vec<S> = (0..i).map(|r| a[r][i].clone()).collect();
        for _ in 0..i {
            let c_v = (0..i).fold(S::zero(), |acc, k| acc + a[i][k].clone() * &v[k]);
            toeplitz.push(-c_v);
            v = (0..i)
                .map(|r| (0..i).fold(S::zero(), |acc, k| acc + a[r][k].clone() * &v[k]))
                .collect();
        }
        // new = T · poly with T lower-triangular Toeplitz of size (i+2) x (i+1)
        let mut next = vec![S::zero(); i + 2];
        for (r, slot) in next.iter_mut().enumerate() {
            for (c, p) in poly.iter().enumerate() {
                if r >= c {
                    *slot = slot.clone() + toeplitz[r - c].clone() * p;
                }
            }
        }
        poly = next;
    }
    Ok(poly)
}

/// Evaluate a polynomial given highest-degree-first.
pub fn eval_poly<S: Scalar>(coeffs_high_first: &[S], t: &S) -> S {
    coeffs_high_first
        .iter()
        .fold(S::zero(), |acc, c| acc * t + c)
}
