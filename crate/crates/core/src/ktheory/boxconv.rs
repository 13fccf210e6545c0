use serde::Serialize;

use crate::duality::DualAlgebra;
use crate::error::{Error, Result};
use crate::hopf::{haar_state, HopfAlgebra};
use crate::linalg::LinearMap;
use crate::multimatrix::{block_permutation, evaluate, morphism_flags};
use crate::scalar::Scalar;

use super::fusion::{fusion_ring, FusionRing};

/// One comparison `(σ_k⊗t)(ℓ_i⊞ℓ_j)` against `σ_k(ℓ_i⋄ℓ_j)`.
#[derive(Clone, Debug)]
pub struct BoxConvolveEntry<S> {
    pub trace: usize,
    pub left: usize,
    pub right: usize,
    pub boxed: S,
    pub convolved: S,
    pub pass: bool,
}

#[derive(Clone, Debug)]
pub struct BoxConvolveReport<S> {
    pub entries: Vec<BoxConvolveEntry<S>>,
    /// `τ(p_ε)`, the weight carried by `t` on generators.
    pub normalization: S,
    /// `|σ_k(e^i_11 ⋄ e^j_11) − (σ_k⊗t)(ℓ_i⊞ℓ_j)|` for the raw matrix units;
    /// recorded only.
    pub matrix_unit_residuals: Vec<(usize, usize, usize, f64)>,
}

impl<S: Scalar> BoxConvolveReport<S> {
    pub fn all_pass(&self) -> bool {
        self.entries.iter().all(|e| e.pass)
    }

    pub fn failures(&self) -> Vec<(usize, usize, usize)> {
        self.entries.iter().filter(|e| !e.pass).map(|e| (e.trace, e.left, e.right)).collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "normalization": self.normalization.to_json(),
            "checked": self.entries.len(),
            "pass": self.all_pass(),
            "failures": self.failures(),
            "entries": self.entries.iter().map(|e| serde_json::json!({
                "trace": e.trace, "left": e.left, "right": e.right,
                "boxed": e.boxed.to_json(), "convolved": e.convolved.to_json(), "pass": e.pass,
            })).collect::<Vec<_>>(),
        })
    }
}

/// `σ_k(x) = τ(z_k x)`.
fn central_trace<S: Scalar>(h: &HopfAlgebra<S>, haar: &[S], k: usize, x: &[S]) -> S {
    evaluate(haar, &h.mul(&h.shape().block_identity(k), x))
}

/// `(σ_k⊗t)` of the class `Σ_m N_m [p_m]`, with `t` weighted by `τ(p_ε)`.
fn boxed_value<S: Scalar>(h: &HopfAlgebra<S>, haar: &[S], k: usize, classes: &[(usize, u64)], eps: &S) -> S {
    classes.iter().fold(S::zero(), |acc, &(m, n)| {
        let p = h.shape().minimal_projection::<S>(m);
        acc + central_trace(h, haar, k, &p) * S::from_i64(n as i64) * eps
    })
}

/// Each generator `[p_i]` is represented by the unitarily averaged element
/// `z_i / n_i`, which has the same value as `p_i` under every trace.
pub fn verify_box_convolve<S: Scalar>(dual: &DualAlgebra<S>, ring: &FusionRing) -> BoxConvolveReport<S> {
    let h = &dual.source;
    let shape = h.shape();
    let haar = &dual.haar;
    let k = shape.num_blocks();
    let eps = haar[shape.index(ring.unit, 0, 0)].clone();
    let averaged: Vec<Vec<S>> = (0..k)
        .map(|i| {
            let inv = S::one() / S::from_i64(shape.dims()[i] as i64);
            shape.block_identity::<S>(i).into_iter().map(|x| x * &inv).collect()
        })
        .collect();
    let mut entries = Vec::with_capacity(k * k * k);
    let mut matrix_unit_residuals = Vec::new();
    for i in 0..k {
        for j in 0..k {
            let conv = dual.convolve(&averaged[i], &averaged[j]);
            let raw = dual.convolve(&shape.minimal_projection(i), &shape.minimal_projection(j));
            for t in 0..k {
                let boxed = boxed_value(h, haar, t, ring.product(i, j), &eps);
                let convolved = central_trace(h, haar, t, &conv);
                let pass = boxed.approx_eq(&convolved);
                let raw_res = (central_trace(h, haar, t, &raw) - &boxed).magnitude();
                matrix_unit_residuals.push((t, i, j, raw_res));
                entries.push(BoxConvolveEntry { trace: t, left: i, right: j, boxed, convolved, pass });
            }
        }
    }
    BoxConvolveReport { entries, normalization: eps, matrix_unit_residuals }
}

#[derive(Clone, Debug, Serialize)]
pub struct KComultReport {
    /// `π` with `f(z_i) = z_{π(i)}`.
    pub block_map: Vec<usize>,
    /// `N^A_ij^m = N^B_{π(i)π(j)}^{π(m)}` for all generators.
    pub fusion_homomorphism: bool,
    /// `(σ⊗τ)(f(p)⊞f(q)) = (σ⊗τ)((f⊗Id)(p⊞q))` over central traces `σ` on `B`.
    pub trace_identity: bool,
    /// First failing `(σ, i, j)` of the trace identity.
    pub witness: Option<(usize, usize, usize)>,
}

impl KComultReport {
    pub fn pass(&self) -> bool {
        self.fusion_homomorphism && self.trace_identity
    }
}

pub fn check_k_comultiplicative<S: Scalar>(
    f: &LinearMap<S>,
    ha: &HopfAlgebra<S>,
    hb: &HopfAlgebra<S>,
) -> Result<KComultReport> {
    let (sa, sb) = (ha.shape(), hb.shape());
    let flags = morphism_flags(f, sa, sb);
    if !flags.is_star_isomorphism() {
        return Err(Error::Precondition { name: "star_isomorphism", detail: format!("{flags:?}") });
    }
    let perm = block_permutation(f, sa, sb)
        .ok_or_else(|| Error::Precondition { name: "star_isomorphism", detail: "block map is not a bijection".into() })?;
    let (ra, rb) = (fusion_ring(ha)?, fusion_ring(hb)?);
    let fusion_homomorphism = ra.is_homomorphism_under(&perm, &rb).is_none();
    let (ta, tb) = (haar_state(ha)?, haar_state(hb)?);
    let eps_a = ta[sa.index(ra.unit, 0, 0)].clone();
    let eps_b = tb[sb.index(rb.unit, 0, 0)].clone();
    let images: Vec<Vec<S>> = (0..sa.num_blocks()).map(|m| f.apply(&sa.minimal_projection(m))).collect();
    let mut witness = None;
    'outer: for s in 0..sb.num_blocks() {
        for i in 0..sa.num_blocks() {
            for j in 0..sa.num_blocks() {
                let lhs = boxed_value(hb, &tb, s, rb.product(perm[i], perm[j]), &eps_b);
                let rhs = ra.product(i, j).iter().fold(S::zero(), |acc, &(m, n)| {
                    acc + central_trace(hb, &tb, s, &images[m]) * S::from_i64(n as i64) * &eps_a
                });
                if !lhs.approx_eq(&rhs) {
                    witness = Some((s, i, j));
                    break 'outer;
                }
            }
        }
    }
    Ok(KComultReport { block_map: perm, fusion_homomorphism, trace_identity: witness.is_none(), witness })
}
