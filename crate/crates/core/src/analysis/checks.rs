use std::cmp::Ordering;
use std::sync::Arc;

use serde::Serialize;

use crate::duality::MapConvolutionElement;
use crate::error::{Error, Result};
use crate::hopf::HopfAlgebra;
use crate::linalg::{char_poly, dense_from_sparse, LinearMap, Matrix};
use crate::multimatrix::{evaluate, morphism_flags, BlockShape};
use crate::scalar::Scalar;

fn approx<S: Scalar>(x: &[S], y: &[S]) -> bool {
    x.len() == y.len() && x.iter().zip(y).all(|(a, b)| a.approx_eq(b))
}

fn add<S: Scalar>(x: &[S], y: &[S]) -> Vec<S> {
    x.iter().zip(y).map(|(a, b)| a.clone() + b).collect()
}

fn images<S: Scalar>(f: &LinearMap<S>, b: &BlockShape) -> Vec<Vec<S>> {
    (0..f.domain_dim()).map(|k| dense_from_sparse(f.image_of_basis(k), b.dim())).collect()
}

/// `f(xy + yx) = f(x)f(y) + f(y)f(x)` on matrix-unit pairs; returns the first
/// failing pair.
pub fn jordan_check<S: Scalar>(f: &LinearMap<S>, a: &BlockShape, b: &BlockShape) -> Option<(usize, usize)> {
    let im = images(f, b);
    let zero = b.zero::<S>();
    let at = |c: Option<usize>| -> &[S] { c.map_or(&zero[..], |c| &im[c][..]) };
    for x in 0..a.dim() {
        for y in x..a.dim() {
            let lhs = add(at(a.unit_product(x, y)), at(a.unit_product(y, x)));
            let rhs = add(&b.mul(&im[x], &im[y]), &b.mul(&im[y], &im[x]));
            if !approx(&lhs, &rhs) {
                return Some((x, y));
            }
        }
    }
    None
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StormerLabel {
    Mult,
    Anti,
}

#[derive(Clone, Debug)]
pub struct Stormer<S> {
    /// Label of the compression `z_k f` per target block.
    pub labels: Vec<StormerLabel>,
    /// `P = Σ {z_k : mult}`.
    pub projection: Vec<S>,
}

/// Split a bijective Jordan map into multiplicative and anti-multiplicative
/// parts over the target blocks. Commutative blocks are labelled `Mult`.
pub fn stormer_decompose<S: Scalar>(f: &LinearMap<S>, a: &BlockShape, b: &BlockShape) -> Result<Stormer<S>> {
    if let Some((x, y)) = jordan_check(f, a, b) {
        return Err(Error::Precondition { name: "jordan", detail: format!("fails on ({x}, {y})") });
    }
    if !morphism_flags(f, a, b).bijective {
        return Err(Error::Precondition { name: "bijective", detail: "map is not invertible".into() });
    }
    let im = images(f, b);
    let zero = b.zero::<S>();
    let mut labels = Vec::with_capacity(b.num_blocks());
    let mut projection = b.zero::<S>();
    for k in 0..b.num_blocks() {
        let z = b.block_identity::<S>(k);
        let compress = |v: &[S]| b.mul(&z, v);
        let mut mult = true;
        let mut anti = true;
        for x in 0..a.dim() {
            for y in 0..a.dim() {
                let lhs = compress(a.unit_product(x, y).map_or(&zero[..], |c| &im[c][..]));
                mult &= approx(&lhs, &compress(&b.mul(&im[x], &im[y])));
                anti &= approx(&lhs, &compress(&b.mul(&im[y], &im[x])));
            }
        }
        let label = match (mult, anti) {
            (true, _) => StormerLabel::Mult,
            (false, true) => StormerLabel::Anti,
            (false, false) => {
                return Err(Error::structural(format!("block {k} is neither multiplicative nor anti-multiplicative")))
            }
        };
        if label == StormerLabel::Mult {
            projection = add(&projection, &z);
        }
        labels.push(label);
    }
    Ok(Stormer { labels, projection })
}

#[derive(Clone, Debug, Serialize)]
pub struct AntipodeReport {
    /// `κ_B∘f = f∘κ_A`.
    pub intertwines: bool,
    /// First basis index where it fails.
    pub witness: Option<usize>,
    /// `(κ_B∘f) ∗ f = ε(·)1_B`.
    pub left_product_is_unit: bool,
    /// `f ∗ (f∘κ_A) = ε(·)1_B`.
    pub right_product_is_unit: bool,
}

pub fn intertwines_antipodes<S: Scalar>(f: &LinearMap<S>, ha: &HopfAlgebra<S>, hb: &HopfAlgebra<S>) -> Result<AntipodeReport> {
    let kf = hb.antipode().compose(f)?;
    let fk = f.compose(ha.antipode())?;
    let witness = (0..ha.dim()).find(|&a| !crate::hopf::sparse_eq(kf.image_of_basis(a), fk.image_of_basis(a)));
    let (ca, cb) = (Arc::new(ha.clone()), Arc::new(hb.clone()));
    let el = |m: LinearMap<S>| MapConvolutionElement::new(m, ca.clone(), cb.clone());
    let unit = MapConvolutionElement::unit(ca.clone(), cb.clone());
    let fe = el(f.clone())?;
    let left = el(kf)?.convolve(&fe)?;
    let right = fe.convolve(&el(fk)?)?;
    Ok(AntipodeReport {
        intertwines: witness.is_none(),
        witness,
        left_product_is_unit: left.approx_eq(&unit),
        right_product_is_unit: right.approx_eq(&unit),
    })
}

/// Projections built from matrix units: `e_ii`, and for `i < j` the four
/// rank-one projections onto `(e_i ± e_j)/√2` and `(e_i ± i·e_j)/√2`.
pub fn canonical_projections<S: Scalar>(a: &BlockShape) -> Vec<(String, Vec<S>)> {
    let half = S::one() / S::from_i64(2);
    let i = S::i();
    let mut out = Vec::new();
    for blk in 0..a.num_blocks() {
        let n = a.dims()[blk];
        for r in 0..n {
            out.push((format!("b{blk}:e{r}{r}"), a.basis_vector(a.index(blk, r, r))));
        }
        for r in 0..n {
            for s in (r + 1)..n {
                let phases = [
                    ("+", S::one()),
                    ("-", -S::one()),
                    ("+i", i.clone()),
                    ("-i", -i.clone()),
                ];
                for (tag, w) in phases {
                    // ½(e_rr + e_ss + conj(w) e_rs + w e_sr)
                    let mut p = a.zero::<S>();
                    p[a.index(blk, r, r)] = half.clone();
                    p[a.index(blk, s, s)] = half.clone();
                    p[a.index(blk, r, s)] = w.conj() * &half;
                    p[a.index(blk, s, r)] = w * &half;
                    out.push((format!("b{blk}:{r}{s}{tag}"), p));
                }
            }
        }
    }
    out
}

/// Positive semidefinite, exactly: Hermitian blocks whose characteristic
/// polynomials have alternating coefficient signs.
pub fn is_positive_element<S: Scalar>(a: &BlockShape, x: &[S]) -> bool {
    if !approx(&a.star(x), x) {
        return false;
    }
    (0..a.num_blocks()).all(|b| {
        let m = Matrix::from_dense(&a.block_matrix(x, b));
        let p = char_poly(&m).expect("square block");
        p.iter().enumerate().all(|(k, c)| {
            let c = if k % 2 == 0 { c.clone() } else { -c.clone() };
            matches!(c.real_sign(), Some(Ordering::Greater | Ordering::Equal))
        })
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct OrthogonalityReport {
    /// Every canonical projection maps to a positive element.
    pub positive: bool,
    pub positivity_witness: Option<String>,
    pub orthogonality_preserving: bool,
    pub orthogonality_witness: Option<(String, String)>,
}

pub fn orthogonality_preserving_check<S: Scalar>(f: &LinearMap<S>, a: &BlockShape, b: &BlockShape) -> OrthogonalityReport {
    let family = canonical_projections::<S>(a);
    let imgs: Vec<Vec<S>> = family.iter().map(|(_, p)| f.apply(p)).collect();
    let positivity_witness = family.iter().zip(&imgs).find(|(_, y)| !is_positive_element(b, y)).map(|((n, _), _)| n.clone());
    let zero_b = b.zero::<S>();
    let zero_a = a.zero::<S>();
    let mut orthogonality_witness = None;
    'outer: for p in 0..family.len() {
        for q in (p + 1)..family.len() {
            if !approx(&a.mul(&family[p].1, &family[q].1), &zero_a) {
                continue;
            }
            if !approx(&b.mul(&imgs[p], &imgs[q]), &zero_b) {
                orthogonality_witness = Some((family[p].0.clone(), family[q].0.clone()));
                break 'outer;
            }
        }
    }
    OrthogonalityReport {
        positive: positivity_witness.is_none(),
        positivity_witness,
        orthogonality_preserving: orthogonality_witness.is_none(),
        orthogonality_witness,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Isospectral {
    pub isospectral: bool,
    /// Smallest `n` with `τ(xⁿ) ≠ τ(yⁿ)`.
    pub first_mismatch: Option<usize>,
}

/// `τ(xⁿ) = τ(yⁿ)` for `n = 1..dim`, with `τ` the canonical trace of each
/// shape, cross-checked against equality of the characteristic polynomials of
/// the left regular representations.
pub fn power_trace_isospectral<S: Scalar>(x: &[S], a: &BlockShape, y: &[S], b: &BlockShape) -> Result<Isospectral> {
    if a.dim() != b.dim() || x.len() != a.dim() || y.len() != b.dim() {
        return Err(Error::shape("isospectrality needs elements of algebras of equal dimension"));
    }
    let (ta, tb) = (a.canonical_trace::<S>(), b.canonical_trace::<S>());
    let mut px = x.to_vec();
    let mut py = y.to_vec();
    let mut first_mismatch = None;
    for n in 1..=a.dim() {
        if !evaluate(&ta, &px).approx_eq(&evaluate(&tb, &py)) {
            first_mismatch = Some(n);
            break;
        }
        px = a.mul(&px, x);
        py = b.mul(&py, y);
    }
    let cx = char_poly(&a.left_mult_matrix(x))?;
    let cy = char_poly(&b.left_mult_matrix(y))?;
    let by_poly = approx(&cx, &cy);
    if by_poly != first_mismatch.is_none() {
        return Err(Error::structural("power traces and characteristic polynomials disagree"));
    }
    Ok(Isospectral { isospectral: by_poly, first_mismatch })
}
