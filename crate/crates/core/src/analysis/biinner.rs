use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hopf::{cocentre_basis, kappa_star, HopfAlgebra};
use crate::linalg::{LinearMap, Matrix};
use crate::multimatrix::BlockShape;
use crate::scalar::Scalar;

use super::classify::{classify_iso, MapReport, Verdict};

fn approx<S: Scalar>(x: &[S], y: &[S]) -> bool {
    x.len() == y.len() && x.iter().zip(y).all(|(a, b)| a.approx_eq(b))
}

pub fn is_unitary<S: Scalar>(a: &BlockShape, u: &[S]) -> bool {
    let us = a.star(u);
    let one = a.unit::<S>();
    approx(&a.mul(&us, u), &one) && approx(&a.mul(u, &us), &one)
}

/// `x ↦ u*xu`.
pub fn ad<S: Scalar>(a: &BlockShape, u: &[S]) -> LinearMap<S> {
    let us = a.star(u);
    let cols = (0..a.dim())
        .map(|k| {
            let y = a.mul(&a.mul(&us, &a.basis_vector(k)), u);
            crate::linalg::sparse_from_dense(&y)
        })
        .collect();
    LinearMap::new(Matrix::from_columns(a.dim(), cols))
}

#[derive(Clone, Debug, Serialize)]
pub struct BiInnerReport {
    pub commutes_with_cocentre: bool,
    /// Index into the co-centre basis of the first element not commuting with `u`.
    pub cocentre_witness: Option<usize>,
    /// `κ(u*) = u`.
    pub kappa_symmetric: bool,
    /// `Ad(u)` classified as a Hopf automorphism.
    pub hopf_automorphism: bool,
    pub classification: Option<MapReport>,
    /// Set when the classifier refused the map.
    pub classification_error: Option<String>,
    pub path_hypothesis: &'static str,
}

impl BiInnerReport {
    pub fn pass(&self) -> bool {
        self.commutes_with_cocentre && self.hopf_automorphism
    }
}

/// Check that `u` commutes with the co-centre and that `Ad(u)` is a Hopf
/// *-automorphism.
pub fn biinner_check<S: Scalar>(u: &[S], h: &HopfAlgebra<S>, seed: u64) -> Result<BiInnerReport> {
    let a = h.shape();
    if u.len() != a.dim() {
        return Err(Error::shape(format!("element of length {} in an algebra of dimension {}", u.len(), a.dim())));
    }
    if !is_unitary(a, u) {
        return Err(Error::Precondition { name: "unitary", detail: "u*u = uu* = 1 fails".into() });
    }
    let cocentre = cocentre_basis(h)?;
    let cocentre_witness = cocentre.iter().position(|c| !approx(&a.mul(u, c), &a.mul(c, u)));
    let kappa_symmetric = approx(&kappa_star(h, u), u);
    let f = ad(a, u);
    let (classification, classification_error) = match classify_iso(&f, h, h, seed) {
        Ok(r) => (Some(r), None),
        Err(e @ Error::Precondition { .. }) => (None, Some(e.to_string())),
        Err(e) => return Err(e),
    };
    let hopf_automorphism = classification.as_ref().is_some_and(|r| r.verdict == Verdict::HopfIso);
    Ok(BiInnerReport {
        commutes_with_cocentre: cocentre_witness.is_none(),
        cocentre_witness,
        kappa_symmetric,
        hopf_automorphism,
        classification,
        classification_error,
        path_hypothesis: "unchecked",
    })
}

/// Diagonal unitaries `Σ_r λ_r e_rr` commuting with the co-centre: `λ` must be
/// constant on each class, where rows are joined whenever some co-centre
/// element has a nonzero entry between them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiagonalCommutant {
    /// Classes of global row ids, each sorted, ordered by smallest member.
    pub classes: Vec<Vec<usize>>,
}

pub fn diagonal_commutant<S: Scalar>(h: &HopfAlgebra<S>) -> Result<DiagonalCommutant> {
    let a = h.shape();
    let mut parent: Vec<usize> = (0..a.row_count()).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    for c in cocentre_basis(h)? {
        for (k, v) in c.iter().enumerate() {
            if v.is_negligible() {
                continue;
            }
            let (r, s) = (find(&mut parent, a.row_id(k)), find(&mut parent, a.col_id(k)));
            if r != s {
                parent[r.max(s)] = r.min(s);
            }
        }
    }
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut slot = vec![usize::MAX; parent.len()];
    for r in 0..parent.len() {
        let root = find(&mut parent, r);
        if slot[root] == usize::MAX {
            slot[root] = classes.len();
            classes.push(Vec::new());
        }
        classes[slot[root]].push(r);
    }
    Ok(DiagonalCommutant { classes })
}

/// `(a² − b² + 2abi)/(a² + b²)` with `1 ≤ a, b ≤ 12`.
pub fn unit_phase<S: Scalar>(rng: &mut ChaCha8Rng) -> S {
    let a: i64 = rng.gen_range(1..=12);
    let b: i64 = rng.gen_range(1..=12);
    let n = a * a + b * b;
    S::from_ratio(a * a - b * b, n) + S::i() * S::from_ratio(2 * a * b, n)
}

fn diagonal_element<S: Scalar>(a: &BlockShape, phases: &[S]) -> Vec<S> {
    let mut u = a.zero::<S>();
    for b in 0..a.num_blocks() {
        for r in 0..a.dims()[b] {
            let k = a.index(b, r, r);
            u[k] = phases[a.row_id(k)].clone();
        }
    }
    u
}

impl DiagonalCommutant {
    /// A member of the family, one phase per class.
    pub fn sample<S: Scalar>(&self, a: &BlockShape, seed: u64) -> Vec<S> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut phases = vec![S::one(); a.row_count()];
        for class in &self.classes {
            let w: S = unit_phase(&mut rng);
            for &r in class {
                phases[r] = w.clone();
            }
        }
        diagonal_element(a, &phases)
    }

    /// A diagonal unitary that splits some class, or `None` when every class
    /// is a singleton.
    pub fn violating_sample<S: Scalar>(&self, a: &BlockShape, seed: u64) -> Option<Vec<S>> {
        let class = self.classes.iter().find(|c| c.len() > 1)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut phases = vec![S::one(); a.row_count()];
        let mut w: S = unit_phase(&mut rng);
        while w.approx_eq(&S::one()) {
            w = unit_phase(&mut rng);
        }
        phases[class[0]] = w;
        Some(diagonal_element(a, &phases))
    }
}

/// A unitary rotation `[[c, −s], [s, c]]` on the first two rows of the first
/// block of size at least 2, identity elsewhere.
pub fn block_rotation<S: Scalar>(a: &BlockShape, seed: u64) -> Option<Vec<S>> {
    let b = (0..a.num_blocks()).find(|&b| a.dims()[b] >= 2)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (p, q): (i64, i64) = (rng.gen_range(1..=12), rng.gen_range(1..=12));
    let n = p * p + q * q;
    let (c, s) = (S::from_ratio(p * p - q * q, n), S::from_ratio(2 * p * q, n));
    let mut u = a.unit::<S>();
    u[a.index(b, 0, 0)] = c.clone();
    u[a.index(b, 1, 1)] = c;
    u[a.index(b, 0, 1)] = -s.clone();
    u[a.index(b, 1, 0)] = s;
    Some(u)
}
