use rayon::prelude::*;
use serde::Serialize;

use crate::linalg::{accumulate, SparseVec};
use crate::scalar::Scalar;

use super::algebra::{sparse_residual, HopfAlgebra};

/// Outcome of one axiom family.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AxiomResult {
    pub axiom: &'static str,
    pub pass: bool,
    /// First failing basis tuple, in basis-index order.
    pub witness: Option<Vec<usize>>,
    /// Magnitude of the first nonzero residual entry.
    pub residual: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AxiomReport {
    pub name: String,
    pub shape: Vec<usize>,
    pub axioms: Vec<AxiomResult>,
    pub commutative: bool,
    pub cocommutative: bool,
}

impl AxiomReport {
    pub fn all_pass(&self) -> bool {
        self.axioms.iter().all(|a| a.pass)
    }

    pub fn get(&self, axiom: &str) -> Option<&AxiomResult> {
        self.axioms.iter().find(|a| a.axiom == axiom)
    }

    pub fn failures(&self) -> Vec<&'static str> {
        self.axioms.iter().filter(|a| !a.pass).map(|a| a.axiom).collect()
    }
}

/// Names of the checked axiom families, in report order.
pub const AXIOMS: [&str; 10] = [
    "coproduct_multiplicative",
    "coproduct_unital",
    "coproduct_star",
    "coassociativity",
    "counit_law",
    "counit_homomorphism",
    "antipode_law",
    "antipode_involutive",
    "antipode_anti_multiplicative",
    "antipode_star",
];

/// `None` if the check passed, else the witness tuple and residual.
type Failure = Option<(Vec<usize>, f64)>;

fn first_failure<I>(results: I) -> Failure
where
    I: IntoIterator<Item = Failure>,
{
    results.into_iter().flatten().next()
}

fn result(axiom: &'static str, f: Failure) -> AxiomResult {
    match f {
        None => AxiomResult { axiom, pass: true, witness: None, residual: 0.0 },
        Some((w, r)) => AxiomResult { axiom, pass: false, witness: Some(w), residual: r },
    }
}

fn check<S: Scalar>(x: &[(usize, S)], y: &[(usize, S)], witness: Vec<usize>) -> Failure {
    sparse_residual(x, y).map(|(_, r)| (witness, r))
}

fn scalar_check<S: Scalar>(x: &S, y: &S, witness: Vec<usize>) -> Failure {
    let d = x.clone() - y;
    if d.is_negligible() {
        None
    } else {
        Some((witness, d.magnitude()))
    }
}

/// Check every Hopf *-algebra axiom on basis elements and pairs.
///
/// Axiom families are checked in parallel and merged in a fixed order, and
/// within a family the first failure in basis order is reported, so the
/// report does not depend on the thread count.
pub fn verify_hopf<S: Scalar>(h: &HopfAlgebra<S>) -> AxiomReport {
    let checks: Vec<fn(&HopfAlgebra<S>) -> Failure> = vec![
        coproduct_multiplicative,
        coproduct_unital,
        coproduct_star,
        coassociativity,
        counit_law,
        counit_homomorphism,
        antipode_law,
        antipode_involutive,
        antipode_anti_multiplicative,
        antipode_star,
    ];
    let outcomes: Vec<Failure> = checks.par_iter().map(|c| c(h)).collect();
    let axioms = AXIOMS.iter().zip(outcomes).map(|(name, f)| result(name, f)).collect();
    AxiomReport {
        name: h.name().to_string(),
        shape: h.shape().dims().to_vec(),
        axioms,
        commutative: h.is_commutative(),
        cocommutative: h.is_cocommutative(),
    }
}

/// `Δ(e_a) · Δ(e_b) = Δ(e_a e_b)`, computed in block coordinates of `A ⊗ A`.
fn coproduct_multiplicative<S: Scalar>(h: &HopfAlgebra<S>) -> Failure {
    let t = h.tensor();
    let d = h.dim();
    let blocks: Vec<SparseVec<S>> = (0..d).map(|a| t.to_blocks(h.delta(a))).collect();
    let rows: Vec<Failure> = (0..d)
        .into_par_iter()
        .map(|a| {
            first_failure((0..d).map(|b| {
                let lhs = t.mul_blocks(&blocks[a], &blocks[b]);
                let empty = Vec::new();
                let rhs = match h.shape().unit_product(a, b) {
                    Some(c) => &blocks[c],
                    None => &empty,
                };
                check(&lhs, rhs, vec![a, b])
            }))
        })
        .collect();
    first_failure(rows)
}

fn coproduct_unital<S: Scalar>(h: &HopfAlgebra<S>) -> Failure {
    let unit = crate::linalg::sparse_from_dense(&h.shape().unit::<S>());
    check(&h.delta_sparse(&unit), &h.tensor().unit(), vec![])
}

fn coproduct_star<S: Scalar>(h: &HopfAlgebra<S>) -> Failure {
    first_failure((0..h.dim()).map(|a| {
        let lhs = h.delta(h.shape().unit_star(a));
        let rhs = h.tensor().star_sparse(h.delta(a));
        check(lhs, &rhs, vec![a])
    }))
}

fn coassociativity<S: Scalar>(h: &HopfAlgebra<S>) -> Failure {
    let d = h.dim();
    let rows: Vec<Failure> = (0..d)
        .into_par_iter()
        .map(|a| {
            let delta = h.delta(a);
            // (Δ⊗id)Δ: e_i ⊗ e_j ↦ Δ(e_i) ⊗ e_j ; (id⊗Δ)Δ: e_i ⊗ Δ(e_j)
            let left = accumulate(delta.iter().flat_map(|(k, c)| {
                let (i, j) = (k / d, k % d);
                h.delta(i).iter().map(move |(pq, v)| (pq * d + j, c.clone() * v))
            }));
            let right = accumulate(delta.iter().flat_map(|(k, c)| {
                let (i, j) = (k / d, k % d);
                h.delta(j).iter().map(move |(pq, v)| (i * d * d + pq, c.clone() * v))
            }));
            check(&left, &right, vec![a])
        })
        .collect();
    first_failure(rows)
}

fn counit_law<S: Scalar>(h: &HopfAlgebra<S>) -> Failure {
    let d = h.dim();
    first_failure((0..d).map(|a| {
        let delta = h.delta(a);
        let left = accumulate(delta.iter().map(|(k, c)| (k % d, h.counit()[k / d].clone() * c)));
        let right = accumulate(delta.iter().map(|(k, c)| (k / d, h.counit()[k % d].clone() * c)));
        let id = vec![(a, S::one())];
        check(&left, &id, vec![a]).or_else(|| check(&right, &id, vec![a]))
    }))
}

fn counit_homomorphism<S: Scalar>(h: &HopfAlgebra<S>) -> Failure {
    let d = h.dim();
    let eps = h.counit();
    let one = h.counit_of(&h.shape().unit());
    if let Some(f) = scalar_check(&one, &S::one(), vec![]) {
        return Some(f);
    }
    for a in 0..d {
        if let Some(f) = scalar_check(&eps[h.shape().unit_star(a)], &eps[a].conj(), vec![a]) {
            return Some(f);
        }
        for b in 0..d {
            let lhs = match h.shape().unit_product(a, b) {
                Some(c) => eps[c].clone(),
                None => S::zero(),
            };
            if let Some(f) = scalar_check(&lhs, &(eps[a].clone() * &eps[b]), vec![a, b]) {
                return Some(f);
            }
        }
    }
    None
}

/// `m(κ⊗id)Δ(x) = ε(x)1 = m(id⊗κ)Δ(x)`.
fn antipode_law<S: Scalar>(h: &HopfAlgebra<S>) -> Failure {
    let d = h.dim();
    let shape = h.shape();
    let unit = crate::linalg::sparse_from_dense(&shape.unit::<S>());
    let rows: Vec<Failure> = (0..d)
        .into_par_iter()
        .map(|a| {
            let delta = h.delta(a);
            let mut left = Vec::new();
            let mut right = Vec::new();
            for (k, c) in delta {
                let (i, j) = (k / d, k % d);
                let ej = vec![(j, c.clone())];
                left.extend(shape.mul_sparse(h.antipode().image_of_basis(i), &ej));
                let ei = vec![(i, c.clone())];
                right.extend(shape.mul_sparse(&ei, h.antipode().image_of_basis(j)));
            }
            let target: SparseVec<S> = unit.iter().map(|(k, v)| (*k, v.clone() * &h.counit()[a])).collect();
            check(&accumulate(left), &target, vec![a]).or_else(|| check(&accumulate(right), &target, vec![a]))
        })
        .collect();
    first_failure(rows)
}

fn antipode_involutive<S: Scalar>(h: &HopfAlgebra<S>) -> Failure {
    first_failure((0..h.dim()).map(|a| {
        let twice = h.antipode().apply_sparse(h.antipode().image_of_basis(a));
        check(&twice, &[(a, S::one())], vec![a])
    }))
}

fn antipode_anti_multiplicative<S: Scalar>(h: &HopfAlgebra<S>) -> Failure {
    let d = h.dim();
    let shape = h.shape();
    let k = h.antipode();
    let rows: Vec<Failure> = (0..d)
        .into_par_iter()
        .map(|a| {
            first_failure((0..d).map(|b| {
                let lhs = match shape.unit_product(a, b) {
                    Some(c) => k.image_of_basis(c).to_vec(),
                    None => Vec::new(),
                };
                let rhs = shape.mul_sparse(k.image_of_basis(b), k.image_of_basis(a));
                check(&lhs, &rhs, vec![a, b])
            }))
        })
        .collect();
    first_failure(rows)
}

fn antipode_star<S: Scalar>(h: &HopfAlgebra<S>) -> Failure {
    first_failure((0..h.dim()).map(|a| {
        let lhs = h.antipode().image_of_basis(h.shape().unit_star(a));
        let rhs = h.shape().star_sparse(h.antipode().image_of_basis(a));
        check(lhs, &rhs, vec![a])
    }))
}
