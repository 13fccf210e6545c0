use std::cmp::Ordering;

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::hopf::{haar_state, haar_values, HopfAlgebra};
use crate::linalg::{rank, Matrix};
use crate::scalar::Scalar;

/// The K₀ ring on minimal-projection generators, `[p_i][p_j] = Σ N_ij^k [p_k]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FusionRing {
    pub dims: Vec<usize>,
    /// Block of the counit support.
    pub unit: usize,
    /// `ī` with `κ(z_i) = z_ī`.
    pub conjugation: Vec<usize>,
    /// Sparse `N_ij^•` at `i·rank + j`, ascending in `k`.
    table: Vec<Vec<(usize, u64)>>,
}

impl FusionRing {
    pub fn from_table(dims: Vec<usize>, unit: usize, conjugation: Vec<usize>, table: Vec<Vec<(usize, u64)>>) -> Result<Self> {
        let k = dims.len();
        if table.len() != k * k || conjugation.len() != k || unit >= k {
            return Err(Error::shape("fusion table does not match the number of blocks"));
        }
        Ok(FusionRing { dims, unit, conjugation, table })
    }

    pub fn rank(&self) -> usize {
        self.dims.len()
    }

    pub fn product(&self, i: usize, j: usize) -> &[(usize, u64)] {
        &self.table[i * self.rank() + j]
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> u64 {
        self.product(i, j).iter().find(|(m, _)| *m == k).map_or(0, |(_, n)| *n)
    }

    pub fn dense_product(&self, i: usize, j: usize) -> Vec<u64> {
        let mut v = vec![0; self.rank()];
        for &(k, n) in self.product(i, j) {
            v[k] = n;
        }
        v
    }

    /// Product of classes given as integer combinations of generators.
    pub fn multiply(&self, x: &[i64], y: &[i64]) -> Vec<i64> {
        let mut out = vec![0i64; self.rank()];
        for (i, &a) in x.iter().enumerate().filter(|(_, a)| **a != 0) {
            for (j, &b) in y.iter().enumerate().filter(|(_, b)| **b != 0) {
                for &(k, n) in self.product(i, j) {
                    out[k] += a * b * n as i64;
                }
            }
        }
        out
    }

    pub fn nonzero_count(&self) -> usize {
        self.table.iter().map(Vec::len).sum()
    }

    pub fn is_commutative(&self) -> bool {
        let k = self.rank();
        (0..k).all(|i| (0..i).all(|j| self.product(i, j) == self.product(j, i)))
    }

    /// Dimension count, unit, Frobenius symmetry and (for rank ≤ `ASSOC_LIMIT`)
    /// associativity on generators.
    pub fn verify(&self) -> std::result::Result<(), String> {
        let k = self.rank();
        for i in 0..k {
            for j in 0..k {
                let count: u64 = self.product(i, j).iter().map(|&(m, n)| n * self.dims[m] as u64).sum();
                if count != (self.dims[i] * self.dims[j]) as u64 {
                    return Err(format!("dimension count fails for ({i}, {j})"));
                }
                if i == self.unit && self.product(i, j) != [(j, 1)] {
                    return Err(format!("unit row fails at {j}"));
                }
                if j == self.unit && self.product(i, j) != [(i, 1)] {
                    return Err(format!("unit column fails at {i}"));
                }
                let expected = u64::from(j == self.conjugation[i]);
                if self.get(i, j, self.unit) != expected {
                    return Err(format!("Frobenius symmetry fails for ({i}, {j})"));
                }
            }
        }
        if k <= ASSOC_LIMIT {
            for i in 0..k {
                for j in 0..k {
                    let ij = self.dense_product(i, j).iter().map(|&n| n as i64).collect::<Vec<_>>();
                    for l in 0..k {
                        let e = unit_vec(k, l);
                        let left = self.multiply(&ij, &e);
                        let right = self.multiply(&unit_vec(k, i), &self.multiply(&unit_vec(k, j), &e));
                        if left != right {
                            return Err(format!("associativity fails for ({i}, {j}, {l})"));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// `R₁ ⊗ R₂` with generators `(i, j)` in lexicographic order.
    pub fn tensor(&self, other: &FusionRing) -> FusionRing {
        let (k1, k2) = (self.rank(), other.rank());
        let k = k1 * k2;
        let dims = self.dims.iter().flat_map(|&a| other.dims.iter().map(move |&b| a * b)).collect();
        let conjugation = (0..k).map(|t| self.conjugation[t / k2] * k2 + other.conjugation[t % k2]).collect();
        let mut table = vec![Vec::new(); k * k];
        for x in 0..k {
            for y in 0..k {
                let (i1, i2) = (x / k2, x % k2);
                let (j1, j2) = (y / k2, y % k2);
                let mut entries: Vec<(usize, u64)> = self
                    .product(i1, j1)
                    .iter()
                    .flat_map(|&(m1, n1)| other.product(i2, j2).iter().map(move |&(m2, n2)| (m1 * k2 + m2, n1 * n2)))
                    .collect();
                entries.sort_unstable();
                table[x * k + y] = entries;
            }
        }
        FusionRing { dims, unit: self.unit * k2 + other.unit, conjugation, table }
    }

    /// Whether the block bijection `π` carries `N^self` onto `N^other`.
    pub fn is_homomorphism_under(&self, perm: &[usize], other: &FusionRing) -> Option<(usize, usize, usize)> {
        let k = self.rank();
        for i in 0..k {
            for j in 0..k {
                for m in 0..k {
                    if self.get(i, j, m) != other.get(perm[i], perm[j], perm[m]) {
                        return Some((i, j, m));
                    }
                }
            }
        }
        None
    }

    pub fn to_json(&self) -> Value {
        let entries: Vec<Value> = (0..self.rank())
            .flat_map(|i| (0..self.rank()).map(move |j| (i, j)))
            .flat_map(|(i, j)| self.product(i, j).iter().map(move |&(m, n)| json!([i, j, m, n])))
            .collect();
        json!({
            "rank": self.rank(),
            "dims": self.dims,
            "unit": self.unit,
            "conjugation": self.conjugation,
            "entries": entries,
        })
    }
}

const ASSOC_LIMIT: usize = 64;

fn unit_vec(k: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0; k];
    v[i] = 1;
    v
}

/// Multiplicities `N_ij^•` of the restricted module `ℂ^{n_i} ⊗ ℂ^{n_j}` with
/// action `(π_i⊗π_j)∘Δ`.
pub fn box_fusion<S: Scalar>(h: &HopfAlgebra<S>, i: usize, j: usize) -> Result<Vec<u64>> {
    let shape = h.shape();
    let d = h.dim();
    let (ni, nj) = (shape.dims()[i], shape.dims()[j]);
    let m = ni * nj;
    let mut out = Vec::with_capacity(shape.num_blocks());
    for k in 0..shape.num_blocks() {
        let mut triplets = Vec::new();
        for r in 0..shape.dims()[k] {
            for (ab, c) in h.delta(shape.index(k, r, r)) {
                let (ua, ub) = (shape.locate(ab / d), shape.locate(ab % d));
                if ua.block == i && ub.block == j {
                    triplets.push((ua.row * nj + ub.row, ua.col * nj + ub.col, c.clone()));
                }
            }
        }
        let rho = Matrix::from_triplets(m, m, triplets)?;
        let rk = rank(&rho);
        let tr = rho.trace()?;
        if !tr.approx_eq(&S::from_i64(rk as i64)) {
            return Err(Error::structural(format!("Δ(z_{k}) does not act as a projection on ({i}, {j})")));
        }
        let nk = shape.dims()[k];
        if rk % nk != 0 {
            return Err(Error::structural(format!("multiplicity {rk}/{nk} of block {k} in ({i}, {j}) is not an integer")));
        }
        out.push((rk / nk) as u64);
    }
    Ok(out)
}

fn counit_block<S: Scalar>(h: &HopfAlgebra<S>) -> Result<usize> {
    let shape = h.shape();
    let support: Vec<usize> = (0..shape.num_blocks())
        .filter(|&k| !h.counit_of(&shape.block_identity(k)).is_negligible())
        .collect();
    match support.as_slice() {
        [k] if shape.dims()[*k] == 1 => Ok(*k),
        _ => Err(Error::structural(format!("counit support is {support:?}, expected one 1-dimensional block"))),
    }
}

fn conjugation<S: Scalar>(h: &HopfAlgebra<S>) -> Result<Vec<usize>> {
    let shape = h.shape();
    (0..shape.num_blocks())
        .map(|i| {
            shape
                .which_block_identity(&h.antipode().apply(&shape.block_identity(i)))
                .ok_or_else(|| Error::structural(format!("antipode does not permute block {i}")))
        })
        .collect()
}

pub fn fusion_ring<S: Scalar>(h: &HopfAlgebra<S>) -> Result<FusionRing> {
    let k = h.shape().num_blocks();
    let rows: Vec<Result<Vec<(usize, u64)>>> = (0..k * k)
        .into_par_iter()
        .map(|t| {
            let v = box_fusion(h, t / k, t % k)?;
            Ok(v.into_iter().enumerate().filter(|(_, n)| *n != 0).collect())
        })
        .collect();
    let table = rows.into_iter().collect::<Result<Vec<_>>>()?;
    let ring = FusionRing::from_table(h.shape().dims().to_vec(), counit_block(h)?, conjugation(h)?, table)?;
    ring.verify().map_err(Error::Structural)?;
    Ok(ring)
}

/// K-theory states: the Haar state on minimal projections and the counit support.
#[derive(Clone, Debug, PartialEq)]
pub struct K0States<S> {
    pub haar: Vec<S>,
    pub counit_block: usize,
}

impl<S: Scalar> K0States<S> {
    pub fn tensor(&self, other: &K0States<S>) -> K0States<S> {
        let haar = self.haar.iter().flat_map(|a| other.haar.iter().map(move |b| a.clone() * b)).collect();
        K0States { haar, counit_block: self.counit_block * other.haar.len() + other.counit_block }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "haar": self.haar.iter().map(Scalar::to_json).collect::<Vec<_>>(),
            "counit_block": self.counit_block,
        })
    }
}

pub fn k0_states<S: Scalar>(h: &HopfAlgebra<S>) -> Result<K0States<S>> {
    let haar = haar_values(h, &haar_state(h)?);
    let total = haar
        .iter()
        .zip(h.shape().dims())
        .fold(S::zero(), |acc, (v, &n)| acc + v.clone() * S::from_i64(n as i64));
    if !total.approx_eq(&S::one()) || haar.iter().any(|v| v.real_sign() != Some(Ordering::Greater)) {
        return Err(Error::structural("Haar values on minimal projections are not a K-theory state"));
    }
    Ok(K0States { haar, counit_block: counit_block(h)? })
}
