use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::hopf::{tensor_hopf, verify_hopf, HopfAlgebra};
use crate::linalg::{accumulate, SparseVec};
use crate::multimatrix::{BlockShape, TensorShape};
use crate::scalar::Scalar;

use super::fusion::{fusion_ring, k0_states, FusionRing, K0States};

/// Total dimension up to which levels carry full Hopf data.
pub const DEFAULT_CAP: usize = 64;

/// Generator count up to which the ring consistency check runs.
const CONSISTENCY_LIMIT: usize = 64;

#[derive(Clone, Debug)]
pub struct TowerLevel<S> {
    pub level: usize,
    pub shape: BlockShape,
    pub fusion: FusionRing,
    pub k0: K0States<S>,
    /// Present when the level is within the materialization cap.
    pub hopf: Option<HopfAlgebra<S>>,
}

/// `A₁ → A₂ → …` with `A_m = base^{⊗m}` and connecting maps `a ↦ a⊗1`.
#[derive(Clone, Debug)]
pub struct BratteliTower<S> {
    pub levels: Vec<TowerLevel<S>>,
    /// `M^(m)[i][(i, j)] = n_j`, rows indexed by blocks of level `m`.
    pub connecting: Vec<Vec<Vec<u64>>>,
    /// Connecting maps verified as Hopf maps, for consecutive materialized levels.
    pub connecting_hopf: Vec<bool>,
    /// `ι(x)ι(y) = dim(base)·ι(xy)` on K₀ generators; `None` when skipped.
    pub ring_consistent: Vec<Option<bool>>,
    pub cap: usize,
}

impl<S: Scalar> BratteliTower<S> {
    pub fn materialized_levels(&self) -> usize {
        self.levels.iter().filter(|l| l.hopf.is_some()).count()
    }

    /// `n_j^(m+1) = Σ_i M^(m)_{ij} n_i^(m)` at every step.
    pub fn dims_consistent(&self) -> bool {
        self.connecting.iter().enumerate().all(|(m, mat)| {
            let (lo, hi) = (&self.levels[m].shape, &self.levels[m + 1].shape);
            (0..hi.num_blocks()).all(|j| {
                let s: u64 = (0..lo.num_blocks()).map(|i| mat[i][j] * lo.dims()[i] as u64).sum();
                s == hi.dims()[j] as u64
            })
        })
    }

    pub fn to_json(&self) -> Value {
        json!({
            "cap": self.cap,
            "materialized_levels": self.materialized_levels(),
            "dims_consistent": self.dims_consistent(),
            "connecting_hopf": self.connecting_hopf,
            "ring_consistent": self.ring_consistent,
            "levels": self.levels.iter().map(|l| json!({
                "level": l.level,
                "dim": l.shape.dim(),
                "shape": l.shape.dims(),
                "materialized": l.hopf.is_some(),
                "commutative_fusion": l.fusion.is_commutative(),
                "fusion": l.fusion.to_json(),
                "k0": l.k0.to_json(),
            })).collect::<Vec<_>>(),
            "connecting": self.connecting.iter().map(|m| sparse_matrix_json(m)).collect::<Vec<_>>(),
        })
    }
}

fn sparse_matrix_json(m: &[Vec<u64>]) -> Value {
    let entries: Vec<Value> = m
        .iter()
        .enumerate()
        .flat_map(|(i, row)| row.iter().enumerate().filter(|(_, v)| **v != 0).map(move |(j, v)| json!([i, j, v])))
        .collect();
    json!({ "rows": m.len(), "cols": m.first().map_or(0, Vec::len), "entries": entries })
}

/// Build `levels` levels. Levels of total dimension above `cap` are computed
/// combinatorially unless `force` is set, in which case they are an error.
pub fn build_tower<S: Scalar>(base: &HopfAlgebra<S>, levels: usize, cap: usize, force: bool) -> Result<BratteliTower<S>> {
    if levels == 0 {
        return Err(Error::Precondition { name: "levels", detail: "at least one level is required".into() });
    }
    let report = verify_hopf(base);
    if !report.all_pass() {
        return Err(Error::Precondition { name: "verify_hopf", detail: format!("{:?}", report.failures()) });
    }
    let base_ring = fusion_ring(base)?;
    let base_k0 = k0_states(base)?;
    let mut tower = BratteliTower {
        levels: vec![TowerLevel {
            level: 1,
            shape: base.shape().clone(),
            fusion: base_ring.clone(),
            k0: base_k0.clone(),
            hopf: (base.dim() <= cap).then(|| base.clone()),
        }],
        connecting: Vec::new(),
        connecting_hopf: Vec::new(),
        ring_consistent: Vec::new(),
        cap,
    };
    for m in 2..=levels {
        let prev = tower.levels.last().expect("nonempty");
        let (shape, _) = prev.shape.tensor(base.shape());
        let fusion = prev.fusion.tensor(&base_ring);
        let k0 = prev.k0.tensor(&base_k0);
        let hopf = if shape.dim() <= cap {
            let lower = prev.hopf.as_ref().expect("lower levels are materialized");
            let h = tensor_hopf(lower, base)?;
            if fusion_ring(&h)? != fusion {
                return Err(Error::structural(format!("level {m} fusion ring differs from the tensor power")));
            }
            tower.connecting_hopf.push(check_connecting_map(lower, &h, base.shape()));
            Some(h)
        } else if force {
            return Err(Error::CapExceeded { dim: shape.dim(), cap });
        } else {
            None
        };
        let mult = connecting_matrix(&prev.shape, base.shape());
        tower.ring_consistent.push(check_ring_consistency(&prev.fusion, &fusion, &mult, base.dim()));
        tower.connecting.push(mult);
        tower.levels.push(TowerLevel { level: m, shape, fusion, k0, hopf });
    }
    Ok(tower)
}

fn connecting_matrix(lower: &BlockShape, base: &BlockShape) -> Vec<Vec<u64>> {
    let (k, kb) = (lower.num_blocks(), base.num_blocks());
    (0..k)
        .map(|i| {
            let mut row = vec![0; k * kb];
            for j in 0..kb {
                row[i * kb + j] = base.dims()[j] as u64;
            }
            row
        })
        .collect()
}

fn check_ring_consistency(lower: &FusionRing, upper: &FusionRing, mult: &[Vec<u64>], base_dim: usize) -> Option<bool> {
    let k = lower.rank();
    if k > CONSISTENCY_LIMIT {
        return None;
    }
    let iota = |x: &[i64]| -> Vec<i64> {
        let mut out = vec![0i64; upper.rank()];
        for (i, &a) in x.iter().enumerate() {
            for (j, &m) in mult[i].iter().enumerate() {
                out[j] += a * m as i64;
            }
        }
        out
    };
    let gen = |i: usize| {
        let mut v = vec![0i64; k];
        v[i] = 1;
        v
    };
    Some((0..k).all(|i| {
        (0..k).all(|j| {
            let lhs = upper.multiply(&iota(&gen(i)), &iota(&gen(j)));
            let rhs: Vec<i64> = iota(&lower.multiply(&gen(i), &gen(j))).into_iter().map(|v| v * base_dim as i64).collect();
            lhs == rhs
        })
    }))
}

/// `ι(a) = a⊗1` is a unital Hopf map: `Δ∘ι = (ι⊗ι)∘Δ`, `ε∘ι = ε`, `κ∘ι = ι∘κ`.
pub fn check_connecting_map<S: Scalar>(lower: &HopfAlgebra<S>, upper: &HopfAlgebra<S>, base: &BlockShape) -> bool {
    let ts = TensorShape::new(lower.shape(), base);
    let du = upper.dim();
    let base_unit: Vec<usize> =
        (0..base.num_blocks()).flat_map(|b| (0..base.dims()[b]).map(move |r| base.index(b, r, r))).collect();
    let iota = |a: usize| -> SparseVec<S> {
        accumulate(base_unit.iter().map(|&u| (ts.to_block[ts.index(a, u)], S::one())))
    };
    let images: Vec<SparseVec<S>> = (0..lower.dim()).map(iota).collect();
    (0..lower.dim()).all(|a| {
        let lhs = upper.delta_sparse(&images[a]);
        let rhs = accumulate(lower.delta(a).iter().flat_map(|(pq, c)| {
            let (p, q) = (pq / lower.dim(), pq % lower.dim());
            images[p]
                .iter()
                .flat_map(|(x, _)| images[q].iter().map(move |(y, _)| (x * du + y, c.clone())))
                .collect::<Vec<_>>()
        }));
        let counit_ok = upper.counit_sparse(&images[a]).approx_eq(&lower.counit()[a]);
        let kappa_lhs = upper.antipode().apply_sparse(&images[a]);
        let kappa_rhs =
            accumulate(lower.antipode().image_of_basis(a).iter().flat_map(|(b, c)| {
                images[*b].iter().map(move |(x, v)| (*x, v.clone() * c))
            }));
        crate::hopf::sparse_eq(&lhs, &rhs) && counit_ok && crate::hopf::sparse_eq(&kappa_lhs, &kappa_rhs)
    })
}
