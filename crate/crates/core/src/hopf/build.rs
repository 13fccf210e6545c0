use crate::error::{Error, Result};
use crate::linalg::{accumulate, LinearMap, Matrix, SparseVec};
use crate::multimatrix::{wedderburn, BlockShape, StructureConstants, Wedderburn};
use crate::scalar::Scalar;

use super::algebra::HopfAlgebra;
use super::group::FiniteGroup;

/// Hopf data on an abstract *-algebra, before block coordinates exist.
#[derive(Clone, Debug)]
pub struct AbstractHopf<S> {
    pub name: String,
    pub algebra: StructureConstants<S>,
    /// `d → d²`, Kronecker coordinates of the abstract basis.
    pub coproduct: LinearMap<S>,
    pub counit: Vec<S>,
    pub antipode: LinearMap<S>,
}

impl<S: Scalar> AbstractHopf<S> {
    /// Present the algebra in matrix-unit coordinates and transport the
    /// coalgebra structure along the Wedderburn isomorphism.
    pub fn to_block_form(&self, seed: u64) -> Result<(HopfAlgebra<S>, Wedderburn<S>)> {
        let w = wedderburn(&self.algebra, seed)?;
        let h = transport(&self.name, &w, &self.coproduct, &self.counit, &self.antipode)?;
        Ok((h, w))
    }
}

/// `Δ_B = (T⊗T)∘Δ∘T⁻¹`, `ε_B = ε∘T⁻¹`, `κ_B = T∘κ∘T⁻¹`.
fn transport<S: Scalar>(
    name: &str,
    w: &Wedderburn<S>,
    coproduct: &LinearMap<S>,
    counit: &[S],
    antipode: &LinearMap<S>,
) -> Result<HopfAlgebra<S>> {
    let d = w.shape.dim();
    let t = w.to_blocks.matrix();
    let tinv = &w.from_blocks;
    let columns: Vec<SparseVec<S>> = (0..d)
        .map(|k| {
            let abstract_delta = coproduct.apply_sparse(tinv.image_of_basis(k));
            accumulate(abstract_delta.iter().flat_map(|(ij, c)| {
                let (i, j) = (ij / d, ij % d);
                t.column(i).iter().flat_map(move |(p, tp)| {
                    t.column(j).iter().map(move |(q, tq)| (p * d + q, c.clone() * tp * tq))
                })
            }))
        })
        .collect();
    let delta = LinearMap::new(Matrix::from_columns(d * d, columns));
    let eps: Vec<S> = (0..d)
        .map(|k| tinv.image_of_basis(k).iter().fold(S::zero(), |acc, (i, v)| acc + counit[*i].clone() * v))
        .collect();
    let kappa = w.to_blocks.compose(&antipode.compose(tinv)?)?;
    HopfAlgebra::new(name, w.shape.clone(), delta, eps, kappa)
}

/// Bundled constructions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Preset {
    GroupAlgebra(FiniteGroup),
    FunctionAlgebra(FiniteGroup),
    KacPalyutkin,
}

impl Preset {
    /// Parse `group_algebra`/`function_algebra` with a group name, or `kac_palyutkin`.
    pub fn parse(kind: &str, group: Option<&str>) -> Result<Self> {
        let need_group = || -> Result<FiniteGroup> {
            FiniteGroup::by_name(group.ok_or_else(|| Error::InvalidGroup(format!("preset {kind} needs a group")))?)
        };
        match kind {
            "group_algebra" => Ok(Preset::GroupAlgebra(need_group()?)),
            "function_algebra" => Ok(Preset::FunctionAlgebra(need_group()?)),
            "kac_palyutkin" | "kp" => Ok(Preset::KacPalyutkin),
            other => Err(Error::structural(format!("unknown preset {other}"))),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Preset::GroupAlgebra(_) => "group_algebra",
            Preset::FunctionAlgebra(_) => "function_algebra",
            Preset::KacPalyutkin => "kac_palyutkin",
        }
    }

    pub fn group_name(&self) -> Option<&str> {
        match self {
            Preset::GroupAlgebra(g) | Preset::FunctionAlgebra(g) => Some(g.name()),
            Preset::KacPalyutkin => None,
        }
    }
}

pub fn build_standard<S: Scalar>(preset: &Preset, seed: u64) -> Result<HopfAlgebra<S>> {
    match preset {
        Preset::GroupAlgebra(g) => group_algebra(g, seed),
        Preset::FunctionAlgebra(g) => Ok(function_algebra(g)),
        Preset::KacPalyutkin => kac_palyutkin(seed),
    }
}

/// `C(G)` in the basis of point masses `δ_g`, one 1-block per element.
pub fn function_algebra<S: Scalar>(g: &FiniteGroup) -> HopfAlgebra<S> {
    let n = g.order();
    let mut cols: Vec<SparseVec<S>> = vec![Vec::new(); n];
    for a in 0..n {
        for b in 0..n {
            cols[g.mul(a, b)].push((a * n + b, S::one()));
        }
    }
    let delta = LinearMap::new(Matrix::from_columns(n * n, cols.into_iter().map(accumulate).collect()));
    let counit = (0..n).map(|a| if a == g.identity() { S::one() } else { S::zero() }).collect();
    let kappa = LinearMap::new(Matrix::from_columns(n, (0..n).map(|a| vec![(g.inv(a), S::one())]).collect()));
    HopfAlgebra::new(format!("C({})", g.name()), BlockShape::new(vec![1; n]), delta, counit, kappa)
        .expect("function algebra dimensions")
}

/// `ℂ[G]` in the group basis, before decomposition.
pub fn group_algebra_abstract<S: Scalar>(g: &FiniteGroup) -> AbstractHopf<S> {
    let n = g.order();
    let product = (0..n)
        .flat_map(|a| (0..n).map(move |b| (a, b)))
        .map(|(a, b)| vec![(g.mul(a, b), S::one())])
        .collect();
    let involution = Matrix::from_columns(n, (0..n).map(|a| vec![(g.inv(a), S::one())]).collect());
    let unit = (0..n).map(|a| if a == g.identity() { S::one() } else { S::zero() }).collect();
    let algebra = StructureConstants::new(n, product, involution.clone(), unit).expect("group algebra");
    let delta = Matrix::from_columns(n * n, (0..n).map(|a| vec![(a * n + a, S::one())]).collect());
    AbstractHopf {
        name: format!("C[{}]", g.name()),
        algebra,
        coproduct: LinearMap::new(delta),
        counit: vec![S::one(); n],
        antipode: LinearMap::new(involution),
    }
}

pub fn group_algebra<S: Scalar>(g: &FiniteGroup, seed: u64) -> Result<HopfAlgebra<S>> {
    Ok(group_algebra_abstract(g).to_block_form(seed)?.0)
}

// Kac–Paljutkin basis: index g + 4c for g z^c, g ∈ {1, x, y, xy} as bits
// (bit 0 = x, bit 1 = y), c ∈ {0, 1}.
fn kp_swap(g: usize) -> usize {
    ((g & 1) << 1) | ((g >> 1) & 1)
}

fn kp_product<S: Scalar>(i: usize, j: usize) -> SparseVec<S> {
    let (g, c) = (i % 4, i / 4);
    let (h, d) = (j % 4, j / 4);
    let hh = if c == 1 { kp_swap(h) } else { h };
    let k = g ^ hh;
    if c + d < 2 {
        return vec![(k + 4 * (c + d), S::one())];
    }
    // z² = u = (1 + x + y - xy)/2
    let half = S::from_ratio(1, 2);
    accumulate(vec![(k, half.clone()), (k ^ 1, half.clone()), (k ^ 2, half.clone()), (k ^ 3, -half)])
}

/// The Kac–Paljutkin algebra in its generator presentation:
/// `x² = y² = 1`, `xy = yx`, `zx = yz`, `zy = xz`, `z² = (1 + x + y − xy)/2`,
/// with `x, y` group-like and
/// `Δz = (z⊗z + z⊗xz + yz⊗z − yz⊗xz)/2`, `ε(z) = 1`, `κ(z) = z`.
pub fn kac_palyutkin_abstract<S: Scalar>() -> AbstractHopf<S> {
    let d = 8;
    let product: Vec<SparseVec<S>> = (0..d).flat_map(|i| (0..d).map(move |j| kp_product(i, j))).collect();
    let unit: Vec<S> = (0..d).map(|i| if i == 0 { S::one() } else { S::zero() }).collect();
    let mul = |x: &[(usize, S)], y: &[(usize, S)]| {
        accumulate(x.iter().flat_map(|(i, a)| {
            y.iter().flat_map(move |(j, b)| {
                kp_product::<S>(*i, *j).into_iter().map(move |(k, v)| (k, v * a * b))
            })
        }))
    };
    // z* = z⁻¹ = z³ = z·u
    let z: SparseVec<S> = vec![(4, S::one())];
    let z_star = mul(&mul(&z, &z), &z);
    let involution_cols = (0..d)
        .map(|i| if i < 4 { vec![(i, S::one())] } else { mul(&z_star, &[(i - 4, S::one())]) })
        .collect();
    let involution = Matrix::from_columns(d, involution_cols);
    let algebra = StructureConstants::new(d, product, involution, unit).expect("kp algebra");

    let half = S::from_ratio(1, 2);
    let delta_cols = (0..d)
        .map(|i| {
            let g = i % 4;
            if i < 4 {
                return vec![(g * d + g, S::one())];
            }
            let (gz, gxz, gyz) = (g + 4, (g ^ 1) + 4, (g ^ 2) + 4);
            accumulate(vec![
                (gz * d + gz, half.clone()),
                (gz * d + gxz, half.clone()),
                (gyz * d + gz, half.clone()),
                (gyz * d + gxz, -half.clone()),
            ])
        })
        .collect();
    let antipode_cols = (0..d)
        .map(|i| if i < 4 { vec![(i, S::one())] } else { vec![(kp_swap(i - 4) + 4, S::one())] })
        .collect();
    AbstractHopf {
        name: "KP".to_string(),
        algebra,
        coproduct: LinearMap::new(Matrix::from_columns(d * d, delta_cols)),
        counit: vec![S::one(); d],
        antipode: LinearMap::new(Matrix::from_columns(d, antipode_cols)),
    }
}

pub fn kac_palyutkin<S: Scalar>(seed: u64) -> Result<HopfAlgebra<S>> {
    Ok(kac_palyutkin_abstract().to_block_form(seed)?.0)
}

/// Which structure map a fault is injected into.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FaultTarget {
    Coproduct,
    Counit,
    Antipode,
}

impl<S: Scalar> HopfAlgebra<S> {
    /// Copy with `delta` added to one entry (`row` of column `col`).
    pub fn inject_fault(&self, target: FaultTarget, col: usize, row: usize, delta: S) -> Result<Self> {
        let bump = |m: &Matrix<S>| -> Result<Matrix<S>> {
            if row >= m.rows() || col >= m.cols() {
                return Err(Error::shape(format!("fault position ({row}, {col}) outside {}x{}", m.rows(), m.cols())));
            }
            let mut m = m.clone();
            let v = m.get(row, col) + &delta;
            m.set(row, col, v);
            Ok(m)
        };
        let mut coproduct = self.coproduct().clone();
        let mut counit = self.counit().to_vec();
        let mut antipode = self.antipode().clone();
        match target {
            FaultTarget::Coproduct => coproduct = LinearMap::new(bump(coproduct.matrix())?),
            FaultTarget::Antipode => antipode = LinearMap::new(bump(antipode.matrix())?),
            FaultTarget::Counit => {
                let slot = counit.get_mut(col).ok_or_else(|| Error::shape("counit fault out of range"))?;
                *slot = slot.clone() + &delta;
            }
        }
        self.with_maps(coproduct, counit, antipode)
    }
}
