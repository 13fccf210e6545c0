use std::collections::BTreeMap;

use serde::Serialize;

use crate::duality::{dualize, DualAlgebra};
use crate::error::{Error, Result};
use crate::hopf::{haar_state, sparse_eq, HopfAlgebra};
use crate::ktheory::{check_k_comultiplicative, fusion_ring, k0_states, FusionRing, K0States, KComultReport};
use crate::linalg::{accumulate, LinearMap, Matrix, SparseVec};
use crate::multimatrix::morphism_flags;
use crate::scalar::Scalar;

use super::checks::{intertwines_antipodes, jordan_check, orthogonality_preserving_check, stormer_decompose, StormerLabel};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    HopfIso,
    HopfCoAntiIso,
    Neither,
    Undetermined,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct MapFlags {
    pub linear: bool,
    pub unital: bool,
    pub star: bool,
    pub multiplicative: bool,
    pub anti_multiplicative: bool,
    pub jordan: bool,
    pub positive: bool,
    pub orthogonality_preserving: bool,
    pub counit_intertwining: bool,
    pub antipode_intertwining: bool,
    pub haar_intertwining: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Dichotomy {
    Multiplicative,
    AntiMultiplicative,
    Mixed,
    NotJordan,
}

/// Flags of a map together with the classification evidence chain.
#[derive(Clone, Debug, Serialize)]
pub struct MapReport {
    pub flags: MapFlags,
    /// First failing basis tuple per failed flag.
    pub witnesses: BTreeMap<&'static str, Vec<usize>>,
    pub k_comultiplicative: KComultReport,
    pub dual_jordan: bool,
    /// Labels of the dual map over the blocks of `Â`.
    pub stormer: Vec<StormerLabel>,
    pub dichotomy: Dichotomy,
    /// The dual map is both multiplicative and anti-multiplicative.
    pub co_anti_alternative: bool,
    pub verdict: Verdict,
    /// Direct recheck of the verdict on the coproducts.
    pub evidence_recheck: bool,
    pub path_hypothesis: &'static str,
}

/// `(f⊗f)Δ_A(e_a)` against `Δ_B f(e_a)` (or its flip); first failing `a`.
pub fn coproduct_intertwining<S: Scalar>(
    f: &LinearMap<S>,
    ha: &HopfAlgebra<S>,
    hb: &HopfAlgebra<S>,
    flipped: bool,
) -> Option<usize> {
    let (da, db) = (ha.dim(), hb.dim());
    (0..da).find(|&a| {
        let lhs: SparseVec<S> = accumulate(ha.delta(a).iter().flat_map(|(ij, c)| {
            let (i, j) = (ij / da, ij % da);
            f.image_of_basis(i).iter().flat_map(move |(p, u)| {
                f.image_of_basis(j).iter().map(move |(q, v)| (p * db + q, c.clone() * u * v))
            })
        }));
        let mut rhs = hb.delta_sparse(f.image_of_basis(a));
        if flipped {
            rhs = hb.flip_sparse(&rhs);
        }
        !sparse_eq(&lhs, &rhs)
    })
}

/// Flags of `f` as a map between Hopf algebras, with witnesses.
pub fn map_flags<S: Scalar>(
    f: &LinearMap<S>,
    ha: &HopfAlgebra<S>,
    hb: &HopfAlgebra<S>,
) -> Result<(MapFlags, BTreeMap<&'static str, Vec<usize>>)> {
    let (sa, sb) = (ha.shape(), hb.shape());
    let m = morphism_flags(f, sa, sb);
    let mut witnesses = BTreeMap::new();
    let jordan = jordan_check(f, sa, sb);
    if let Some((x, y)) = jordan {
        witnesses.insert("jordan", vec![x, y]);
    }
    let ortho = orthogonality_preserving_check(f, sa, sb);
    let counit = (0..ha.dim()).find(|&a| !hb.counit_sparse(f.image_of_basis(a)).approx_eq(&ha.counit()[a]));
    if let Some(a) = counit {
        witnesses.insert("counit_intertwining", vec![a]);
    }
    let anti = intertwines_antipodes(f, ha, hb)?;
    if let Some(a) = anti.witness {
        witnesses.insert("antipode_intertwining", vec![a]);
    }
    let (ta, tb) = (haar_state(ha)?, haar_state(hb)?);
    let haar = (0..ha.dim()).find(|&a| {
        let v = f.image_of_basis(a).iter().fold(S::zero(), |acc, (k, c)| acc + tb[*k].clone() * c);
        !v.approx_eq(&ta[a])
    });
    if let Some(a) = haar {
        witnesses.insert("haar_intertwining", vec![a]);
    }
    let flags = MapFlags {
        linear: true,
        unital: m.unital,
        star: m.star,
        multiplicative: m.multiplicative,
        anti_multiplicative: m.anti_multiplicative,
        jordan: jordan.is_none(),
        positive: ortho.positive,
        orthogonality_preserving: ortho.orthogonality_preserving,
        counit_intertwining: counit.is_none(),
        antipode_intertwining: anti.intertwines,
        haar_intertwining: haar.is_none(),
    };
    Ok((flags, witnesses))
}

/// Decide whether a counit-preserving *-isomorphism is a Hopf isomorphism or
/// a co-anti-isomorphism, through the dual map.
pub fn classify_iso<S: Scalar>(f: &LinearMap<S>, ha: &HopfAlgebra<S>, hb: &HopfAlgebra<S>, seed: u64) -> Result<MapReport> {
    let (sa, sb) = (ha.shape(), hb.shape());
    let m = morphism_flags(f, sa, sb);
    if !m.is_star_isomorphism() {
        return Err(Error::Precondition { name: "star_isomorphism", detail: format!("{m:?}") });
    }
    let (flags, witnesses) = map_flags(f, ha, hb)?;
    if !flags.counit_intertwining {
        let a = witnesses["counit_intertwining"][0];
        return Err(Error::Precondition { name: "counit_not_intertwined", detail: format!("ε_B(f(e_{a})) ≠ ε_A(e_{a})") });
    }
    let kc = check_k_comultiplicative(f, ha, hb)?;
    let (da, db) = (dualize(ha, seed)?, dualize(hb, seed)?);
    let fstar = DualAlgebra::dual_map(f, &da, &db)?;
    let (ba, bb) = (da.dual_hopf.shape(), db.dual_hopf.shape());
    let dual_jordan = jordan_check(&fstar, bb, ba).is_none();
    let stormer = if dual_jordan { stormer_decompose(&fstar, bb, ba)?.labels } else { Vec::new() };
    let dm = morphism_flags(&fstar, bb, ba);
    let dichotomy = match (dual_jordan, dm.multiplicative, dm.anti_multiplicative) {
        (false, _, _) => Dichotomy::NotJordan,
        (true, true, _) => Dichotomy::Multiplicative,
        (true, false, true) => Dichotomy::AntiMultiplicative,
        (true, false, false) => Dichotomy::Mixed,
    };
    let (verdict, evidence_recheck) = match dichotomy {
        Dichotomy::Multiplicative => {
            let ok = coproduct_intertwining(f, ha, hb, false).is_none() && flags.antipode_intertwining;
            (if ok { Verdict::HopfIso } else { Verdict::Undetermined }, ok)
        }
        Dichotomy::AntiMultiplicative => {
            let ok = coproduct_intertwining(f, ha, hb, true).is_none();
            (if ok { Verdict::HopfCoAntiIso } else { Verdict::Undetermined }, ok)
        }
        Dichotomy::Mixed | Dichotomy::NotJordan => {
            // neither alternative may hold on the coproducts either
            let ok = coproduct_intertwining(f, ha, hb, false).is_some() && coproduct_intertwining(f, ha, hb, true).is_some();
            (if ok { Verdict::Neither } else { Verdict::Undetermined }, ok)
        }
    };
    Ok(MapReport {
        flags,
        witnesses,
        k_comultiplicative: kc,
        dual_jordan,
        stormer,
        dichotomy,
        co_anti_alternative: dm.multiplicative && dm.anti_multiplicative,
        verdict,
        evidence_recheck,
        path_hypothesis: "unchecked",
    })
}

/// The block-permutation *-isomorphism `e^{(i)}_{rs} ↦ e^{(π i)}_{rs}` induced
/// by a fusion-ring isomorphism, after checking dims, Haar values, counit
/// blocks and structure constants.
pub fn lift_k_iso<S: Scalar>(perm: &[usize], ha: &HopfAlgebra<S>, hb: &HopfAlgebra<S>) -> Result<LinearMap<S>> {
    let (sa, sb) = (ha.shape(), hb.shape());
    let fail = |name: &'static str, detail: String| Err(Error::Precondition { name, detail });
    if perm.len() != sa.num_blocks() || sa.num_blocks() != sb.num_blocks() {
        return fail("block_count", format!("{} blocks against {}", sa.num_blocks(), sb.num_blocks()));
    }
    let mut seen = vec![false; perm.len()];
    for &p in perm {
        if p >= perm.len() || std::mem::replace(&mut seen[p], true) {
            return fail("bijection", format!("{perm:?} is not a permutation"));
        }
    }
    if let Some(i) = (0..perm.len()).find(|&i| sa.dims()[i] != sb.dims()[perm[i]]) {
        return fail("dims", format!("block {i} has size {} but its image has {}", sa.dims()[i], sb.dims()[perm[i]]));
    }
    let (ka, kb) = (k0_states(ha)?, k0_states(hb)?);
    if let Some(i) = (0..perm.len()).find(|&i| !ka.haar[i].approx_eq(&kb.haar[perm[i]])) {
        return fail("haar", format!("Haar values differ on block {i}"));
    }
    if perm[ka.counit_block] != kb.counit_block {
        return fail("counit_block", "counit support is not preserved".into());
    }
    let (ra, rb) = (fusion_ring(ha)?, fusion_ring(hb)?);
    if let Some((i, j, k)) = ra.is_homomorphism_under(perm, &rb) {
        return fail("fusion", format!("N_{i}{j}^{k} is not preserved"));
    }
    let cols = (0..sa.dim())
        .map(|a| {
            let u = sa.locate(a);
            vec![(sb.index(perm[u.block], u.row, u.col), S::one())]
        })
        .collect();
    Ok(LinearMap::new(Matrix::from_columns(sb.dim(), cols)))
}

/// All block bijections preserving dims, Haar values, counit block and the
/// fusion structure constants, in lexicographic order.
pub fn fusion_isomorphisms<S: Scalar>(
    ra: &FusionRing,
    ka: &K0States<S>,
    rb: &FusionRing,
    kb: &K0States<S>,
) -> Vec<Vec<usize>> {
    let k = ra.rank();
    if rb.rank() != k {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut perm = vec![usize::MAX; k];
    let mut used = vec![false; k];
    search(0, ra, ka, rb, kb, &mut perm, &mut used, &mut out);
    out
}

#[allow(clippy::too_many_arguments)]
fn search<S: Scalar>(
    i: usize,
    ra: &FusionRing,
    ka: &K0States<S>,
    rb: &FusionRing,
    kb: &K0States<S>,
    perm: &mut Vec<usize>,
    used: &mut Vec<bool>,
    out: &mut Vec<Vec<usize>>,
) {
    let k = ra.rank();
    if i == k {
        if ra.is_homomorphism_under(perm, rb).is_none() {
            out.push(perm.clone());
        }
        return;
    }
    for p in 0..k {
        let compatible = !used[p]
            && ra.dims[i] == rb.dims[p]
            && ka.haar[i].approx_eq(&kb.haar[p])
            && (i == ka.counit_block) == (p == kb.counit_block)
            // structure constants among already-assigned generators
            && (0..i).all(|j| {
                (0..=i).all(|m| {
                    let (pj, pm) = (perm[j], if m == i { p } else { perm[m] });
                    ra.get(i, j, m) == rb.get(p, pj, pm) && ra.get(j, i, m) == rb.get(pj, p, pm)
                })
            });
        if compatible {
            perm[i] = p;
            used[p] = true;
            search(i + 1, ra, ka, rb, kb, perm, used, out);
            used[p] = false;
            perm[i] = usize::MAX;
        }
    }
}
