use num_traits::{One, Zero};

use super::*;
use crate::duality::dualize;
use crate::error::Error;
use crate::hopf::{function_algebra, group_algebra_abstract, kac_palyutkin, tensor_hopf, FiniteGroup};
use crate::linalg::{LinearMap, Matrix};
use crate::multimatrix::TensorShape;
use crate::scalar::{Cyclo12, GaussRat, Scalar};

#[test]
fn function_algebra_fusion_is_group_ring() {
    for g in [FiniteGroup::cyclic(2), FiniteGroup::klein(), FiniteGroup::symmetric3()] {
        let h = function_algebra::<Cyclo12>(&g);
        let ring = fusion_ring(&h).unwrap();
        for a in 0..g.order() {
            for b in 0..g.order() {
                let mut expected = vec![0; g.order()];
                expected[g.mul(a, b)] = 1;
                assert_eq!(box_fusion(&h, a, b).unwrap(), expected);
            }
        }
        assert_eq!(ring.unit, g.identity());
        assert_eq!(ring.is_commutative(), g.is_abelian());
    }
}

/// `N_ij^k = |G|⁻¹ Σ_g χ_i(g) χ_j(g) conj(χ_k(g))`, characters read off the
/// Wedderburn images of the group elements.
#[test]
fn group_algebra_fusion_matches_characters() {
    let g = FiniteGroup::symmetric3();
    let abs = group_algebra_abstract::<Cyclo12>(&g);
    let (h, w) = abs.to_block_form(7).unwrap();
    let shape = h.shape().clone();
    let chars: Vec<Vec<Cyclo12>> = (0..shape.num_blocks())
        .map(|i| {
            (0..g.order())
                .map(|x| {
                    let img = w.to_blocks.apply(&abs.algebra.basis_vector(x));
                    (0..shape.dims()[i]).fold(Cyclo12::zero(), |acc, r| acc + &img[shape.index(i, r, r)])
                })
                .collect()
        })
        .collect();
    let ring = fusion_ring(&h).unwrap();
    let n = Cyclo12::from_i64(g.order() as i64);
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                let s = (0..g.order()).fold(Cyclo12::zero(), |acc, x| {
                    acc + chars[i][x].clone() * &chars[j][x] * chars[k][x].conj()
                }) / &n;
                assert_eq!(s, Cyclo12::from_i64(ring.get(i, j, k) as i64), "({i}, {j}, {k})");
            }
        }
    }
    // 2 ⊗ 2 = 1 + 1' + 2
    assert_eq!(ring.dense_product(2, 2), vec![1, 1, 1]);
    assert!(ring.is_commutative());
}

#[test]
fn kac_palyutkin_fusion() {
    let h = kac_palyutkin::<GaussRat>(0).unwrap();
    let ring = fusion_ring(&h).unwrap();
    assert_eq!(ring.dense_product(4, 4), vec![1, 1, 1, 1, 0]);
    for a in 0..4 {
        assert_eq!(ring.dense_product(a, 4), vec![0, 0, 0, 0, 1]);
    }
    let k0 = k0_states(&h).unwrap();
    let e = GaussRat::from_ratio(1, 8);
    assert_eq!(k0.haar, vec![e.clone(), e.clone(), e.clone(), e, GaussRat::from_ratio(1, 4)]);
    assert!(k0.counit_block < 4);
    let kk = tensor_hopf(&h, &h).unwrap();
    assert_eq!(fusion_ring(&kk).unwrap(), ring.tensor(&ring));
}

#[test]
fn group_algebra_k0_states() {
    let g = FiniteGroup::symmetric3();
    let (h, _) = group_algebra_abstract::<Cyclo12>(&g).to_block_form(7).unwrap();
    let k0 = k0_states(&h).unwrap();
    // n_i / Σ n_j²
    let expected: Vec<Cyclo12> = h.shape().dims().iter().map(|&n| Cyclo12::from_ratio(n as i64, 6)).collect();
    assert_eq!(k0.haar, expected);
    assert_eq!(h.shape().dims()[k0.counit_block], 1);
}

#[test]
fn box_convolve_identity_holds() {
    let hz = function_algebra::<GaussRat>(&FiniteGroup::cyclic(2));
    let hk = kac_palyutkin::<GaussRat>(0).unwrap();
    for h in [hz, hk] {
        let dual = dualize(&h, 0).unwrap();
        let ring = fusion_ring(&h).unwrap();
        let report = verify_box_convolve(&dual, &ring);
        let k = h.shape().num_blocks();
        assert_eq!(report.entries.len(), k * k * k);
        assert!(report.all_pass(), "{:?}", report.failures());
        // raw matrix units in the 2-block are not trace-averaged
        let worst = report.matrix_unit_residuals.iter().map(|r| r.3).fold(0.0, f64::max);
        assert_eq!(worst > 0.0, h.shape().dims().contains(&2));
    }
    let (hs, _) = group_algebra_abstract::<Cyclo12>(&FiniteGroup::symmetric3()).to_block_form(7).unwrap();
    let report = verify_box_convolve(&dualize(&hs, 0).unwrap(), &fusion_ring(&hs).unwrap());
    assert!(report.all_pass(), "{:?}", report.failures());
}

#[test]
fn k_comultiplicativity() {
    let h = kac_palyutkin::<GaussRat>(0).unwrap();
    let id = LinearMap::identity(h.dim());
    assert!(check_k_comultiplicative(&id, &h, &h).unwrap().pass());

    let kk = tensor_hopf(&h, &h).unwrap();
    let ts = TensorShape::new(h.shape(), h.shape());
    let d = h.dim();
    let cols = (0..d * d)
        .map(|t| {
            let (a, b) = ts.split(ts.from_block[t]);
            vec![(ts.to_block[b * d + a], GaussRat::one())]
        })
        .collect();
    let flip = LinearMap::new(Matrix::from_columns(d * d, cols));
    let r = check_k_comultiplicative(&flip, &kk, &kk).unwrap();
    assert!(r.pass());

    // swap the identity with another element of Z2×Z2
    let g = FiniteGroup::klein();
    let c = function_algebra::<GaussRat>(&g);
    let perm = [1usize, 0, 2, 3];
    let swap = LinearMap::new(Matrix::from_columns(4, perm.iter().map(|&p| vec![(p, GaussRat::one())]).collect()));
    let r = check_k_comultiplicative(&swap, &c, &c).unwrap();
    assert!(!r.fusion_homomorphism && !r.trace_identity);

    let bad = LinearMap::new(Matrix::identity(4).scale(&GaussRat::from_i64(2)));
    assert!(matches!(check_k_comultiplicative(&bad, &c, &c), Err(Error::Precondition { .. })));
}

#[test]
fn kac_palyutkin_tower() {
    let h = kac_palyutkin::<GaussRat>(0).unwrap();
    let t = build_tower(&h, 3, DEFAULT_CAP, false).unwrap();
    assert_eq!(t.materialized_levels(), 2);
    let dims = t.levels[1].shape.dims();
    let count = |n: usize| dims.iter().filter(|&&m| m == n).count();
    assert_eq!((count(1), count(2), count(4)), (16, 8, 1));
    assert_eq!(t.connecting_hopf, vec![true]);
    assert_eq!(t.ring_consistent, vec![Some(true), Some(true)]);
    assert!(t.dims_consistent());
    assert_eq!(t.connecting[0][4][4 * 5 + 4], 2);
    let base = &t.levels[0].k0.haar;
    let top = &t.levels[2].k0.haar;
    assert_eq!(top[(4 * 5 + 4) * 5 + 4], base[4].clone() * &base[4] * &base[4]);
    assert_eq!(t.levels[2].shape.dim(), 512);
    assert!(matches!(build_tower(&h, 3, DEFAULT_CAP, true), Err(Error::CapExceeded { dim: 512, cap: 64 })));
}

#[test]
fn commutative_tower() {
    let h = function_algebra::<GaussRat>(&FiniteGroup::cyclic(2));
    let t = build_tower(&h, 4, DEFAULT_CAP, false).unwrap();
    assert_eq!(t.levels[3].fusion.rank(), 16);
    assert!(t.levels.iter().all(|l| l.fusion.is_commutative()));
    assert!(t.connecting_hopf.iter().all(|&c| c));
    assert_eq!(t.levels[3].fusion.verify(), Ok(()));
}
