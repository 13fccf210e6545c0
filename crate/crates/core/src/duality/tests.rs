use std::sync::Arc;

use super::*;
use crate::error::Error;
use crate::hopf::{function_algebra, group_algebra, kac_palyutkin, verify_hopf, FiniteGroup};
use crate::linalg::LinearMap;
use crate::scalar::{Cyclo12, GaussRat, Scalar, CF64};

fn r(n: i64, d: i64) -> GaussRat {
    GaussRat::from_ratio(n, d)
}

#[test]
fn dual_of_function_algebra_is_group_algebra() {
    let h = function_algebra::<GaussRat>(&FiniteGroup::cyclic(4));
    let d = dualize(&h, 3).unwrap();
    assert_eq!(d.dual_hopf.shape().dims(), &[1, 1, 1, 1]);
    assert!(verify_hopf(&d.dual_hopf).all_pass());
    assert!(d.dual_hopf.is_cocommutative());
    d.check_pairing().unwrap();
    d.wedderburn().verify(&d.abstract_dual.algebra).unwrap();
}

#[test]
fn dual_of_nonabelian_function_algebra() {
    let h = function_algebra::<Cyclo12>(&FiniteGroup::symmetric3());
    let d = dualize(&h, 1).unwrap();
    assert_eq!(d.dual_hopf.shape().dims(), &[1, 1, 2]);
    assert!(verify_hopf(&d.dual_hopf).all_pass());
    d.check_pairing().unwrap();
    assert_eq!(d.plancherel, Cyclo12::from_ratio(1, 6));
}

#[test]
fn point_mass_convolution() {
    let g = FiniteGroup::cyclic(2);
    let h = function_algebra::<GaussRat>(&g);
    let d = dualize(&h, 0).unwrap();
    let delta = |k: usize| h.shape().basis_vector::<GaussRat>(k);
    for a in 0..2 {
        for b in 0..2 {
            let expected: Vec<GaussRat> = delta(g.mul(a, b)).into_iter().map(|x| x * r(1, 2)).collect();
            assert_eq!(d.convolve(&delta(a), &delta(b)), expected);
        }
    }
    assert_eq!(d.plancherel, r(1, 2));
    assert_eq!(d.convolution_unit(), vec![r(2, 1), r(0, 1)]);
}

#[test]
fn kac_palyutkin_dual() {
    let h = kac_palyutkin::<GaussRat>(0).unwrap();
    let d = dualize(&h, 0).unwrap();
    assert_eq!(d.dual_hopf.shape().dims(), &[1, 1, 1, 1, 2]);
    assert!(verify_hopf(&d.dual_hopf).all_pass());
    d.check_pairing().unwrap();
    // τ(a ⋄ b) = τ(a) τ(b)
    let dim = h.dim();
    for a in 0..dim {
        for b in 0..dim {
            let ea = h.shape().basis_vector::<GaussRat>(a);
            let eb = h.shape().basis_vector::<GaussRat>(b);
            let c = d.convolve(&ea, &eb);
            let lhs = crate::multimatrix::evaluate(&d.haar, &c);
            assert_eq!(lhs, d.haar[a].clone() * &d.haar[b]);
        }
    }
    let fi = d.fourier.mul(&d.fourier_inv).unwrap();
    assert!(fi.approx_eq(&crate::linalg::Matrix::identity(dim)));
}

#[test]
fn cotracial_functionals_of_commutative_dual() {
    // C(Z3): convolution is commutative, every functional is cotracial
    let h = function_algebra::<Cyclo12>(&FiniteGroup::cyclic(3));
    let d = dualize(&h, 0).unwrap();
    assert_eq!(d.cotracial_basis().len(), 3);
    // C(S3): ⋄ mirrors the group law, cotracial = class functions
    let h = function_algebra::<Cyclo12>(&FiniteGroup::symmetric3());
    let d = dualize(&h, 0).unwrap();
    assert_eq!(d.cotracial_basis().len(), 3);
}

#[test]
fn float_dual_matches_exact() {
    let g = FiniteGroup::symmetric3();
    let h = group_algebra::<CF64>(&g, 5).unwrap();
    let d = dualize(&h, 5).unwrap();
    assert_eq!(d.dual_hopf.shape().dims(), &[1, 1, 1, 1, 1, 1]);
    d.check_pairing().unwrap();
    assert!((d.plancherel.to_c64().re - 1.0 / 6.0).abs() < 1e-9);
}

#[test]
fn dual_map_of_identity_is_identity() {
    let h = kac_palyutkin::<GaussRat>(0).unwrap();
    let d = dualize(&h, 0).unwrap();
    let f = LinearMap::identity(h.dim());
    let fd = DualAlgebra::dual_map(&f, &d, &d).unwrap();
    assert!(fd.approx_eq(&LinearMap::identity(h.dim())));
}

#[test]
fn antipode_is_convolution_inverse_of_identity() {
    let h = Arc::new(kac_palyutkin::<GaussRat>(0).unwrap());
    let id = MapConvolutionElement::new(LinearMap::identity(h.dim()), h.clone(), h.clone()).unwrap();
    let kappa = MapConvolutionElement::new(h.antipode().clone(), h.clone(), h.clone()).unwrap();
    let unit = MapConvolutionElement::unit(h.clone(), h.clone());
    assert!(map_convolve(&id, &kappa).unwrap().approx_eq(&unit));
    assert!(map_convolve(&kappa, &id).unwrap().approx_eq(&unit));
    assert!(map_convolve(&unit, &id).unwrap().approx_eq(&id));
}

#[test]
fn convolution_tags_must_match() {
    let a = Arc::new(function_algebra::<GaussRat>(&FiniteGroup::cyclic(2)));
    let b = Arc::new(function_algebra::<GaussRat>(&FiniteGroup::cyclic(4)));
    let f = MapConvolutionElement::unit(a.clone(), a.clone());
    let g = MapConvolutionElement::unit(a.clone(), b.clone());
    assert!(matches!(map_convolve(&f, &g), Err(Error::TagMismatch(_))));
    assert!(MapConvolutionElement::new(LinearMap::identity(3), a.clone(), a).is_err());
}
