use std::sync::OnceLock;

use proptest::prelude::*;

use kacalg::analysis::{intertwines_antipodes, jordan_check, lift_k_iso, power_trace_isospectral};
use kacalg::duality::{dualize, DualAlgebra};
use kacalg::hopf::{function_algebra, group_algebra, haar_state, kac_palyutkin, tensor_hopf, FiniteGroup};
use kacalg::io::AlgebraSpecFile;
use kacalg::ktheory::fusion_ring;
use kacalg::linalg::{sparse_from_dense, LinearMap, Matrix};
use kacalg::multimatrix::{evaluate, BlockShape};
use kacalg::scalar::Scalar;
use kacalg::{Exact, ExactHopf};

fn fixtures() -> &'static [ExactHopf] {
    static CELL: OnceLock<Vec<ExactHopf>> = OnceLock::new();
    CELL.get_or_init(|| {
        let z2 = function_algebra(&FiniteGroup::cyclic(2));
        vec![
            kac_palyutkin(0).unwrap(),
            group_algebra(&FiniteGroup::symmetric3(), 0).unwrap(),
            function_algebra(&FiniteGroup::symmetric3()),
            function_algebra(&FiniteGroup::cyclic(4)),
            tensor_hopf(&z2, &z2).unwrap(),
        ]
    })
}

fn gauss(re: i64, im: i64) -> Exact {
    Exact::from_i64(re) + Exact::i() * Exact::from_i64(im)
}

fn element(dim: usize) -> impl Strategy<Value = Vec<Exact>> {
    prop::collection::vec((-3i64..=3, -3i64..=3), dim).prop_map(|v| v.into_iter().map(|(a, b)| gauss(a, b)).collect())
}

fn fixture_and_pair() -> impl Strategy<Value = (usize, Vec<Exact>, Vec<Exact>)> {
    (0..fixtures().len()).prop_flat_map(|i| {
        let d = fixtures()[i].dim();
        (Just(i), element(d), element(d))
    })
}

fn sparse_close(x: &[(usize, Exact)], y: &[(usize, Exact)]) -> bool {
    kacalg::hopf::sparse_eq(x, y)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn coproduct_is_multiplicative((i, x, y) in fixture_and_pair()) {
        let h = &fixtures()[i];
        let delta = |v: &[Exact]| h.coproduct().apply_sparse(&sparse_from_dense(v));
        let lhs = delta(&h.mul(&x, &y));
        let rhs = h.tensor().mul_sparse(&delta(&x), &delta(&y));
        prop_assert!(sparse_close(&lhs, &rhs));
    }

    #[test]
    fn antipode_reverses_products((i, x, y) in fixture_and_pair()) {
        let h = &fixtures()[i];
        let k = |v: &[Exact]| h.antipode().apply(v);
        prop_assert_eq!(k(&h.mul(&x, &y)), h.mul(&k(&y), &k(&x)));
        prop_assert_eq!(k(&k(&x)), x);
    }

    #[test]
    fn haar_state_is_tracial((i, x, y) in fixture_and_pair()) {
        let h = &fixtures()[i];
        let tau = haar_state(h).unwrap();
        prop_assert_eq!(evaluate(&tau, &h.mul(&x, &y)), evaluate(&tau, &h.mul(&y, &x)));
    }

    #[test]
    fn counit_is_a_character((i, x, y) in fixture_and_pair()) {
        let h = &fixtures()[i];
        prop_assert_eq!(h.counit_of(&h.mul(&x, &y)), h.counit_of(&x) * h.counit_of(&y));
    }

    #[test]
    fn unitary_conjugates_are_isospectral(
        dims in prop::sample::select(vec![vec![2], vec![2, 1], vec![1, 2, 1], vec![1, 1, 1]]),
        entries in prop::collection::vec((-2i64..=2, -2i64..=2), 6),
        (p, r) in (1i64..=6, 1i64..=6),
    ) {
        let a = BlockShape::new(dims);
        let g: Vec<Exact> = entries.iter().cycle().take(a.dim()).map(|&(re, im)| gauss(re, im)).collect();
        let x: Vec<Exact> = g.iter().zip(a.star(&g)).map(|(u, v)| u.clone() + v).collect();
        // Pythagorean phase on every diagonal unit
        let n = p * p + r * r;
        let w = Exact::from_ratio(p * p - r * r, n) + Exact::i() * Exact::from_ratio(2 * p * r, n);
        let mut u = a.zero::<Exact>();
        for b in 0..a.num_blocks() {
            for k in 0..a.dims()[b] {
                u[a.index(b, k, k)] = if k == 0 { w.clone() } else { Exact::from_i64(1) };
            }
        }
        let y = a.mul(&a.mul(&u, &x), &a.star(&u));
        prop_assert!(power_trace_isospectral(&x, &a, &y, &a).unwrap().isospectral);
        let shifted: Vec<Exact> = x.iter().enumerate().map(|(k, v)| if k == 0 { v.clone() + Exact::from_i64(1) } else { v.clone() }).collect();
        prop_assert!(!power_trace_isospectral(&x, &a, &shifted, &a).unwrap().isospectral);
    }
}

#[test]
fn spec_files_round_trip() {
    for h in fixtures() {
        let text = AlgebraSpecFile::from_hopf(h).unwrap().emit();
        let back: ExactHopf = AlgebraSpecFile::parse(&text).unwrap().to_hopf(0).unwrap();
        assert_eq!(back.shape(), h.shape());
        assert_eq!(back.coproduct().matrix(), h.coproduct().matrix());
        assert_eq!(back.counit(), h.counit());
        assert_eq!(back.antipode().matrix(), h.antipode().matrix());
        assert_eq!(AlgebraSpecFile::from_hopf(&back).unwrap().emit(), text);
    }
}

#[test]
fn fusion_dimension_count() {
    for h in fixtures() {
        let ring = fusion_ring(h).unwrap();
        let n = h.shape().dims();
        for i in 0..n.len() {
            for j in 0..n.len() {
                let total: usize = (0..n.len()).map(|k| ring.get(i, j, k) as usize * n[k]).sum();
                assert_eq!(total, n[i] * n[j], "{} ({i}, {j})", h.name());
            }
        }
    }
}

fn permutation(perm: &[usize]) -> LinearMap<Exact> {
    LinearMap::new(Matrix::from_columns(perm.len(), perm.iter().map(|&p| vec![(p, Exact::from_i64(1))]).collect()))
}

fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    all_permutations(n - 1)
        .into_iter()
        .flat_map(|p| {
            (0..n).map(move |pos| {
                let mut v = p.clone();
                v.insert(pos, n - 1);
                v
            })
        })
        .collect()
}

/// Every point permutation of the Klein group whose dual is Jordan
/// intertwines the antipodes.
#[test]
fn jordan_duals_intertwine_antipodes() {
    let h = function_algebra::<Exact>(&FiniteGroup::klein());
    let d = dualize(&h, 0).unwrap();
    let mut jordan = 0;
    for perm in all_permutations(4) {
        let f = permutation(&perm);
        let fd = DualAlgebra::dual_map(&f, &d, &d).unwrap();
        if jordan_check(&fd, d.dual_hopf.shape(), d.dual_hopf.shape()).is_some() {
            continue;
        }
        jordan += 1;
        let r = intertwines_antipodes(&f, &h, &h).unwrap();
        assert!(r.intertwines && r.left_product_is_unit && r.right_product_is_unit, "{perm:?}");
    }
    // the automorphisms of Z₂×Z₂
    assert_eq!(jordan, 6);
}

#[test]
fn lifted_permutations_match_group_automorphisms() {
    let g = FiniteGroup::cyclic(4);
    let h = function_algebra::<Exact>(&g);
    for perm in [[0, 1, 2, 3], [0, 3, 2, 1]] {
        assert!(g.is_automorphism(&perm));
        let f = lift_k_iso(&perm, &h, &h).unwrap();
        let r = intertwines_antipodes(&f, &h, &h).unwrap();
        assert!(r.intertwines);
    }
}
