use crate::linalg::{dense_from_sparse, rank, LinearMap};
use crate::scalar::Scalar;

use super::shape::BlockShape;

/// Algebraic properties of a linear map between multimatrix algebras,
/// checked on matrix-unit pairs.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct MorphismFlags {
    pub unital: bool,
    pub star: bool,
    pub multiplicative: bool,
    pub anti_multiplicative: bool,
    pub bijective: bool,
}

impl MorphismFlags {
    pub fn is_star_isomorphism(&self) -> bool {
        self.unital && self.star && self.multiplicative && self.bijective
    }
}

fn images<S: Scalar>(f: &LinearMap<S>, b: &BlockShape) -> Vec<Vec<S>> {
    (0..f.domain_dim()).map(|k| dense_from_sparse(f.image_of_basis(k), b.dim())).collect()
}

fn approx<S: Scalar>(x: &[S], y: &[S]) -> bool {
    x.iter().zip(y).all(|(a, b)| a.approx_eq(b))
}

pub fn morphism_flags<S: Scalar>(f: &LinearMap<S>, a: &BlockShape, b: &BlockShape) -> MorphismFlags {
    if f.domain_dim() != a.dim() || f.codomain_dim() != b.dim() {
        return MorphismFlags::default();
    }
    let im = images(f, b);
    let d = a.dim();
    let unital = approx(&f.apply(&a.unit()), &b.unit::<S>());
    let star = (0..d).all(|k| approx(&b.star(&im[k]), &im[a.unit_star(k)]));
    let zero = b.zero::<S>();
    let mut multiplicative = true;
    let mut anti_multiplicative = true;
    'outer: for x in 0..d {
        for y in 0..d {
            let target = match a.unit_product(x, y) {
                Some(c) => &im[c],
                None => &zero,
            };
            multiplicative &= approx(&b.mul(&im[x], &im[y]), target);
            anti_multiplicative &= approx(&b.mul(&im[y], &im[x]), target);
            if !multiplicative && !anti_multiplicative {
                break 'outer;
            }
        }
    }
    let bijective = a.dim() == b.dim() && rank(f.matrix()) == d;
    MorphismFlags { unital, star, multiplicative, anti_multiplicative, bijective }
}

/// For a unital *-isomorphism, the permutation `i ↦ π(i)` with `f(z_i) = z_{π(i)}`.
pub fn block_permutation<S: Scalar>(f: &LinearMap<S>, a: &BlockShape, b: &BlockShape) -> Option<Vec<usize>> {
    let perm: Option<Vec<usize>> =
        (0..a.num_blocks()).map(|i| b.which_block_identity(&f.apply(&a.block_identity::<S>(i)))).collect();
    let perm = perm?;
    let mut seen = vec![false; b.num_blocks()];
    for &p in &perm {
        if std::mem::replace(&mut seen[p], true) {
            return None;
        }
    }
    (perm.len() == b.num_blocks()).then_some(perm)
}
