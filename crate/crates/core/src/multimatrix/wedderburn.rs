use std::cmp::Ordering;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::{express_in_span, inverse, is_negligible_vec, rank_of_vectors, sparse_from_dense, LinearMap, Matrix};
use crate::scalar::Scalar;

use super::shape::BlockShape;
use super::structure::{approx, StructureConstants};

/// A *-isomorphism between an abstract *-algebra and `⊕ M_{n_k}(ℂ)`.
#[derive(Clone, Debug)]
pub struct Wedderburn<S> {
    pub shape: BlockShape,
    /// Abstract coordinates to matrix-unit coordinates.
    pub to_blocks: LinearMap<S>,
    /// Matrix-unit coordinates to abstract coordinates.
    pub from_blocks: LinearMap<S>,
}

const RANDOM_TRIES: usize = 64;

fn add<S: Scalar>(x: &[S], y: &[S]) -> Vec<S> {
    x.iter().zip(y).map(|(a, b)| a.clone() + b).collect()
}

fn sub<S: Scalar>(x: &[S], y: &[S]) -> Vec<S> {
    x.iter().zip(y).map(|(a, b)| a.clone() - b).collect()
}

fn scale<S: Scalar>(x: &[S], c: &S) -> Vec<S> {
    x.iter().map(|a| a.clone() * c).collect()
}

/// Index of the entry used to read off scalars `c·p` in a corner.
fn pivot<S: Scalar>(p: &[S]) -> usize {
    if S::EXACT {
        p.iter().position(|v| !v.is_zero()).unwrap_or(0)
    } else {
        (0..p.len())
            .max_by(|&a, &b| p[a].magnitude().partial_cmp(&p[b].magnitude()).unwrap_or(Ordering::Equal))
            .unwrap_or(0)
    }
}

/// Monic minimal polynomial of `s` in the unital corner with unit `e`,
/// coefficients low to high.
fn min_poly<S: Scalar>(alg: &StructureConstants<S>, e: &[S], s: &[S]) -> Vec<S> {
    let mut powers = vec![e.to_vec()];
    loop {
        let next = alg.mul(s, powers.last().expect("nonempty"));
        if let Some(c) = express_in_span(&powers, &next) {
            let mut poly: Vec<S> = c.into_iter().map(|v| -v).collect();
            poly.push(S::one());
            return poly;
        }
        if powers.len() > alg.dim() {
            // cannot happen in exact arithmetic
            let mut poly = vec![S::zero(); powers.len()];
            poly.push(S::one());
            return poly;
        }
        powers.push(next);
    }
}

/// Evaluate a polynomial (low to high) at `s` inside the corner with unit `e`.
fn eval_in<S: Scalar>(alg: &StructureConstants<S>, e: &[S], s: &[S], poly: &[S]) -> Vec<S> {
    let mut acc = vec![S::zero(); e.len()];
    for c in poly.iter().rev() {
        acc = add(&alg.mul(s, &acc), &scale(e, c));
    }
    acc
}

/// Self-adjoint elements of the span of `gens` (a *-closed set), in a fixed
/// pseudo-random order.
fn self_adjoint_candidates<S: Scalar>(
    alg: &StructureConstants<S>,
    gens: &[Vec<S>],
    rng: &mut ChaCha8Rng,
) -> Vec<Vec<S>> {
    let i = S::i();
    let mut parts = Vec::with_capacity(2 * gens.len());
    for g in gens {
        let gs = alg.star(g);
        parts.push(add(g, &gs));
        parts.push(scale(&sub(g, &gs), &i));
    }
    parts.retain(|v| !is_negligible_vec(v));
    let mut out = parts.clone();
    for _ in 0..RANDOM_TRIES {
        let mut acc = vec![S::zero(); alg.dim()];
        for v in &parts {
            let r: i64 = rng.gen_range(-3..=3);
            if r != 0 {
                acc = add(&acc, &scale(v, &S::from_i64(r)));
            }
        }
        out.push(acc);
    }
    out
}

/// A projection `0 < q < e` in the corner with unit `e`, from the spectral
/// decomposition of a self-adjoint candidate.
fn split<S: Scalar>(
    alg: &StructureConstants<S>,
    e: &[S],
    gens: &[Vec<S>],
    rng: &mut ChaCha8Rng,
) -> Option<Vec<S>> {
    for s in self_adjoint_candidates(alg, gens, rng) {
        let m = min_poly(alg, e, &s);
        if m.len() < 3 {
            continue;
        }
        for lambda in S::real_roots(&m) {
            // g = m / (t - λ)
            let deg = m.len() - 1;
            let mut g = vec![S::zero(); deg];
            let mut carry = S::zero();
            for k in (0..deg).rev() {
                carry = m[k + 1].clone() + carry * &lambda;
                g[k] = carry.clone();
            }
            let g_lambda = g.iter().rev().fold(S::zero(), |acc, c| acc * &lambda + c);
            if g_lambda.is_negligible() {
                continue;
            }
            let q = scale(&eval_in(alg, e, &s, &g), &(S::one() / g_lambda));
            let proper = !is_negligible_vec(&q) && !is_negligible_vec(&sub(e, &q));
            if proper && approx(&alg.mul(&q, &q), &q) {
                return Some(q);
            }
        }
    }
    None
}

/// `dim(A·x)`.
fn left_ideal_dim<S: Scalar>(alg: &StructureConstants<S>, x: &[S]) -> usize {
    let vecs: Vec<Vec<S>> = (0..alg.dim()).map(|i| alg.mul(&alg.basis_vector(i), x)).collect();
    rank_of_vectors(alg.dim(), &vecs)
}

fn cmp_scalar<S: Scalar>(a: &S, b: &S) -> Ordering {
    let d = a.clone() - b;
    let by = |x: S| x.real_sign().unwrap_or(Ordering::Equal);
    by(d.re()).then_with(|| by(d.im()))
}

struct Block<S> {
    central: Vec<S>,
    /// `E_rs` in abstract coordinates, row-major.
    units: Vec<Vec<S>>,
    n: usize,
}

/// Decompose a semisimple *-algebra into matrix blocks.
///
/// Blocks are ordered by size, then by the coordinates of their central
/// support in descending lexicographic order. Exact scalars fail with
/// [`Error::NeedsFieldExtension`] when an eigenvalue or a norm leaves the
/// field; float mode always succeeds on a semisimple C*-algebra.
pub fn wedderburn<S: Scalar>(alg: &StructureConstants<S>, seed: u64) -> Result<Wedderburn<S>> {
    let d = alg.dim();
    let rad = alg.radical_dim();
    if rad > 0 {
        return Err(Error::NotSemisimple(rad));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let centre = alg.center_basis();
    let mut todo = vec![alg.unit().to_vec()];
    let mut minimal = Vec::new();
    while let Some(e) = todo.pop() {
        let gens: Vec<Vec<S>> = centre.iter().map(|z| alg.mul(&e, z)).collect();
        if rank_of_vectors(d, &gens) <= 1 {
            minimal.push(e);
            continue;
        }
        let q = split(alg, &e, &gens, &mut rng).ok_or_else(|| {
            Error::NeedsFieldExtension("central idempotents are not defined over this field".into())
        })?;
        todo.push(sub(&e, &q));
        todo.push(q);
    }

    let mut blocks = Vec::with_capacity(minimal.len());
    for e in minimal {
        blocks.push(matrix_units(alg, e, &mut rng)?);
    }
    blocks.sort_by(|a, b| {
        a.n.cmp(&b.n).then_with(|| {
            b.central
                .iter()
                .zip(&a.central)
                .map(|(x, y)| cmp_scalar(x, y))
                .find(|o| *o != Ordering::Equal)
                .unwrap_or(Ordering::Equal)
        })
    });

    let shape = BlockShape::new(blocks.iter().map(|b| b.n).collect());
    if shape.dim() != d {
        return Err(Error::structural(format!(
            "block sizes {:?} do not account for dimension {d}",
            shape.dims()
        )));
    }
    let columns: Vec<_> = blocks.iter().flat_map(|b| b.units.iter().map(|u| sparse_from_dense(u))).collect();
    let from = Matrix::from_columns(d, columns);
    let to = inverse(&from)?;
    let w = Wedderburn { shape, to_blocks: LinearMap::new(to), from_blocks: LinearMap::new(from) };
    w.verify(alg)?;
    Ok(w)
}

fn matrix_units<S: Scalar>(alg: &StructureConstants<S>, e: Vec<S>, rng: &mut ChaCha8Rng) -> Result<Block<S>> {
    let d = alg.dim();
    let block_dim = left_ideal_dim(alg, &e);
    let n = (block_dim as f64).sqrt().round() as usize;
    if n * n != block_dim {
        return Err(Error::NeedsFieldExtension(format!(
            "simple component of dimension {block_dim} is not a full matrix algebra over this field"
        )));
    }

    let mut p = e.clone();
    let mut rank = n;
    while rank > 1 {
        let gens: Vec<Vec<S>> = (0..d)
            .map(|i| alg.mul(&alg.mul(&p, &alg.basis_vector(i)), &p))
            .collect();
        let q = split(alg, &p, &gens, rng).ok_or_else(|| {
            Error::NeedsFieldExtension("no rank-one projection over this field".into())
        })?;
        let rq = left_ideal_dim(alg, &q) / n;
        if rq <= rank - rq {
            p = q;
            rank = rq;
        } else {
            p = sub(&p, &q);
            rank -= rq;
        }
    }

    // orthonormal basis of A·p under ⟨v, w⟩ p = w* v
    let k0 = pivot(&p);
    let inner = |v: &[S], w: &[S]| alg.mul(&alg.star(w), v)[k0].clone() / p[k0].clone();
    let mut spanning: Vec<Vec<S>> = (0..d).map(|i| alg.mul(&alg.basis_vector(i), &p)).collect();
    spanning.retain(|v| !is_negligible_vec(v));
    let mut basis: Vec<Vec<S>> = Vec::with_capacity(n);
    let mut attempts = 0usize;
    let mut idx = 0usize;
    while basis.len() < n {
        let cand = if idx < spanning.len() {
            idx += 1;
            spanning[idx - 1].clone()
        } else {
            attempts += 1;
            if attempts > 4 * RANDOM_TRIES {
                return Err(Error::NeedsFieldExtension(
                    "no orthonormal basis of a minimal left ideal over this field".into(),
                ));
            }
            spanning.iter().fold(vec![S::zero(); d], |acc, v| {
                let r: i64 = rng.gen_range(-3..=3);
                add(&acc, &scale(v, &S::from_i64(r)))
            })
        };
        let mut u = cand;
        for v in &basis {
            let c = inner(&u, v);
            u = sub(&u, &scale(v, &c));
        }
        if is_negligible_vec(&u) {
            continue;
        }
        let norm = inner(&u, &u);
        match norm.real_sign() {
            Some(Ordering::Greater) => {}
            _ => return Err(Error::structural("involution is not positive")),
        }
        if let Some(w) = S::norm_root(&norm) {
            basis.push(scale(&u, &(S::one() / w)));
        }
    }

    let mut units = Vec::with_capacity(n * n);
    for r in 0..n {
        for s in 0..n {
            units.push(alg.mul(&basis[r], &alg.star(&basis[s])));
        }
    }
    Ok(Block { central: e, units, n })
}

impl<S: Scalar> Wedderburn<S> {
    /// Check that `from_blocks` is a unital *-homomorphism on matrix units.
    pub fn verify(&self, alg: &StructureConstants<S>) -> Result<()> {
        let d = self.shape.dim();
        let images: Vec<Vec<S>> = (0..d)
            .map(|a| crate::linalg::dense_from_sparse(self.from_blocks.image_of_basis(a), d))
            .collect();
        for a in 0..d {
            if !approx(&alg.star(&images[a]), &images[self.shape.unit_star(a)]) {
                return Err(Error::structural(format!("block map does not preserve * on unit {a}")));
            }
            for b in 0..d {
                let prod = alg.mul(&images[a], &images[b]);
                let ok = match self.shape.unit_product(a, b) {
                    Some(c) => approx(&prod, &images[c]),
                    None => is_negligible_vec(&prod),
                };
                if !ok {
                    return Err(Error::structural(format!("block map is not multiplicative on units ({a}, {b})")));
                }
            }
        }
        if !approx(&self.from_blocks.apply(&self.shape.unit()), alg.unit()) {
            return Err(Error::structural("block map is not unital"));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{Cyclo12, GaussRat, CF64};
    use num_traits::{One, Zero};

    fn scrambled<S: Scalar>(shape: &BlockShape) -> StructureConstants<S> {
        let d = shape.dim();
        // unitriangular change of basis with small integer entries
        let mut trip = Vec::new();
        for j in 0..d {
            trip.push((j, j, S::one()));
            for i in 0..j {
                let v = ((i * 7 + j * 3) % 5) as i64 - 2;
                if v != 0 {
                    trip.push((i, j, S::from_i64(v)));
                }
            }
        }
        let p = Matrix::from_triplets(d, d, trip).unwrap();
        StructureConstants::from_shape(shape).change_basis(&p).unwrap()
    }

    #[test]
    fn recovers_m2() {
        let alg = scrambled::<GaussRat>(&BlockShape::new(vec![2]));
        let w = wedderburn(&alg, 1).unwrap();
        assert_eq!(w.shape.dims(), &[2]);
    }

    #[test]
    fn recovers_mixed_blocks_exact_and_float() {
        let shape = BlockShape::new(vec![1, 2, 2]);
        let w = wedderburn(&scrambled::<Cyclo12>(&shape), 3).unwrap();
        assert_eq!(w.shape.dims(), &[1, 2, 2]);
        let w = wedderburn(&scrambled::<CF64>(&shape), 3).unwrap();
        assert_eq!(w.shape.dims(), &[1, 2, 2]);
        assert!(w.to_blocks.compose(&w.from_blocks).unwrap().approx_eq(&LinearMap::identity(9)));
    }

    #[test]
    fn radical_rejected() {
        let z = Vec::new;
        let one = |k: usize| vec![(k, GaussRat::one())];
        let product = vec![one(0), one(1), z(), z(), z(), one(1), z(), z(), one(2)];
        let alg = StructureConstants::new(
            3,
            product,
            Matrix::identity(3),
            vec![GaussRat::one(), GaussRat::zero(), GaussRat::one()],
        )
        .unwrap();
        assert!(matches!(wedderburn(&alg, 0), Err(Error::NotSemisimple(1))));
    }
}
