use crate::error::{Error, Result};
use crate::hopf::{haar_state, AbstractHopf, HopfAlgebra};
use crate::linalg::{accumulate, inverse, kernel, LinearMap, Matrix, SparseVec};
use crate::multimatrix::{evaluate, StructureConstants, Wedderburn};
use crate::scalar::Scalar;

/// The dual Hopf algebra `Â` presented in block form, with the pairing and
/// the Fourier transform precomputed.
///
/// Abstract dual coordinates are taken in the basis `e^a` dual to the
/// matrix-unit basis of `A`; block coordinates come from a Wedderburn
/// decomposition of that abstract algebra.
#[derive(Clone, Debug)]
pub struct DualAlgebra<S> {
    pub source: HopfAlgebra<S>,
    pub abstract_dual: AbstractHopf<S>,
    pub dual_hopf: HopfAlgebra<S>,
    /// Abstract dual coordinates to block coordinates.
    pub to_block: LinearMap<S>,
    /// `beta[(a, k)] = β(e_a, E_k)` for `E_k` a matrix unit of `Â`.
    pub beta: Matrix<S>,
    pub beta_inv: Matrix<S>,
    pub haar: Vec<S>,
    pub dual_haar: Vec<S>,
    /// `F(b) = fourier · b` in block coordinates of `Â`.
    pub fourier: Matrix<S>,
    pub fourier_inv: Matrix<S>,
    /// `c` with `τ̂(F(x)* F(y)) = c · τ(x* y)`.
    pub plancherel: S,
    pub seed: u64,
}

/// Structure constants of `Â` in the basis dual to the matrix units of `A`.
pub fn dual_abstract<S: Scalar>(h: &HopfAlgebra<S>) -> Result<AbstractHopf<S>> {
    let d = h.dim();
    let shape = h.shape();
    // e^a e^b = Σ_c Δ(e_c)_{(a,b)} e^c: rows of the coproduct matrix
    let mut product: Vec<SparseVec<S>> = vec![Vec::new(); d * d];
    for c in 0..d {
        for (ab, v) in h.delta(c) {
            product[*ab].push((c, v.clone()));
        }
    }
    // Δ̂(e^c) = Σ_{e_a e_b = e_c} e^a ⊗ e^b
    let mut coproduct_cols: Vec<SparseVec<S>> = vec![Vec::new(); d];
    for a in 0..d {
        for b in 0..d {
            if let Some(c) = shape.unit_product(a, b) {
                coproduct_cols[c].push((a * d + b, S::one()));
            }
        }
    }
    let kappa = h.antipode().matrix();
    let antipode = kappa.transpose();
    // (e^a)*(e_b) = conj([κ(e_b)*]_a)
    let mut inv_cols: Vec<SparseVec<S>> = vec![Vec::new(); d];
    for b in 0..d {
        let kb_star = shape.star_sparse(kappa.column(b));
        for (a, v) in kb_star {
            inv_cols[a].push((b, v.conj()));
        }
    }
    let algebra = StructureConstants::new(
        d,
        product,
        Matrix::from_columns(d, inv_cols.into_iter().map(accumulate).collect()),
        h.counit().to_vec(),
    )?;
    Ok(AbstractHopf {
        name: format!("dual({})", h.name()),
        algebra,
        coproduct: LinearMap::new(Matrix::from_columns(d * d, coproduct_cols.into_iter().map(accumulate).collect())),
        counit: shape.unit(),
        antipode: LinearMap::new(antipode),
    })
}

impl<S: Scalar> DualAlgebra<S> {
    pub fn dim(&self) -> usize {
        self.source.dim()
    }

    pub fn wedderburn(&self) -> Wedderburn<S> {
        Wedderburn {
            shape: self.dual_hopf.shape().clone(),
            to_blocks: self.to_block.clone(),
            from_blocks: LinearMap::new(self.beta.clone()),
        }
    }

    /// `β(x, φ)` for `x ∈ A`, `φ ∈ Â` in block coordinates.
    pub fn pair(&self, x: &[S], phi: &[S]) -> S {
        evaluate(x, &self.beta.apply(phi))
    }

    pub fn fourier(&self, b: &[S]) -> Vec<S> {
        self.fourier.apply(b)
    }

    pub fn fourier_inverse(&self, phi: &[S]) -> Vec<S> {
        self.fourier_inv.apply(phi)
    }

    /// `a ⋄ b = F⁻¹(F(a) F(b))`.
    pub fn convolve(&self, a: &[S], b: &[S]) -> Vec<S> {
        let p = self.dual_hopf.mul(&self.fourier(a), &self.fourier(b));
        self.fourier_inverse(&p)
    }

    /// The convolution unit `F⁻¹(1̂)`.
    pub fn convolution_unit(&self) -> Vec<S> {
        self.fourier_inverse(&self.dual_hopf.shape().unit())
    }

    /// Check the pairing identities on basis triples; returns the first
    /// violated identity.
    pub fn check_pairing(&self) -> std::result::Result<(), String> {
        let d = self.dim();
        let a_shape = self.source.shape();
        let b_shape = self.dual_hopf.shape();
        let col = |k: usize| crate::linalg::dense_from_sparse(self.beta.column(k), d);
        // β(e_a, ·) as a row over block units
        let row = |a: usize| -> Vec<S> { (0..d).map(|k| self.beta.get(a, k)).collect() };
        let pair_t = |t: &[(usize, S)], left: &[S], right: &[S]| -> S {
            t.iter().fold(S::zero(), |acc, (k, v)| acc + v.clone() * &left[k / d] * &right[k % d])
        };
        for k in 0..d {
            // β(1, φ) = ε̂(φ)
            let lhs = evaluate(&a_shape.unit::<S>(), &col(k));
            if !lhs.approx_eq(&self.dual_hopf.counit()[k]) {
                return Err(format!("β(1, E_{k}) ≠ ε̂(E_{k})"));
            }
        }
        let one_hat = b_shape.unit::<S>();
        for a in 0..d {
            if !self.pair(&a_shape.basis_vector(a), &one_hat).approx_eq(&self.source.counit()[a]) {
                return Err(format!("β(e_{a}, 1̂) ≠ ε(e_{a})"));
            }
        }
        let rows: Vec<Vec<S>> = (0..d).map(row).collect();
        for a in 0..d {
            for b in 0..d {
                let ab = match a_shape.unit_product(a, b) {
                    Some(c) => rows[c].clone(),
                    None => vec![S::zero(); d],
                };
                for k in 0..d {
                    // β(e_a e_b, E_k) = β(e_a ⊗ e_b, Δ̂ E_k)
                    let rhs = self.dual_hopf.delta(k).iter().fold(S::zero(), |acc, (pq, v)| {
                        acc + v.clone() * &rows[a][pq / d] * &rows[b][pq % d]
                    });
                    if !ab[k].approx_eq(&rhs) {
                        return Err(format!("β(e_{a} e_{b}, E_{k}) ≠ β(Δ̂ pairing)"));
                    }
                }
            }
        }
        let cols: Vec<Vec<S>> = (0..d).map(col).collect();
        for k in 0..d {
            for l in 0..d {
                let prod = match b_shape.unit_product(k, l) {
                    Some(m) => cols[m].clone(),
                    None => vec![S::zero(); d],
                };
                for a in 0..d {
                    // β(e_a, E_k E_l) = β(Δ e_a, E_k ⊗ E_l)
                    let rhs = pair_t(self.source.delta(a), &cols[k], &cols[l]);
                    if !prod[a].approx_eq(&rhs) {
                        return Err(format!("β(e_{a}, E_{k} E_{l}) ≠ β(Δ e_{a}, E_{k} ⊗ E_{l})"));
                    }
                }
            }
        }
        Ok(())
    }

    /// Basis of functionals `g` on `A` with `g(a⋄b) = g(b⋄a)`.
    pub fn cotracial_basis(&self) -> Vec<Vec<S>> {
        let d = self.dim();
        let shape = self.source.shape();
        let basis: Vec<Vec<S>> = (0..d).map(|a| shape.basis_vector(a)).collect();
        let mut rows: Vec<SparseVec<S>> = Vec::new();
        for a in 0..d {
            for b in (a + 1)..d {
                let ab = self.convolve(&basis[a], &basis[b]);
                let ba = self.convolve(&basis[b], &basis[a]);
                let diff: Vec<S> = ab.iter().zip(&ba).map(|(x, y)| x.clone() - y).collect();
                let r = crate::linalg::sparse_from_dense(&diff);
                if !r.is_empty() {
                    rows.push(r);
                }
            }
        }
        let m = Matrix::from_columns(d, rows).transpose();
        kernel(&m)
    }

    /// Dual of `f: A → B` as a map `B̂ → Â` in block coordinates:
    /// `β_A(x, f*(ψ)) = β_B(f(x), ψ)`.
    pub fn dual_map(f: &LinearMap<S>, da: &DualAlgebra<S>, db: &DualAlgebra<S>) -> Result<LinearMap<S>> {
        if f.domain_dim() != da.dim() || f.codomain_dim() != db.dim() {
            return Err(Error::shape("map does not match the dual algebras"));
        }
        // f* = β_A⁻¹ fᵀ β_B
        let m = da.beta_inv.mul(&f.matrix().transpose().mul(&db.beta)?)?;
        Ok(LinearMap::new(m))
    }
}

/// Build the dual Hopf algebra, its block form and the Fourier data.
pub fn dualize<S: Scalar>(h: &HopfAlgebra<S>, seed: u64) -> Result<DualAlgebra<S>> {
    let abs = dual_abstract(h)?;
    let (dual_hopf, w) = abs.to_block_form(seed)?;
    let dual_hopf = dual_hopf.with_name(format!("dual({})", h.name()));
    let beta = w.from_blocks.matrix().clone();
    let beta_inv = w.to_blocks.matrix().clone();
    let haar = haar_state(h)?;
    let dual_haar = haar_state(&dual_hopf)?;
    let d = h.dim();
    let shape = h.shape();
    // G[a][b] = τ(e_b e_a)
    let g_cols: Vec<SparseVec<S>> = (0..d)
        .map(|b| {
            accumulate((0..d).filter_map(|a| shape.unit_product(b, a).map(|c| (a, haar[c].clone()))))
        })
        .collect();
    let g = Matrix::from_columns(d, g_cols);
    let fourier = beta_inv.mul(&g)?;
    let fourier_inv = inverse(&fourier).map_err(|_| Error::structural("Fourier transform is singular"))?;
    let plancherel = plancherel_constant(h, &dual_hopf, &haar, &dual_haar, &fourier)?;
    Ok(DualAlgebra {
        source: h.clone(),
        abstract_dual: abs,
        dual_hopf,
        to_block: w.to_blocks,
        beta,
        beta_inv,
        haar,
        dual_haar,
        fourier,
        fourier_inv,
        plancherel,
        seed,
    })
}

fn plancherel_constant<S: Scalar>(
    h: &HopfAlgebra<S>,
    dual: &HopfAlgebra<S>,
    haar: &[S],
    dual_haar: &[S],
    fourier: &Matrix<S>,
) -> Result<S> {
    let d = h.dim();
    let shape = h.shape();
    let f_cols: Vec<Vec<S>> = (0..d).map(|b| fourier.apply(&shape.basis_vector(b))).collect();
    let mut constant: Option<S> = None;
    for a in 0..d {
        let fa_star = dual.star(&f_cols[a]);
        for b in 0..d {
            let lhs = evaluate(dual_haar, &dual.mul(&fa_star, &f_cols[b]));
            let rhs = match shape.unit_product(shape.unit_star(a), b) {
                Some(c) => haar[c].clone(),
                None => S::zero(),
            };
            match (&constant, rhs.is_negligible()) {
                (_, true) => {
                    if !lhs.is_negligible() {
                        return Err(Error::structural(format!("Plancherel identity fails on ({a}, {b})")));
                    }
                }
                (None, false) => constant = Some(lhs / rhs),
                (Some(c), false) => {
                    if !lhs.approx_eq(&(c.clone() * &rhs)) {
                        return Err(Error::structural(format!("Plancherel constant not uniform at ({a}, {b})")));
                    }
                }
            }
        }
    }
    constant.ok_or_else(|| Error::structural("Haar state vanishes"))
}
