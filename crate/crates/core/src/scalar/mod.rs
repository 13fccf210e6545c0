//! The ground field.
//!
//! Everything in this crate is generic over [`Scalar`], a complex number type
//! that is either exact ([`Cyclo12`] = ℚ(i, √3), or its subfield [`GaussRat`]
//! = ℚ(i)) or a tolerance-tagged double-precision complex ([`CF64`]). Modes
//! never mix: a computation is monomorphised over exactly one of them.

mod cyclo;
mod exact;
mod float;

pub use cyclo::Cyclo12;
pub use exact::GaussRat;
pub use float::{CF64, DEFAULT_TOL};

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Complex scalar with field operations, conjugation and a single
/// mode-specific notion of "equal".
pub trait Scalar:
    Clone
    + fmt::Debug
    + fmt::Display
    + PartialEq
    + Send
    + Sync
    + 'static
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
    + for<'a> Div<&'a Self, Output = Self>
{
    /// `true` for exact arithmetic.
    const EXACT: bool;

    /// Short mode name used in reports.
    fn mode_name() -> &'static str {
        if Self::EXACT {
            "exact"
        } else {
            "float"
        }
    }

    fn from_rational_parts(re: &BigRational, im: &BigRational) -> Self;

    fn from_i64(n: i64) -> Self {
        Self::from_ratio(n, 1)
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        let r = BigRational::new(num.into(), den.into());
        Self::from_rational_parts(&r, &BigRational::zero())
    }

    /// The imaginary unit.
    fn i() -> Self {
        Self::from_rational_parts(&BigRational::zero(), &BigRational::one())
    }

    fn conj(&self) -> Self;
    fn re(&self) -> Self;
    fn im(&self) -> Self;

    /// The comparator: exact zero in exact mode, `|z| <= tol` in float mode.
    fn is_negligible(&self) -> bool;

    fn approx_eq(&self, other: &Self) -> bool {
        (self.clone() - other).is_negligible()
    }

    /// Sign of a real scalar; `None` when the imaginary part is not negligible.
    fn real_sign(&self) -> Option<Ordering>;

    fn to_c64(&self) -> Complex64;

    /// Absolute value, for residual reporting only.
    fn magnitude(&self) -> f64 {
        self.to_c64().norm()
    }

    /// For a positive real `c`, some `w` with `w * conj(w) = c`, if one exists
    /// in this field.
    fn norm_root(c: &Self) -> Option<Self>;

    /// Distinct real roots of `Σ coeffs[k] tᵏ` that are representable in this
    /// field. Exact mode only finds rational roots.
    fn real_roots(coeffs: &[Self]) -> Vec<Self>;

    /// `(re + i·im) + (re_r3 + i·im_r3)·√3`, if representable.
    fn from_field_parts(p: &FieldParts) -> Option<Self>;

    /// Exact coordinates over ℚ (exact modes only).
    fn to_field_parts(&self) -> Option<FieldParts>;

    /// JSON value for reports: `{"re":[n,d],"im":[n,d]}` (exact) or `[re, im]` (float).
    fn to_json(&self) -> serde_json::Value;

    fn is_real(&self) -> bool {
        self.im().is_negligible()
    }
}

/// Rational coordinates of an element of ℚ(i, √3).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FieldParts {
    pub re: BigRational,
    pub im: BigRational,
    pub re_r3: BigRational,
    pub im_r3: BigRational,
}

impl FieldParts {
    pub fn has_r3(&self) -> bool {
        !self.re_r3.is_zero() || !self.im_r3.is_zero()
    }
}

/// Sum of an iterator of scalars.
pub fn sum<S: Scalar, I: IntoIterator<Item = S>>(it: I) -> S {
    it.into_iter().fold(S::zero(), |acc, x| acc + x)
}

/// Numerical polynomial roots (Durand–Kerner). Coefficients low to high.
pub(crate) fn approx_roots(coeffs: &[Complex64]) -> Vec<Complex64> {
    let mut c: Vec<Complex64> = coeffs.to_vec();
    while c.len() > 1 && c.last().is_some_and(|z| z.norm() == 0.0) {
        c.pop();
    }
    let deg = c.len().saturating_sub(1);
    if deg == 0 {
        return Vec::new();
    }
    let lead = c[deg];
    let monic: Vec<Complex64> = c.iter().map(|z| z / lead).collect();
    let bound = 1.0 + monic[..deg].iter().map(|z| z.norm()).fold(0.0, f64::max);
    let seed = Complex64::new(0.4, 0.9);
    let mut roots: Vec<Complex64> = (0..deg)
        .map(|k| seed.powu(k as u32) * bound)
        .collect();
    let eval = |t: Complex64| monic.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, a| acc * t + a);
    for _ in 0..2000 {
        let mut delta: f64 = 0.0;
        for k in 0..deg {
            let num = eval(roots[k]);
            let mut den = Complex64::new(1.0, 0.0);
            for j in 0..deg {
                if j != k {
                    den *= roots[k] - roots[j];
                }
            }
            if den.norm() == 0.0 {
                den = Complex64::new(1e-12, 0.0);
            }
            let step = num / den;
            roots[k] -= step;
            delta = delta.max(step.norm());
        }
        if delta < 1e-15 {
            break;
        }
    }
    // polish with Newton
    let deriv: Vec<Complex64> = (1..=deg).map(|k| monic[k] * k as f64).collect();
    let eval_d = |t: Complex64| deriv.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, a| acc * t + a);
    for r in roots.iter_mut() {
        for _ in 0..5 {
            let d = eval_d(*r);
            if d.norm() == 0.0 {
                break;
            }
            *r -= eval(*r) / d;
        }
    }
    roots
}
