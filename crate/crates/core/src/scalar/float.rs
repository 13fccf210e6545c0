use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::{approx_roots, FieldParts, Scalar};

/// Comparison threshold used when a value carries no explicit tolerance.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Double-precision complex tagged with a comparison tolerance.
///
/// `tol == 0.0` means "unset" and falls back to [`DEFAULT_TOL`]; binary
/// operations keep the larger of the two tags so a user tolerance attached to
/// input data propagates through every derived value.
#[derive(Clone, Copy, Default)]
pub struct CF64 {
    pub re: f64,
    pub im: f64,
    pub tol: f64,
}

impl CF64 {
    pub fn new(re: f64, im: f64) -> Self {
        CF64 { re, im, tol: 0.0 }
    }

    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    pub fn tolerance(&self) -> f64 {
        if self.tol > 0.0 {
            self.tol
        } else {
            DEFAULT_TOL
        }
    }

    fn c(&self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }

    fn from_c(z: Complex64, tol: f64) -> Self {
        CF64 { re: z.re, im: z.im, tol }
    }
}

impl PartialEq for CF64 {
    fn eq(&self, other: &Self) -> bool {
        self.approx_eq(other)
    }
}

impl fmt::Debug for CF64 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for CF64 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im == 0.0 {
            write!(f, "{}", self.re)
        } else {
            write!(f, "{}{:+}i", self.re, self.im)
        }
    }
}

macro_rules! float_binop {
    ($tr:ident, $method:ident, $op:tt) => {
        impl<'a> $tr<&'a CF64> for CF64 {
            type Output = CF64;
            fn $method(self, rhs: &'a CF64) -> CF64 {
                CF64::from_c(self.c() $op rhs.c(), self.tol.max(rhs.tol))
            }
        }
        impl $tr<CF64> for CF64 {
            type Output = CF64;
            fn $method(self, rhs: CF64) -> CF64 {
                self.$method(&rhs)
            }
        }
    };
}

float_binop!(Add, add, +);
float_binop!(Sub, sub, -);
float_binop!(Mul, mul, *);
float_binop!(Div, div, /);

impl Neg for CF64 {
    type Output = CF64;
    fn neg(self) -> CF64 {
        CF64 { re: -self.re, im: -self.im, tol: self.tol }
    }
}

impl Zero for CF64 {
    fn zero() -> Self {
        CF64::default()
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
}

impl One for CF64 {
    fn one() -> Self {
        CF64::new(1.0, 0.0)
    }
}

impl Scalar for CF64 {
    const EXACT: bool = false;

    fn from_rational_parts(re: &BigRational, im: &BigRational) -> Self {
        CF64::new(re.to_f64().unwrap_or(f64::NAN), im.to_f64().unwrap_or(f64::NAN))
    }

    fn conj(&self) -> Self {
        CF64 { re: self.re, im: -self.im, tol: self.tol }
    }

    fn re(&self) -> Self {
        CF64 { re: self.re, im: 0.0, tol: self.tol }
    }

    fn im(&self) -> Self {
        CF64 { re: self.im, im: 0.0, tol: self.tol }
    }

    fn is_negligible(&self) -> bool {
        self.c().norm() <= self.tolerance()
    }

    fn real_sign(&self) -> Option<Ordering> {
        let tol = self.tolerance();
        if self.im.abs() > tol {
            return None;
        }
        Some(if self.re > tol {
            Ordering::Greater
        } else if self.re < -tol {
            Ordering::Less
        } else {
            Ordering::Equal
        })
    }

    fn to_c64(&self) -> Complex64 {
        self.c()
    }

    fn norm_root(c: &Self) -> Option<Self> {
        match c.real_sign() {
            Some(Ordering::Greater) => Some(CF64 { re: c.re.sqrt(), im: 0.0, tol: c.tol }),
            _ => None,
        }
    }

    fn real_roots(coeffs: &[Self]) -> Vec<Self> {
        let tol = coeffs.iter().map(|c| c.tolerance()).fold(DEFAULT_TOL, f64::max);
        let raw: Vec<Complex64> = coeffs.iter().map(|c| c.c()).collect();
        let cluster = tol.sqrt().max(1e-6);
        let mut roots: Vec<f64> = Vec::new();
        for z in approx_roots(&raw) {
            if z.im.abs() > cluster * (1.0 + z.re.abs()) {
                continue;
            }
            if !roots.iter().any(|r| (r - z.re).abs() <= cluster * (1.0 + r.abs())) {
                roots.push(z.re);
            }
        }
        roots.sort_by(|a, b| a.partial_cmp(b).unwrap_or(Ordering::Equal));
        let tag = coeffs.iter().map(|c| c.tol).fold(0.0, f64::max);
        roots.into_iter().map(|r| CF64 { re: r, im: 0.0, tol: tag }).collect()
    }

    fn from_field_parts(p: &FieldParts) -> Option<Self> {
        let f = |r: &BigRational| r.to_f64().unwrap_or(f64::NAN);
        let r3 = 3f64.sqrt();
        Some(CF64::new(f(&p.re) + r3 * f(&p.re_r3), f(&p.im) + r3 * f(&p.im_r3)))
    }

    fn to_field_parts(&self) -> Option<FieldParts> {
        None
    }

    fn to_json(&self) -> serde_json::Value {
        serde_json::json!([self.re, self.im])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn comparator_uses_tolerance() {
        let a = CF64::new(1.0, 0.0);
        let b = CF64::new(1.0 + 1e-12, 0.0);
        assert!(a.approx_eq(&b));
        let c = CF64::new(1.0 + 1e-6, 0.0);
        assert!(!a.approx_eq(&c));
        let loose = a.with_tol(1e-3);
        assert!(loose.approx_eq(&c));
    }

    #[test]
    fn float_roots_cluster() {
        // (t-1)(t+2)(t²+1)
        let coeffs = [-2.0, 1.0, -1.0, 1.0, 1.0].map(|x| CF64::new(x, 0.0));
        let roots = CF64::real_roots(&coeffs);
        assert_eq!(roots.len(), 2);
        assert!((roots[0].re + 2.0).abs() < 1e-9);
        assert!((roots[1].re - 1.0).abs() < 1e-9);
    }
}
