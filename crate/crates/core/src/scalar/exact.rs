use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Roots;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{approx_roots, FieldParts, Scalar};

/// Gaussian rational `re + i·im` with `re, im ∈ ℚ`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussRat {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussRat {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussRat { re, im }
    }

    pub fn real(re: BigRational) -> Self {
        GaussRat { re, im: BigRational::zero() }
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        Self::real(BigRational::new(num.into(), den.into()))
    }

    pub fn complex(re: (i64, i64), im: (i64, i64)) -> Self {
        GaussRat {
            re: BigRational::new(re.0.into(), re.1.into()),
            im: BigRational::new(im.0.into(), im.1.into()),
        }
    }

    fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }
}

pub(super) fn rat_json(r: &BigRational) -> serde_json::Value {
    let n = r.numer();
    let d = r.denom();
    match (n.to_i64(), d.to_i64()) {
        (Some(n), Some(d)) => serde_json::json!([n, d]),
        _ => serde_json::json!([n.to_string(), d.to_string()]),
    }
}

pub(super) fn rat_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        let n = r.numer().to_f64().unwrap_or(f64::NAN);
        let d = r.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

impl fmt::Debug for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => write!(f, "{}i", self.im),
            (false, false) => {
                if self.im.is_negative() {
                    write!(f, "{}-{}i", self.re, -&self.im)
                } else {
                    write!(f, "{}+{}i", self.re, self.im)
                }
            }
        }
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl<'a> $tr<&'a GaussRat> for &'a GaussRat {
            type Output = GaussRat;
            fn $method(self, rhs: &'a GaussRat) -> GaussRat {
                let f: fn(&GaussRat, &GaussRat) -> GaussRat = $body;
                f(self, rhs)
            }
        }
        impl<'a> $tr<&'a GaussRat> for GaussRat {
            type Output = GaussRat;
            fn $method(self, rhs: &'a GaussRat) -> GaussRat {
                (&self).$method(rhs)
            }
        }
        impl $tr<GaussRat> for GaussRat {
            type Output = GaussRat;
            fn $method(self, rhs: GaussRat) -> GaussRat {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| GaussRat {
    re: &a.re + &b.re,
    im: &a.im + &b.im
});
forward_binop!(Sub, sub, |a, b| GaussRat {
    re: &a.re - &b.re,
    im: &a.im - &b.im
});
forward_binop!(Mul, mul, |a, b| {
    if a.im.is_zero() && b.im.is_zero() {
        return GaussRat::real(&a.re * &b.re);
    }
    GaussRat {
        re: &a.re * &b.re - &a.im * &b.im,
        im: &a.re * &b.im + &a.im * &b.re,
    }
});
forward_binop!(Div, div, |a, b| {
    if b.im.is_zero() {
        return GaussRat {
            re: &a.re / &b.re,
            im: &a.im / &b.re,
        };
    }
    let n = b.norm_sqr();
    let c = b.conj();
    let p = a * &c;
    GaussRat {
        re: p.re / &n,
        im: p.im / n,
    }
});

impl Neg for GaussRat {
    type Output = GaussRat;
    fn neg(self) -> GaussRat {
        GaussRat { re: -self.re, im: -self.im }
    }
}

impl Zero for GaussRat {
    fn zero() -> Self {
        GaussRat::default()
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussRat {
    fn one() -> Self {
        GaussRat::real(BigRational::one())
    }
}

impl Scalar for GaussRat {
    const EXACT: bool = true;

    fn from_rational_parts(re: &BigRational, im: &BigRational) -> Self {
        GaussRat { re: re.clone(), im: im.clone() }
    }

    fn conj(&self) -> Self {
        GaussRat { re: self.re.clone(), im: -&self.im }
    }

    fn re(&self) -> Self {
        GaussRat::real(self.re.clone())
    }

    fn im(&self) -> Self {
        GaussRat::real(self.im.clone())
    }

    fn is_negligible(&self) -> bool {
        self.is_zero()
    }

    fn real_sign(&self) -> Option<Ordering> {
        if !self.im.is_zero() {
            return None;
        }
        Some(self.re.cmp(&BigRational::zero()))
    }

    fn to_c64(&self) -> Complex64 {
        Complex64::new(rat_to_f64(&self.re), rat_to_f64(&self.im))
    }

    fn norm_root(c: &Self) -> Option<Self> {
        if !c.im.is_zero() || !c.re.is_positive() {
            return None;
        }
        // c = p/q; need p·q = a² + b², then w = (a + bi)/q.
        let p = c.re.numer();
        let q = c.re.denom();
        let n = p * q;
        let (a, b) = two_squares(&n)?;
        let qr = BigRational::from_integer(q.clone());
        Some(GaussRat {
            re: BigRational::from_integer(a) / &qr,
            im: BigRational::from_integer(b) / qr,
        })
    }

    fn real_roots(coeffs: &[Self]) -> Vec<Self> {
        let approx: Vec<Complex64> = coeffs.iter().map(|c| c.to_c64()).collect();
        let eval = |t: &GaussRat| {
            coeffs
                .iter()
                .rev()
                .fold(GaussRat::zero(), |acc, a| acc * t + a)
        };
        let mut found: Vec<GaussRat> = Vec::new();
        let push = |cand: GaussRat, found: &mut Vec<GaussRat>| {
            if !found.contains(&cand) && eval(&cand).is_zero() {
                found.push(cand);
            }
        };
        push(GaussRat::zero(), &mut found);
        for z in approx_roots(&approx) {
            if z.im.abs() > 1e-6 * (1.0 + z.re.abs()) {
                continue;
            }
            for cand in convergents(z.re, 1_000_000) {
                push(GaussRat::real(cand), &mut found);
            }
        }
        found.sort_by(|a, b| a.re.cmp(&b.re));
        found
    }

    fn from_field_parts(p: &FieldParts) -> Option<Self> {
        if p.has_r3() {
            return None;
        }
        Some(GaussRat { re: p.re.clone(), im: p.im.clone() })
    }

    fn to_field_parts(&self) -> Option<FieldParts> {
        Some(FieldParts { re: self.re.clone(), im: self.im.clone(), ..Default::default() })
    }

    fn to_json(&self) -> serde_json::Value {
        serde_json::json!({ "re": rat_json(&self.re), "im": rat_json(&self.im) })
    }
}

/// Continued-fraction convergents of `x` with denominator at most `max_den`.
pub(super) fn convergents(x: f64, max_den: i64) -> Vec<BigRational> {
    let mut out = Vec::new();
    if !x.is_finite() {
        return out;
    }
    let (mut h0, mut h1) = (0i128, 1i128);
    let (mut k0, mut k1) = (1i128, 0i128);
    let mut r = x;
    for _ in 0..40 {
        let a = r.floor();
        if a.abs() > 1e15 {
            break;
        }
        let ai = a as i128;
        let h2 = ai * h1 + h0;
        let k2 = ai * k1 + k0;
        if k2 > max_den as i128 {
            break;
        }
        out.push(BigRational::new(BigInt::from(h2), BigInt::from(k2)));
        h0 = h1;
        h1 = h2;
        k0 = k1;
        k1 = k2;
        let frac = r - a;
        if frac.abs() < 1e-12 {
            break;
        }
        r = 1.0 / frac;
    }
    out
}

/// Representation `n = a² + b²` by search, for moderately sized `n`.
pub(super) fn two_squares(n: &BigInt) -> Option<(BigInt, BigInt)> {
    let n = n.to_u64()?;
    if n > 1 << 44 {
        return None;
    }
    let root = n.sqrt();
    for a in (0..=root).rev() {
        let rest = n - a * a;
        let b = rest.sqrt();
        if b * b == rest {
            return Some((BigInt::from(a), BigInt::from(b)));
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_is_exact() {
        let a = GaussRat::complex((1, 3), (2, 5));
        let b = GaussRat::complex((-7, 2), (1, 1));
        let c = GaussRat::ratio(3, 11);
        assert_eq!((a.clone() + &b) + &c, a.clone() + (b.clone() + &c));
        assert_eq!(a.clone() * (b.clone() + &c), a.clone() * &b + a.clone() * &c);
        assert_eq!((a.clone() / &b) * &b, a);
        assert_eq!(a.conj().conj(), a);
    }

    #[test]
    fn norm_root_finds_gaussian_rational() {
        let c = GaussRat::ratio(25, 9);
        let w = GaussRat::norm_root(&c).unwrap();
        assert_eq!(w.clone() * w.conj(), c);
        let two = GaussRat::from_i64(2);
        let w = GaussRat::norm_root(&two).unwrap();
        assert_eq!(w.clone() * w.conj(), two);
        assert!(GaussRat::norm_root(&GaussRat::from_i64(3)).is_none());
    }

    #[test]
    fn rational_roots() {
        // (t - 1/2)(t + 3)(t² + 2) = t⁴ + 5/2 t³ + 1/2 t² + 5 t - 3
        let coeffs: Vec<GaussRat> = vec![
            GaussRat::from_i64(-3),
            GaussRat::from_i64(5),
            GaussRat::ratio(1, 2),
            GaussRat::ratio(5, 2),
            GaussRat::one(),
        ];
        let roots = GaussRat::real_roots(&coeffs);
        assert_eq!(roots, vec![GaussRat::from_i64(-3), GaussRat::ratio(1, 2)]);
    }
}
