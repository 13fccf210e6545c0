use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::exact::{convergents, rat_json};
use super::{approx_roots, FieldParts, GaussRat, Scalar};

const SQRT3: f64 = 1.732_050_807_568_877_2;

/// Element `a + b·√3` of ℚ(ζ₁₂) = ℚ(i, √3), with `a, b ∈ ℚ(i)`.
///
/// This is the smallest field containing ℚ(i) over which every irreducible
/// representation of S₃ (and of ℤ₃, ℤ₆) is unitary with exact entries.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Cyclo12 {
    pub a: GaussRat,
    pub b: GaussRat,
}

impl Cyclo12 {
    pub fn new(a: GaussRat, b: GaussRat) -> Self {
        Cyclo12 { a, b }
    }

    pub fn gauss(a: GaussRat) -> Self {
        Cyclo12 { a, b: GaussRat::zero() }
    }

    pub fn sqrt3() -> Self {
        Cyclo12 { a: GaussRat::zero(), b: GaussRat::one() }
    }

    /// The Galois conjugate `√3 ↦ -√3`.
    pub fn galois(&self) -> Self {
        Cyclo12 { a: self.a.clone(), b: -self.b.clone() }
    }

    fn is_gauss(&self) -> bool {
        self.b.is_zero()
    }
}

impl fmt::Debug for Cyclo12 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Cyclo12 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a.is_zero(), self.b.is_zero()) {
            (_, true) => write!(f, "{}", self.a),
            (true, false) => write!(f, "({})√3", self.b),
            (false, false) => write!(f, "{}+({})√3", self.a, self.b),
        }
    }
}

fn mul_ref(x: &Cyclo12, y: &Cyclo12) -> Cyclo12 {
    if x.is_gauss() && y.is_gauss() {
        return Cyclo12::gauss(&x.a * &y.a);
    }
    let three = GaussRat::from_i64(3);
    Cyclo12 {
        a: &x.a * &y.a + (&x.b * &y.b) * &three,
        b: &x.a * &y.b + &x.b * &y.a,
    }
}

fn div_ref(x: &Cyclo12, y: &Cyclo12) -> Cyclo12 {
    if y.is_gauss() {
        return Cyclo12 { a: &x.a / &y.a, b: &x.b / &y.a };
    }
    // y · galois(y) = a² - 3b² ∈ ℚ(i), nonzero since √3 ∉ ℚ(i)
    let n = &y.a * &y.a - (&y.b * &y.b) * &GaussRat::from_i64(3);
    let p = mul_ref(x, &y.galois());
    Cyclo12 { a: &p.a / &n, b: &p.b / &n }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl<'a> $tr<&'a Cyclo12> for &'a Cyclo12 {
            type Output = Cyclo12;
            fn $method(self, rhs: &'a Cyclo12) -> Cyclo12 {
                let f: fn(&Cyclo12, &Cyclo12) -> Cyclo12 = $body;
                f(self, rhs)
            }
        }
        impl<'a> $tr<&'a Cyclo12> for Cyclo12 {
            type Output = Cyclo12;
            fn $method(self, rhs: &'a Cyclo12) -> Cyclo12 {
                (&self).$method(rhs)
            }
        }
        impl $tr<Cyclo12> for Cyclo12 {
            type Output = Cyclo12;
            fn $method(self, rhs: Cyclo12) -> Cyclo12 {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, |x, y| Cyclo12 { a: &x.a + &y.a, b: &x.b + &y.b });
forward_binop!(Sub, sub, |x, y| Cyclo12 { a: &x.a - &y.a, b: &x.b - &y.b });
forward_binop!(Mul, mul, mul_ref);
forward_binop!(Div, div, div_ref);

impl Neg for Cyclo12 {
    type Output = Cyclo12;
    fn neg(self) -> Cyclo12 {
        Cyclo12 { a: -self.a, b: -self.b }
    }
}

impl Zero for Cyclo12 {
    fn zero() -> Self {
        Cyclo12::default()
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl One for Cyclo12 {
    fn one() -> Self {
        Cyclo12::gauss(GaussRat::one())
    }
}

fn rat_sqrt(r: &BigRational) -> Option<BigRational> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    if &(&n * &n) == r.numer() && &(&d * &d) == r.denom() {
        Some(BigRational::new(n, d))
    } else {
        None
    }
}

/// `x + y√3` with `(x + y√3)² = p + q√3`, all rational.
fn sqrt_q3(p: &BigRational, q: &BigRational) -> Option<(BigRational, BigRational)> {
    if q.is_zero() {
        if let Some(x) = rat_sqrt(p) {
            return Some((x, BigRational::zero()));
        }
        let y = rat_sqrt(&(p / BigRational::from_integer(3.into())))?;
        return Some((BigRational::zero(), y));
    }
    let three = BigRational::from_integer(3.into());
    let d = rat_sqrt(&(p * p - &three * q * q))?;
    let two = BigRational::from_integer(2.into());
    for s in [d.clone(), -d] {
        if let Some(x) = rat_sqrt(&((p + s) / &two)) {
            if !x.is_zero() {
                let y = q / (&two * &x);
                return Some((x, y));
            }
        }
    }
    None
}

fn sign_of(p: &BigRational, q: &BigRational) -> Ordering {
    let zero = BigRational::zero();
    let (sp, sq) = (p.cmp(&zero), q.cmp(&zero));
    if sq == Ordering::Equal {
        return sp;
    }
    if sp == Ordering::Equal || sp == sq {
        return sq;
    }
    let three = BigRational::from_integer(3.into());
    match (p * p).cmp(&(three * q * q)) {
        Ordering::Greater => sp,
        Ordering::Less => sq,
        Ordering::Equal => Ordering::Equal,
    }
}

fn close_rational(x: f64) -> Option<BigRational> {
    convergents(x, 1_000_000)
        .into_iter()
        .find(|c| {
            let v = super::exact::rat_to_f64(c);
            (v - x).abs() <= 1e-9 * (1.0 + x.abs())
        })
}

impl Scalar for Cyclo12 {
    const EXACT: bool = true;

    fn from_rational_parts(re: &BigRational, im: &BigRational) -> Self {
        Cyclo12::gauss(GaussRat::new(re.clone(), im.clone()))
    }

    fn conj(&self) -> Self {
        Cyclo12 { a: self.a.conj(), b: self.b.conj() }
    }

    fn re(&self) -> Self {
        Cyclo12 { a: self.a.re(), b: self.b.re() }
    }

    fn im(&self) -> Self {
        Cyclo12 { a: self.a.im(), b: self.b.im() }
    }

    fn is_negligible(&self) -> bool {
        self.is_zero()
    }

    fn real_sign(&self) -> Option<Ordering> {
        if !self.a.im.is_zero() || !self.b.im.is_zero() {
            return None;
        }
        Some(sign_of(&self.a.re, &self.b.re))
    }

    fn to_c64(&self) -> Complex64 {
        self.a.to_c64() + self.b.to_c64() * SQRT3
    }

    fn norm_root(c: &Self) -> Option<Self> {
        if c.real_sign() != Some(Ordering::Greater) {
            return None;
        }
        let (p, q) = (&c.a.re, &c.b.re);
        if q.is_zero() {
            if let Some(w) = GaussRat::norm_root(&c.a) {
                return Some(Cyclo12::gauss(w));
            }
            let third = GaussRat::real(p / BigRational::from_integer(3.into()));
            if let Some(w) = GaussRat::norm_root(&third) {
                return Some(Cyclo12 { a: GaussRat::zero(), b: w });
            }
        }
        // w = g·(x + y√3) for a few small Gaussian integers g
        for (gr, gi) in [(1, 0), (1, 1), (2, 1), (1, 2), (3, 1), (1, 3)] {
            let n = BigRational::from_integer(BigInt::from(gr * gr + gi * gi));
            if let Some((x, y)) = sqrt_q3(&(p / &n), &(q / &n)) {
                let g = Cyclo12::gauss(GaussRat::complex((gr, 1), (gi, 1)));
                return Some(g * Cyclo12::new(GaussRat::real(x), GaussRat::real(y)));
            }
        }
        None
    }

    fn real_roots(coeffs: &[Self]) -> Vec<Self> {
        let eval = |t: &Cyclo12| coeffs.iter().rev().fold(Cyclo12::zero(), |acc, a| acc * t + a);
        let approx: Vec<Complex64> = coeffs.iter().map(|c| c.to_c64()).collect();
        let conj_approx: Vec<Complex64> = coeffs.iter().map(|c| c.galois().to_c64()).collect();
        let real = |z: &Complex64| z.im.abs() <= 1e-6 * (1.0 + z.re.abs());
        let roots: Vec<f64> = approx_roots(&approx).into_iter().filter(real).map(|z| z.re).collect();
        let conj_roots: Vec<f64> = approx_roots(&conj_approx).into_iter().filter(real).map(|z| z.re).collect();

        let mut found: Vec<Cyclo12> = Vec::new();
        let push = |cand: Cyclo12, found: &mut Vec<Cyclo12>| {
            if !found.contains(&cand) && eval(&cand).is_zero() {
                found.push(cand);
            }
        };
        push(Cyclo12::zero(), &mut found);
        for &r in &roots {
            if let Some(p) = close_rational(r) {
                push(Cyclo12::gauss(GaussRat::real(p)), &mut found);
            }
            for &s in &conj_roots {
                let (pf, qf) = ((r + s) / 2.0, (r - s) / (2.0 * SQRT3));
                if let (Some(p), Some(q)) = (close_rational(pf), close_rational(qf)) {
                    push(Cyclo12::new(GaussRat::real(p), GaussRat::real(q)), &mut found);
                }
            }
        }
        found.sort_by(|x, y| {
            let d = x.clone() - y;
            sign_of(&d.a.re, &d.b.re)
        });
        found
    }

    fn from_field_parts(p: &FieldParts) -> Option<Self> {
        Some(Cyclo12 {
            a: GaussRat::new(p.re.clone(), p.im.clone()),
            b: GaussRat::new(p.re_r3.clone(), p.im_r3.clone()),
        })
    }

    fn to_field_parts(&self) -> Option<FieldParts> {
        Some(FieldParts {
            re: self.a.re.clone(),
            im: self.a.im.clone(),
            re_r3: self.b.re.clone(),
            im_r3: self.b.im.clone(),
        })
    }

    fn to_json(&self) -> serde_json::Value {
        let mut v = serde_json::json!({ "re": rat_json(&self.a.re), "im": rat_json(&self.a.im) });
        if !self.b.is_zero() {
            v["re_r3"] = rat_json(&self.b.re);
            v["im_r3"] = rat_json(&self.b.im);
        }
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Cyclo12 {
        Cyclo12::gauss(GaussRat::ratio(n, d))
    }

    #[test]
    fn field_arithmetic() {
        let s = Cyclo12::sqrt3();
        assert_eq!(s.clone() * &s, r(3, 1));
        let x = Cyclo12::new(GaussRat::complex((1, 2), (1, 3)), GaussRat::ratio(-2, 5));
        let y = Cyclo12::new(GaussRat::ratio(3, 1), GaussRat::complex((0, 1), (1, 1)));
        assert_eq!((x.clone() / &y) * &y, x);
        assert_eq!(x.conj().conj(), x);
        // ω = (-1 + i√3)/2 is a primitive cube root of unity
        let w = Cyclo12::new(GaussRat::ratio(-1, 2), GaussRat::complex((0, 1), (1, 2)));
        assert_eq!(w.clone() * &w * &w, Cyclo12::one());
    }

    #[test]
    fn sign_of_quadratic_irrationals() {
        // 2 - √3 > 0, 1 - √3 < 0
        let a = Cyclo12::new(GaussRat::from_i64(2), GaussRat::from_i64(-1));
        let b = Cyclo12::new(GaussRat::from_i64(1), GaussRat::from_i64(-1));
        assert_eq!(a.real_sign(), Some(Ordering::Greater));
        assert_eq!(b.real_sign(), Some(Ordering::Less));
    }

    #[test]
    fn norm_roots_cover_three() {
        for c in [r(3, 4), r(3, 1), r(3, 2), r(2, 1), r(6, 1), r(1, 3)] {
            let w = Cyclo12::norm_root(&c).unwrap_or_else(|| panic!("no root for {c}"));
            assert_eq!(w.clone() * w.conj(), c);
        }
        let c = Cyclo12::new(GaussRat::from_i64(2), GaussRat::from_i64(1));
        let w = Cyclo12::norm_root(&c).unwrap();
        assert_eq!(w.clone() * w.conj(), c);
    }

    #[test]
    fn quadratic_roots_found() {
        // (t - √3)(t + √3)(t - 1/2) = t³ - t²/2 - 3t + 3/2
        let coeffs = vec![r(3, 2), r(-3, 1), r(-1, 2), r(1, 1)];
        let roots = Cyclo12::real_roots(&coeffs);
        let s = Cyclo12::sqrt3();
        assert_eq!(roots, vec![-s.clone(), r(1, 2), s]);
    }
}
