//! JSON spec files for algebras and maps.
//!
//! Rationals are `[num, den]` integer pairs. Coefficients are
//! `re + i·im + (re_r3 + i·im_r3)·√3`, the `√3` parts omitted when zero.
//! [`AlgebraSpecFile::emit`] writes the canonical form: entries sorted by
//! `(from, to)`, zeros dropped, fractions reduced with positive denominators.

use std::fs;
use std::path::Path;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hopf::{build_standard, HopfAlgebra, Preset};
use crate::linalg::{accumulate, LinearMap, Matrix, SparseVec};
use crate::multimatrix::BlockShape;
use crate::scalar::{FieldParts, Scalar};

pub type Rational = [i64; 2];

fn is_zero(r: &Rational) -> bool {
    r[0] == 0
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Entry {
    pub from: usize,
    pub to: Vec<usize>,
    pub re: Rational,
    pub im: Rational,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub re_r3: Option<Rational>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub im_r3: Option<Rational>,
}

/// A counit value: a bare rational when real and in ℚ, otherwise an object.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Value {
    Rational(Rational),
    Complex(Coefficient),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Coefficient {
    pub re: Rational,
    pub im: Rational,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub re_r3: Option<Rational>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub im_r3: Option<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PresetSpec {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraSpecFile {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub preset: Option<PresetSpec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub blocks: Vec<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub coproduct: Vec<Entry>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub counit: Vec<Value>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub antipode: Vec<Entry>,
}

/// A linear map `domain_dim → codomain_dim`, or the identity preset.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapSpecFile {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub preset: Option<String>,
    pub domain_dim: usize,
    pub codomain_dim: usize,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub entries: Vec<Entry>,
}

/// Keys sorted, one list item per line.
fn layout<T: Serialize>(x: &T) -> String {
    let v = serde_json::to_value(x).expect("spec serializes");
    let obj = v.as_object().expect("spec is an object");
    let compact = |v: &serde_json::Value| serde_json::to_string(v).expect("json");
    let fields: Vec<String> = obj
        .iter()
        .map(|(k, v)| match v.as_array() {
            Some(items) if items.iter().any(|i| i.is_object() || i.is_array()) => {
                let lines: Vec<String> = items.iter().map(|i| format!("    {}", compact(i))).collect();
                format!("  {}: [\n{}\n  ]", compact(&k.clone().into()), lines.join(",\n"))
            }
            _ => format!("  {}: {}", compact(&k.clone().into()), compact(v)),
        })
        .collect();
    format!("{{\n{}\n}}\n", fields.join(",\n"))
}

fn parse_err(context: impl Into<String>, message: impl Into<String>) -> Error {
    Error::Parse { context: context.into(), message: message.into() }
}

fn json_error(e: serde_json::Error) -> Error {
    parse_err(format!("line {} column {}", e.line(), e.column()), e.to_string())
}

fn to_big(r: &Rational, context: &str) -> Result<BigRational> {
    if r[1] == 0 {
        return Err(parse_err(context, "zero denominator"));
    }
    Ok(BigRational::new(BigInt::from(r[0]), BigInt::from(r[1])))
}

fn from_big(r: &BigRational) -> Result<Rational> {
    match (r.numer().to_i64(), r.denom().to_i64()) {
        (Some(n), Some(d)) => Ok([n, d]),
        _ => Err(Error::structural(format!("coefficient {r} does not fit in 64-bit integers"))),
    }
}

fn opt_big(r: &Option<Rational>, context: &str) -> Result<BigRational> {
    r.as_ref().map_or_else(|| Ok(BigRational::zero()), |r| to_big(r, context))
}

fn opt_rat(r: &BigRational) -> Result<Option<Rational>> {
    if r.is_zero() {
        Ok(None)
    } else {
        from_big(r).map(Some)
    }
}

fn scalar_from<S: Scalar>(re: &Rational, im: &Rational, re_r3: &Option<Rational>, im_r3: &Option<Rational>, context: &str) -> Result<S> {
    let parts = FieldParts {
        re: to_big(re, context)?,
        im: to_big(im, context)?,
        re_r3: opt_big(re_r3, context)?,
        im_r3: opt_big(im_r3, context)?,
    };
    S::from_field_parts(&parts)
        .ok_or_else(|| Error::NeedsFieldExtension(format!("{context}: coefficient needs √3 in {} mode", S::mode_name())))
}

fn parts_of<S: Scalar>(x: &S) -> Result<FieldParts> {
    x.to_field_parts().ok_or_else(|| Error::structural("spec files hold exact coefficients only"))
}

impl Entry {
    fn new<S: Scalar>(from: usize, to: Vec<usize>, x: &S) -> Result<Self> {
        let p = parts_of(x)?;
        Ok(Entry { from, to, re: from_big(&p.re)?, im: from_big(&p.im)?, re_r3: opt_rat(&p.re_r3)?, im_r3: opt_rat(&p.im_r3)? })
    }

    fn value<S: Scalar>(&self, context: &str) -> Result<S> {
        scalar_from(&self.re, &self.im, &self.re_r3, &self.im_r3, context)
    }
}

impl Value {
    fn new<S: Scalar>(x: &S) -> Result<Self> {
        let p = parts_of(x)?;
        if p.im.is_zero() && !p.has_r3() {
            return Ok(Value::Rational(from_big(&p.re)?));
        }
        Ok(Value::Complex(Coefficient {
            re: from_big(&p.re)?,
            im: from_big(&p.im)?,
            re_r3: opt_rat(&p.re_r3)?,
            im_r3: opt_rat(&p.im_r3)?,
        }))
    }

    fn value<S: Scalar>(&self, context: &str) -> Result<S> {
        match self {
            Value::Rational(r) => scalar_from(r, &[0, 1], &None, &None, context),
            Value::Complex(c) => scalar_from(&c.re, &c.im, &c.re_r3, &c.im_r3, context),
        }
    }
}

/// Entries of a matrix, column `from`, row split into `arity` indices base `d`.
fn matrix_entries<S: Scalar>(m: &Matrix<S>, d: usize, arity: usize) -> Result<Vec<Entry>> {
    let mut out = Vec::new();
    for (from, col) in m.columns().iter().enumerate() {
        let mut col = col.clone();
        col.sort_by_key(|(r, _)| *r);
        for (row, x) in col {
            if x.is_negligible() {
                continue;
            }
            let to = if arity == 2 { vec![row / d, row % d] } else { vec![row] };
            out.push(Entry::new(from, to, &x)?);
        }
    }
    Ok(out)
}

fn entries_to_columns<S: Scalar>(
    entries: &[Entry],
    section: &str,
    domain: usize,
    d: usize,
    arity: usize,
) -> Result<Vec<SparseVec<S>>> {
    let mut cols: Vec<Vec<(usize, S)>> = vec![Vec::new(); domain];
    for (k, e) in entries.iter().enumerate() {
        let context = format!("{section} entry {k}");
        if e.from >= domain {
            return Err(parse_err(context, format!("from = {} out of range (dimension {domain})", e.from)));
        }
        if e.to.len() != arity {
            return Err(parse_err(context, format!("`to` has {} indices, expected {arity}", e.to.len())));
        }
        if let Some(bad) = e.to.iter().find(|&&t| t >= d) {
            return Err(parse_err(context, format!("to index {bad} out of range (dimension {d})")));
        }
        let row = e.to.iter().fold(0, |acc, &t| acc * d + t);
        cols[e.from].push((row, e.value(&context)?));
    }
    Ok(cols.into_iter().map(accumulate).collect())
}

impl AlgebraSpecFile {
    pub fn parse(text: &str) -> Result<Self> {
        let spec: Self = serde_json::from_str(text).map_err(json_error)?;
        spec.validate()?;
        Ok(spec)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| parse_err(path.display().to_string(), e.to_string()))?;
        Self::parse(&text).map_err(|e| match e {
            Error::Parse { context, message } => parse_err(format!("{}: {context}", path.display()), message),
            other => other,
        })
    }

    /// Canonical text, newline-terminated.
    pub fn emit(&self) -> String {
        layout(&self.canonical())
    }

    pub fn canonical(&self) -> Self {
        let mut c = self.clone();
        let reduce = |r: &mut Rational| {
            if r[1] != 0 {
                let b = BigRational::new(BigInt::from(r[0]), BigInt::from(r[1]));
                *r = from_big(&b).expect("reduced fraction fits");
            }
        };
        let fix = |e: &mut Entry| {
            reduce(&mut e.re);
            reduce(&mut e.im);
            for r in [&mut e.re_r3, &mut e.im_r3] {
                if let Some(v) = r.as_mut() {
                    reduce(v);
                }
                if r.is_some_and(|v| is_zero(&v)) {
                    *r = None;
                }
            }
        };
        for list in [&mut c.coproduct, &mut c.antipode] {
            list.iter_mut().for_each(fix);
            list.retain(|e| !(is_zero(&e.re) && is_zero(&e.im) && e.re_r3.is_none() && e.im_r3.is_none()));
            list.sort_by(|a, b| (a.from, &a.to).cmp(&(b.from, &b.to)));
        }
        c
    }

    fn validate(&self) -> Result<()> {
        if self.preset.is_some() {
            if !(self.blocks.is_empty() && self.coproduct.is_empty() && self.counit.is_empty() && self.antipode.is_empty()) {
                return Err(parse_err("preset", "a preset replaces blocks, coproduct, counit and antipode"));
            }
            return Ok(());
        }
        if self.blocks.is_empty() || self.blocks.contains(&0) {
            return Err(parse_err("blocks", "block sizes must be a nonempty list of positive integers"));
        }
        let d: usize = self.blocks.iter().map(|n| n * n).sum();
        if self.counit.len() != d {
            return Err(parse_err("counit", format!("{} values, expected {d}", self.counit.len())));
        }
        for (section, list, arity) in [("coproduct", &self.coproduct, 2), ("antipode", &self.antipode, 1)] {
            for (k, e) in list.iter().enumerate() {
                let context = format!("{section} entry {k}");
                for r in [Some(e.re), Some(e.im), e.re_r3, e.im_r3].into_iter().flatten() {
                    if r[1] == 0 {
                        return Err(parse_err(context, "zero denominator"));
                    }
                }
                if e.from >= d || e.to.len() != arity || e.to.iter().any(|&t| t >= d) {
                    return Err(parse_err(context, format!("indices {} -> {:?} out of range for dimension {d}", e.from, e.to)));
                }
            }
        }
        for (k, v) in self.counit.iter().enumerate() {
            let rs: Vec<Rational> = match v {
                Value::Rational(r) => vec![*r],
                Value::Complex(c) => [Some(c.re), Some(c.im), c.re_r3, c.im_r3].into_iter().flatten().collect(),
            };
            if rs.iter().any(|r| r[1] == 0) {
                return Err(parse_err(format!("counit entry {k}"), "zero denominator"));
            }
        }
        Ok(())
    }

    pub fn from_hopf<S: Scalar>(h: &HopfAlgebra<S>) -> Result<Self> {
        let d = h.dim();
        Ok(AlgebraSpecFile {
            name: h.name().to_string(),
            preset: None,
            blocks: h.shape().dims().to_vec(),
            coproduct: matrix_entries(h.coproduct().matrix(), d, 2)?,
            counit: h.counit().iter().map(Value::new).collect::<Result<_>>()?,
            antipode: matrix_entries(h.antipode().matrix(), d, 1)?,
        })
    }

    pub fn from_preset(name: &str, kind: &str, group: Option<&str>) -> Self {
        AlgebraSpecFile {
            name: name.to_string(),
            preset: Some(PresetSpec { kind: kind.to_string(), group: group.map(str::to_string) }),
            blocks: Vec::new(),
            coproduct: Vec::new(),
            counit: Vec::new(),
            antipode: Vec::new(),
        }
    }

    /// Build the algebra. Presets are decomposed with `seed`.
    pub fn to_hopf<S: Scalar>(&self, seed: u64) -> Result<HopfAlgebra<S>> {
        if let Some(p) = &self.preset {
            let preset = Preset::parse(&p.kind, p.group.as_deref())?;
            return Ok(build_standard::<S>(&preset, seed)?.with_name(self.name.clone()));
        }
        self.validate()?;
        let shape = BlockShape::new(self.blocks.clone());
        let d = shape.dim();
        let delta = entries_to_columns(&self.coproduct, "coproduct", d, d, 2)?;
        let kappa = entries_to_columns(&self.antipode, "antipode", d, d, 1)?;
        let counit = self
            .counit
            .iter()
            .enumerate()
            .map(|(k, v)| v.value(&format!("counit entry {k}")))
            .collect::<Result<Vec<S>>>()?;
        HopfAlgebra::new(
            self.name.clone(),
            shape,
            LinearMap::new(Matrix::from_columns(d * d, delta)),
            counit,
            LinearMap::new(Matrix::from_columns(d, kappa)),
        )
    }
}

impl MapSpecFile {
    pub fn parse(text: &str) -> Result<Self> {
        let spec: Self = serde_json::from_str(text).map_err(json_error)?;
        match spec.preset.as_deref() {
            None => {}
            Some("identity") if spec.domain_dim == spec.codomain_dim && spec.entries.is_empty() => {}
            Some(other) => return Err(parse_err("preset", format!("unsupported map preset {other:?}"))),
        }
        Ok(spec)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| parse_err(path.display().to_string(), e.to_string()))?;
        Self::parse(&text).map_err(|e| match e {
            Error::Parse { context, message } => parse_err(format!("{}: {context}", path.display()), message),
            other => other,
        })
    }

    pub fn emit(&self) -> String {
        let mut c = self.clone();
        c.entries.sort_by(|a, b| (a.from, &a.to).cmp(&(b.from, &b.to)));
        layout(&c)
    }

    pub fn from_map<S: Scalar>(name: &str, f: &LinearMap<S>) -> Result<Self> {
        Ok(MapSpecFile {
            name: name.to_string(),
            preset: None,
            domain_dim: f.domain_dim(),
            codomain_dim: f.codomain_dim(),
            entries: matrix_entries(f.matrix(), f.codomain_dim(), 1)?,
        })
    }

    pub fn identity(name: &str, dim: usize) -> Self {
        MapSpecFile { name: name.to_string(), preset: Some("identity".into()), domain_dim: dim, codomain_dim: dim, entries: Vec::new() }
    }

    pub fn to_map<S: Scalar>(&self) -> Result<LinearMap<S>> {
        if self.preset.is_some() {
            return Ok(LinearMap::identity(self.domain_dim));
        }
        let cols = entries_to_columns(&self.entries, "map", self.domain_dim, self.codomain_dim, 1)?;
        Ok(LinearMap::new(Matrix::from_columns(self.codomain_dim, cols)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::{function_algebra, group_algebra, kac_palyutkin, verify_hopf, FiniteGroup};
    use crate::scalar::{Cyclo12, GaussRat, CF64};

    #[test]
    fn round_trip_kac_palyutkin() {
        let h = kac_palyutkin::<GaussRat>(0).unwrap();
        let spec = AlgebraSpecFile::from_hopf(&h).unwrap();
        let text = spec.emit();
        let back = AlgebraSpecFile::parse(&text).unwrap();
        assert_eq!(back.emit(), text);
        let h2: HopfAlgebra<GaussRat> = back.to_hopf(0).unwrap();
        assert!(h2.coproduct().approx_eq(h.coproduct()) && h2.antipode().approx_eq(h.antipode()));
        assert_eq!(h2.counit(), h.counit());
    }

    #[test]
    fn sqrt3_fields() {
        let h = group_algebra::<Cyclo12>(&FiniteGroup::symmetric3(), 7).unwrap();
        let spec = AlgebraSpecFile::from_hopf(&h).unwrap();
        assert!(verify_hopf(&spec.to_hopf::<Cyclo12>(0).unwrap()).all_pass());
        let f: HopfAlgebra<CF64> = spec.to_hopf(0).unwrap();
        assert!(verify_hopf(&f).all_pass());

        let e = Entry { from: 0, to: vec![0], re: [0, 1], im: [0, 1], re_r3: Some([1, 2]), im_r3: None };
        assert!(matches!(e.value::<GaussRat>("t"), Err(Error::NeedsFieldExtension(_))));
        let x: Cyclo12 = e.value("t").unwrap();
        assert_eq!(x.clone() * x, Cyclo12::from_ratio(3, 4));
        assert_eq!(Entry::new(0, vec![0], &Cyclo12::from_ratio(3, 4)).unwrap().re_r3, None);
    }

    #[test]
    fn canonical_form() {
        let h = function_algebra::<GaussRat>(&FiniteGroup::cyclic(2));
        let mut spec = AlgebraSpecFile::from_hopf(&h).unwrap();
        let canonical = spec.emit();
        spec.antipode.reverse();
        spec.antipode[0].re = [2, 2];
        spec.coproduct.push(Entry { from: 0, to: vec![1, 0], re: [0, 3], im: [0, 1], re_r3: Some([0, 5]), im_r3: None });
        assert_eq!(spec.emit(), canonical);
    }

    #[test]
    fn parse_errors_name_the_entry() {
        let h = function_algebra::<GaussRat>(&FiniteGroup::cyclic(2));
        let mut spec = AlgebraSpecFile::from_hopf(&h).unwrap();
        spec.coproduct[2].to = vec![0, 7];
        let err = AlgebraSpecFile::parse(&serde_json::to_string(&spec).unwrap()).unwrap_err();
        assert!(matches!(&err, Error::Parse { context, .. } if context == "coproduct entry 2"), "{err}");

        let mut spec = AlgebraSpecFile::from_hopf(&h).unwrap();
        spec.antipode[1].im = [1, 0];
        assert!(matches!(AlgebraSpecFile::parse(&serde_json::to_string(&spec).unwrap()), Err(Error::Parse { .. })));

        let err = AlgebraSpecFile::parse("{\n  \"name\": \"x\",\n  \"blocks\": [1,\n}").unwrap_err();
        assert!(matches!(&err, Error::Parse { context, .. } if context.starts_with("line 4")), "{err}");
        assert!(AlgebraSpecFile::parse(r#"{"name": "x", "bogus": 1}"#).is_err());
    }

    #[test]
    fn presets_and_maps() {
        let spec = AlgebraSpecFile::from_preset("kp", "kac_palyutkin", None);
        let text = spec.emit();
        let h: HopfAlgebra<GaussRat> = AlgebraSpecFile::parse(&text).unwrap().to_hopf(0).unwrap();
        assert_eq!(h.shape().dims(), &[1, 1, 1, 1, 2]);

        let id = MapSpecFile::identity("id", 8);
        assert_eq!(MapSpecFile::parse(&id.emit()).unwrap().to_map::<GaussRat>().unwrap(), LinearMap::identity(8));
        let m = MapSpecFile::from_map("kappa", h.antipode()).unwrap();
        let back = MapSpecFile::parse(&m.emit()).unwrap();
        assert_eq!(back.emit(), m.emit());
        assert!(back.to_map::<GaussRat>().unwrap().approx_eq(h.antipode()));
    }
}
