//! JSON documents for rings, series, formal groups and packages.
//!
//! Coefficients are decimal strings so that no integer width limits apply.
//! Inputs also accept plain JSON integers.

use std::sync::Arc;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::dynamics::DynamicalPackage;
use crate::error::{Error, Result};
use crate::formal_group::{lubin_tate_group, FormalGroupLaw, LubinTateData, MultiSeries};
use crate::padic::{ExtensionKind, ExtensionSpec, PrimeContext, RingElement};
use crate::scalar::Scalar;
use crate::series::TruncatedSeries;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContextJson {
    pub p: u64,
    pub precision: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<Vec<Int>>,
    #[serde(default = "trivial_kind")]
    pub kind: String,
}

fn trivial_kind() -> String {
    "trivial".into()
}

/// An integer written as a decimal string or a JSON number.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Int {
    Str(String),
    Num(i64),
}

impl Int {
    pub fn parse(&self) -> Result<BigInt> {
        match self {
            Int::Str(s) => s.trim().parse().map_err(|_| Error::Parse(format!("not an integer: {s:?}"))),
            Int::Num(n) => Ok(BigInt::from(*n)),
        }
    }
}

impl From<&BigInt> for Int {
    fn from(v: &BigInt) -> Self {
        Int::Str(v.to_string())
    }
}

/// A coefficient: one integer for base-ring elements, `d` integers for
/// extension elements.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CoeffJson {
    Base(Int),
    Ext(Vec<Int>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesJson {
    pub context: ContextJson,
    pub trunc: usize,
    pub coeffs: Vec<CoeffJson>,
}

/// `coeffs[k][i]` is the coefficient of `x^i y^(k-i)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormalGroupJson {
    pub context: ContextJson,
    pub total_degree: usize,
    pub coeffs: Vec<Vec<CoeffJson>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PackageJson {
    pub f: SeriesJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub u: Option<SeriesJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h: Option<SeriesJson>,
    /// A Lubin-Tate series; the group law is built from it unless
    /// `formal_group` is given.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lubin_tate_f: Option<SeriesJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub formal_group: Option<FormalGroupJson>,
    /// Total degree for a group law built from `lubin_tate_f`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group_degree: Option<usize>,
    #[serde(rename = "f_F", default, skip_serializing_if = "Option::is_none")]
    pub f_f: Option<SeriesJson>,
    #[serde(rename = "u_F", default, skip_serializing_if = "Option::is_none")]
    pub u_f: Option<SeriesJson>,
}

/// Group laws built from `lubin_tate_f` stop at this total degree unless
/// the package says otherwise.
pub const DEFAULT_GROUP_DEGREE: usize = 12;

pub fn context_from_json<S: Scalar>(c: &ContextJson) -> Result<Arc<ExtensionSpec<S>>> {
    let base = PrimeContext::new(c.p, c.precision)?;
    let kind = ExtensionKind::parse(&c.kind).ok_or_else(|| Error::Parse(format!("unknown ring kind {:?}", c.kind)))?;
    match (kind, &c.modulus) {
        (ExtensionKind::Trivial, None) => ExtensionSpec::trivial(base),
        (_, Some(m)) => {
            let m = m.iter().map(Int::parse).collect::<Result<Vec<_>>>()?;
            ExtensionSpec::new(base, kind, &m)
        }
        (_, None) => Err(Error::Parse(format!("{} ring needs a modulus", c.kind))),
    }
}

pub fn context_to_json<S: Scalar>(spec: &ExtensionSpec<S>) -> ContextJson {
    let modulus = match spec.kind() {
        ExtensionKind::Trivial => None,
        _ => Some(spec.modulus().iter().map(|c| Int::from(&balance(c, spec))).collect()),
    };
    ContextJson { p: spec.p(), precision: spec.precision(), modulus, kind: spec.kind().name().into() }
}

fn balance<S: Scalar>(c: &S, spec: &ExtensionSpec<S>) -> BigInt {
    let pn = spec.pn().to_bigint();
    let c = c.to_bigint();
    if c > &pn / 2 {
        c - pn
    } else {
        c
    }
}

fn coeff_from_json<S: Scalar>(spec: &Arc<ExtensionSpec<S>>, c: &CoeffJson) -> Result<RingElement<S>> {
    match c {
        CoeffJson::Base(v) => Ok(RingElement::from_bigint(spec, &v.parse()?)),
        CoeffJson::Ext(vs) => {
            let vs = vs.iter().map(Int::parse).collect::<Result<Vec<_>>>()?;
            RingElement::from_bigints(spec, &vs)
        }
    }
}

fn coeff_to_json<S: Scalar>(c: &RingElement<S>) -> CoeffJson {
    let b = c.balanced();
    if c.spec().degree() == 1 {
        CoeffJson::Base(Int::from(&b[0]))
    } else {
        CoeffJson::Ext(b.iter().map(Int::from).collect())
    }
}

/// Parses a series in its own ring.
pub fn series_from_json<S: Scalar>(s: &SeriesJson) -> Result<TruncatedSeries<S>> {
    let spec = context_from_json(&s.context)?;
    series_in(&spec, s)
}

/// Parses a series, requiring it to live over `spec`.
pub fn series_in<S: Scalar>(spec: &Arc<ExtensionSpec<S>>, s: &SeriesJson) -> Result<TruncatedSeries<S>> {
    if *context_from_json::<S>(&s.context)? != **spec {
        return Err(Error::MismatchedContext);
    }
    if s.coeffs.len() > s.trunc + 1 {
        return Err(Error::Parse(format!("{} coefficients exceed truncation {}", s.coeffs.len(), s.trunc)));
    }
    let coeffs = s.coeffs.iter().map(|c| coeff_from_json(spec, c)).collect::<Result<Vec<_>>>()?;
    TruncatedSeries::from_elements(spec, &coeffs, s.trunc)
}

/// Trailing zero coefficients are dropped.
pub fn series_to_json<S: Scalar>(f: &TruncatedSeries<S>) -> SeriesJson {
    let len = f.degree().map_or(0, |d| d + 1);
    SeriesJson {
        context: context_to_json(f.spec()),
        trunc: f.trunc(),
        coeffs: (0..len).map(|i| coeff_to_json(&f.coeff(i))).collect(),
    }
}

pub fn formal_group_from_json<S: Scalar>(g: &FormalGroupJson) -> Result<FormalGroupLaw<S>> {
    let spec = context_from_json(&g.context)?;
    let m = g.total_degree;
    if g.coeffs.len() > m + 1 {
        return Err(Error::Parse(format!("{} rows exceed total degree {m}", g.coeffs.len())));
    }
    let mut law = MultiSeries::zero(&spec, 2, m);
    for (k, row) in g.coeffs.iter().enumerate() {
        if row.len() != k + 1 {
            return Err(Error::Parse(format!("row {k} has {} entries, expected {}", row.len(), k + 1)));
        }
        for (i, c) in row.iter().enumerate() {
            law.set_coeff(&[i, k - i], &coeff_from_json(&spec, c)?);
        }
    }
    FormalGroupLaw::from_series(law)
}

pub fn formal_group_to_json<S: Scalar>(law: &FormalGroupLaw<S>) -> FormalGroupJson {
    let m = law.total_degree();
    FormalGroupJson {
        context: context_to_json(law.spec()),
        total_degree: m,
        coeffs: (0..=m).map(|k| (0..=k).map(|i| coeff_to_json(&law.coeff(i, k - i))).collect()).collect(),
    }
}

/// Builds a package. Every series must live over the ring of `f`.
pub fn package_from_json<S: Scalar>(p: &PackageJson) -> Result<DynamicalPackage<S>> {
    let f = series_from_json::<S>(&p.f)?;
    let spec = f.spec().clone();
    let opt = |s: &Option<SeriesJson>| s.as_ref().map(|s| series_in(&spec, s)).transpose();
    let lt_f = opt(&p.lubin_tate_f)?;
    let law = match (&p.formal_group, &lt_f) {
        (Some(g), _) => {
            let law = formal_group_from_json::<S>(g)?;
            if **law.spec() != *spec {
                return Err(Error::MismatchedContext);
            }
            Some(law)
        }
        (None, Some(lt)) => {
            let degree = p.group_degree.unwrap_or(DEFAULT_GROUP_DEGREE).min(lt.trunc());
            Some(lubin_tate_group(&LubinTateData::new(lt.clone())?, degree)?)
        }
        (None, None) => None,
    };
    let f_f = opt(&p.f_f)?.or(lt_f);
    Ok(DynamicalPackage { f, u: opt(&p.u)?, law, f_f, u_f: opt(&p.u_f)?, h: opt(&p.h)? })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formal_group::lubin_tate_group;

    #[test]
    fn series_round_trip() {
        let z = ExtensionSpec::<i128>::zp(3, 20).unwrap();
        let f = TruncatedSeries::from_ints(&z, &[0, 9, -6, 1], 32);
        let doc = series_to_json(&f);
        let text = serde_json::to_string(&doc).unwrap();
        assert_eq!(
            text,
            r#"{"context":{"p":3,"precision":20,"kind":"trivial"},"trunc":32,"coeffs":["0","9","-6","1"]}"#
        );
        let back: SeriesJson = serde_json::from_str(&text).unwrap();
        assert_eq!(series_from_json::<i128>(&back).unwrap(), f);
    }

    #[test]
    fn extension_round_trip() {
        let ctx = PrimeContext::new(3, 20).unwrap();
        let e = ExtensionSpec::<i128>::eisenstein(ctx, &[3, 0, 1].map(BigInt::from)).unwrap();
        let t = RingElement::generator(&e);
        let f = TruncatedSeries::from_elements(&e, &[RingElement::zero(&e), t.clone(), -&t], 8).unwrap();
        let doc = series_to_json(&f);
        let text = serde_json::to_string(&doc).unwrap();
        assert!(text.contains(r#""modulus":["3","0","1"],"kind":"eisenstein""#), "{text}");
        assert!(text.contains(r#"[["0","0"],["0","1"],["0","-1"]]"#), "{text}");
        let back = series_from_json::<i128>(&serde_json::from_str(&text).unwrap()).unwrap();
        assert_eq!(back, f);
        let big = series_from_json::<BigInt>(&doc).unwrap();
        assert_eq!(series_to_json(&big), doc);
    }

    #[test]
    fn plain_numbers_accepted() {
        let doc: SeriesJson =
            serde_json::from_str(r#"{"context":{"p":3,"precision":5},"trunc":4,"coeffs":[0,3,0,1]}"#).unwrap();
        let f = series_from_json::<i128>(&doc).unwrap();
        assert_eq!(f.int_coeffs()[1], BigInt::from(3));
    }

    #[test]
    fn malformed() {
        let bad: SeriesJson =
            serde_json::from_str(r#"{"context":{"p":3,"precision":5},"trunc":1,"coeffs":[0,3,0,1]}"#).unwrap();
        assert!(matches!(series_from_json::<i128>(&bad), Err(Error::Parse(_))));
        let bad: SeriesJson =
            serde_json::from_str(r#"{"context":{"p":4,"precision":5},"trunc":4,"coeffs":[0]}"#).unwrap();
        assert_eq!(series_from_json::<i128>(&bad).unwrap_err(), Error::NotPrime(4));
    }

    #[test]
    fn formal_group_round_trip() {
        let z = ExtensionSpec::<i128>::zp(3, 3).unwrap();
        let lt = LubinTateData::new(TruncatedSeries::from_ints(&z, &[0, 3, 0, 1], 4)).unwrap();
        let law = lubin_tate_group(&lt, 4).unwrap();
        let doc = formal_group_to_json(&law);
        // 17 is written through its balanced representative modulo 27.
        assert_eq!(doc.coeffs[3][1], CoeffJson::Base(Int::Str("-10".into())));
        let text = serde_json::to_string(&doc).unwrap();
        let back = formal_group_from_json::<i128>(&serde_json::from_str(&text).unwrap()).unwrap();
        assert_eq!(back, law);
    }

    #[test]
    fn package_from_lubin_tate() {
        let z = ExtensionSpec::<i128>::zp(3, 10).unwrap();
        let s = |c: &[i64]| series_to_json(&TruncatedSeries::from_ints(&z, c, 16));
        let doc = PackageJson {
            f: s(&[0, 9, 6, 1]),
            u: Some(s(&[0, 4, 1])),
            h: Some(s(&[0, 0, 1])),
            lubin_tate_f: Some(s(&[0, 3, 0, 1])),
            formal_group: None,
            group_degree: Some(6),
            f_f: None,
            u_f: None,
        };
        let text = serde_json::to_string(&doc).unwrap();
        let pkg = package_from_json::<i128>(&serde_json::from_str(&text).unwrap()).unwrap();
        assert_eq!(pkg.law.as_ref().unwrap().total_degree(), 6);
        assert!(pkg.f_f.is_some());
    }
}
