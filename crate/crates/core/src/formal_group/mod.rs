//! Lubin-Tate formal groups, their endomorphisms, and torsion ladders.

mod multi;

use std::sync::Arc;

use num_bigint::BigUint;
use serde::Serialize;

pub use multi::MultiSeries;

use crate::certificate::{Certificate, Check};
use crate::error::{Error, Result};
use crate::newton::{iterate_ladder, RootLadderLevel};
use crate::padic::{same_ring, ExtensionSpec, Rational, RingElement, Valuation};
use crate::scalar::Scalar;
use crate::series::TruncatedSeries;

/// A Lubin-Tate series: `f = pi x + ...` with `pi` a uniformizer and
/// `f = x^q` modulo the maximal ideal.
#[derive(Clone, Debug)]
pub struct LubinTateData<S: Scalar> {
    pub pi: RingElement<S>,
    pub q: BigUint,
    pub f: TruncatedSeries<S>,
}

impl<S: Scalar> LubinTateData<S> {
    pub fn new(f: TruncatedSeries<S>) -> Result<Self> {
        let spec = f.spec().clone();
        if !f.has_zero_constant() {
            return Err(Error::NotLubinTate("nonzero constant term".into()));
        }
        let pi = f.linear_coefficient();
        let uniformizer = Valuation::ratio(1, spec.ramification_index() as i64);
        if pi.valuation() != uniformizer {
            return Err(Error::NotLubinTate(format!(
                "linear coefficient has valuation {}, a uniformizer has {}",
                pi.valuation(),
                uniformizer
            )));
        }
        let q = spec.residue_cardinality();
        let q_us = usize::try_from(&q).map_err(|_| Error::NotLubinTate("residue field too large".into()))?;
        if f.trunc() < q_us {
            return Err(Error::TruncationTooSmall { needed: q_us, available: f.trunc() });
        }
        for i in 2..=f.trunc() {
            let mut c = f.coeff(i);
            if i == q_us {
                c = &c - &RingElement::one(&spec);
            }
            if !c.valuation().is_positive() {
                return Err(Error::NotLubinTate(format!("f is not x^{q} modulo the maximal ideal at degree {i}")));
            }
        }
        Ok(LubinTateData { pi, q, f })
    }

    pub fn spec(&self) -> &Arc<ExtensionSpec<S>> {
        self.f.spec()
    }
}

/// A one-dimensional commutative formal group law `F(x, y)` known up to
/// total degree `M`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalGroupLaw<S: Scalar> {
    law: MultiSeries<S>,
}

impl<S: Scalar> FormalGroupLaw<S> {
    pub fn from_series(law: MultiSeries<S>) -> Result<Self> {
        if law.nvars() != 2 {
            return Err(Error::MismatchedContext);
        }
        Ok(FormalGroupLaw { law })
    }

    /// The additive law `x + y`.
    pub fn additive(spec: &Arc<ExtensionSpec<S>>, total_degree: usize) -> Self {
        let x = MultiSeries::var(spec, 2, 0, total_degree);
        let y = MultiSeries::var(spec, 2, 1, total_degree);
        FormalGroupLaw { law: x.add(&y).expect("same ring") }
    }

    pub fn law(&self) -> &MultiSeries<S> {
        &self.law
    }

    pub fn spec(&self) -> &Arc<ExtensionSpec<S>> {
        self.law.spec()
    }

    pub fn total_degree(&self) -> usize {
        self.law.trunc()
    }

    /// Coefficient of `x^i y^j`.
    pub fn coeff(&self, i: usize, j: usize) -> RingElement<S> {
        self.law.coeff(&[i, j])
    }

    /// `F(a(x), b(x))` as a one-variable series.
    pub fn add_series(&self, a: &TruncatedSeries<S>, b: &TruncatedSeries<S>) -> Result<TruncatedSeries<S>> {
        let m = self.total_degree().min(a.trunc()).min(b.trunc());
        let law = self.law.truncate(m);
        let sa = MultiSeries::from_univariate(a, 1, 0, m);
        let sb = MultiSeries::from_univariate(b, 1, 0, m);
        let out = law.substitute(&[sa, sb])?;
        let mut s = TruncatedSeries::zero(self.spec(), m);
        for i in 0..=m {
            s.set_coeff(i, &out.coeff(&[i]));
        }
        Ok(s)
    }
}

/// Internal precision used by the degree-by-degree solvers.
fn working_spec<S: Scalar>(spec: &Arc<ExtensionSpec<S>>, extra: usize) -> Result<Arc<ExtensionSpec<S>>> {
    let digits = spec.precision() + extra as u32;
    spec.with_precision(digits)
}

/// The unique formal group law `F` with `F = x + y` modulo degree 2 and
/// `f(F(x, y)) = F(f(x), f(y))`, built one homogeneous degree at a time:
/// the degree-`r` part `G_r` solves `(pi^r - pi) G_r = E_r`, where `E_r`
/// is the degree-`r` part of `f(F_{<r}) - F_{<r}(f(x), f(y))`. Each division
/// costs at most one digit, so the work happens at precision `N + M`.
pub fn lubin_tate_group<S: Scalar>(lt: &LubinTateData<S>, total_degree: usize) -> Result<FormalGroupLaw<S>> {
    let spec = lt.spec().clone();
    let m = total_degree;
    if lt.f.trunc() < m {
        return Err(Error::TruncationTooSmall { needed: m, available: lt.f.trunc() });
    }
    let ispec = working_spec(&spec, m)?;
    let f = lt.f.truncate(m).lift_balanced(&ispec);
    let pi = lt.pi.lift_balanced(&ispec);
    let mut law = FormalGroupLaw::additive(&ispec, m).law;
    for r in 2..=m {
        let fr = f.truncate(r);
        let current = law.truncate(r);
        let lhs = current.apply(&fr)?;
        let fx = MultiSeries::from_univariate(&fr, 2, 0, r);
        let fy = MultiSeries::from_univariate(&fr, 2, 1, r);
        let rhs = current.substitute(&[fx, fy])?;
        let e = lhs.sub(&rhs)?;
        let denom = &pi.pow(r as u64) - &pi;
        for (exps, c) in e.homogeneous_part(r) {
            let (g, _) = c.exact_div(&denom)?;
            law.set_coeff(&exps, &g);
        }
    }
    Ok(FormalGroupLaw { law: law.change_precision(&spec) })
}

/// The unique series `[a]` with `[a] = a x` modulo degree 2 and
/// `dst.f ∘ [a] = [a] ∘ src.f`. Both series must share the uniformizer.
pub fn lt_hom<S: Scalar>(
    a: &RingElement<S>,
    src: &LubinTateData<S>,
    dst: &LubinTateData<S>,
    trunc: usize,
) -> Result<TruncatedSeries<S>> {
    let spec = src.spec().clone();
    if !same_ring(&spec, dst.spec()) || !same_ring(&spec, a.spec()) {
        return Err(Error::MismatchedContext);
    }
    if src.pi != dst.pi {
        return Err(Error::IncompatibleUniformizers);
    }
    let m = trunc;
    let available = src.f.trunc().min(dst.f.trunc());
    if available < m {
        return Err(Error::TruncationTooSmall { needed: m, available });
    }
    let ispec = working_spec(&spec, m)?;
    let fs = src.f.truncate(m).lift_balanced(&ispec);
    let fd = dst.f.truncate(m).lift_balanced(&ispec);
    let pi = src.pi.lift_balanced(&ispec);
    let mut h = TruncatedSeries::zero(&ispec, m);
    if m >= 1 {
        h.set_coeff(1, &a.lift_balanced(&ispec));
    }
    for r in 2..=m {
        let hr = h.truncate(r);
        let e = fd.truncate(r).compose(&hr)?.sub(&hr.compose(&fs.truncate(r))?)?;
        let denom = &pi.pow(r as u64) - &pi;
        let (c, _) = e.coeff(r).exact_div(&denom)?;
        h.set_coeff(r, &c);
    }
    Ok(h.change_precision(&spec))
}

/// `[a]_f`, the endomorphism of the Lubin-Tate group of `f` attached to `a`.
pub fn lt_endomorphism<S: Scalar>(
    a: &RingElement<S>,
    lt: &LubinTateData<S>,
    trunc: usize,
) -> Result<TruncatedSeries<S>> {
    lt_hom(a, lt, lt, trunc)
}

fn first_failure<S: Scalar>(diff: &MultiSeries<S>) -> Option<String> {
    diff.first_nonzero().map(|(e, c)| format!("first nonzero defect at exponent {e:?}: {c}"))
}

/// Identity, commutativity and associativity of `F` to total degree `M`.
pub fn verify_group_law<S: Scalar>(law: &FormalGroupLaw<S>) -> Certificate {
    let mut cert = Certificate::new();
    let m = law.total_degree();
    let spec = law.spec();
    let mut identity_issue = None;
    for k in 0..=m {
        let expected = if k == 1 { RingElement::one(spec) } else { RingElement::zero(spec) };
        for e in [[k, 0], [0, k]] {
            if identity_issue.is_none() && law.law.coeff(&e) != expected {
                identity_issue = Some(format!("coefficient of x^{} y^{} is {}", e[0], e[1], law.law.coeff(&e)));
            }
        }
    }
    cert.push(Check::from_bool(
        "identity",
        identity_issue.is_none(),
        identity_issue.unwrap_or_else(|| format!("F(x,0) = x and F(0,y) = y to degree {m}")),
    ));

    let swapped = law.law.swap01();
    let comm = law.law.sub(&swapped).expect("same ring");
    let issue = first_failure(&comm);
    cert.push(Check::from_bool(
        "commutativity",
        issue.is_none(),
        issue.unwrap_or_else(|| format!("F(x,y) = F(y,x) to degree {m}")),
    ));

    let x = MultiSeries::var(spec, 3, 0, m);
    let y = MultiSeries::var(spec, 3, 1, m);
    let z = MultiSeries::var(spec, 3, 2, m);
    let assoc =
        law.law.substitute(&[x.clone(), y.clone()]).and_then(|xy| law.law.substitute(&[xy, z.clone()])).and_then(
            |left| {
                let yz = law.law.substitute(&[y, z])?;
                let right = law.law.substitute(&[x, yz])?;
                left.sub(&right)
            },
        );
    let check = match assoc {
        Ok(diff) => {
            let issue = first_failure(&diff);
            Check::from_bool(
                "associativity",
                issue.is_none(),
                issue.unwrap_or_else(|| format!("F(F(x,y),z) = F(x,F(y,z)) to degree {m}")),
            )
        }
        Err(e) => Check::fail("associativity", e.to_string()),
    };
    cert.push(check);
    cert
}

/// Whether `e(F(x,y)) = F(e(x), e(y))` to the common truncation.
pub fn verify_endomorphism<S: Scalar>(law: &FormalGroupLaw<S>, e: &TruncatedSeries<S>) -> Check {
    let name = "endomorphism";
    if !same_ring(law.spec(), e.spec()) {
        return Check::fail(name, Error::MismatchedContext.to_string());
    }
    if !e.has_zero_constant() {
        return Check::fail(name, Error::NonzeroConstantTerm.to_string());
    }
    let m = law.total_degree().min(e.trunc());
    let f = law.law.truncate(m);
    let result = f.apply(&e.truncate(m)).and_then(|left| {
        let ex = MultiSeries::from_univariate(e, 2, 0, m);
        let ey = MultiSeries::from_univariate(e, 2, 1, m);
        left.sub(&f.substitute(&[ex, ey])?)
    });
    match result {
        Ok(diff) => match first_failure(&diff) {
            None => Check::pass(name, format!("e(F(x,y)) = F(e(x),e(y)) to degree {m}")),
            Some(issue) => Check::fail(name, issue),
        },
        Err(err) => Check::fail(name, err.to_string()),
    }
}

/// One level of a torsion ladder with its closed-form prediction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TorsionLevel {
    pub computed: RootLadderLevel,
    pub predicted_count: usize,
    #[serde(serialize_with = "ser_rational")]
    pub predicted_valuation: Rational,
    pub matches: bool,
}

fn ser_rational<Se: serde::Serializer>(r: &Rational, s: Se) -> std::result::Result<Se::Ok, Se::Error> {
    s.serialize_str(&r.to_string())
}

/// Torsion valuations of the Lubin-Tate group of `f` to depth `n`, checked
/// against `q^k - q^{k-1}` new points of valuation `v(pi) / (q^{k-1}(q-1))`.
pub fn torsion_ladder<S: Scalar>(lt: &LubinTateData<S>, n: usize) -> Result<Vec<TorsionLevel>> {
    let ladder = iterate_ladder(&lt.f, n)?;
    let q = usize::try_from(&lt.q).map_err(|_| Error::NotLubinTate("residue field too large".into()))?;
    let v_pi = lt.pi.valuation().finite().expect("uniformizer is nonzero");
    Ok(ladder
        .into_iter()
        .map(|level| {
            let k = level.level as u32;
            let predicted_count = q.pow(k) - q.pow(k - 1);
            let predicted_valuation = v_pi / Rational::from_integer((q.pow(k - 1) * (q - 1)) as i64);
            let matches = level.consistent
                && level.new_roots.len() == 1
                && level.new_roots[0].count == predicted_count
                && level.new_roots[0].valuation == predicted_valuation;
            TorsionLevel { computed: level, predicted_count, predicted_valuation, matches }
        })
        .collect())
}
