use std::fmt;

use num_bigint::BigInt;

use crate::certificate::{Certificate, Check};
use crate::error::{Error, Result};
use crate::newton::Polynomial;
use crate::padic::{Rational, RingElement};
use crate::scalar::Scalar;
use crate::series::TruncatedSeries;

/// An exponent in `Z_p` given by its residue modulo `p^k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZpIndex {
    pub z: BigInt,
    pub k: u32,
}

impl ZpIndex {
    pub fn new(z: impl Into<BigInt>, k: u32) -> Self {
        ZpIndex { z: z.into(), k }
    }

    /// A nonnegative integer, read with enough digits to be exact.
    pub fn exact(z: u64, p: u64) -> Self {
        let mut k = 1;
        let mut pk = p as u128;
        while pk <= z as u128 {
            pk *= p as u128;
            k += 1;
        }
        ZpIndex { z: BigInt::from(z), k }
    }
}

impl fmt::Display for ZpIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod p^{}", self.z, self.k)
    }
}

/// For a fixed point `lambda` of `u` in the maximal ideal, checks that
/// `lambda` is fixed by `u^{∘z}` for each supplied `z`.
pub fn fixed_point_check<S: Scalar>(
    u: &TruncatedSeries<S>,
    lambda: &RingElement<S>,
    exponents: &[ZpIndex],
) -> Result<Certificate> {
    let v = lambda.valuation();
    if !v.is_positive() {
        return Err(Error::NotInMaximalIdeal(v));
    }
    if !u.evaluate(lambda)?.agrees_with(lambda) {
        return Err(Error::NotAFixedPoint);
    }
    let mut cert = Certificate::new();
    for z in exponents {
        let it = u.padic_iterate(&z.z, z.k)?;
        let ev = it.series.evaluate(lambda)?;
        let ok = ev.agrees_with(lambda);
        cert.push(Check::from_bool(
            format!("u^({z})(lambda) = lambda"),
            ok,
            format!("value {} at guaranteed precision {}", ev.value, ev.precision),
        ));
    }
    Ok(cert)
}

/// For invertible `u` and a point with `u^{∘m}(alpha) = u^{∘n}(alpha)`
/// (`m > n`), checks that `alpha` is periodic: `u^{∘(m-n)}(alpha) = alpha`.
pub fn preperiodic_is_periodic<S: Scalar>(
    u: &TruncatedSeries<S>,
    alpha: &RingElement<S>,
    m: u64,
    n: u64,
) -> Result<Option<Check>> {
    assert!(m > n);
    let um = u.iterate(m)?.evaluate(alpha)?;
    let un = u.iterate(n)?.evaluate(alpha)?;
    let precision = um.precision.min(un.precision);
    if !(&um.value - &un.value).valuation().at_least(precision) {
        return Ok(None);
    }
    let period = u.iterate(m - n)?.evaluate(alpha)?;
    Ok(Some(Check::from_bool(
        "preperiodic point is periodic",
        period.agrees_with(alpha),
        format!("u^{}(alpha) = {}", m - n, period.value),
    )))
}

/// Rigidity in finite form: two polynomials that agree at more points of
/// positive valuation than the small-root bound of their difference must
/// coincide. Counts the agreements among `points` against the bound. Points
/// closer than half the working precision count once, matching the
/// resolution at which roots are separated.
pub fn rigidity_check<S: Scalar>(a: &Polynomial<S>, b: &Polynomial<S>, points: &[RingElement<S>]) -> Result<Check> {
    let diff = a.sub(b)?;
    let tolerance = diff.spec().horizon() / Rational::from_integer(2);
    let mut agreed: Vec<&RingElement<S>> = Vec::new();
    for pt in points {
        if !pt.valuation().is_positive() || !diff.base_change(pt.spec())?.eval(pt).is_zero() {
            continue;
        }
        if agreed.iter().all(|q| !(*q - pt).valuation().at_least(tolerance)) {
            agreed.push(pt);
        }
    }
    let agreements = agreed.len();
    if diff.is_zero() {
        return Ok(Check::pass("rigidity", format!("identical polynomials, {agreements} agreements")));
    }
    let bound = diff.small_root_bound().expect("nonzero difference");
    Ok(Check::from_bool("rigidity", agreements <= bound, format!("{agreements} agreements, bound {bound}")))
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::padic::ExtensionSpec;

    fn zp(n: u32) -> Arc<ExtensionSpec<i128>> {
        ExtensionSpec::zp(3, n).unwrap()
    }

    #[test]
    fn fixed_points_of_u() {
        let z = zp(20);
        let u = TruncatedSeries::from_ints(&z, &[0, 4, 1], 32);
        let lambda = RingElement::from_int(&z, -3);
        let zs = [ZpIndex::exact(2, 3), ZpIndex::exact(3, 3), ZpIndex::exact(9, 3), ZpIndex::new(-1, 6)];
        let cert = fixed_point_check(&u, &lambda, &zs).unwrap();
        assert!(cert.passed(), "{cert}");
        assert!(fixed_point_check(&u, &RingElement::zero(&z), &zs).unwrap().passed());
        assert!(matches!(fixed_point_check(&u, &RingElement::one(&z), &zs), Err(Error::NotInMaximalIdeal(_))));
        assert_eq!(fixed_point_check(&u, &RingElement::from_int(&z, 3), &zs).unwrap_err(), Error::NotAFixedPoint);
    }

    #[test]
    fn exact_indices() {
        assert_eq!(ZpIndex::exact(9, 3).k, 3);
        assert_eq!(ZpIndex::exact(8, 3).k, 2);
        assert_eq!(ZpIndex::exact(0, 3).k, 1);
    }

    #[test]
    fn periodic_points() {
        let z = zp(20);
        let u = TruncatedSeries::from_ints(&z, &[0, 4, 1], 32);
        let check = preperiodic_is_periodic(&u, &RingElement::from_int(&z, -3), 5, 2).unwrap().unwrap();
        assert!(check.status == crate::certificate::Status::Pass);
        assert!(preperiodic_is_periodic(&u, &RingElement::from_int(&z, 3), 2, 1).unwrap().is_none());
    }

    #[test]
    fn rigidity() {
        let z = zp(20);
        let a = Polynomial::from_ints(&z, &[0, 9, 6, 1]);
        let b = Polynomial::from_ints(&z, &[0, 0, 0, 0]);
        let pts: Vec<_> = [0, -3, 3, 9].iter().map(|&c| RingElement::from_int(&z, c)).collect();
        let check = rigidity_check(&a, &b, &pts).unwrap();
        assert_eq!(check.status, crate::certificate::Status::Pass);
        assert_eq!(check.detail, "2 agreements, bound 3");
        // A non-primitive difference still has a bound.
        let c = Polynomial::from_ints(&z, &[0, 9, 3]);
        let check = rigidity_check(&c, &b, &pts).unwrap();
        assert_eq!(check.detail, "2 agreements, bound 2");
    }
}
