//! Stable dynamical systems: condensation, isogenies, point ladders, fixed
//! points, root permutations and package verification.

mod fixed;
mod galois;
mod ladders;
mod package;

pub use fixed::{fixed_point_check, preperiodic_is_periodic, rigidity_check, ZpIndex};
pub use galois::{
    frobenius_polynomial, induced_root_permutation, realizing_polynomial, FrobeniusMap, PermutationReport, PointMap,
};
pub use ladders::{compare_valuation_sets, ladder_compare, preper_ladder, LadderComparison};
pub use package::{package_verify, DynamicalPackage, LadderDepths};

use crate::certificate::{Certificate, Check};
use crate::error::{Error, Result};
use crate::padic::RingElement;
use crate::scalar::Scalar;
use crate::series::TruncatedSeries;

/// The condensation `g` of `f` with `g(x^d) = f(x)^d`, so that `h = x^d`
/// satisfies `h ∘ f = g ∘ h`.
///
/// With `f` known to degree `M`, `f^d = x^d (f/x)^d` is known to degree
/// `M - 1 + d`, so `g` is known to degree `1 + (M - 1)/d`.
pub fn condense<S: Scalar>(f: &TruncatedSeries<S>, d: usize) -> Result<TruncatedSeries<S>> {
    assert!(d >= 1, "condensation degree must be positive");
    if !f.has_zero_constant() {
        return Err(Error::NonzeroConstantTerm);
    }
    if f.trunc() == 0 {
        return Ok(TruncatedSeries::zero(f.spec(), 0));
    }
    let quotient = f.strip_one_x();
    let power = quotient.pow(d as u32);
    let full = power.expand_into(d, f.trunc() - 1 + d);
    full.compress_exponents(d)
}

impl<S: Scalar> TruncatedSeries<S> {
    /// `f / x` for `f` without constant term, known to degree `M - 1`.
    fn strip_one_x(&self) -> Self {
        let mut out = Self::zero(self.spec(), self.trunc() - 1);
        for i in 1..=self.trunc() {
            out.set_coeff(i - 1, &self.coeff(i));
        }
        out
    }

    /// `x^k self`, known to degree `trunc`.
    fn expand_into(&self, k: usize, trunc: usize) -> Self {
        let mut out = Self::zero(self.spec(), trunc);
        for i in 0..=self.trunc() {
            if i + k <= trunc {
                out.set_coeff(i + k, &self.coeff(i));
            }
        }
        out
    }
}

/// Checks `h ∘ f_src = f_dst ∘ h` and the structural fact `h(0) = 0`.
pub fn verify_isogeny<S: Scalar>(
    h: &TruncatedSeries<S>,
    f_src: &TruncatedSeries<S>,
    f_dst: &TruncatedSeries<S>,
) -> Certificate {
    let mut cert = Certificate::new();
    cert.push(Check::from_bool(
        "h(0) = 0",
        h.has_zero_constant(),
        if h.has_zero_constant() { String::new() } else { format!("h(0) = {}", h.constant_term()) },
    ));
    let result = h.compose(f_src).and_then(|left| left.sub(&f_dst.compose(h)?));
    cert.push(match result {
        Ok(diff) => match diff.x_order() {
            None => Check::pass("intertwining", format!("h ∘ f = g ∘ h to degree {}", diff.trunc())),
            Some(i) => Check::fail("intertwining", format!("first defect at degree {i}: {}", diff.coeff(i))),
        },
        Err(e) => Check::fail("intertwining", e.to_string()),
    });
    cert
}

/// For each `alpha` that is a level-`n` torsion point of `f_src`, checks
/// that `h(alpha)` is a level-`n` torsion point of `f_dst`. The detail of
/// each check records the image.
pub fn torsion_image_check<S: Scalar>(
    h: &TruncatedSeries<S>,
    f_src: &TruncatedSeries<S>,
    f_dst: &TruncatedSeries<S>,
    roots: &[RingElement<S>],
    n: u64,
) -> Result<Certificate> {
    let src_iter = f_src.iterate(n)?;
    let dst_iter = f_dst.iterate(n)?;
    let mut offenders = Vec::new();
    for (i, alpha) in roots.iter().enumerate() {
        let ok = if alpha.is_zero() {
            true
        } else {
            match src_iter.evaluate(alpha) {
                Ok(ev) => ev.vanishes(),
                Err(Error::NotInMaximalIdeal(_)) => false,
                Err(e) => return Err(e),
            }
        };
        if !ok {
            offenders.push(i);
        }
    }
    if !offenders.is_empty() {
        return Err(Error::NotATorsionPoint(offenders));
    }
    let mut cert = Certificate::new();
    for (i, alpha) in roots.iter().enumerate() {
        let name = format!("torsion image {i}");
        if alpha.is_zero() {
            cert.push(Check::pass(name, "h(0) = 0"));
            continue;
        }
        let image = h.evaluate(alpha)?;
        if !image.value.valuation().is_positive() {
            cert.push(Check::fail(name, format!("h(alpha) = {} leaves the maximal ideal", image.value)));
            continue;
        }
        let at = dst_iter.evaluate(&image.value)?;
        let precision = image.precision.min(at.precision);
        let ok = at.value.valuation().at_least(precision);
        cert.push(Check::from_bool(
            name,
            ok,
            format!(
                "h(alpha) = {}, f_dst^{n}(h(alpha)) has valuation {} (needs {precision})",
                image.value,
                at.value.valuation()
            ),
        ));
    }
    Ok(cert)
}
