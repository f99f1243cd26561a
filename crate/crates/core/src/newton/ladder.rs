use serde::Serialize;

use super::polygon::{to_multiset, NewtonPolygon, ValuationMultiset};
use crate::error::{Error, Result};
use crate::padic::Rational;
use crate::scalar::Scalar;
use crate::series::TruncatedSeries;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ValuationCount {
    #[serde(serialize_with = "ser_rational")]
    pub valuation: Rational,
    pub count: usize,
}

fn ser_rational<Se: serde::Serializer>(r: &Rational, s: Se) -> std::result::Result<Se::Ok, Se::Error> {
    s.serialize_str(&r.to_string())
}

/// Roots that appear for the first time at one level of a ladder of
/// iterates, read from Newton polygons.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RootLadderLevel {
    pub level: usize,
    pub new_roots: Vec<ValuationCount>,
    pub new_root_count: usize,
    pub cumulative_count: usize,
    /// False if some valuation lost roots relative to the previous level,
    /// which a genuine ladder of iterates never does.
    pub consistent: bool,
}

impl RootLadderLevel {
    pub fn valuations(&self) -> Vec<Rational> {
        self.new_roots.iter().map(|v| v.valuation).collect()
    }
}

/// Turns the cumulative multisets of successive levels into per-level
/// differences.
pub fn ladder_from_multisets(levels: &[ValuationMultiset]) -> Vec<RootLadderLevel> {
    let mut out = Vec::with_capacity(levels.len());
    let empty = ValuationMultiset::new();
    for (k, cur) in levels.iter().enumerate() {
        let prev = if k == 0 { &empty } else { &levels[k - 1] };
        let mut consistent = prev.iter().all(|(v, c)| cur.get(v).copied().unwrap_or(0) >= *c);
        let mut new_roots = Vec::new();
        for (v, c) in cur.iter().rev() {
            let before = prev.get(v).copied().unwrap_or(0);
            if *c > before {
                new_roots.push(ValuationCount { valuation: *v, count: c - before });
            } else if *c < before {
                consistent = false;
            }
        }
        let new_root_count = new_roots.iter().map(|v| v.count).sum();
        out.push(RootLadderLevel {
            level: k + 1,
            new_roots,
            new_root_count,
            cumulative_count: cur.values().sum(),
            consistent,
        });
    }
    out
}

/// Root valuations of `f^{∘k}` (the root at zero stripped) for `k = 1..=n`.
pub fn iterate_ladder<S: Scalar>(f: &TruncatedSeries<S>, n: usize) -> Result<Vec<RootLadderLevel>> {
    let report = f.stability_report()?;
    let noninvertible = report.is_stable && !report.is_invertible;
    if noninvertible && report.weierstrass_degree.is_none() {
        return Err(Error::TruncationTooSmall { needed: f.trunc() + 1, available: f.trunc() });
    }
    if !report.is_stable || !report.is_noninvertible_finite_height {
        return Err(Error::NotNoninvertible(format!("linear coefficient {}", report.derivative_at_zero)));
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let d = report.weierstrass_degree.expect("finite height has a Weierstrass degree");
    let needed = u32::try_from(n)
        .ok()
        .and_then(|n| d.checked_pow(n))
        .ok_or(Error::TruncationTooSmall { needed: usize::MAX, available: f.trunc() })?;
    if f.trunc() < needed {
        return Err(Error::TruncationTooSmall { needed, available: f.trunc() });
    }
    let work = f.truncate(needed);
    let mut it = work.clone();
    let mut levels = Vec::with_capacity(n);
    for k in 1..=n {
        if k > 1 {
            it = work.compose(&it)?;
        }
        let np = NewtonPolygon::of_series(&it, true)?;
        levels.push(to_multiset(&np.root_valuations()));
    }
    Ok(ladder_from_multisets(&levels))
}

/// The Weierstrass degree: an upper bound for the number of roots of `f`
/// in the open unit disk, counted with multiplicity.
pub fn max_small_roots<S: Scalar>(f: &TruncatedSeries<S>) -> Result<usize> {
    f.weierstrass_degree().ok_or(Error::WeierstrassDegreeNotVisible)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::ExtensionSpec;

    fn vc(n: i64, d: i64, count: usize) -> ValuationCount {
        ValuationCount { valuation: Rational::new(n, d), count }
    }

    #[test]
    fn lubin_tate_ladder() {
        let z = ExtensionSpec::<i128>::zp(3, 20).unwrap();
        let f_f = TruncatedSeries::from_ints(&z, &[0, 3, 0, 1], 27);
        let ladder = iterate_ladder(&f_f, 3).unwrap();
        assert_eq!(ladder[0].new_roots, vec![vc(1, 2, 2)]);
        assert_eq!(ladder[1].new_roots, vec![vc(1, 6, 6)]);
        assert_eq!(ladder[2].new_roots, vec![vc(1, 18, 18)]);
        assert_eq!(ladder[2].cumulative_count, 26);
        assert!(iterate_ladder(&f_f, 0).unwrap().is_empty());
    }

    #[test]
    fn condensed_ladder() {
        let z = ExtensionSpec::<i128>::zp(3, 20).unwrap();
        let f = TruncatedSeries::from_ints(&z, &[0, 9, 6, 1], 9);
        let ladder = iterate_ladder(&f, 2).unwrap();
        assert_eq!(ladder[0].new_roots, vec![vc(1, 1, 2)]);
        assert_eq!(ladder[1].new_roots, vec![vc(1, 3, 6)]);
        assert!(ladder.iter().all(|l| l.consistent));
    }

    #[test]
    fn ladder_needs_truncation() {
        let z = ExtensionSpec::<i128>::zp(3, 20).unwrap();
        let f = TruncatedSeries::from_ints(&z, &[0, 9, 6, 1], 8);
        assert_eq!(iterate_ladder(&f, 2).unwrap_err(), Error::TruncationTooSmall { needed: 9, available: 8 });
    }

    #[test]
    fn small_root_bounds() {
        let z = ExtensionSpec::<i128>::zp(3, 20).unwrap();
        assert_eq!(max_small_roots(&TruncatedSeries::from_ints(&z, &[0, 9, 6, 1], 8)).unwrap(), 3);
        assert_eq!(max_small_roots(&TruncatedSeries::from_ints(&z, &[0, 4, 1], 8)).unwrap(), 1);
        assert_eq!(max_small_roots(&TruncatedSeries::from_ints(&z, &[0, 0, 1], 8)).unwrap(), 2);
    }
}
