use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::newton::{iterate_ladder, ladder_from_multisets, to_multiset, NewtonPolygon, RootLadderLevel};
use crate::padic::{same_ring, Rational};
use crate::scalar::Scalar;
use crate::series::TruncatedSeries;

/// Root valuations of `u^{∘p^k}(x) - x` for `k = 0..=m`, the root at zero
/// stripped. Level `k` lists the points of exact period dividing `p^k` that
/// did not appear at level `k - 1`.
pub fn preper_ladder<S: Scalar>(u: &TruncatedSeries<S>, m: usize) -> Result<Vec<RootLadderLevel>> {
    let report = u.stability_report()?;
    if !report.is_invertible {
        return Err(Error::NotInvertible(report.derivative_at_zero.valuation()));
    }
    let p = u.spec().p();
    let x = TruncatedSeries::identity(u.spec(), u.trunc());
    let mut power = u.clone();
    let mut levels = Vec::with_capacity(m + 1);
    for k in 0..=m {
        if k > 0 {
            power = power.iterate(p)?;
        }
        let w = power.sub(&x)?;
        if w.is_zero() {
            return Err(Error::AllPointsFixed);
        }
        let np = NewtonPolygon::of_series(&w, true).map_err(|e| match e {
            Error::WeierstrassDegreeNotVisible => {
                Error::TruncationTooSmall { needed: u.trunc() + 1, available: u.trunc() }
            }
            other => other,
        })?;
        levels.push(to_multiset(&np.root_valuations()));
    }
    let mut ladder = ladder_from_multisets(&levels);
    for level in &mut ladder {
        level.level -= 1;
    }
    Ok(ladder)
}

/// Valuation sets of a torsion ladder and a periodic-point ladder.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LadderComparison {
    #[serde(serialize_with = "ser_set")]
    pub torsion: BTreeSet<Rational>,
    #[serde(serialize_with = "ser_set")]
    pub periodic: BTreeSet<Rational>,
    #[serde(serialize_with = "ser_set")]
    pub only_torsion: BTreeSet<Rational>,
    #[serde(serialize_with = "ser_set")]
    pub only_periodic: BTreeSet<Rational>,
    /// True when the two sets coincide on the computed range.
    pub agree: bool,
    /// True when every periodic valuation is also a torsion valuation.
    pub periodic_within_torsion: bool,
}

fn ser_set<Se: serde::Serializer>(set: &BTreeSet<Rational>, s: Se) -> std::result::Result<Se::Ok, Se::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(set.len()))?;
    for r in set.iter().rev() {
        seq.serialize_element(&r.to_string())?;
    }
    seq.end()
}

fn valuation_set(ladder: &[RootLadderLevel]) -> BTreeSet<Rational> {
    ladder.iter().flat_map(|l| l.valuations()).collect()
}

pub fn compare_valuation_sets(torsion: &[RootLadderLevel], periodic: &[RootLadderLevel]) -> LadderComparison {
    let t = valuation_set(torsion);
    let p = valuation_set(periodic);
    let only_torsion: BTreeSet<_> = t.difference(&p).copied().collect();
    let only_periodic: BTreeSet<_> = p.difference(&t).copied().collect();
    LadderComparison {
        agree: only_torsion.is_empty() && only_periodic.is_empty(),
        periodic_within_torsion: only_periodic.is_empty(),
        torsion: t,
        periodic: p,
        only_torsion,
        only_periodic,
    }
}

/// Torsion ladder of `f` to depth `n` against the periodic ladder of `u`
/// to depth `m`.
pub fn ladder_compare<S: Scalar>(
    f: &TruncatedSeries<S>,
    n: usize,
    u: &TruncatedSeries<S>,
    m: usize,
) -> Result<LadderComparison> {
    if !same_ring(f.spec(), u.spec()) {
        return Err(Error::MismatchedContext);
    }
    let torsion = iterate_ladder(f, n)?;
    let periodic = preper_ladder(u, m)?;
    Ok(compare_valuation_sets(&torsion, &periodic))
}
