use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::newton::{certify_roots, Polynomial};
use crate::padic::{ExtensionKind, ExtensionSpec, Rational, RingElement};
use crate::scalar::Scalar;
use crate::series::{Evaluation, TruncatedSeries};

/// Anything that sends ring elements to ring elements with a known
/// precision.
pub trait PointMap<S: Scalar> {
    fn apply(&self, a: &RingElement<S>) -> Result<Evaluation<S>>;
}

impl<S: Scalar> PointMap<S> for TruncatedSeries<S> {
    fn apply(&self, a: &RingElement<S>) -> Result<Evaluation<S>> {
        self.evaluate(a)
    }
}

impl<S: Scalar> PointMap<S> for Polynomial<S> {
    fn apply(&self, a: &RingElement<S>) -> Result<Evaluation<S>> {
        let value = self.base_change(a.spec())?.eval(a);
        Ok(Evaluation { value, precision: a.spec().horizon() })
    }
}

/// The Frobenius automorphism of an unramified ring.
#[derive(Clone, Copy, Debug, Default)]
pub struct FrobeniusMap;

impl<S: Scalar> PointMap<S> for FrobeniusMap {
    fn apply(&self, a: &RingElement<S>) -> Result<Evaluation<S>> {
        Ok(Evaluation { value: a.frobenius()?, precision: a.spec().horizon() })
    }
}

/// A polynomial `W` over the base ring with `W(theta) = frobenius(theta)`.
pub fn frobenius_polynomial<S: Scalar>(theta: &RingElement<S>) -> Result<Polynomial<S>> {
    if theta.spec().kind() != ExtensionKind::Unramified {
        return Err(Error::UnsupportedExtension("Frobenius polynomial needs an unramified ring"));
    }
    realizing_polynomial(theta, &theta.frobenius()?)
}

/// A polynomial `W` over the base ring with `W(theta) = target`, found by
/// solving for the coordinates of `target` in the basis
/// `1, theta, ..., theta^(d-1)`. Requires that basis to be invertible modulo
/// `p`, i.e. `theta` generates the residue field.
pub fn realizing_polynomial<S: Scalar>(theta: &RingElement<S>, target: &RingElement<S>) -> Result<Polynomial<S>> {
    let spec = theta.spec();
    if !theta.same_ring(target) {
        return Err(Error::MismatchedContext);
    }
    let d = spec.degree();
    let base = ExtensionSpec::trivial(spec.base())?;
    // Columns are the coordinates of theta^j; the last column is the target.
    let mut rows = vec![vec![S::zero(); d + 1]; d];
    let mut power = RingElement::one(spec);
    for j in 0..d {
        for (row, c) in rows.iter_mut().zip(power.coeffs()) {
            row[j] = c.clone();
        }
        power = &power * theta;
    }
    for (i, c) in target.coeffs().iter().enumerate() {
        rows[i][d] = c.clone();
    }
    let solution = solve_mod_pn(&base, rows)?;
    let coeffs = solution.into_iter().map(|c| RingElement::from_coeffs(&base, vec![c])).collect();
    Polynomial::new(&base, coeffs)
}

/// Gaussian elimination modulo `p^N` with unit pivots.
fn solve_mod_pn<S: Scalar>(base: &Arc<ExtensionSpec<S>>, mut rows: Vec<Vec<S>>) -> Result<Vec<S>> {
    let d = rows.len();
    let unit = |c: &S| RingElement::from_coeffs(base, vec![c.clone()]);
    for col in 0..d {
        let pivot = (col..d)
            .find(|&r| unit(&rows[r][col]).is_unit())
            .ok_or(Error::NotInvertible(unit(&rows[col][col]).valuation()))?;
        rows.swap(col, pivot);
        let inv = unit(&rows[col][col]).inv()?;
        let scaled: Vec<S> = rows[col].iter().map(|c| (&unit(c) * &inv).coeffs()[0].clone()).collect();
        rows[col] = scaled;
        for r in 0..d {
            if r == col || rows[r][col].is_zero() {
                continue;
            }
            let factor = unit(&rows[r][col]);
            let updated: Vec<S> = rows[r]
                .iter()
                .zip(&rows[col])
                .map(|(a, b)| (&unit(a) - &(&factor * &unit(b))).coeffs()[0].clone())
                .collect();
            rows[r] = updated;
        }
    }
    Ok(rows.into_iter().map(|row| row[d].clone()).collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PermutationReport {
    /// `mapping[i] = j` when `w(r_i) = r_j`.
    pub mapping: Vec<usize>,
    pub is_identity: bool,
    /// `(cycle, k)` when the mapping equals `cycle^k`.
    pub is_power_of: Option<(Vec<usize>, usize)>,
    /// Whether the mapping commutes with the Frobenius permutation of the
    /// roots. `None` outside unramified rings, or when Frobenius does not
    /// preserve the root set.
    pub commutes_with_frobenius: Option<bool>,
}

/// The permutation of `roots` induced by `w`, each image matched to a root
/// at half its guaranteed precision.
pub fn induced_root_permutation<S: Scalar, W: PointMap<S>>(
    w: &W,
    roots: &[RingElement<S>],
    f: &Polynomial<S>,
    reference: Option<&[usize]>,
) -> Result<PermutationReport> {
    certify_roots(f, roots)?;
    let mapping = permutation_of(w, roots)?;
    let is_identity = mapping.iter().enumerate().all(|(i, &j)| i == j);
    let is_power_of = reference.and_then(|cycle| power_exponent(&mapping, cycle).map(|k| (cycle.to_vec(), k)));
    let unramified = roots.first().is_some_and(|r| r.spec().kind() == ExtensionKind::Unramified);
    let commutes_with_frobenius = if unramified {
        permutation_of(&FrobeniusMap, roots)
            .ok()
            .map(|frob| compose_perm(&mapping, &frob) == compose_perm(&frob, &mapping))
    } else {
        None
    };
    Ok(PermutationReport { mapping, is_identity, is_power_of, commutes_with_frobenius })
}

fn permutation_of<S: Scalar, W: PointMap<S>>(w: &W, roots: &[RingElement<S>]) -> Result<Vec<usize>> {
    let mut mapping = Vec::with_capacity(roots.len());
    let mut used = vec![false; roots.len()];
    for (index, r) in roots.iter().enumerate() {
        let image = match w.apply(r) {
            Ok(ev) => ev,
            Err(Error::NotInMaximalIdeal(_)) => return Err(Error::NotRootStable { index }),
            Err(e) => return Err(e),
        };
        let tolerance = image.precision / Rational::from_integer(2);
        let j = roots
            .iter()
            .position(|s| (&image.value - s).valuation().at_least(tolerance))
            .filter(|&j| !used[j])
            .ok_or(Error::NotRootStable { index })?;
        used[j] = true;
        mapping.push(j);
    }
    Ok(mapping)
}

/// `(a ∘ b)(i) = a(b(i))`.
fn compose_perm(a: &[usize], b: &[usize]) -> Vec<usize> {
    b.iter().map(|&i| a[i]).collect()
}

fn power_exponent(mapping: &[usize], cycle: &[usize]) -> Option<usize> {
    if cycle.len() != mapping.len() {
        return None;
    }
    let mut power: Vec<usize> = (0..cycle.len()).collect();
    for k in 0..cycle.len().max(1) {
        if power == mapping {
            return Some(k);
        }
        power = compose_perm(cycle, &power);
        if k > 0 && power.iter().enumerate().all(|(i, &j)| i == j) {
            break;
        }
    }
    None
}
