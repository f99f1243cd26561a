use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::padic::{same_ring, ExtensionSpec, RingElement};
use crate::scalar::Scalar;
use crate::series::TruncatedSeries;

/// A polynomial with exactly known coefficients (modulo `p^N`), lowest
/// degree first. Unlike a truncated series it has no unknown tail, so
/// evaluation is exact at the working precision.
#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial<S: Scalar> {
    spec: Arc<ExtensionSpec<S>>,
    coeffs: Vec<RingElement<S>>,
}

impl<S: Scalar> fmt::Debug for Polynomial<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.coeffs.iter()).finish()
    }
}

impl<S: Scalar> Polynomial<S> {
    pub fn new(spec: &Arc<ExtensionSpec<S>>, mut coeffs: Vec<RingElement<S>>) -> Result<Self> {
        if coeffs.iter().any(|c| !same_ring(c.spec(), spec)) {
            return Err(Error::MismatchedContext);
        }
        while coeffs.len() > 1 && coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(RingElement::zero(spec));
        }
        Ok(Polynomial { spec: spec.clone(), coeffs })
    }

    pub fn from_ints(spec: &Arc<ExtensionSpec<S>>, coeffs: &[i64]) -> Self {
        let cs = coeffs.iter().map(|&c| RingElement::from_int(spec, c)).collect();
        Self::new(spec, cs).expect("coefficients built in this ring")
    }

    pub fn from_bigints(spec: &Arc<ExtensionSpec<S>>, coeffs: &[BigInt]) -> Self {
        let cs = coeffs.iter().map(|c| RingElement::from_bigint(spec, c)).collect();
        Self::new(spec, cs).expect("coefficients built in this ring")
    }

    /// Reads the known terms of a series as a polynomial. Sound when the
    /// series is a polynomial of degree at most its truncation order.
    pub fn from_series(f: &TruncatedSeries<S>) -> Self {
        let top = f.degree().unwrap_or(0);
        Self::new(f.spec(), (0..=top).map(|i| f.coeff(i)).collect()).expect("same ring")
    }

    pub fn to_series(&self, trunc: usize) -> TruncatedSeries<S> {
        TruncatedSeries::from_elements(&self.spec, &self.coeffs, trunc).expect("same ring")
    }

    pub fn spec(&self) -> &Arc<ExtensionSpec<S>> {
        &self.spec
    }

    pub fn coeffs(&self) -> &[RingElement<S>] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_zero()
    }

    /// The first index where the coefficient valuation is minimal: the number
    /// of roots in the open unit disk, counted with multiplicity. For a
    /// primitive polynomial this is the Weierstrass degree. `None` for zero.
    pub fn small_root_bound(&self) -> Option<usize> {
        let vals: Vec<_> = self.coeffs.iter().map(|c| c.valuation()).collect();
        let min = *vals.iter().min()?;
        if min.is_infinite() {
            return None;
        }
        vals.iter().position(|v| *v == min)
    }

    /// Maps the coefficients into an extension with the same base ring.
    pub fn base_change(&self, spec: &Arc<ExtensionSpec<S>>) -> Result<Self> {
        let cs = self.coeffs.iter().map(|c| c.base_change(spec)).collect::<Result<Vec<_>>>()?;
        Self::new(spec, cs)
    }

    pub fn eval(&self, a: &RingElement<S>) -> RingElement<S> {
        let mut acc = RingElement::zero(&self.spec);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * a) + c;
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() == 1 {
            return Self::new(&self.spec, vec![RingElement::zero(&self.spec)]).expect("same ring");
        }
        let cs = self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c.scale_int(i as i64)).collect();
        Self::new(&self.spec, cs).expect("same ring")
    }

    /// Synthetic division by `x - r`: returns `(q, f(r))`.
    pub fn divide_linear(&self, r: &RingElement<S>) -> (Self, RingElement<S>) {
        let n = self.coeffs.len();
        if n == 1 {
            return (Self::new(&self.spec, vec![RingElement::zero(&self.spec)]).unwrap(), self.coeffs[0].clone());
        }
        let mut q = vec![RingElement::zero(&self.spec); n - 1];
        let mut carry = self.coeffs[n - 1].clone();
        for i in (0..n - 1).rev() {
            q[i] = carry.clone();
            carry = &(&carry * r) + &self.coeffs[i];
        }
        (Self::new(&self.spec, q).expect("same ring"), carry)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if !same_ring(&self.spec, &other.spec) {
            return Err(Error::MismatchedContext);
        }
        let mut out = vec![RingElement::zero(&self.spec); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Self::new(&self.spec, out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        if !same_ring(&self.spec, &other.spec) {
            return Err(Error::MismatchedContext);
        }
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = RingElement::zero(&self.spec);
        let cs = (0..n).map(|i| self.coeffs.get(i).unwrap_or(&zero) - other.coeffs.get(i).unwrap_or(&zero)).collect();
        Self::new(&self.spec, cs)
    }

    /// `prod (x - r_i)`.
    pub fn from_roots(spec: &Arc<ExtensionSpec<S>>, roots: &[RingElement<S>]) -> Result<Self> {
        let mut acc = Self::new(spec, vec![RingElement::one(spec)])?;
        for r in roots {
            acc = acc.mul(&Self::new(spec, vec![-r, RingElement::one(spec)])?)?;
        }
        Ok(acc)
    }
}
