//! Truncated power series `a_0 + a_1 x + ... + a_M x^M` over a ring context.
//!
//! Terms of degree above the truncation order `M` are unknown. Every binary
//! operation returns a series truncated at the smaller of the two orders.

mod analysis;

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::padic::{same_ring, ExtensionSpec, RingElement, Valuation};
use crate::scalar::Scalar;

pub use analysis::{CauchyStep, Evaluation, PadicIterate, StabilityReport};

#[derive(Clone)]
pub struct TruncatedSeries<S: Scalar> {
    spec: Arc<ExtensionSpec<S>>,
    trunc: usize,
    /// Flat storage, `d` scalars per coefficient.
    data: Vec<S>,
}

impl<S: Scalar> PartialEq for TruncatedSeries<S> {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.spec, &other.spec) && self.trunc == other.trunc && self.data == other.data
    }
}

impl<S: Scalar> Eq for TruncatedSeries<S> {}

impl<S: Scalar> fmt::Debug for TruncatedSeries<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + O(x^{})", self, self.trunc + 1)
    }
}

impl<S: Scalar> fmt::Display for TruncatedSeries<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for i in 0..=self.trunc {
            let c = self.coeff(i);
            if c.is_zero() {
                continue;
            }
            let c = if self.spec.degree() == 1 {
                let b = &c.balanced()[0];
                if *b == BigInt::from(1) && i > 0 {
                    String::new()
                } else {
                    b.to_string()
                }
            } else {
                format!("({c})")
            };
            terms.push(match i {
                0 => c,
                1 => format!("{c}x"),
                _ => format!("{c}x^{i}"),
            });
        }
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

impl<S: Scalar> TruncatedSeries<S> {
    pub fn zero(spec: &Arc<ExtensionSpec<S>>, trunc: usize) -> Self {
        TruncatedSeries { spec: spec.clone(), trunc, data: vec![S::zero(); (trunc + 1) * spec.degree()] }
    }

    /// The identity series `x`.
    pub fn identity(spec: &Arc<ExtensionSpec<S>>, trunc: usize) -> Self {
        Self::monomial(spec, 1, trunc)
    }

    pub fn monomial(spec: &Arc<ExtensionSpec<S>>, k: usize, trunc: usize) -> Self {
        let mut s = Self::zero(spec, trunc);
        if k <= trunc {
            s.data[k * spec.degree()] = S::one();
        }
        s
    }

    /// Builds a series from integer coefficients, degree 0 first. Terms past
    /// `trunc` are dropped.
    pub fn from_ints(spec: &Arc<ExtensionSpec<S>>, coeffs: &[i64], trunc: usize) -> Self {
        let big: Vec<BigInt> = coeffs.iter().map(|&c| BigInt::from(c)).collect();
        Self::from_bigints(spec, &big, trunc)
    }

    pub fn from_bigints(spec: &Arc<ExtensionSpec<S>>, coeffs: &[BigInt], trunc: usize) -> Self {
        let mut s = Self::zero(spec, trunc);
        for (i, c) in coeffs.iter().enumerate().take(trunc + 1) {
            s.set_coeff_slice(i, &spec.int_vec(c));
        }
        s
    }

    pub fn from_elements(spec: &Arc<ExtensionSpec<S>>, coeffs: &[RingElement<S>], trunc: usize) -> Result<Self> {
        let mut s = Self::zero(spec, trunc);
        for (i, c) in coeffs.iter().enumerate().take(trunc + 1) {
            if !same_ring(c.spec(), spec) {
                return Err(Error::MismatchedContext);
            }
            s.set_coeff_slice(i, c.coeffs());
        }
        Ok(s)
    }

    pub fn spec(&self) -> &Arc<ExtensionSpec<S>> {
        &self.spec
    }

    /// The truncation order `M`: coefficients of degree `0..=M` are known.
    pub fn trunc(&self) -> usize {
        self.trunc
    }

    fn d(&self) -> usize {
        self.spec.degree()
    }

    pub fn coeff_slice(&self, i: usize) -> &[S] {
        let d = self.d();
        &self.data[i * d..(i + 1) * d]
    }

    fn set_coeff_slice(&mut self, i: usize, v: &[S]) {
        let d = self.d();
        self.data[i * d..(i + 1) * d].clone_from_slice(v);
    }

    /// Coefficient of `x^i`; zero for `i > M` is not meaningful, so this
    /// panics there.
    pub fn coeff(&self, i: usize) -> RingElement<S> {
        assert!(i <= self.trunc, "coefficient {i} beyond truncation {}", self.trunc);
        RingElement::from_raw(&self.spec, self.coeff_slice(i).to_vec())
    }

    pub fn set_coeff(&mut self, i: usize, c: &RingElement<S>) {
        assert!(same_ring(c.spec(), &self.spec));
        self.set_coeff_slice(i, c.coeffs());
    }

    pub fn coeffs(&self) -> Vec<RingElement<S>> {
        (0..=self.trunc).map(|i| self.coeff(i)).collect()
    }

    /// Coefficients as balanced integers (base ring only).
    pub fn int_coeffs(&self) -> Vec<BigInt> {
        (0..=self.trunc).map(|i| self.coeff(i).balanced()[0].clone()).collect()
    }

    fn coeff_is_zero(&self, i: usize) -> bool {
        self.coeff_slice(i).iter().all(|c| c.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|c| c.is_zero())
    }

    pub fn constant_term(&self) -> RingElement<S> {
        self.coeff(0)
    }

    pub fn has_zero_constant(&self) -> bool {
        self.coeff_is_zero(0)
    }

    /// Index of the last nonzero coefficient.
    pub fn degree(&self) -> Option<usize> {
        (0..=self.trunc).rev().find(|&i| !self.coeff_is_zero(i))
    }

    /// Index of the first nonzero coefficient.
    pub fn x_order(&self) -> Option<usize> {
        (0..=self.trunc).find(|&i| !self.coeff_is_zero(i))
    }

    /// Minimum valuation over the known coefficients.
    pub fn min_valuation(&self) -> Valuation {
        (0..=self.trunc).map(|i| self.spec.valuation_vec(self.coeff_slice(i))).min().unwrap_or(Valuation::Infinite)
    }

    /// Drops the terms above `trunc`; raising the order is not possible.
    pub fn truncate(&self, trunc: usize) -> Self {
        assert!(trunc <= self.trunc, "cannot raise truncation from {} to {trunc}", self.trunc);
        let d = self.d();
        TruncatedSeries { spec: self.spec.clone(), trunc, data: self.data[..(trunc + 1) * d].to_vec() }
    }

    /// Reads a polynomial at a new truncation order. Only sound when the
    /// series is known to be a polynomial of degree at most `self.trunc`.
    pub fn polynomial_with_trunc(&self, trunc: usize) -> Self {
        let mut s = Self::zero(&self.spec, trunc);
        for i in 0..=self.trunc.min(trunc) {
            s.set_coeff_slice(i, self.coeff_slice(i));
        }
        s
    }

    fn check(&self, other: &Self) -> Result<()> {
        if same_ring(&self.spec, &other.spec) {
            Ok(())
        } else {
            Err(Error::MismatchedContext)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let m = self.trunc.min(other.trunc);
        let n = (m + 1) * self.d();
        let data = self.spec.add_vec(&self.data[..n], &other.data[..n]);
        Ok(TruncatedSeries { spec: self.spec.clone(), trunc: m, data })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let m = self.trunc.min(other.trunc);
        let n = (m + 1) * self.d();
        let data = self.spec.sub_vec(&self.data[..n], &other.data[..n]);
        Ok(TruncatedSeries { spec: self.spec.clone(), trunc: m, data })
    }

    pub fn neg(&self) -> Self {
        TruncatedSeries { spec: self.spec.clone(), trunc: self.trunc, data: self.spec.neg_vec(&self.data) }
    }

    pub fn scale(&self, c: &RingElement<S>) -> Result<Self> {
        if !same_ring(c.spec(), &self.spec) {
            return Err(Error::MismatchedContext);
        }
        let mut out = Self::zero(&self.spec, self.trunc);
        for i in 0..=self.trunc {
            if !self.coeff_is_zero(i) {
                out.set_coeff_slice(i, &self.spec.mul_vec(self.coeff_slice(i), c.coeffs()));
            }
        }
        Ok(out)
    }

    pub fn scale_int(&self, k: i64) -> Self {
        let data = self.spec.scale_int_vec(&self.data, &S::from_int(k));
        TruncatedSeries { spec: self.spec.clone(), trunc: self.trunc, data }
    }

    /// Cauchy product truncated at `min(M_a, M_b)`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.mul_trunc(other, self.trunc.min(other.trunc)))
    }

    fn mul_trunc(&self, other: &Self, m: usize) -> Self {
        let mut out = Self::zero(&self.spec, m);
        let (Some(da), Some(db)) = (self.degree(), other.degree()) else {
            return out;
        };
        let (oa, ob) = (self.x_order().unwrap(), other.x_order().unwrap());
        let pn = self.spec.pn().clone();
        if self.d() == 1 {
            for i in oa..=da.min(m) {
                let a = &self.data[i];
                if a.is_zero() {
                    continue;
                }
                let top = db.min(m.saturating_sub(i));
                if i + ob > m {
                    break;
                }
                for j in ob..=top {
                    let b = &other.data[j];
                    if b.is_zero() {
                        continue;
                    }
                    let t = (a.clone() * b.clone()) % pn.clone();
                    let slot = &mut out.data[i + j];
                    *slot = (slot.clone() + t) % pn.clone();
                }
            }
            return out;
        }
        let d = self.d();
        for i in oa..=da.min(m) {
            if self.coeff_is_zero(i) || i + ob > m {
                continue;
            }
            for j in ob..=db.min(m - i) {
                if other.coeff_is_zero(j) {
                    continue;
                }
                let k = i + j;
                let (a, b) = (self.coeff_slice(i), other.coeff_slice(j));
                self.spec.mul_acc(&mut out.data[k * d..(k + 1) * d], a, b);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut result = Self::monomial(&self.spec, 0, self.trunc);
        for _ in 0..e {
            result = result.mul_trunc(self, self.trunc);
        }
        result
    }

    /// `self ∘ inner`, truncated at `min(M_self, M_inner)`, by Horner's rule.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        self.check(inner)?;
        if !inner.has_zero_constant() {
            return Err(Error::NonzeroConstantTerm);
        }
        let m = self.trunc.min(inner.trunc);
        let inner = if inner.trunc > m { inner.truncate(m) } else { inner.clone() };
        let top = match self.degree() {
            Some(t) => t.min(m),
            None => return Ok(Self::zero(&self.spec, m)),
        };
        let mut acc = Self::zero(&self.spec, m);
        acc.set_coeff_slice(0, self.coeff_slice(top));
        for i in (0..top).rev() {
            acc = acc.mul_trunc(&inner, m);
            let sum = self.spec.add_vec(acc.coeff_slice(0), self.coeff_slice(i));
            acc.set_coeff_slice(0, &sum);
        }
        Ok(acc)
    }

    /// `a ∘ b - b ∘ a`; zero iff the pair commutes to this precision.
    pub fn commutator_defect(&self, other: &Self) -> Result<Self> {
        self.compose(other)?.sub(&other.compose(self)?)
    }

    /// Termwise derivative, truncated at `M - 1`.
    pub fn derivative(&self) -> Self {
        let m = self.trunc.saturating_sub(1);
        let mut out = Self::zero(&self.spec, m);
        for i in 1..=self.trunc {
            let v = self.spec.scale_int_vec(self.coeff_slice(i), &S::from_int(i as i64));
            out.set_coeff_slice(i - 1, &v);
        }
        out
    }

    pub fn linear_coefficient(&self) -> RingElement<S> {
        if self.trunc == 0 {
            RingElement::zero(&self.spec)
        } else {
            self.coeff(1)
        }
    }

    /// Compositional inverse `v` with `v ∘ u = u ∘ v = x`, solved degree by
    /// degree: `v_n u_1^n = -sum_{k<n} v_k [x^n] u^k`.
    pub fn compositional_inverse(&self) -> Result<Self> {
        if !self.has_zero_constant() {
            return Err(Error::NonzeroConstantTerm);
        }
        let u1 = self.linear_coefficient();
        let u1_inv = u1.inv().map_err(|_| Error::NotInvertible(u1.valuation()))?;
        let m = self.trunc;
        let spec = &self.spec;
        let mut v = Self::zero(spec, m);
        if m == 0 {
            return Ok(v);
        }
        v.set_coeff(1, &u1_inv);
        // powers[k] = u^k
        let mut powers = vec![Self::zero(spec, m), self.clone()];
        for k in 2..=m {
            let next = powers[k - 1].mul_trunc(self, m);
            powers.push(next);
        }
        let mut inv_pow = u1_inv.clone();
        for n in 2..=m {
            inv_pow = &inv_pow * &u1_inv;
            let mut acc = spec.zero_vec();
            for (k, pk) in powers.iter().enumerate().take(n).skip(1) {
                if v.coeff_is_zero(k) {
                    continue;
                }
                spec.mul_acc(&mut acc, v.coeff_slice(k), pk.coeff_slice(n));
            }
            let vn = spec.mul_vec(&spec.neg_vec(&acc), inv_pow.coeffs());
            v.set_coeff_slice(n, &vn);
        }
        Ok(v)
    }

    /// `n`-fold composition; `iterate(f, 0) = x`.
    pub fn iterate(&self, n: u64) -> Result<Self> {
        if !self.has_zero_constant() {
            return Err(Error::NonzeroConstantTerm);
        }
        let id = Self::identity(&self.spec, self.trunc);
        if n == 0 {
            return Ok(id);
        }
        // Composing with a low-degree polynomial on the outside is cheap, so
        // small counts iterate linearly; large ones use repeated squaring.
        let cheap = self.degree().is_none_or(|deg| deg < 8);
        if n <= 16 || (cheap && n <= 4096) {
            let mut acc = self.clone();
            for _ in 1..n {
                acc = self.compose(&acc)?;
            }
            return Ok(acc);
        }
        let mut result = id;
        let mut base = self.clone();
        let mut k = n;
        while k > 0 {
            if k & 1 == 1 {
                result = base.compose(&result)?;
            }
            k >>= 1;
            if k > 0 {
                base = base.compose(&base)?;
            }
        }
        Ok(result)
    }

    /// Iteration by a signed count; negative counts go through the
    /// compositional inverse.
    pub fn iterate_signed(&self, n: i64) -> Result<Self> {
        if n >= 0 {
            self.iterate(n as u64)
        } else {
            self.compositional_inverse()?.iterate(n.unsigned_abs())
        }
    }

    /// Index of the first unit coefficient, if one is visible.
    pub fn weierstrass_degree(&self) -> Option<usize> {
        (0..=self.trunc).find(|&i| self.spec.valuation_vec(self.coeff_slice(i)) == Valuation::ZERO)
    }

    /// Reinterprets a series over `Z_p` as a series over an extension with
    /// the same prime and precision.
    pub fn base_change(&self, spec: &Arc<ExtensionSpec<S>>) -> Result<Self> {
        if same_ring(&self.spec, spec) {
            return Ok(self.clone());
        }
        if self.d() != 1 || self.spec.base() != spec.base() {
            return Err(Error::MismatchedContext);
        }
        let mut out = Self::zero(spec, self.trunc);
        let d = spec.degree();
        for i in 0..=self.trunc {
            out.data[i * d] = self.data[i].clone();
        }
        Ok(out)
    }

    /// Same coefficients re-read in the same ring at another precision.
    pub fn change_precision(&self, spec: &Arc<ExtensionSpec<S>>) -> Self {
        assert_eq!(spec.degree(), self.d());
        let data = self.data.iter().map(|c| spec.reduce(c.clone())).collect();
        TruncatedSeries { spec: spec.clone(), trunc: self.trunc, data }
    }

    /// Moves every coefficient to another precision through its balanced
    /// representative (see [`RingElement::lift_balanced`]).
    pub fn lift_balanced(&self, spec: &Arc<ExtensionSpec<S>>) -> Self {
        let mut out = Self::zero(spec, self.trunc);
        for i in 0..=self.trunc {
            out.set_coeff(i, &self.coeff(i).lift_balanced(spec));
        }
        out
    }

    /// True if the only nonzero coefficients sit at exponents divisible by
    /// `d`; otherwise the first offending exponent.
    pub fn first_exponent_not_divisible_by(&self, d: usize) -> Option<usize> {
        (0..=self.trunc).find(|&i| i % d != 0 && !self.coeff_is_zero(i))
    }

    /// `g(x) = f(x^{1/d})` for a series supported on multiples of `d`.
    pub fn compress_exponents(&self, d: usize) -> Result<Self> {
        if let Some(exponent) = self.first_exponent_not_divisible_by(d) {
            return Err(Error::NotCondensable { exponent });
        }
        let m = self.trunc / d;
        let mut out = Self::zero(&self.spec, m);
        for i in 0..=m {
            out.set_coeff_slice(i, self.coeff_slice(i * d));
        }
        Ok(out)
    }

    /// `f(x^d)`, truncated at `M`.
    pub fn expand_exponents(&self, d: usize, trunc: usize) -> Self {
        let mut out = Self::zero(&self.spec, trunc);
        for i in 0..=self.trunc {
            if i * d > trunc {
                break;
            }
            out.set_coeff_slice(i * d, self.coeff_slice(i));
        }
        out
    }

    /// Divides by `x^k`, where `k` is the x-adic order (the series is known
    /// to lower truncation afterwards).
    pub fn strip_x_power(&self) -> (usize, Self) {
        let k = self.x_order().unwrap_or(0);
        let m = self.trunc - k;
        let mut out = Self::zero(&self.spec, m);
        for i in 0..=m {
            out.set_coeff_slice(i, self.coeff_slice(i + k));
        }
        (k, out)
    }
}
