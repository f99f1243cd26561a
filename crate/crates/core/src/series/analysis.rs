use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use super::TruncatedSeries;
use crate::error::{Error, Result};
use crate::padic::{multiplicative_order, Rational, RingElement, Valuation};
use crate::scalar::Scalar;

/// Classification of `f'(0)`.
#[derive(Clone, Debug)]
pub struct StabilityReport<S: Scalar> {
    pub derivative_at_zero: RingElement<S>,
    pub is_zero: bool,
    pub is_root_of_unity: bool,
    /// Multiplicative order modulo `p^N` when `is_root_of_unity` holds.
    pub root_of_unity_order: Option<BigUint>,
    /// Set whenever `is_root_of_unity` holds: agreement with a root of unity
    /// modulo `p^N` does not certify it at higher precision.
    pub precision_caveat: bool,
    pub is_stable: bool,
    pub is_invertible: bool,
    pub is_noninvertible_finite_height: bool,
    pub weierstrass_degree: Option<usize>,
}

/// A value `f(a)` together with the number of p-adic digits it is known to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Evaluation<S: Scalar> {
    pub value: RingElement<S>,
    pub precision: Rational,
}

impl<S: Scalar> Evaluation<S> {
    /// Whether the value is zero to its guaranteed precision.
    pub fn vanishes(&self) -> bool {
        self.value.valuation().at_least(self.precision)
    }

    /// Whether two evaluations agree to the smaller guaranteed precision.
    pub fn agrees_with(&self, other: &RingElement<S>) -> bool {
        (&self.value - other).valuation().at_least(self.precision)
    }
}

/// One step of the Cauchy witness: the difference between consecutive
/// partial iterates `u^{∘z_m} - u^{∘z_{m-1}}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CauchyStep {
    pub m: u32,
    pub x_order: Option<usize>,
    pub p_order: Valuation,
}

#[derive(Clone, Debug)]
pub struct PadicIterate<S: Scalar> {
    pub series: TruncatedSeries<S>,
    /// The least nonnegative residue of the exponent modulo `p^k`.
    pub residue: BigUint,
    pub steps: Vec<CauchyStep>,
}

impl<S: Scalar> TruncatedSeries<S> {
    /// `sum_{i<=M} a_i a^i` with guaranteed precision `min(N, (M+1) v(a))`.
    /// A series over `Z_p` may be evaluated at a point of an extension ring.
    pub fn evaluate(&self, a: &RingElement<S>) -> Result<Evaluation<S>> {
        let series = self.base_change(a.spec())?;
        let v = a.valuation();
        if !v.is_positive() {
            return Err(Error::NotInMaximalIdeal(v));
        }
        let horizon = a.spec().horizon();
        let precision = match v {
            Valuation::Infinite => horizon,
            Valuation::Finite(r) => horizon.min(r * Rational::from_integer(self.trunc as i64 + 1)),
        };
        Ok(Evaluation { value: series.horner(a), precision })
    }

    /// Plain Horner evaluation of the known terms, with no precondition.
    pub fn horner(&self, a: &RingElement<S>) -> RingElement<S> {
        let spec = a.spec();
        let mut acc = spec.zero_vec();
        let top = self.degree().unwrap_or(0);
        for i in (0..=top).rev() {
            acc = spec.mul_vec(&acc, a.coeffs());
            acc = spec.add_vec(&acc, self.coeff_slice(i));
        }
        RingElement::from_raw(spec, acc)
    }

    /// Classifies the linear coefficient. A unit `c` counts as a root of
    /// unity when its order modulo `p^N` is at most
    /// `(q - 1) p^{ceil(log_p(eN)) + 1}`.
    pub fn stability_report(&self) -> Result<StabilityReport<S>> {
        if !self.has_zero_constant() {
            return Err(Error::NonzeroConstantTerm);
        }
        let c = self.linear_coefficient();
        let v = c.valuation();
        let is_zero = v.is_infinite();
        let wideg = self.weierstrass_degree();
        let mut order = None;
        if v == Valuation::ZERO {
            let ord = multiplicative_order(&c).expect("unit has an order");
            if ord <= self.root_of_unity_bound() {
                order = Some(ord);
            }
        }
        let is_root_of_unity = order.is_some();
        let is_stable = !is_zero && !is_root_of_unity;
        Ok(StabilityReport {
            derivative_at_zero: c,
            is_zero,
            is_root_of_unity,
            root_of_unity_order: order,
            precision_caveat: is_root_of_unity,
            is_stable,
            is_invertible: v == Valuation::ZERO,
            is_noninvertible_finite_height: !is_zero && v.is_positive() && wideg.is_some(),
            weierstrass_degree: wideg,
        })
    }

    fn root_of_unity_bound(&self) -> BigUint {
        let spec = self.spec();
        let p = BigUint::from(spec.p());
        let target = BigUint::from(spec.precision()) * BigUint::from(spec.ramification_index());
        let mut a = 0u32;
        let mut pa = BigUint::from(1u32);
        while pa < target {
            pa *= &p;
            a += 1;
        }
        (spec.residue_cardinality() - 1u32) * p.pow(a + 1)
    }

    /// `u^{∘z}` for `z` read modulo `p^k`, built from the base-p digits of
    /// `z` through the iterates `u^{∘p^j}`. The witness records how far each
    /// partial iterate moves from the previous one.
    pub fn padic_iterate(&self, z: &BigInt, k: u32) -> Result<PadicIterate<S>> {
        if !self.has_zero_constant() {
            return Err(Error::NonzeroConstantTerm);
        }
        let u1 = self.linear_coefficient();
        if !u1.is_unit() {
            return Err(Error::NotInvertible(u1.valuation()));
        }
        let p = self.spec().p();
        let modulus = BigInt::from(p).pow(k);
        let residue = z.mod_floor(&modulus).to_biguint().expect("nonnegative residue");
        let mut digits = Vec::with_capacity(k as usize);
        let mut rest = residue.clone();
        for _ in 0..k {
            let (q, r) = rest.div_rem(&BigUint::from(p));
            digits.push(r.to_u64().expect("digit below p"));
            rest = q;
        }
        let mut acc = Self::identity(self.spec(), self.trunc);
        let mut power = self.clone();
        let mut steps = Vec::with_capacity(k as usize);
        for (m, &digit) in digits.iter().enumerate() {
            let next = if digit.is_zero() { acc.clone() } else { power.iterate(digit)?.compose(&acc)? };
            let diff = next.sub(&acc)?;
            steps.push(CauchyStep { m: m as u32 + 1, x_order: diff.x_order(), p_order: diff.min_valuation() });
            acc = next;
            if m + 1 < digits.len() {
                power = power.iterate(p)?;
            }
        }
        Ok(PadicIterate { series: acc, residue, steps })
    }
}
