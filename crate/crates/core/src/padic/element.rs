use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use super::spec::{same_ring, ExtensionKind, ExtensionSpec};
use super::valuation::{Rational, Valuation};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// An element of `Z_p[t]/(m(t))` known modulo `p^N`, stored as canonical
/// coefficients `c_0 + c_1 t + ... + c_{d-1} t^{d-1}` with `0 <= c_i < p^N`.
#[derive(Clone)]
pub struct RingElement<S: Scalar> {
    spec: Arc<ExtensionSpec<S>>,
    coeffs: Vec<S>,
}

impl<S: Scalar> PartialEq for RingElement<S> {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.spec, &other.spec) && self.coeffs == other.coeffs
    }
}

impl<S: Scalar> Eq for RingElement<S> {}

impl<S: Scalar> fmt::Debug for RingElement<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl<S: Scalar> fmt::Display for RingElement<S> {
    /// Balanced representatives, e.g. `-3` rather than `p^N - 3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .balanced()
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => c.to_string(),
                1 => format!("{c}*t"),
                _ => format!("{c}*t^{i}"),
            })
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

impl<S: Scalar> RingElement<S> {
    /// Wraps raw coefficients, reducing them modulo `p^N`.
    pub fn from_coeffs(spec: &Arc<ExtensionSpec<S>>, coeffs: Vec<S>) -> Self {
        assert_eq!(coeffs.len(), spec.degree(), "coefficient count must equal the extension degree");
        let coeffs = coeffs.into_iter().map(|c| spec.reduce(c)).collect();
        RingElement { spec: spec.clone(), coeffs }
    }

    pub(crate) fn from_raw(spec: &Arc<ExtensionSpec<S>>, coeffs: Vec<S>) -> Self {
        debug_assert_eq!(coeffs.len(), spec.degree());
        RingElement { spec: spec.clone(), coeffs }
    }

    pub fn zero(spec: &Arc<ExtensionSpec<S>>) -> Self {
        Self::from_raw(spec, spec.zero_vec())
    }

    pub fn one(spec: &Arc<ExtensionSpec<S>>) -> Self {
        Self::from_raw(spec, spec.one_vec())
    }

    pub fn from_int(spec: &Arc<ExtensionSpec<S>>, c: i64) -> Self {
        Self::from_raw(spec, spec.int_vec(&BigInt::from(c)))
    }

    pub fn from_bigint(spec: &Arc<ExtensionSpec<S>>, c: &BigInt) -> Self {
        Self::from_raw(spec, spec.int_vec(c))
    }

    /// Builds `sum c_i t^i` from big integer coefficients (fewer than `d` is fine).
    pub fn from_bigints(spec: &Arc<ExtensionSpec<S>>, cs: &[BigInt]) -> Result<Self> {
        if cs.len() > spec.degree() {
            return Err(Error::Parse(format!(
                "element has {} coefficients, ring degree is {}",
                cs.len(),
                spec.degree()
            )));
        }
        let mut v = spec.zero_vec();
        for (i, c) in cs.iter().enumerate() {
            v[i] = spec.int_vec(c)[0].clone();
        }
        Ok(Self::from_raw(spec, v))
    }

    /// The generator `t` of the extension.
    pub fn generator(spec: &Arc<ExtensionSpec<S>>) -> Self {
        let mut v = spec.zero_vec();
        if spec.degree() > 1 {
            v[1] = S::one();
        }
        Self::from_raw(spec, v)
    }

    /// `p` for unramified rings, `t` for Eisenstein ones.
    pub fn uniformizer(spec: &Arc<ExtensionSpec<S>>) -> Self {
        match spec.kind() {
            ExtensionKind::Eisenstein => Self::generator(spec),
            _ => Self::from_int(spec, spec.p() as i64),
        }
    }

    pub fn spec(&self) -> &Arc<ExtensionSpec<S>> {
        &self.spec
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<S> {
        self.coeffs
    }

    /// Coefficients shifted into `(-p^N/2, p^N/2]`.
    pub fn balanced(&self) -> Vec<BigInt> {
        let pn = self.spec.pn().to_bigint();
        let half = &pn / 2;
        self.coeffs
            .iter()
            .map(|c| {
                let c = c.to_bigint();
                if c > half {
                    c - &pn
                } else {
                    c
                }
            })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.spec.is_zero_vec(&self.coeffs)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == self.spec.one_vec()
    }

    pub fn same_ring(&self, other: &Self) -> bool {
        same_ring(&self.spec, &other.spec)
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.same_ring(other) {
            Ok(())
        } else {
            Err(Error::MismatchedContext)
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(Self::from_raw(&self.spec, self.spec.add_vec(&self.coeffs, &other.coeffs)))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(Self::from_raw(&self.spec, self.spec.sub_vec(&self.coeffs, &other.coeffs)))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(Self::from_raw(&self.spec, self.spec.mul_vec(&self.coeffs, &other.coeffs)))
    }

    pub fn scale_int(&self, k: i64) -> Self {
        Self::from_raw(&self.spec, self.spec.scale_int_vec(&self.coeffs, &S::from_int(k)))
    }

    pub fn pow(&self, e: u64) -> Self {
        self.pow_big(&BigUint::from(e))
    }

    pub fn pow_big(&self, e: &BigUint) -> Self {
        Self::from_raw(&self.spec, self.spec.pow_vec(&self.coeffs, e))
    }

    /// Normalized so that `v(p) = 1`; `Infinite` iff the element is zero
    /// modulo `p^N`.
    pub fn valuation(&self) -> Valuation {
        self.spec.valuation_vec(&self.coeffs)
    }

    pub fn is_unit(&self) -> bool {
        self.valuation() == Valuation::ZERO
    }

    pub fn inv(&self) -> Result<Self> {
        Ok(Self::from_raw(&self.spec, self.spec.inv_vec(&self.coeffs)?))
    }

    /// Frobenius automorphism of an unramified ring (identity on `Z_p`).
    pub fn frobenius(&self) -> Result<Self> {
        Ok(Self::from_raw(&self.spec, self.spec.frobenius_vec(&self.coeffs)?))
    }

    /// Division by an element of positive valuation `k`. The quotient is only
    /// determined modulo valuation `N - k`; that loss is returned alongside.
    pub fn exact_div(&self, divisor: &Self) -> Result<(Self, Rational)> {
        self.check(divisor)?;
        let k = divisor.valuation().finite().ok_or(Error::DivisionByZero)?;
        let own = self.valuation();
        if own < Valuation::Finite(k) {
            return Err(Error::NotDivisible { dividend: own, divisor: Valuation::Finite(k) });
        }
        let steps = (k * Rational::from_integer(self.spec.ramification_index() as i64)).to_integer();
        let mut num = self.coeffs.clone();
        let mut den = divisor.coeffs.clone();
        for _ in 0..steps {
            num = self.spec.div_uniformizer_vec(&num)?;
            den = self.spec.div_uniformizer_vec(&den)?;
        }
        let den_inv = self.spec.inv_vec(&den)?;
        Ok((Self::from_raw(&self.spec, self.spec.mul_vec(&num, &den_inv)), k))
    }

    /// Re-reads the canonical representatives in a ring with the same
    /// modulus and a different precision.
    pub fn change_precision(&self, spec: &Arc<ExtensionSpec<S>>) -> Self {
        assert_eq!(spec.modulus().len(), self.spec.modulus().len());
        let coeffs = self.coeffs.iter().map(|c| spec.reduce(c.clone())).collect();
        Self::from_raw(spec, coeffs)
    }

    /// Moves to a ring with the same modulus and another precision through
    /// the balanced representative, so small negative integers survive a
    /// precision increase unchanged.
    pub fn lift_balanced(&self, spec: &Arc<ExtensionSpec<S>>) -> Self {
        assert_eq!(spec.degree(), self.spec.degree());
        let cs: Vec<BigInt> = self.balanced();
        let mut v = spec.zero_vec();
        for (slot, c) in v.iter_mut().zip(&cs) {
            *slot = spec.int_vec(c)[0].clone();
        }
        Self::from_raw(spec, v)
    }

    /// Embeds an element of `Z_p` into an extension ring with the same base.
    pub fn base_change(&self, spec: &Arc<ExtensionSpec<S>>) -> Result<Self> {
        if self.spec.degree() != 1 || self.spec.base() != spec.base() {
            if self.same_ring(&RingElement::zero(spec)) {
                return Ok(self.clone());
            }
            return Err(Error::MismatchedContext);
        }
        let mut v = spec.zero_vec();
        v[0] = self.coeffs[0].clone();
        Ok(Self::from_raw(spec, v))
    }
}

fn expect_same<S: Scalar>(a: &RingElement<S>, b: &RingElement<S>) {
    assert!(a.same_ring(b), "ring elements from different contexts");
}

impl<S: Scalar> Add for &RingElement<S> {
    type Output = RingElement<S>;
    fn add(self, rhs: &RingElement<S>) -> RingElement<S> {
        expect_same(self, rhs);
        RingElement::from_raw(&self.spec, self.spec.add_vec(&self.coeffs, &rhs.coeffs))
    }
}

impl<S: Scalar> Sub for &RingElement<S> {
    type Output = RingElement<S>;
    fn sub(self, rhs: &RingElement<S>) -> RingElement<S> {
        expect_same(self, rhs);
        RingElement::from_raw(&self.spec, self.spec.sub_vec(&self.coeffs, &rhs.coeffs))
    }
}

impl<S: Scalar> Mul for &RingElement<S> {
    type Output = RingElement<S>;
    fn mul(self, rhs: &RingElement<S>) -> RingElement<S> {
        expect_same(self, rhs);
        RingElement::from_raw(&self.spec, self.spec.mul_vec(&self.coeffs, &rhs.coeffs))
    }
}

impl<S: Scalar> Neg for &RingElement<S> {
    type Output = RingElement<S>;
    fn neg(self) -> RingElement<S> {
        RingElement::from_raw(&self.spec, self.spec.neg_vec(&self.coeffs))
    }
}

/// Multiplicative order of a unit in `(O / p^N)^*`, found by stripping prime
/// factors from the group order.
pub fn multiplicative_order<S: Scalar>(a: &RingElement<S>) -> Option<BigUint> {
    if !a.is_unit() {
        return None;
    }
    let spec = a.spec();
    let mut n = spec.unit_group_order();
    let q_minus_1 = spec.residue_cardinality() - 1u32;
    let mut primes = small_prime_factors(&q_minus_1);
    let p = BigUint::from(spec.p());
    if !primes.contains(&p) {
        primes.push(p);
    }
    for r in primes {
        while (&n % &r).is_zero() {
            let candidate = &n / &r;
            if a.pow_big(&candidate).is_one() {
                n = candidate;
            } else {
                break;
            }
        }
    }
    Some(n)
}

fn small_prime_factors(n: &BigUint) -> Vec<BigUint> {
    let mut n = n.clone();
    let mut out = Vec::new();
    let mut d = BigUint::from(2u32);
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            out.push(d.clone());
            while (&n % &d).is_zero() {
                n /= &d;
            }
        }
        d += 1u32;
    }
    if n > BigUint::one() {
        out.push(n);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::PrimeContext;

    fn zp(n: u32) -> Arc<ExtensionSpec<i128>> {
        ExtensionSpec::zp(3, n).unwrap()
    }

    fn gaussian(n: u32) -> Arc<ExtensionSpec<i128>> {
        let ctx = PrimeContext::new(3, n).unwrap();
        ExtensionSpec::unramified(ctx, &[BigInt::from(1), BigInt::from(0), BigInt::from(1)]).unwrap()
    }

    fn ramified(n: u32) -> Arc<ExtensionSpec<i128>> {
        let ctx = PrimeContext::new(3, n).unwrap();
        ExtensionSpec::eisenstein(ctx, &[BigInt::from(3), BigInt::from(0), BigInt::from(1)]).unwrap()
    }

    #[test]
    fn add_wraps_at_pn() {
        let s = zp(3);
        let a = RingElement::from_int(&s, 25);
        let b = RingElement::from_int(&s, 2);
        assert!((&a + &b).is_zero());
        assert_eq!(&a + &RingElement::zero(&s), a);
    }

    #[test]
    fn add_inverse_in_extension() {
        let s = gaussian(2);
        let a = RingElement::from_coeffs(&s, vec![1, 1]);
        let b = RingElement::from_coeffs(&s, vec![8, 8]);
        assert!((&a + &b).is_zero());
    }

    #[test]
    fn mul_examples() {
        let s = zp(3);
        let prod = &RingElement::from_int(&s, 4) * &RingElement::from_int(&s, 7);
        assert!(prod.is_one());
        let g = gaussian(3);
        let t = RingElement::generator(&g);
        assert_eq!((&t * &t).coeffs(), &[26, 0]);
        assert_eq!(&t * &RingElement::one(&g), t);
    }

    #[test]
    fn inverse_examples() {
        let s = zp(3);
        assert_eq!(RingElement::from_int(&s, 4).inv().unwrap(), RingElement::from_int(&s, 7));
        assert_eq!(RingElement::from_int(&s, 8).inv().unwrap(), RingElement::from_int(&s, 17));
        assert_eq!(RingElement::from_int(&s, 3).inv().unwrap_err(), Error::NotAUnit(Valuation::int(1)));
    }

    #[test]
    fn inverse_in_extensions() {
        for s in [gaussian(12), ramified(12)] {
            let a = &RingElement::from_int(&s, 2) + &RingElement::generator(&s);
            let b = a.inv().unwrap();
            assert!((&a * &b).is_one());
        }
    }

    #[test]
    fn valuation_examples() {
        let s = zp(10);
        assert_eq!(RingElement::from_int(&s, 540).valuation(), Valuation::int(3));
        assert_eq!(RingElement::from_int(&s, 81).valuation(), Valuation::int(4));
        assert_eq!(RingElement::from_int(&s, 0).valuation(), Valuation::Infinite);
        assert_eq!(RingElement::from_int(&zp(3), 27).valuation(), Valuation::Infinite);
        let r = ramified(10);
        assert_eq!(RingElement::generator(&r).valuation(), Valuation::ratio(1, 2));
        let t3 = RingElement::generator(&r).pow(3);
        assert_eq!(t3.valuation(), Valuation::ratio(3, 2));
    }

    #[test]
    fn frobenius_examples() {
        let g = gaussian(10);
        let t = RingElement::generator(&g);
        assert_eq!(t.frobenius().unwrap(), -&t);
        let c = RingElement::from_int(&g, 17);
        assert_eq!(c.frobenius().unwrap(), c);
        let a = &RingElement::from_int(&g, 5) + &(&t * &RingElement::from_int(&g, 7));
        assert_eq!(a.frobenius().unwrap().frobenius().unwrap(), a);
        assert_eq!(
            RingElement::generator(&ramified(5)).frobenius().unwrap_err(),
            Error::UnsupportedExtension("eisenstein")
        );
    }

    #[test]
    fn exact_division() {
        let s = zp(10);
        let (q, loss) = RingElement::from_int(&s, 6).exact_div(&RingElement::from_int(&s, 24)).unwrap();
        assert_eq!(loss, Rational::from_integer(1));
        // 6/24 = 1/4, and 4 * q must be 1 modulo 3^9
        let check = &q * &RingElement::from_int(&s, 4);
        assert_eq!(check.coeffs()[0] % 19683, 1);

        let r = ramified(10);
        let t = RingElement::generator(&r);
        let three = RingElement::from_int(&r, 3);
        let (q, loss) = three.exact_div(&t).unwrap();
        assert_eq!(loss, Rational::new(1, 2));
        // 3 / t = -t since t^2 = -3
        let diff = &q - &(-&t);
        assert!(diff.valuation() >= Valuation::int(9));
    }

    #[test]
    fn orders() {
        let s = zp(20);
        let minus_one = RingElement::from_int(&s, -1);
        assert_eq!(multiplicative_order(&minus_one), Some(BigUint::from(2u32)));
        let four = RingElement::from_int(&s, 4);
        assert_eq!(multiplicative_order(&four), Some(BigUint::from(3u32).pow(19)));
        assert_eq!(multiplicative_order(&RingElement::from_int(&s, 3)), None);
    }

    #[test]
    fn display_is_balanced() {
        let r = ramified(4);
        let a = &RingElement::from_int(&r, -3) + &RingElement::generator(&r);
        assert_eq!(a.to_string(), "-3 + 1*t");
    }
}
