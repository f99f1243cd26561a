//! Backing integer types for residues modulo `p^N`.
//!
//! Every algebraic type in the crate is generic over a [`Scalar`]. Fixed-width
//! backends are fast but bound the size of `p^N`; [`BigInt`] is unbounded.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};

pub trait Scalar: Integer + Signed + Clone + Debug + Display + Hash + Send + Sync + 'static {
    /// Largest bit length of a modulus `m` such that `m * m + m` cannot
    /// overflow. `None` for arbitrary precision types.
    const MODULUS_BITS: Option<u32>;

    fn from_int(v: i64) -> Self;
    fn from_bigint(v: &BigInt) -> Option<Self>;
    fn to_bigint(&self) -> BigInt;
}

impl Scalar for i64 {
    const MODULUS_BITS: Option<u32> = Some(31);

    fn from_int(v: i64) -> Self {
        v
    }
    fn from_bigint(v: &BigInt) -> Option<Self> {
        v.to_i64()
    }
    fn to_bigint(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Scalar for i128 {
    const MODULUS_BITS: Option<u32> = Some(62);

    fn from_int(v: i64) -> Self {
        v as i128
    }
    fn from_bigint(v: &BigInt) -> Option<Self> {
        v.to_i128()
    }
    fn to_bigint(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Scalar for BigInt {
    const MODULUS_BITS: Option<u32> = None;

    fn from_int(v: i64) -> Self {
        BigInt::from(v)
    }
    fn from_bigint(v: &BigInt) -> Option<Self> {
        Some(v.clone())
    }
    fn to_bigint(&self) -> BigInt {
        self.clone()
    }
}

/// Whether `modulus` fits the backend `S`.
pub fn fits<S: Scalar>(modulus: &BigInt) -> bool {
    match S::MODULUS_BITS {
        None => true,
        Some(bits) => modulus.bits() <= bits as u64,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn capacity_limits() {
        let small = BigInt::from(3u32).pow(19);
        let big = BigInt::from(3u32).pow(40);
        assert!(fits::<i64>(&small));
        assert!(!fits::<i64>(&big));
        assert!(fits::<i128>(&BigInt::from(3u32).pow(39)));
        assert!(!fits::<i128>(&big));
        assert!(fits::<BigInt>(&big));
    }

    #[test]
    fn bigint_roundtrip() {
        let v = BigInt::from(-12345678901234i64);
        assert_eq!(i128::from_bigint(&v).unwrap().to_bigint(), v);
        assert_eq!(i64::from_bigint(&BigInt::from(3u32).pow(50)), None);
    }
}
