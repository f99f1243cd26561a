use std::fmt;
use std::sync::{Arc, OnceLock};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};

use super::fp_poly;
use super::valuation::{Rational, Valuation};
use crate::error::{Error, Result};
use crate::scalar::{self, Scalar};

/// A prime `p` together with the absolute precision `N`: every coefficient
/// is known modulo `p^N`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeContext {
    p: u64,
    precision: u32,
}

impl PrimeContext {
    pub fn new(p: u64, precision: u32) -> Result<Self> {
        if !is_small_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if precision == 0 {
            return Err(Error::InvalidPrecision);
        }
        Ok(PrimeContext { p, precision })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }
}

fn is_small_prime(p: u64) -> bool {
    if !(2..(1 << 31)).contains(&p) {
        return false;
    }
    let mut q = 2;
    while q * q <= p {
        if p.is_multiple_of(q) {
            return false;
        }
        q += 1;
    }
    true
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ExtensionKind {
    Trivial,
    Unramified,
    Eisenstein,
}

impl ExtensionKind {
    pub fn name(&self) -> &'static str {
        match self {
            ExtensionKind::Trivial => "trivial",
            ExtensionKind::Unramified => "unramified",
            ExtensionKind::Eisenstein => "eisenstein",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "trivial" => Some(ExtensionKind::Trivial),
            "unramified" => Some(ExtensionKind::Unramified),
            "eisenstein" => Some(ExtensionKind::Eisenstein),
            _ => None,
        }
    }
}

/// The ring `Z_p[t]/(m(t))` modulo `p^N`.
///
/// Elements are coefficient vectors of length `d = deg m` with entries in
/// `[0, p^N)`. The raw `*_vec` kernels below operate on such vectors and are
/// what the series code uses in its inner loops.
pub struct ExtensionSpec<S: Scalar> {
    base: PrimeContext,
    kind: ExtensionKind,
    modulus: Vec<S>,
    e: u32,
    f_res: u32,
    p: S,
    pn: S,
    frobenius_image: OnceLock<Vec<S>>,
}

impl<S: Scalar> PartialEq for ExtensionSpec<S> {
    fn eq(&self, other: &Self) -> bool {
        self.base == other.base && self.kind == other.kind && self.modulus == other.modulus
    }
}

impl<S: Scalar> Eq for ExtensionSpec<S> {}

impl<S: Scalar> fmt::Debug for ExtensionSpec<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ExtensionSpec")
            .field("p", &self.base.p)
            .field("precision", &self.base.precision)
            .field("kind", &self.kind)
            .field("modulus", &self.modulus)
            .finish()
    }
}

/// True when both handles describe the same ring.
pub fn same_ring<S: Scalar>(a: &Arc<ExtensionSpec<S>>, b: &Arc<ExtensionSpec<S>>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl<S: Scalar> ExtensionSpec<S> {
    pub fn trivial(base: PrimeContext) -> Result<Arc<Self>> {
        Self::build(base, ExtensionKind::Trivial, &[BigInt::zero(), BigInt::one()])
    }

    pub fn unramified(base: PrimeContext, modulus: &[BigInt]) -> Result<Arc<Self>> {
        Self::build(base, ExtensionKind::Unramified, modulus)
    }

    pub fn eisenstein(base: PrimeContext, modulus: &[BigInt]) -> Result<Arc<Self>> {
        Self::build(base, ExtensionKind::Eisenstein, modulus)
    }

    /// Convenience constructor for the base ring `Z_p` at precision `N`.
    pub fn zp(p: u64, precision: u32) -> Result<Arc<Self>> {
        Self::trivial(PrimeContext::new(p, precision)?)
    }

    pub fn new(base: PrimeContext, kind: ExtensionKind, modulus: &[BigInt]) -> Result<Arc<Self>> {
        Self::build(base, kind, modulus)
    }

    fn build(base: PrimeContext, kind: ExtensionKind, modulus: &[BigInt]) -> Result<Arc<Self>> {
        let p_big = BigInt::from(base.p);
        let pn_big = p_big.pow(base.precision);
        if !scalar::fits::<S>(&pn_big) {
            return Err(Error::PrecisionExhausted { digits: base.precision });
        }
        if modulus.len() < 2 || !modulus.last().unwrap().is_one() {
            return Err(Error::InvalidModulus("modulus must be monic of degree >= 1".into()));
        }
        let d = modulus.len() - 1;
        let reduced: Vec<BigInt> = modulus[..d].iter().map(|c| c.mod_floor(&pn_big)).collect();
        let (e, f_res) = match kind {
            ExtensionKind::Trivial => {
                if d != 1 || !reduced[0].is_zero() {
                    return Err(Error::InvalidModulus("trivial extension uses m(t) = t".into()));
                }
                (1, 1)
            }
            ExtensionKind::Unramified => {
                if d < 2 {
                    return Err(Error::InvalidModulus("unramified extension needs degree >= 2".into()));
                }
                let residues: Vec<u64> =
                    modulus.iter().map(|c| c.mod_floor(&p_big).try_into().expect("residue below p")).collect();
                if !fp_poly::is_irreducible(&residues, base.p) {
                    return Err(Error::InvalidModulus("modulus is reducible mod p".into()));
                }
                (1, d as u32)
            }
            ExtensionKind::Eisenstein => {
                if d < 2 {
                    return Err(Error::InvalidModulus("eisenstein extension needs degree >= 2".into()));
                }
                let p2 = &p_big * &p_big;
                for c in &reduced {
                    if !c.mod_floor(&p_big).is_zero() {
                        return Err(Error::InvalidModulus("lower coefficients must be divisible by p".into()));
                    }
                }
                if reduced[0].mod_floor(&p2).is_zero() {
                    return Err(Error::InvalidModulus("constant term must have valuation exactly 1".into()));
                }
                (d as u32, 1)
            }
        };
        let mut coeffs: Vec<S> = reduced.iter().map(|c| S::from_bigint(c).expect("reduced below p^N")).collect();
        coeffs.push(S::one());
        Ok(Arc::new(ExtensionSpec {
            base,
            kind,
            modulus: coeffs,
            e,
            f_res,
            p: S::from_int(base.p as i64),
            pn: S::from_bigint(&pn_big).expect("checked capacity"),
            frobenius_image: OnceLock::new(),
        }))
    }

    /// Same ring at a different absolute precision. The modulus is carried
    /// over through its balanced representatives.
    pub fn with_precision(&self, precision: u32) -> Result<Arc<Self>> {
        let base = PrimeContext::new(self.base.p, precision)?;
        let pn = self.pn.to_bigint();
        let half = &pn / 2;
        let modulus: Vec<BigInt> = self
            .modulus
            .iter()
            .map(|c| {
                let c = c.to_bigint();
                if c > half {
                    c - &pn
                } else {
                    c
                }
            })
            .collect();
        Self::build(base, self.kind, &modulus)
    }

    pub fn base(&self) -> PrimeContext {
        self.base
    }

    pub fn p(&self) -> u64 {
        self.base.p
    }

    pub fn precision(&self) -> u32 {
        self.base.precision
    }

    pub fn kind(&self) -> ExtensionKind {
        self.kind
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn ramification_index(&self) -> u32 {
        self.e
    }

    pub fn residue_degree(&self) -> u32 {
        self.f_res
    }

    /// `q = p^{f_res}`, the size of the residue field.
    pub fn residue_cardinality(&self) -> BigUint {
        BigUint::from(self.base.p).pow(self.f_res)
    }

    pub fn modulus(&self) -> &[S] {
        &self.modulus
    }

    pub fn p_scalar(&self) -> &S {
        &self.p
    }

    /// `p^N`.
    pub fn pn(&self) -> &S {
        &self.pn
    }

    /// Precision as a valuation bound.
    pub fn horizon(&self) -> Rational {
        Rational::from_integer(self.base.precision as i64)
    }

    // ----- raw vector kernels -------------------------------------------

    pub fn reduce(&self, v: S) -> S {
        v.mod_floor(&self.pn)
    }

    pub fn zero_vec(&self) -> Vec<S> {
        vec![S::zero(); self.degree()]
    }

    pub fn one_vec(&self) -> Vec<S> {
        let mut v = self.zero_vec();
        v[0] = S::one();
        v
    }

    pub fn int_vec(&self, c: &BigInt) -> Vec<S> {
        let pn = self.pn.to_bigint();
        let mut v = self.zero_vec();
        v[0] = S::from_bigint(&c.mod_floor(&pn)).expect("reduced below p^N");
        v
    }

    pub fn is_zero_vec(&self, a: &[S]) -> bool {
        a.iter().all(|c| c.is_zero())
    }

    pub fn add_vec(&self, a: &[S], b: &[S]) -> Vec<S> {
        a.iter()
            .zip(b)
            .map(|(x, y)| {
                let s = x.clone() + y.clone();
                if s >= self.pn {
                    s - self.pn.clone()
                } else {
                    s
                }
            })
            .collect()
    }

    pub fn sub_vec(&self, a: &[S], b: &[S]) -> Vec<S> {
        a.iter()
            .zip(b)
            .map(|(x, y)| {
                let s = x.clone() - y.clone();
                if s.is_negative() {
                    s + self.pn.clone()
                } else {
                    s
                }
            })
            .collect()
    }

    pub fn neg_vec(&self, a: &[S]) -> Vec<S> {
        a.iter().map(|x| if x.is_zero() { S::zero() } else { self.pn.clone() - x.clone() }).collect()
    }

    pub fn scale_int_vec(&self, a: &[S], k: &S) -> Vec<S> {
        let k = self.reduce(k.clone());
        a.iter().map(|x| (x.clone() * k.clone()) % self.pn.clone()).collect()
    }

    pub fn mul_vec(&self, a: &[S], b: &[S]) -> Vec<S> {
        let d = self.degree();
        if d == 1 {
            return vec![(a[0].clone() * b[0].clone()) % self.pn.clone()];
        }
        let mut prod = vec![S::zero(); 2 * d - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let t = (x.clone() * y.clone()) % self.pn.clone();
                prod[i + j] = (prod[i + j].clone() + t) % self.pn.clone();
            }
        }
        self.reduce_poly(prod)
    }

    /// `acc += a * b`.
    pub fn mul_acc(&self, acc: &mut [S], a: &[S], b: &[S]) {
        if self.degree() == 1 {
            let t = (a[0].clone() * b[0].clone()) % self.pn.clone();
            acc[0] = (acc[0].clone() + t) % self.pn.clone();
            return;
        }
        let t = self.mul_vec(a, b);
        for (x, y) in acc.iter_mut().zip(t) {
            *x = (x.clone() + y) % self.pn.clone();
        }
    }

    /// Reduces a coefficient vector of any length modulo `m(t)`.
    fn reduce_poly(&self, mut prod: Vec<S>) -> Vec<S> {
        let d = self.degree();
        for k in (d..prod.len()).rev() {
            let c = prod[k].clone();
            if c.is_zero() {
                continue;
            }
            for i in 0..d {
                let t = (c.clone() * self.modulus[i].clone()) % self.pn.clone();
                prod[k - d + i] = (prod[k - d + i].clone() - t).mod_floor(&self.pn);
            }
            prod[k] = S::zero();
        }
        prod.truncate(d);
        prod
    }

    pub fn pow_vec(&self, a: &[S], exp: &BigUint) -> Vec<S> {
        let mut result = self.one_vec();
        let bits = exp.bits();
        for i in (0..bits).rev() {
            result = self.mul_vec(&result, &result);
            if exp.bit(i) {
                result = self.mul_vec(&result, a);
            }
        }
        result
    }

    fn v_p(&self, c: &S) -> u32 {
        let mut c = c.clone();
        let mut k = 0;
        while (c.clone() % self.p.clone()).is_zero() {
            c = c / self.p.clone();
            k += 1;
        }
        k
    }

    pub fn valuation_vec(&self, a: &[S]) -> Valuation {
        let mut best: Option<Rational> = None;
        for (i, c) in a.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut v = Rational::from_integer(self.v_p(c) as i64);
            if self.kind == ExtensionKind::Eisenstein {
                v += Rational::new(i as i64, self.e as i64);
            }
            best = Some(match best {
                Some(b) if b <= v => b,
                _ => v,
            });
        }
        best.map(Valuation::Finite).unwrap_or(Valuation::Infinite)
    }

    /// Inverse of a unit: residue inverse `a^{q-2}` refined by Newton
    /// iteration `b <- b (2 - a b)`.
    pub fn inv_vec(&self, a: &[S]) -> Result<Vec<S>> {
        let v = self.valuation_vec(a);
        if v != Valuation::ZERO {
            return Err(Error::NotAUnit(v));
        }
        let q = self.residue_cardinality();
        let one = self.one_vec();
        let two = self.add_vec(&one, &one);
        let mut b = if q == BigUint::from(2u32) { one.clone() } else { self.pow_vec(a, &(q - 2u32)) };
        let cap = 2 * (64 - (self.precision() as u64 * self.e as u64).leading_zeros()) as usize + 4;
        for _ in 0..cap {
            let r = self.mul_vec(a, &b);
            if r == one {
                return Ok(b);
            }
            b = self.mul_vec(&b, &self.sub_vec(&two, &r));
        }
        debug_assert_eq!(self.mul_vec(a, &b), one);
        Ok(b)
    }

    /// Divides by the uniformizer (`p` when unramified, `t` when Eisenstein).
    /// The element must have positive valuation. The top digit of the result
    /// is not determined by the input and is filled with zero.
    pub fn div_uniformizer_vec(&self, a: &[S]) -> Result<Vec<S>> {
        let v = self.valuation_vec(a);
        if v.is_infinite() {
            return Ok(self.zero_vec());
        }
        if !v.is_positive() {
            return Err(Error::NotDivisible { dividend: v, divisor: Valuation::ratio(1, self.e as i64) });
        }
        if self.kind != ExtensionKind::Eisenstein {
            return Ok(a.iter().map(|c| c.clone() / self.p.clone()).collect());
        }
        // m(t) = t^e + sum a_i t^i with p | a_i, so t^e = -p U for the unit
        // U = sum (a_i / p) t^i and 1/t = -t^{e-1} U^{-1} / p.
        let d = self.degree();
        let u: Vec<S> = self.modulus[..d].iter().map(|c| c.clone() / self.p.clone()).collect();
        let u_inv = self.inv_vec(&u)?;
        let mut shifted = self.zero_vec();
        shifted[..d - 1].clone_from_slice(&a[1..d]);
        let c0 = a[0].clone() / self.p.clone();
        let mut t_top = self.zero_vec();
        t_top[d - 1] = S::one();
        let term = self.mul_vec(&self.mul_vec(&t_top, &u_inv), &self.int_vec(&c0.to_bigint()));
        Ok(self.sub_vec(&shifted, &term))
    }

    /// The image of `t` under Frobenius, computed once per ring by lifting
    /// `t^p` to a root of `m` with Newton's method.
    pub fn frobenius_image(&self) -> Result<&[S]> {
        match self.kind {
            ExtensionKind::Eisenstein => return Err(Error::UnsupportedExtension("eisenstein")),
            ExtensionKind::Trivial => {
                return Ok(self.frobenius_image.get_or_init(|| self.zero_vec()));
            }
            ExtensionKind::Unramified => {}
        }
        if let Some(img) = self.frobenius_image.get() {
            return Ok(img);
        }
        let mut t = self.zero_vec();
        t[1] = S::one();
        let mut s = self.pow_vec(&t, &BigUint::from(self.p()));
        for _ in 0..128 {
            let (val, der) = self.eval_modulus(&s);
            if self.is_zero_vec(&val) {
                break;
            }
            let step = self.mul_vec(&val, &self.inv_vec(&der)?);
            s = self.sub_vec(&s, &step);
        }
        debug_assert!(self.is_zero_vec(&self.eval_modulus(&s).0));
        Ok(self.frobenius_image.get_or_init(|| s))
    }

    /// `(m(s), m'(s))` by Horner.
    fn eval_modulus(&self, s: &[S]) -> (Vec<S>, Vec<S>) {
        let mut val = self.zero_vec();
        let mut der = self.zero_vec();
        for c in self.modulus.iter().rev() {
            der = self.add_vec(&self.mul_vec(&der, s), &val);
            val = self.mul_vec(&val, s);
            val[0] = (val[0].clone() + c.clone()) % self.pn.clone();
        }
        (val, der)
    }

    pub fn frobenius_vec(&self, a: &[S]) -> Result<Vec<S>> {
        let s = self.frobenius_image()?.to_vec();
        if self.kind == ExtensionKind::Trivial {
            return Ok(a.to_vec());
        }
        let mut acc = self.zero_vec();
        for c in a.iter().rev() {
            acc = self.mul_vec(&acc, &s);
            acc[0] = (acc[0].clone() + c.clone()) % self.pn.clone();
        }
        Ok(acc)
    }

    /// Order of the unit group of `O / p^N`, namely `(q - 1) q^{eN - 1}`.
    pub fn unit_group_order(&self) -> BigUint {
        let q = self.residue_cardinality();
        let length = self.e * self.precision();
        (&q - 1u32) * q.pow(length - 1)
    }
}
