use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::certificate::Check;
use crate::error::Result;
use crate::newton::{NewtonPolygon, Polynomial};
use crate::padic::{ExtensionSpec, PrimeContext, Rational, RingElement};
use crate::scalar::Scalar;
use crate::series::TruncatedSeries;

/// Truncation used by the randomized series properties.
pub const PROPERTY_TRUNC: usize = 12;

type Case = fn(&mut ChaCha8Rng, u32) -> Result<bool>;

/// Seeded randomized checks of the core algebraic laws, `cases` draws each.
pub fn property_suites<S: Scalar>(seed: u64, cases: usize, precision: u32) -> Vec<Check> {
    let suites: [(&str, Case); 5] = [
        ("composition associativity", associativity::<S>),
        ("inverse round trip", inverse_round_trip::<S>),
        ("iterate homomorphism", iterate_homomorphism::<S>),
        ("Newton polygon of known factors", newton_known_factors::<S>),
        ("Frobenius homomorphism", frobenius_homomorphism::<S>),
    ];
    suites
        .iter()
        .enumerate()
        .map(|(i, (name, case))| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(i as u64));
            let mut passed = 0;
            let mut first_error = None;
            for _ in 0..cases {
                match case(&mut rng, precision) {
                    Ok(true) => passed += 1,
                    Ok(false) => {}
                    Err(e) => {
                        first_error.get_or_insert(e);
                    }
                }
            }
            let mut detail = format!("{passed}/{cases} cases");
            if let Some(e) = first_error {
                detail.push_str(&format!("; error: {e}"));
            }
            Check::from_bool(*name, passed == cases, detail)
        })
        .collect()
}

fn zp<S: Scalar>(precision: u32) -> Result<Arc<ExtensionSpec<S>>> {
    ExtensionSpec::zp(3, precision)
}

fn random_element<S: Scalar>(rng: &mut ChaCha8Rng, spec: &Arc<ExtensionSpec<S>>) -> RingElement<S> {
    let cs: Vec<BigInt> = (0..spec.degree()).map(|_| BigInt::from(rng.gen::<i64>())).collect();
    RingElement::from_bigints(spec, &cs).expect("degree-many coefficients")
}

/// A series without constant term; `unit_linear` forces an invertible one.
fn random_series<S: Scalar>(
    rng: &mut ChaCha8Rng,
    spec: &Arc<ExtensionSpec<S>>,
    trunc: usize,
    unit_linear: bool,
) -> TruncatedSeries<S> {
    let mut f = TruncatedSeries::zero(spec, trunc);
    for i in 1..=trunc {
        let mut c = random_element(rng, spec);
        if i == 1 && unit_linear && !c.is_unit() {
            c = &c + &RingElement::one(spec);
        }
        f.set_coeff(i, &c);
    }
    f
}

fn associativity<S: Scalar>(rng: &mut ChaCha8Rng, precision: u32) -> Result<bool> {
    let z = zp::<S>(precision)?;
    let [a, b, c] = [0, 1, 2].map(|_| random_series(rng, &z, PROPERTY_TRUNC, false));
    Ok(a.compose(&b.compose(&c)?)? == a.compose(&b)?.compose(&c)?)
}

fn inverse_round_trip<S: Scalar>(rng: &mut ChaCha8Rng, precision: u32) -> Result<bool> {
    let z = zp::<S>(precision)?;
    let u = random_series(rng, &z, PROPERTY_TRUNC, true);
    let inv = u.compositional_inverse()?;
    let x = TruncatedSeries::identity(&z, PROPERTY_TRUNC);
    Ok(u.compose(&inv)? == x && inv.compose(&u)? == x)
}

fn iterate_homomorphism<S: Scalar>(rng: &mut ChaCha8Rng, precision: u32) -> Result<bool> {
    let z = zp::<S>(precision)?;
    let invertible = rng.gen_bool(0.5);
    let u = random_series(rng, &z, PROPERTY_TRUNC, invertible);
    let m = rng.gen_range(0..6u64);
    let n = rng.gen_range(0..6u64);
    Ok(u.iterate(m)?.compose(&u.iterate(n)?)? == u.iterate(m + n)?)
}

/// `prod (x - r_i)` times a linear unit factor, with `v(r_i)` chosen; the
/// positive slopes of the polygon must reproduce the chosen valuations.
fn newton_known_factors<S: Scalar>(rng: &mut ChaCha8Rng, precision: u32) -> Result<bool> {
    let z = zp::<S>(precision)?;
    let count = rng.gen_range(1..=6);
    let mut expected: BTreeMap<Rational, usize> = BTreeMap::new();
    let mut roots = Vec::with_capacity(count);
    // The constant term has valuation sum(k); it must stay below N.
    let mut budget = precision.saturating_sub(1);
    for _ in 0..count {
        let k = rng.gen_range(1..=4u32).min(budget);
        if k == 0 {
            break;
        }
        budget -= k;
        let unit = 3 * rng.gen_range(-100..=100i64) + rng.gen_range(1..=2);
        roots.push(RingElement::from_bigint(&z, &(BigInt::from(unit) * BigInt::from(3).pow(k))));
        *expected.entry(Rational::from_integer(k as i64)).or_default() += 1;
    }
    let unit_factor =
        Polynomial::from_ints(&z, &[3 * rng.gen_range(-50..=50) + rng.gen_range(1..=2), rng.gen_range(-50..=50)]);
    let poly = Polynomial::from_roots(&z, &roots)?.mul(&unit_factor)?;
    let mut seen: BTreeMap<Rational, usize> = BTreeMap::new();
    for (v, n) in NewtonPolygon::of_polynomial(&poly).root_valuations() {
        if v > Rational::from_integer(0) {
            *seen.entry(v).or_default() += n;
        }
    }
    Ok(seen == expected)
}

fn frobenius_homomorphism<S: Scalar>(rng: &mut ChaCha8Rng, precision: u32) -> Result<bool> {
    let ctx = PrimeContext::new(3, precision)?;
    let modulus: &[i64] = if rng.gen_bool(0.5) { &[1, 0, 1] } else { &[1, 2, 0, 1] };
    let spec = ExtensionSpec::<S>::unramified(ctx, &modulus.iter().map(|&c| BigInt::from(c)).collect::<Vec<_>>())?;
    let a = random_element(rng, &spec);
    let b = random_element(rng, &spec);
    let (fa, fb) = (a.frobenius()?, b.frobenius()?);
    let mut orbit = a.clone();
    for _ in 0..spec.residue_degree() {
        orbit = orbit.frobenius()?;
    }
    Ok((&a * &b).frobenius()? == &fa * &fb && (&a + &b).frobenius()? == &fa + &fb && orbit == a)
}
