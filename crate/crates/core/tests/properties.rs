//! Randomized algebraic laws, one proptest per invariant.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use padyn::dynamics::{condense, induced_root_permutation, realizing_polynomial, rigidity_check, verify_isogeny};
use padyn::formal_group::{lt_endomorphism, lubin_tate_group, LubinTateData};
use padyn::json::{series_from_json, series_to_json};
use padyn::newton::{certify_roots, roots_in_ring, roots_in_ring_with, NewtonPolygon, Polynomial, RootSearchOptions};
use padyn::padic::{ExtensionSpec, PrimeContext, Rational, RingElement, Valuation};
use padyn::series::TruncatedSeries;
use proptest::prelude::*;

type El = RingElement<i128>;
type Ser = TruncatedSeries<i128>;

fn zp(n: u32) -> Arc<ExtensionSpec<i128>> {
    ExtensionSpec::zp(3, n).unwrap()
}

fn ext(kind: u8, n: u32) -> Arc<ExtensionSpec<i128>> {
    let ctx = PrimeContext::new(3, n).unwrap();
    let big = |c: &[i64]| c.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
    match kind {
        0 => ExtensionSpec::trivial(ctx).unwrap(),
        1 => ExtensionSpec::unramified(ctx, &big(&[1, 0, 1])).unwrap(),
        _ => ExtensionSpec::eisenstein(ctx, &big(&[-3, 0, 1])).unwrap(),
    }
}

fn element(spec: &Arc<ExtensionSpec<i128>>, cs: &[i64]) -> El {
    let cs: Vec<BigInt> = cs.iter().take(spec.degree()).map(|&c| BigInt::from(c)).collect();
    RingElement::from_bigints(spec, &cs).unwrap()
}

fn series(spec: &Arc<ExtensionSpec<i128>>, cs: &[i64], trunc: usize) -> Ser {
    let mut c = cs.to_vec();
    c.insert(0, 0);
    TruncatedSeries::from_ints(spec, &c, trunc)
}

/// A series whose linear coefficient is forced to be a unit.
fn invertible(spec: &Arc<ExtensionSpec<i128>>, cs: &[i64], trunc: usize) -> Ser {
    let mut c = cs.to_vec();
    if c[0] % 3 == 0 {
        c[0] += 1;
    }
    series(spec, &c, trunc)
}

/// Noninvertible of Weierstrass degree `d`: `p`-divisible below `d`, unit at `d`.
fn noninvertible(spec: &Arc<ExtensionSpec<i128>>, cs: &[i64], d: usize, trunc: usize) -> Ser {
    let mut c: Vec<i64> = cs.to_vec();
    for (i, x) in c.iter_mut().enumerate() {
        let degree = i + 1;
        if degree < d {
            *x = 3 * (*x % 1000);
        } else if degree == d && *x % 3 == 0 {
            *x += 1;
        }
    }
    if c[0] == 0 && d > 1 {
        c[0] = 3;
    }
    series(spec, &c, trunc)
}

fn coeffs(n: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-10_000i64..10_000, n)
}

/// The `(p, x)`-adic order `min_i (v(c_i) + i)` over the known coefficients.
fn px_order(s: &Ser) -> Valuation {
    (0..=s.trunc())
        .map(|i| match s.coeff(i).valuation() {
            Valuation::Finite(v) => Valuation::Finite(v + Rational::from_integer(i as i64)),
            Valuation::Infinite => Valuation::Infinite,
        })
        .min()
        .unwrap_or(Valuation::Infinite)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn ring_axioms(kind in 0u8..3, a in coeffs(2), b in coeffs(2), c in coeffs(2)) {
        let r = ext(kind, 12);
        let (a, b, c) = (element(&r, &a), element(&r, &b), element(&r, &c));
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a - &a, RingElement::zero(&r));
    }

    #[test]
    fn unit_inverse(kind in 0u8..3, a in coeffs(2)) {
        let r = ext(kind, 12);
        let a = element(&r, &a);
        prop_assume!(a.is_unit());
        prop_assert!((&a * &a.inv().unwrap()).is_one());
    }

    #[test]
    fn ultrametric(kind in 0u8..3, a in coeffs(2), b in coeffs(2)) {
        let r = ext(kind, 12);
        let (a, b) = (element(&r, &a), element(&r, &b));
        let (va, vb, vs) = (a.valuation(), b.valuation(), (&a + &b).valuation());
        prop_assert!(vs >= va.min(vb));
        if va != vb {
            prop_assert_eq!(vs, va.min(vb));
        }
    }

    #[test]
    fn frobenius_is_a_ring_map(a in coeffs(2), b in coeffs(2)) {
        let r = ext(1, 12);
        let (a, b) = (element(&r, &a), element(&r, &b));
        prop_assert_eq!((&a * &b).frobenius().unwrap(), &a.frobenius().unwrap() * &b.frobenius().unwrap());
        prop_assert_eq!((&a + &b).frobenius().unwrap(), &a.frobenius().unwrap() + &b.frobenius().unwrap());
        prop_assert_eq!(a.frobenius().unwrap().frobenius().unwrap(), a);
    }

    #[test]
    fn composition_associative(a in coeffs(10), b in coeffs(10), c in coeffs(10)) {
        let r = zp(20);
        let (a, b, c) = (series(&r, &a, 10), series(&r, &b, 10), series(&r, &c, 10));
        prop_assert_eq!(a.compose(&b.compose(&c).unwrap()).unwrap(), a.compose(&b).unwrap().compose(&c).unwrap());
    }

    #[test]
    fn inverse_round_trip(kind in 0u8..3, u in coeffs(10)) {
        let r = ext(kind, 15);
        let u = invertible(&r, &u, 10);
        let inv = u.compositional_inverse().unwrap();
        let x = TruncatedSeries::identity(&r, 10);
        prop_assert_eq!(u.compose(&inv).unwrap(), x.clone());
        prop_assert_eq!(inv.compose(&u).unwrap(), x);
    }

    #[test]
    fn iterate_homomorphism(u in coeffs(10), m in 0u64..6, n in 0u64..6) {
        let r = zp(20);
        let u = series(&r, &u, 10);
        prop_assert_eq!(u.iterate(m).unwrap().compose(&u.iterate(n).unwrap()).unwrap(), u.iterate(m + n).unwrap());
    }

    #[test]
    fn weierstrass_degree_multiplies(a in coeffs(24), b in coeffs(24), da in 1usize..5, db in 1usize..5) {
        let r = zp(20);
        let f = noninvertible(&r, &a, da, 24);
        let g = noninvertible(&r, &b, db, 24);
        prop_assert_eq!(f.weierstrass_degree(), Some(da));
        prop_assert_eq!(g.weierstrass_degree(), Some(db));
        prop_assert_eq!(f.compose(&g).unwrap().weierstrass_degree(), Some(da * db));
    }

    #[test]
    fn evaluation_respects_composition(a in coeffs(12), b in coeffs(12), alpha in -1000i64..1000, k in 1u32..4) {
        let r = zp(20);
        let (a, b) = (series(&r, &a, 12), series(&r, &b, 12));
        let alpha = RingElement::from_int(&r, alpha * 3i64.pow(k));
        prop_assume!(!alpha.is_zero());
        let inner = b.evaluate(&alpha).unwrap();
        prop_assume!(inner.value.valuation().is_positive());
        let nested = a.evaluate(&inner.value).unwrap();
        let direct = a.compose(&b).unwrap().evaluate(&alpha).unwrap();
        let tolerance = direct.precision.min(nested.precision).min(inner.precision);
        prop_assert!((&direct.value - &nested.value).valuation().at_least(tolerance));
    }

    #[test]
    fn padic_iterates_converge(u in coeffs(8), r_mult in 1u64..3) {
        let spec = zp(20);
        let u = invertible(&spec, &u, 8);
        let r = 2 * r_mult;
        let mut prev = u.iterate(r).unwrap();
        let mut last = Valuation::ZERO;
        for _ in 0..3 {
            let next = prev.iterate(3).unwrap();
            let order = px_order(&next.sub(&prev).unwrap());
            prop_assert!(order >= last, "{} after {}", order, last);
            last = order;
            prev = next;
        }
    }

    #[test]
    fn newton_polygon_of_known_roots(units in prop::collection::vec((1i64..200, 1usize..5), 1..6)) {
        let r = ext(2, 20);
        let pi = RingElement::uniformizer(&r);
        let mut expected: BTreeMap<Rational, usize> = BTreeMap::new();
        let mut roots = Vec::new();
        for (u, k) in units {
            let unit = RingElement::from_int(&r, 3 * u + 1);
            roots.push(&unit * &pi.pow(k as u64));
            *expected.entry(Rational::new(k as i64, 2)).or_default() += 1;
        }
        let poly = Polynomial::from_roots(&r, &roots).unwrap();
        let seen: BTreeMap<Rational, usize> = NewtonPolygon::of_polynomial(&poly).root_valuations().into_iter().collect();
        prop_assert_eq!(seen, expected);
    }

    #[test]
    fn found_roots_are_certified(roots in prop::collection::vec(-30i64..30, 1..5), tail in coeffs(2)) {
        let r = zp(12);
        let rs: Vec<El> = roots.iter().map(|&a| RingElement::from_int(&r, a)).collect();
        let other = Polynomial::from_ints(&r, &[3 * (tail[0] % 50) + 1, tail[1] % 50, 3]);
        let f = Polynomial::from_roots(&r, &rs).unwrap().mul(&other).unwrap();
        let tolerance = r.horizon() / Rational::from_integer(2);
        let found_all = |found: &[El]| rs.iter().all(|a| found.iter().any(|b| (b - a).valuation().at_least(tolerance)));

        let quick = roots_in_ring(&f, &r).unwrap();
        let quick_roots: Vec<El> = quick.roots.into_iter().map(|x| x.root).collect();
        prop_assert!(certify_roots(&f, &quick_roots).is_ok());
        prop_assert!(found_all(&quick_roots) || !quick.unresolved.is_empty());

        let opts = RootSearchOptions { max_depth: 12, node_budget: 100_000 };
        let deep = roots_in_ring_with(&f, &r, opts).unwrap();
        prop_assert!(!deep.exhausted);
        let deep_roots: Vec<El> = deep.roots.into_iter().map(|x| x.root).collect();
        prop_assert!(certify_roots(&f, &deep_roots).is_ok());
        prop_assert!(found_all(&deep_roots));
    }

    #[test]
    fn json_round_trip(kind in 0u8..3, cs in prop::collection::vec(coeffs(2), 1..8)) {
        let r = ext(kind, 15);
        let els: Vec<El> = cs.iter().map(|c| element(&r, c)).collect();
        let s = TruncatedSeries::from_elements(&r, &els, 10).unwrap();
        let doc = series_to_json(&s);
        prop_assert_eq!(series_from_json::<i128>(&doc).unwrap(), s);
    }

    #[test]
    fn condensation_intertwines(odd in coeffs(8), d in 2usize..4) {
        let r = zp(20);
        let mut f = TruncatedSeries::zero(&r, 16);
        for (i, &c) in odd.iter().enumerate().take_while(|(i, _)| d * i < 16) {
            f.set_coeff(d * i + 1, &RingElement::from_int(&r, c));
        }
        let g = condense(&f, d).unwrap();
        let h = TruncatedSeries::monomial(&r, d, 16);
        let cert = verify_isogeny(&h, &f, &g);
        prop_assert!(cert.passed(), "{}", cert);
    }

    #[test]
    fn isogenies_compose(odd in coeffs(6), s in coeffs(8)) {
        let r = zp(20);
        let mut f1 = TruncatedSeries::zero(&r, 12);
        for (i, &c) in odd.iter().enumerate() {
            f1.set_coeff(2 * i + 1, &RingElement::from_int(&r, c));
        }
        let f2 = condense(&f1, 2).unwrap();
        let h1 = TruncatedSeries::monomial(&r, 2, 12);
        let h2 = invertible(&r, &s, f2.trunc());
        let f3 = h2.compose(&f2).unwrap().compose(&h2.compositional_inverse().unwrap()).unwrap();
        prop_assert!(verify_isogeny(&h2, &f2, &f3).passed());
        let h = h2.compose(&h1.truncate(f2.trunc())).unwrap();
        let cert = verify_isogeny(&h, &f1.truncate(f2.trunc()), &f3);
        prop_assert!(cert.passed(), "{}", cert);
    }

    #[test]
    fn rigidity_on_explicit_polynomials(roots in prop::collection::vec(-9i64..9, 0..5), a in coeffs(4), c in coeffs(2)) {
        let r = zp(20);
        let pts: Vec<El> = roots.iter().map(|&k| RingElement::from_int(&r, 3 * k)).collect();
        let base = Polynomial::from_ints(&r, &a);
        let bump = Polynomial::from_ints(&r, &[3 * c[0] + 1, c[1]]);
        let other = base.sub(&Polynomial::from_roots(&r, &pts).unwrap().mul(&bump).unwrap()).unwrap();
        let check = rigidity_check(&base, &other, &pts).unwrap();
        prop_assert!(check.status == padyn::certificate::Status::Pass, "{}", check);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn lubin_tate_endomorphisms(a in -20i64..20, b in -20i64..20) {
        let r = zp(6);
        let lt = LubinTateData::new(TruncatedSeries::from_ints(&r, &[0, 3, 0, 1], 8)).unwrap();
        let law = lubin_tate_group(&lt, 8).unwrap();
        let endo = |c: i64| lt_endomorphism(&RingElement::from_int(&r, c), &lt, 8).unwrap();
        let (ea, eb) = (endo(a), endo(b));
        prop_assert_eq!(ea.compose(&eb).unwrap(), endo(a * b));
        prop_assert_eq!(law.add_series(&ea, &eb).unwrap(), endo(a + b));
        prop_assert!(ea.commutator_defect(&eb).unwrap().is_zero());
    }

    #[test]
    fn galois_action_commutes_with_frobenius(j in 0usize..5, extra in coeffs(3)) {
        let (f, roots) = padyn::battery::quintic_example::<i128>(12).unwrap();
        let w = realizing_polynomial(&roots[0], &roots[j]).unwrap();
        // Adding a multiple of f does not change the values at the roots.
        let minus: Vec<i64> = extra.iter().map(|c| -c).collect();
        let w = w.sub(&f.mul(&Polynomial::from_ints(f.spec(), &minus)).unwrap()).unwrap();
        let report = induced_root_permutation(&w, &roots, &f, None).unwrap();
        prop_assert_eq!(report.mapping[0], j);
        prop_assert_eq!(report.commutes_with_frobenius, Some(true));
    }
}
