//! The worked example end to end: the series `f_F = 3x + x^3`, its
//! condensation `f`, the invertible `u = 4x + x^2`, the second system built
//! from `g_G = [9]_F`, and the quintic Frobenius example. Every identity is
//! recomputed; known discrepancies in the printed example are reported as
//! findings.

mod properties;

use std::collections::BTreeSet;
use std::sync::Arc;

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub use properties::{property_suites, PROPERTY_TRUNC};

use crate::certificate::{Certificate, Check, Status};
use crate::dynamics::{
    condense, fixed_point_check, frobenius_polynomial, induced_root_permutation, package_verify, preper_ladder,
    realizing_polynomial, rigidity_check, verify_isogeny, DynamicalPackage, FrobeniusMap, LadderDepths, ZpIndex,
};
use crate::error::{Error, Result};
use crate::formal_group::{
    lt_endomorphism, lubin_tate_group, torsion_ladder, verify_endomorphism, verify_group_law, LubinTateData,
};
use crate::newton::{
    certify_roots, iterate_ladder, multiplicity_at_precision, roots_in_ring, NewtonPolygon, Polynomial,
};
use crate::padic::fp_poly::{first_irreducible, is_irreducible};
use crate::padic::{ExtensionSpec, PrimeContext, Rational, RingElement};
use crate::scalar::Scalar;
use crate::series::TruncatedSeries;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BatteryConfig {
    pub precision: u32,
    pub trunc: usize,
    pub seed: u64,
    /// Cases per randomized property.
    pub cases: usize,
}

impl Default for BatteryConfig {
    fn default() -> Self {
        BatteryConfig { precision: 20, trunc: 64, seed: 0, cases: 200 }
    }
}

/// Names of the asserted checks, in order.
pub const CRITERIA: [&str; 15] = [
    "condensation of f_F",
    "condensation of g_G",
    "f commutes with u",
    "x^2 isogenies",
    "g_G is [9] on F",
    "g commutes with u~",
    "Lubin-Tate group of f_F",
    "[2] and [3] on F",
    "torsion ladders",
    "Newton polygon of g",
    "periodic points of u within torsion of f",
    "fixed points of u",
    "Frobenius orbit of quintic roots",
    "rigidity suite",
    "property suites",
];

pub const F_F: [i64; 4] = [0, 3, 0, 1];
pub const F: [i64; 4] = [0, 9, 6, 1];
pub const U: [i64; 3] = [0, 4, 1];
pub const G_G: [i64; 10] = [0, 9, 0, 30, 0, 27, 0, 9, 0, 1];
pub const G: [i64; 10] = [0, 81, 540, 1386, 1782, 1287, 546, 135, 18, 1];
pub const U_TILDE: [i64; 6] = [0, 25, 50, 35, 10, 1];
pub const U_G: [i64; 6] = [0, 5, 5, 0, 0, 1];

struct Examples<S: Scalar> {
    z: Arc<ExtensionSpec<S>>,
    trunc: usize,
}

impl<S: Scalar> Examples<S> {
    fn new(cfg: &BatteryConfig) -> Result<Self> {
        Ok(Examples { z: ExtensionSpec::zp(3, cfg.precision)?, trunc: cfg.trunc })
    }

    fn series(&self, c: &[i64]) -> TruncatedSeries<S> {
        TruncatedSeries::from_ints(&self.z, c, self.trunc)
    }

    fn poly(&self, c: &[i64]) -> Polynomial<S> {
        Polynomial::from_ints(&self.z, c)
    }

    fn int(&self, c: i64) -> RingElement<S> {
        RingElement::from_int(&self.z, c)
    }
}

/// Runs one asserted check by index into [`CRITERIA`].
pub fn run_criterion<S: Scalar>(index: usize, cfg: &BatteryConfig) -> Check {
    let name = CRITERIA[index];
    let result = Examples::<S>::new(cfg).and_then(|ex| match index {
        0 => condensation_f(&ex),
        1 => condensation_g(&ex),
        2 => commute_f_u(&ex),
        3 => isogenies(&ex),
        4 => nine_on_f(&ex),
        5 => commute_g_u_tilde(&ex),
        6 => lubin_tate_law::<S>(),
        7 => multiplication_series::<S>(),
        8 => ladders(&ex),
        9 => newton_of_g(&ex),
        10 => periodic_within_torsion(&ex),
        11 => fixed_points(&ex),
        12 => quintic_orbit::<S>(cfg.precision),
        13 => rigidity_suite::<S>(cfg),
        14 => Ok(summarize(property_suites::<S>(cfg.seed, cfg.cases, cfg.precision))),
        _ => unreachable!("{} checks", CRITERIA.len()),
    });
    match result {
        Ok((status, detail)) => Check::new(name, status, detail),
        Err(Error::TruncationTooSmall { needed, available }) => {
            Check::skipped(name, format!("needs truncation {needed}, have {available}"))
        }
        Err(e) => Check::fail(name, e.to_string()),
    }
}

/// The asserted checks followed by the findings and the two package runs.
pub fn verify_examples<S: Scalar>(cfg: &BatteryConfig) -> Certificate {
    let mut cert = Certificate::new();
    for i in 0..CRITERIA.len() {
        cert.push(run_criterion::<S>(i, cfg));
    }
    match Examples::<S>::new(cfg) {
        Ok(ex) => {
            cert.checks.extend(findings(&ex));
            cert.push(package_check("package (f, u; F, f_F; x^2)", first_package(&ex)));
            cert.push(package_check("package (g, u~; g_G; x^2)", Ok(second_package(&ex))));
        }
        Err(e) => cert.push(Check::fail("examples", e.to_string())),
    }
    cert
}

type Outcome = Result<(Status, String)>;

fn pass_if(ok: bool, detail: impl Into<String>) -> Outcome {
    Ok((if ok { Status::Pass } else { Status::Fail }, detail.into()))
}

fn need<S: Scalar>(f: &TruncatedSeries<S>, trunc: usize) -> Result<()> {
    if f.trunc() < trunc {
        return Err(Error::TruncationTooSmall { needed: trunc, available: f.trunc() });
    }
    Ok(())
}

/// `f` equals the integer coefficients `c` (and zero beyond them).
fn equals_ints<S: Scalar>(f: &TruncatedSeries<S>, c: &[i64]) -> bool {
    f.int_coeffs().iter().enumerate().all(|(i, v)| *v == BigInt::from(c.get(i).copied().unwrap_or(0)))
}

fn condensation_f<S: Scalar>(ex: &Examples<S>) -> Outcome {
    let f = condense(&ex.series(&F_F), 2)?;
    need(&f, 3)?;
    pass_if(equals_ints(&f, &F), format!("condense(3x + x^3, 2) = {f}"))
}

fn condensation_g<S: Scalar>(ex: &Examples<S>) -> Outcome {
    let g = condense(&ex.series(&G_G), 2)?;
    need(&g, 9)?;
    pass_if(equals_ints(&g, &G), format!("condense(g_G, 2) = {g}"))
}

fn commute_f_u<S: Scalar>(ex: &Examples<S>) -> Outcome {
    let (f, u) = (ex.series(&F), ex.series(&U));
    let defect = f.commutator_defect(&u)?;
    let oracle = [0, 36, 105, 112, 54, 12, 1];
    let fu = f.compose(&u)?;
    let uf = u.compose(&f)?;
    pass_if(
        defect.is_zero() && equals_ints(&fu, &oracle) && equals_ints(&uf, &oracle),
        format!("f(u(x)) = u(f(x)) = {fu}"),
    )
}

fn isogenies<S: Scalar>(ex: &Examples<S>) -> Outcome {
    let h = ex.series(&[0, 0, 1]);
    let first = verify_isogeny(&h, &ex.series(&F_F), &ex.series(&F));
    let second = verify_isogeny(&h, &ex.series(&G_G), &ex.series(&G));
    pass_if(
        first.passed() && second.passed(),
        format!("h o f_F = f o h: {}; h o g_G = g o h: {}", first.passed(), second.passed()),
    )
}

fn nine_on_f<S: Scalar>(ex: &Examples<S>) -> Outcome {
    let f_f = ex.series(&F_F);
    let twice = f_f.iterate(2)?;
    let expanded = f_f.scale_int(3).add(&f_f.pow(3))?;
    let ok = equals_ints(&twice, &G_G) && twice == expanded;
    let status = if ok { Status::Finding } else { Status::Fail };
    Ok((status, format!("f_F(f_F(x)) = {twice}, so g_G = [3] o [3] = [9] on F")))
}

fn commute_g_u_tilde<S: Scalar>(ex: &Examples<S>) -> Outcome {
    let (g, u) = (ex.series(&G), ex.series(&U_TILDE));
    need(&g, 3)?;
    let defect = g.commutator_defect(&u)?;
    let gu = g.compose(&u)?;
    let ug = u.compose(&g)?;
    let spot = [2025, 341550, 23009085];
    let spot_ok = (1..=3).all(|i| gu.coeff(i) == ex.int(spot[i - 1]) && ug.coeff(i) == ex.int(spot[i - 1]));
    pass_if(
        defect.is_zero() && spot_ok,
        format!("defect zero mod (3^{}, x^{}); low coefficients {:?}", ex.z.precision(), g.trunc() + 1, spot),
    )
}

fn lubin_tate_law<S: Scalar>() -> Outcome {
    let z = ExtensionSpec::<S>::zp(3, 3)?;
    let lt = LubinTateData::new(TruncatedSeries::from_ints(&z, &F_F, 4))?;
    let law = lubin_tate_group(&lt, 4)?;
    let mut coeffs_ok = true;
    for k in 0..=3 {
        for i in 0..=k {
            let expected = match (i, k - i) {
                (1, 0) | (0, 1) => 1,
                (2, 1) | (1, 2) => 17,
                _ => 0,
            };
            coeffs_ok &= law.coeff(i, k - i) == RingElement::from_int(&z, expected);
        }
    }
    let group = verify_group_law(&law).passed();
    let endo = verify_endomorphism(&law, &lt.f).status == Status::Pass;
    let f = TruncatedSeries::from_ints(&z, &F, 4);
    let not_endo = verify_endomorphism(&law, &f).status == Status::Fail;

    let big = LubinTateData::new(TruncatedSeries::from_ints(&z, &F_F, 12))?;
    let law12 = lubin_tate_group(&big, 12)?;
    let law12_ok = verify_group_law(&law12).passed() && verify_endomorphism(&law12, &big.f).status == Status::Pass;
    pass_if(
        coeffs_ok && group && endo && not_endo && law12_ok,
        format!(
            "F = x + y + 17x^2y + 17xy^2 mod (27, deg 4): {coeffs_ok}; group law {group}; f_F endomorphism {endo}; \
             f rejected {not_endo}; degree 12 law {law12_ok}"
        ),
    )
}

fn multiplication_series<S: Scalar>() -> Outcome {
    let z = ExtensionSpec::<S>::zp(3, 3)?;
    let lt = LubinTateData::new(TruncatedSeries::from_ints(&z, &F_F, 4))?;
    let two = lt_endomorphism(&RingElement::from_int(&z, 2), &lt, 4)?;
    let three = lt_endomorphism(&RingElement::from_int(&z, 3), &lt, 4)?;
    let ok = two == TruncatedSeries::from_ints(&z, &[0, 2, 0, 7, 0], 4) && three == lt.f;
    pass_if(ok, format!("[2] = {two}, [3] = {three}"))
}

fn ladders<S: Scalar>(ex: &Examples<S>) -> Outcome {
    let lt = LubinTateData::new(ex.series(&F_F))?;
    let torsion = torsion_ladder(&lt, 3)?;
    let f_ladder = iterate_ladder(&ex.series(&F), 2)?;
    let pairs = |l: &crate::newton::RootLadderLevel| {
        l.new_roots.iter().map(|v| format!("({}, {})", v.count, v.valuation)).collect::<Vec<_>>().join(" ")
    };
    let f_ok = f_ladder.len() == 2
        && f_ladder[0].new_roots.len() == 1
        && f_ladder[0].new_roots[0].count == 2
        && f_ladder[0].new_roots[0].valuation == Rational::from_integer(1)
        && f_ladder[1].new_roots.len() == 1
        && f_ladder[1].new_roots[0].count == 6
        && f_ladder[1].new_roots[0].valuation == Rational::new(1, 3);
    let t_ok = torsion.iter().all(|l| l.matches);
    pass_if(
        t_ok && f_ok,
        format!(
            "f_F: {}; f: {}",
            torsion.iter().map(|l| pairs(&l.computed)).collect::<Vec<_>>().join(", "),
            f_ladder.iter().map(pairs).collect::<Vec<_>>().join(", ")
        ),
    )
}

fn newton_of_g<S: Scalar>(ex: &Examples<S>) -> Outcome {
    let g = ex.series(&G);
    need(&g, 9)?;
    let np = NewtonPolygon::of_series(&g, true)?;
    let expected = [(Rational::from_integer(-1), 2), (Rational::new(-1, 3), 6)];
    let segs: Vec<_> = np.segments.iter().map(|s| (s.slope, s.length)).collect();
    let poly = ex.poly(&G);
    let minus_three = ex.int(-3);
    let value = g.evaluate(&minus_three)?;
    let multiplicity = multiplicity_at_precision(&poly, &minus_three)?;
    pass_if(
        segs == expected && value.vanishes() && poly.eval(&minus_three).is_zero() && multiplicity == 2,
        format!(
            "segments {}; g(-3) = {}; multiplicity of -3 is {multiplicity}",
            segs.iter().map(|(s, l)| format!("({s}, {l})")).collect::<Vec<_>>().join(" "),
            value.value
        ),
    )
}

fn periodic_within_torsion<S: Scalar>(ex: &Examples<S>) -> Outcome {
    let u = ex.series(&U);
    let periodic: BTreeSet<Rational> = preper_ladder(&u, 1)?.iter().flat_map(|l| l.valuations()).collect();
    let torsion: BTreeSet<Rational> = iterate_ladder(&ex.series(&F), 2)?.iter().flat_map(|l| l.valuations()).collect();
    let expected: BTreeSet<Rational> = [Rational::from_integer(1), Rational::new(1, 3)].into();
    let minus_three = ex.int(-3);
    let fixed = ex.poly(&U).eval(&minus_three) == minus_three;
    let root = ex.poly(&F).eval(&minus_three).is_zero();
    let show = |s: &BTreeSet<Rational>| s.iter().rev().map(|r| r.to_string()).collect::<Vec<_>>().join(", ");
    pass_if(
        periodic.is_subset(&torsion) && torsion == expected && fixed && root,
        format!("periodic {{{}}} within torsion {{{}}}; u(-3) = -3 and f(-3) = 0", show(&periodic), show(&torsion)),
    )
}

fn fixed_points<S: Scalar>(ex: &Examples<S>) -> Outcome {
    let zs = [
        ZpIndex::exact(2, 3),
        ZpIndex::exact(3, 3),
        ZpIndex::exact(9, 3),
        ZpIndex::exact(243, 3),
        ZpIndex::new(-1, 10),
    ];
    let cert = fixed_point_check(&ex.series(&U), &ex.int(-3), &zs)?;
    pass_if(cert.passed(), format!("{} of {} exponents fix -3", cert.count(Status::Pass), zs.len()))
}

/// A monic quintic over `Z_3`, irreducible modulo 3 and different from the
/// ring modulus, perturbed by multiples of 3 so that its roots are not the
/// conjugates of `t`.
pub fn quintic_example<S: Scalar>(precision: u32) -> Result<(Polynomial<S>, Vec<RingElement<S>>)> {
    let ctx = PrimeContext::new(3, precision)?;
    let modulus: Vec<BigInt> = first_irreducible(5, 3).into_iter().map(BigInt::from).collect();
    let spec = ExtensionSpec::<S>::unramified(ctx, &modulus)?;
    let base = ExtensionSpec::<S>::trivial(ctx)?;
    let mut digits = vec![0u64; 5];
    let quintic = loop {
        let mut carry = 0;
        while digits[carry] == 2 {
            digits[carry] = 0;
            carry += 1;
        }
        digits[carry] += 1;
        let mut poly = digits.clone();
        poly.push(1);
        let big: Vec<BigInt> = poly.iter().map(|&c| BigInt::from(c)).collect();
        if is_irreducible(&poly, 3) && big != modulus {
            break big;
        }
    };
    let mut lifted = quintic;
    lifted[0] += 3;
    lifted[2] -= 9;
    let f = Polynomial::from_bigints(&base, &lifted);
    let roots = roots_in_ring(&f, &spec)?.roots.into_iter().map(|r| r.root).collect();
    Ok((f, roots))
}

fn quintic_orbit<S: Scalar>(precision: u32) -> Outcome {
    let (f, roots) = quintic_example::<S>(precision)?;
    certify_roots(&f, &roots)?;
    let frob = induced_root_permutation(&FrobeniusMap, &roots, &f, None)?;
    let mut orbit = vec![0];
    while orbit.len() <= roots.len() {
        let next = frob.mapping[*orbit.last().unwrap()];
        if next == 0 {
            break;
        }
        orbit.push(next);
    }
    let five_cycle = roots.len() == 5 && orbit.len() == 5;
    let w = frobenius_polynomial(&roots[0])?;
    let realized = induced_root_permutation(&w, &roots, &f, Some(&frob.mapping))?;
    let mut all_powers = realized.is_power_of == Some((frob.mapping.clone(), 1));
    // Polynomials realizing each power of Frobenius at the first root, and
    // x + s(x) f(x), which fixes every root.
    let mut target = roots[0].clone();
    for k in 0..5 {
        let wk = realizing_polynomial(&roots[0], &target)?;
        let report = induced_root_permutation(&wk, &roots, &f, Some(&frob.mapping))?;
        all_powers &=
            report.is_power_of.as_ref().map(|p| p.1) == Some(k) && report.commutes_with_frobenius == Some(true);
        target = target.frobenius()?;
    }
    let s = Polynomial::from_ints(f.spec(), &[2, -1, 5]);
    let fixer =
        Polynomial::from_ints(f.spec(), &[0, 1]).sub(&Polynomial::from_ints(f.spec(), &[0]).sub(&s.mul(&f)?)?)?;
    let identity = induced_root_permutation(&fixer, &roots, &f, Some(&frob.mapping))?;
    all_powers &= identity.is_identity && identity.is_power_of.as_ref().map(|p| p.1) == Some(0);
    pass_if(
        five_cycle && all_powers,
        format!(
            "{} roots; Frobenius permutation {:?}; W(x) = {:?} realizes it",
            roots.len(),
            frob.mapping,
            poly_ints(&w)
        ),
    )
}

fn poly_ints<S: Scalar>(p: &Polynomial<S>) -> Vec<String> {
    p.coeffs().iter().map(|c| c.balanced()[0].to_string()).collect()
}

/// Random polynomials `prod (x - r_i) * v(x)` over `Z_3` with `v` a unit
/// power series truncation and `r_i` drawn from small multiples of 3, so
/// roots may repeat.
fn rigidity_suite<S: Scalar>(cfg: &BatteryConfig) -> Outcome {
    let z = ExtensionSpec::<S>::zp(3, cfg.precision)?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let pool: Vec<i64> = (-4..=4).map(|k| 3 * k).collect();
    let mut suite = Vec::new();
    for _ in 0..100 {
        let count = rng.gen_range(0..=6);
        let picked: Vec<RingElement<S>> =
            (0..count).map(|_| RingElement::from_int(&z, *pool.choose(&mut rng).unwrap())).collect();
        let unit = [3 * rng.gen_range(-5..=5) + rng.gen_range(1..=2), rng.gen_range(-20..=20), rng.gen_range(-20..=20)];
        let poly = Polynomial::from_roots(&z, &picked)?.mul(&Polynomial::from_ints(&z, &unit))?;
        let roots: Vec<RingElement<S>> = roots_in_ring(&poly, &z)?
            .roots
            .into_iter()
            .map(|r| r.root)
            .filter(|r| r.valuation().is_positive())
            .collect();
        certify_roots(&poly, &roots)?;
        suite.push((poly, roots));
    }
    let mut bound_ok = 0;
    let mut found = 0;
    for (poly, roots) in &suite {
        let bound = poly.small_root_bound().expect("nonzero");
        found += roots.len();
        if roots.len() <= bound && bound <= 6 {
            bound_ok += 1;
        }
    }
    let mut pairs_ok = 0;
    let mut pairs = 0;
    let mut agreements = 0;
    for i in 0..suite.len() {
        for j in i + 1..suite.len() {
            let mut points = suite[i].1.clone();
            points.extend(suite[j].1.iter().filter(|r| !suite[i].1.contains(r)).cloned());
            let check = rigidity_check(&suite[i].0, &suite[j].0, &points)?;
            pairs += 1;
            agreements += usize::from(!suite[i].1.is_empty() && suite[i].1.iter().any(|r| suite[j].1.contains(r)));
            if check.status == Status::Pass {
                pairs_ok += 1;
            }
        }
    }
    pass_if(
        bound_ok == suite.len() && pairs_ok == pairs,
        format!(
            "{bound_ok}/{} root counts within bound ({found} roots); {pairs_ok}/{pairs} pairs within bound \
             ({agreements} pairs share a root)",
            suite.len()
        ),
    )
}

fn summarize(checks: Vec<Check>) -> (Status, String) {
    let ok = checks.iter().all(|c| c.status == Status::Pass);
    let detail = checks.iter().map(|c| format!("{}: {}", c.name, c.detail)).collect::<Vec<_>>().join("; ");
    (if ok { Status::Pass } else { Status::Fail }, detail)
}

fn findings<S: Scalar>(ex: &Examples<S>) -> Vec<Check> {
    let mut out = Vec::new();
    out.push(match sqrt_minus_three_images(ex) {
        Ok(detail) => Check::finding("h at the square roots of -3", detail),
        Err(e) => Check::fail("h at the square roots of -3", e.to_string()),
    });
    let odd_u = [0, 5, 0, 5, 0, 1];
    let pairs: [(&str, &[i64], &[i64]); 6] = [
        ("u_G vs f_F", &U_G, &F_F),
        ("u_G vs g_G", &U_G, &G_G),
        ("u~ vs g", &U_TILDE, &G),
        ("u vs g", &U, &G),
        ("5x+5x^3+x^5 vs f_F", &odd_u, &F_F),
        ("5x+5x^3+x^5 vs g_G", &odd_u, &G_G),
    ];
    for (name, a, b) in pairs {
        let name = format!("commutator {name}");
        out.push(match ex.series(a).commutator_defect(&ex.series(b)) {
            Ok(d) => Check::finding(
                name,
                match d.x_order() {
                    None => format!("commute mod (3^{}, x^{})", ex.z.precision(), d.trunc() + 1),
                    Some(i) => format!("defect starts at degree {i} with coefficient {}", d.coeff(i)),
                },
            ),
            Err(e) => Check::fail(name, e.to_string()),
        });
    }
    out
}

fn sqrt_minus_three_images<S: Scalar>(ex: &Examples<S>) -> Result<String> {
    let ctx = ex.z.base();
    let e = ExtensionSpec::<S>::eisenstein(ctx, &[3, 0, 1].map(BigInt::from))?;
    let t = RingElement::generator(&e);
    let h = TruncatedSeries::from_ints(&e, &[0, 0, 1], ex.trunc);
    let f = Polynomial::from_ints(&e, &F);
    let plus = h.evaluate(&t)?.value;
    let minus = h.evaluate(&-&t)?.value;
    let three = RingElement::from_int(&e, 3);
    Ok(format!(
        "h(t) = {plus}, h(-t) = {minus} for t^2 = -3; f(h(t)) = {}; the value 3 is not a root of f (f(3) = {})",
        f.eval(&plus),
        f.eval(&three)
    ))
}

fn first_package<S: Scalar>(ex: &Examples<S>) -> Result<Certificate> {
    let f_f = ex.series(&F_F);
    let lt = LubinTateData::new(f_f.clone())?;
    let degree = ex.trunc.min(12);
    let working = ex.z.precision() as usize + degree;
    let law = if crate::scalar::fits::<S>(&BigInt::from(3u32).pow(working as u32)) {
        Some(lubin_tate_group(&lt, degree)?)
    } else {
        None
    };
    let pkg = DynamicalPackage {
        f: ex.series(&F),
        u: Some(ex.series(&U)),
        law,
        f_f: Some(f_f),
        u_f: None,
        h: Some(ex.series(&[0, 0, 1])),
    };
    Ok(package_verify(&pkg, LadderDepths::default()))
}

fn second_package<S: Scalar>(ex: &Examples<S>) -> Certificate {
    let pkg = DynamicalPackage {
        f: ex.series(&G),
        u: Some(ex.series(&U_TILDE)),
        law: None,
        f_f: Some(ex.series(&G_G)),
        u_f: None,
        h: Some(ex.series(&[0, 0, 1])),
    };
    package_verify(&pkg, LadderDepths::default())
}

fn package_check(name: &str, cert: Result<Certificate>) -> Check {
    match cert {
        Ok(cert) => {
            let failed: Vec<_> =
                cert.checks.iter().filter(|c| c.status == Status::Fail).map(|c| c.name.clone()).collect();
            let detail = format!(
                "{} pass, {} skipped, {} findings{}",
                cert.count(Status::Pass),
                cert.count(Status::Skipped),
                cert.count(Status::Finding),
                if failed.is_empty() { String::new() } else { format!("; failed: {}", failed.join(", ")) }
            );
            Check::from_bool(name, failed.is_empty(), detail)
        }
        Err(e) => Check::fail(name, e.to_string()),
    }
}
