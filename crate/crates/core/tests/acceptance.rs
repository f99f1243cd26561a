//! The fifteen acceptance checks, each recomputed by the library and
//! compared against an oracle written here with plain integer polynomials.
//! Prints one line per check with its wall time and budget.

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::Zero;

use padyn::battery::{self, run_criterion, BatteryConfig, CRITERIA, F, F_F, G, G_G, U, U_TILDE};
use padyn::certificate::{Check, Status};
use padyn::dynamics::{condense, induced_root_permutation, FrobeniusMap};
use padyn::formal_group::{lt_endomorphism, lubin_tate_group, LubinTateData};
use padyn::newton::iterate_ladder;
use padyn::padic::{ExtensionSpec, RingElement};
use padyn::series::TruncatedSeries;

type IPoly = Vec<BigInt>;

fn ipoly(c: &[i64]) -> IPoly {
    c.iter().map(|&v| BigInt::from(v)).collect()
}

fn imul(a: &IPoly, b: &IPoly) -> IPoly {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn iadd(a: &IPoly, b: &IPoly) -> IPoly {
    let n = a.len().max(b.len());
    (0..n).map(|i| a.get(i).cloned().unwrap_or_default() + b.get(i).cloned().unwrap_or_default()).collect()
}

/// `a(b(x))` by Horner, exactly over the integers.
fn icompose(a: &IPoly, b: &IPoly) -> IPoly {
    let mut acc: IPoly = vec![BigInt::zero()];
    for c in a.iter().rev() {
        acc = iadd(&imul(&acc, b), &vec![c.clone()]);
    }
    trim(acc)
}

fn ieval(a: &IPoly, x: i64) -> BigInt {
    a.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
}

fn iderivative(a: &IPoly) -> IPoly {
    a.iter().enumerate().skip(1).map(|(i, c)| c * i).collect()
}

fn trim(mut a: IPoly) -> IPoly {
    while a.len() > 1 && a.last().unwrap().is_zero() {
        a.pop();
    }
    a
}

/// The series `a` reduced modulo `(p^n, x^(m+1))` compared to `f`.
fn agrees_mod(f: &TruncatedSeries<i128>, a: &IPoly, pn: &BigInt) -> bool {
    let coeffs = f.int_coeffs();
    (0..=f.trunc()).all(|i| {
        let expected = a.get(i).cloned().unwrap_or_default();
        (&coeffs[i] - expected).mod_floor(pn).is_zero()
    })
}

fn v3(mut n: BigInt) -> Option<i64> {
    if n.is_zero() {
        return None;
    }
    let mut v = 0;
    while (&n % 3u32).is_zero() {
        n /= 3;
        v += 1;
    }
    Some(v)
}

/// Inverse of `a` modulo `m` by search.
fn inverse_mod(a: i64, m: i64) -> i64 {
    (0..m).find(|x| (a * x).rem_euclid(m) == 1).unwrap()
}

/// Root valuation counts from a lower hull written out by brute force over
/// all vertex pairs.
fn root_valuations(points: &[(i64, i64)]) -> Vec<(Ratio<i64>, i64)> {
    let mut out = Vec::new();
    let mut i = 0;
    let last = points.len() - 1;
    while i < last {
        // Next vertex: the farthest point achieving the minimal slope.
        let mut best = i + 1;
        for j in i + 1..=last {
            let s_j = Ratio::new(points[j].1 - points[i].1, points[j].0 - points[i].0);
            let s_b = Ratio::new(points[best].1 - points[i].1, points[best].0 - points[i].0);
            if s_j <= s_b {
                best = j;
            }
        }
        let slope = Ratio::new(points[best].1 - points[i].1, points[best].0 - points[i].0);
        out.push((-slope, points[best].0 - points[i].0));
        i = best;
    }
    out
}

fn hull_of(a: &IPoly, strip: usize) -> Vec<(Ratio<i64>, i64)> {
    let points: Vec<(i64, i64)> =
        a.iter().enumerate().skip(strip).filter_map(|(i, c)| v3(c.clone()).map(|v| ((i - strip) as i64, v))).collect();
    let cut = points.iter().position(|p| p.1 == 0).unwrap();
    root_valuations(&points[..=cut])
}

struct Runner {
    results: Vec<(usize, bool)>,
}

impl Runner {
    fn run(&mut self, index: usize, cfg: &BatteryConfig, budget: Duration, oracle: impl FnOnce(&Check) -> bool) {
        let start = Instant::now();
        let check = run_criterion::<i128>(index, cfg);
        let elapsed = start.elapsed();
        // The [9] identity is reported as a finding rather than a pass.
        let accepted = if index == 4 { check.status == Status::Finding } else { check.status == Status::Pass };
        let ok = accepted && oracle(&check);
        let timing = if elapsed <= budget { "within" } else { "OVER" };
        println!(
            "[{}] {:>2} {} ({:.3?}, {timing} budget {:?}): {}",
            if ok { "PASS" } else { "FAIL" },
            index + 1,
            CRITERIA[index],
            elapsed,
            budget,
            check.detail
        );
        self.results.push((index + 1, ok));
    }
}

#[test]
fn acceptance() {
    let cfg = BatteryConfig::default();
    let pn = BigInt::from(3).pow(cfg.precision);
    let z = ExtensionSpec::<i128>::zp(3, cfg.precision).unwrap();
    let series = |c: &[i64], m: usize| TruncatedSeries::<i128>::from_ints(&z, c, m);
    let (f_f, f, u, g_g, g, u_t) = (ipoly(&F_F), ipoly(&F), ipoly(&U), ipoly(&G_G), ipoly(&G), ipoly(&U_TILDE));
    let x2 = ipoly(&[0, 0, 1]);
    let ms = Duration::from_millis;
    let mut r = Runner { results: Vec::new() };
    println!();

    // f_F(x)^2 = x^2 (3 + x^2)^2, read in the variable x^2.
    r.run(0, &cfg, ms(1), |_| {
        let sq = imul(&f_f, &f_f);
        let oracle: IPoly = sq.iter().step_by(2).cloned().collect();
        agrees_mod(&condense(&series(&F_F, 64), 2).unwrap(), &oracle, &pn) && trim(oracle) == f
    });
    r.run(1, &cfg, ms(1), |_| {
        let sq = imul(&g_g, &g_g);
        let oracle: IPoly = sq.iter().step_by(2).cloned().collect();
        agrees_mod(&condense(&series(&G_G, 64), 2).unwrap(), &oracle, &pn) && trim(oracle) == g
    });
    r.run(2, &cfg, ms(1), |_| {
        let hand = ipoly(&[0, 36, 105, 112, 54, 12, 1]);
        icompose(&f, &u) == hand && icompose(&u, &f) == hand
    });
    r.run(3, &cfg, ms(1), |_| icompose(&x2, &f_f) == icompose(&f, &x2) && icompose(&x2, &g_g) == icompose(&g, &x2));
    r.run(4, &cfg, ms(1), |_| {
        let expanded = iadd(&f_f.iter().map(|c| c * 3).collect(), &imul(&f_f, &imul(&f_f, &f_f)));
        trim(expanded) == g_g && agrees_mod(&series(&F_F, 64).iterate(2).unwrap(), &g_g, &pn)
    });
    r.run(5, &cfg, ms(100), |_| {
        let gu = icompose(&g, &u_t);
        let ug = icompose(&u_t, &g);
        let spot = gu[1..=3] == ipoly(&[2025, 341550, 23009085])[..] && ug[1..=3] == gu[1..=3];
        let lib = series(&G, 64).compose(&series(&U_TILDE, 64)).unwrap();
        spot && agrees_mod(&lib, &gu, &pn) && agrees_mod(&lib, &ug, &pn)
    });
    r.run(6, &cfg, ms(1000), |_| {
        // (pi^3 - pi) c = 3 for the x^2 y coefficient: 24 c = 3.
        let c = inverse_mod(8, 27);
        let z3 = ExtensionSpec::<i128>::zp(3, 3).unwrap();
        let lt = LubinTateData::new(TruncatedSeries::from_ints(&z3, &F_F, 4)).unwrap();
        let law = lubin_tate_group(&lt, 4).unwrap();
        c == 17 && law.coeff(2, 1) == RingElement::from_int(&z3, c) && law.coeff(1, 2) == law.coeff(2, 1)
    });
    r.run(7, &cfg, ms(100), |_| {
        // [2] = 2x + d x^3 with 3(2x + d x^3) + 8x^3 = 2(3x + x^3) + 27 d x^3: 24 d = 6.
        let d = inverse_mod(4, 27);
        let z3 = ExtensionSpec::<i128>::zp(3, 3).unwrap();
        let lt = LubinTateData::new(TruncatedSeries::from_ints(&z3, &F_F, 4)).unwrap();
        let two = lt_endomorphism(&RingElement::from_int(&z3, 2), &lt, 4).unwrap();
        d == 7 && two == TruncatedSeries::from_ints(&z3, &[0, 2, 0, d], 4)
    });
    let deep = BatteryConfig { trunc: 729, ..cfg };
    r.run(8, &deep, ms(5000), |_| {
        let lt = LubinTateData::new(series(&F_F, 729)).unwrap();
        let ladder = iterate_ladder(&lt.f, 3).unwrap();
        let closed_form = (1..=3u32).all(|k| {
            let level = &ladder[k as usize - 1];
            let count = 3usize.pow(k) - 3usize.pow(k - 1);
            let val = Ratio::new(1, (3i64.pow(k - 1)) * 2);
            level.new_roots.len() == 1 && level.new_roots[0].count == count && level.new_roots[0].valuation == val
        });
        // f and f o f through explicit hulls with the root at zero removed.
        let f_hull = hull_of(&f, 1);
        let ff_hull = hull_of(&icompose(&f, &f), 1);
        let one = Ratio::from_integer(1);
        closed_form
            && f_hull == vec![(one, 2)]
            && ff_hull.iter().filter(|s| s.0 == one).map(|s| s.1).sum::<i64>() == 2
            && ff_hull.iter().filter(|s| s.0 == Ratio::new(1, 3)).map(|s| s.1).sum::<i64>() == 6
    });
    r.run(9, &cfg, ms(10), |_| {
        // g = f o f, so -3 is a double root: g(-3) = f(0), g'(-3) = f'(0) f'(-3).
        let ff = icompose(&f, &f);
        let dg = iderivative(&g);
        trim(ff) == g
            && ieval(&g, -3).is_zero()
            && ieval(&dg, -3).is_zero()
            && !ieval(&iderivative(&dg), -3).is_zero()
            && hull_of(&g, 1) == vec![(Ratio::from_integer(1), 2), (Ratio::new(1, 3), 6)]
    });
    r.run(10, &cfg, ms(1000), |_| ieval(&u, -3) == BigInt::from(-3) && ieval(&f, -3).is_zero());
    r.run(11, &cfg, ms(1000), |_| ieval(&u, -3) == BigInt::from(-3));
    r.run(12, &cfg, ms(2000), |_| {
        // Frobenius reduces to cubing: each root maps to the root congruent
        // to its cube modulo 3.
        let (f5, roots) = battery::quintic_example::<i128>(cfg.precision).unwrap();
        let frob = induced_root_permutation(&FrobeniusMap, &roots, &f5, None).unwrap();
        roots.iter().enumerate().all(|(i, r)| {
            let cube = r.pow(3);
            let matches: Vec<usize> =
                (0..roots.len()).filter(|&j| (&roots[j] - &cube).valuation().is_positive()).collect();
            matches == vec![frob.mapping[i]]
        })
    });
    r.run(13, &cfg, ms(5000), |c| c.detail.starts_with("100/100"));
    r.run(14, &cfg, ms(30000), |c| c.detail.matches("200/200 cases").count() == 5);

    let failed: Vec<usize> = r.results.iter().filter(|(_, ok)| !ok).map(|(i, _)| *i).collect();
    println!("{} of {} checks passed", r.results.len() - failed.len(), r.results.len());
    assert!(failed.is_empty(), "failed checks: {failed:?}");
}
