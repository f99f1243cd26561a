use crate::certificate::{Certificate, Check, Status};
use crate::error::Error;
use crate::formal_group::{verify_endomorphism, verify_group_law, FormalGroupLaw};
use crate::padic::same_ring;
use crate::scalar::Scalar;
use crate::series::TruncatedSeries;

use super::ladders::ladder_compare;
use super::verify_isogeny;

/// A stable dynamical system `(f, u)` with an optional formal group `F`,
/// endomorphisms `f_F`, `u_F` of `F`, and an isogeny `h` from the group
/// side to the dynamical side.
#[derive(Clone, Debug)]
pub struct DynamicalPackage<S: Scalar> {
    pub f: TruncatedSeries<S>,
    pub u: Option<TruncatedSeries<S>>,
    pub law: Option<FormalGroupLaw<S>>,
    pub f_f: Option<TruncatedSeries<S>>,
    pub u_f: Option<TruncatedSeries<S>>,
    pub h: Option<TruncatedSeries<S>>,
}

impl<S: Scalar> DynamicalPackage<S> {
    pub fn new(f: TruncatedSeries<S>, u: TruncatedSeries<S>) -> Self {
        DynamicalPackage { f, u: Some(u), law: None, f_f: None, u_f: None, h: None }
    }
}

/// Requested depths for the torsion ladder of `f` and the periodic ladder
/// of `u`. The comparison falls back to smaller depths when the truncation
/// cannot support these.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LadderDepths {
    pub torsion: usize,
    pub periodic: usize,
}

impl Default for LadderDepths {
    fn default() -> Self {
        LadderDepths { torsion: 2, periodic: 1 }
    }
}

/// Runs every package check and collects the results. Failures are report
/// entries, never errors.
pub fn package_verify<S: Scalar>(pkg: &DynamicalPackage<S>, depths: LadderDepths) -> Certificate {
    let mut cert = Certificate::new();
    let spec = pkg.f.spec();
    let optional = [("u", pkg.u.as_ref()), ("f_F", pkg.f_f.as_ref()), ("u_F", pkg.u_f.as_ref()), ("h", pkg.h.as_ref())];
    let mismatched: Vec<&str> =
        optional.iter().filter(|(_, s)| s.is_some_and(|s| !same_ring(s.spec(), spec))).map(|(n, _)| *n).collect();
    let law_mismatch = pkg.law.as_ref().is_some_and(|l| !same_ring(l.spec(), spec));
    if !mismatched.is_empty() || law_mismatch {
        let mut names = mismatched.join(", ");
        if law_mismatch {
            names.push_str(if names.is_empty() { "F" } else { ", F" });
        }
        cert.push(Check::fail("context", format!("{names} not over the ring of f")));
        return cert;
    }

    cert.push(match pkg.f.stability_report() {
        Ok(r) if r.is_stable && !r.is_invertible && r.weierstrass_degree.is_none() => Check::skipped(
            "f stability",
            format!("f'(0) = {}, Weierstrass degree not visible at truncation {}", r.derivative_at_zero, pkg.f.trunc()),
        ),
        Ok(r) => Check::from_bool(
            "f stability",
            r.is_stable && r.is_noninvertible_finite_height,
            match r.weierstrass_degree {
                Some(d) => format!("f'(0) = {}, Weierstrass degree {d}", r.derivative_at_zero),
                None => format!("f'(0) = {}, infinite height", r.derivative_at_zero),
            },
        ),
        Err(e) => Check::fail("f stability", e.to_string()),
    });
    let Some(u) = &pkg.u else {
        cert.push(Check::fail("u stability", "u not supplied"));
        return cert;
    };
    cert.push(match u.stability_report() {
        Ok(r) => {
            Check::from_bool("u stability", r.is_stable && r.is_invertible, format!("u'(0) = {}", r.derivative_at_zero))
        }
        Err(e) => Check::fail("u stability", e.to_string()),
    });
    cert.push(match pkg.f.commutator_defect(u) {
        Ok(d) => match d.x_order() {
            None => Check::pass("f commutes with u", format!("to degree {}", d.trunc())),
            Some(i) => Check::fail("f commutes with u", format!("first defect at degree {i}: {}", d.coeff(i))),
        },
        Err(e) => Check::fail("f commutes with u", e.to_string()),
    });

    match &pkg.law {
        Some(law) => {
            for check in verify_group_law(law).checks {
                cert.push(Check { name: format!("F {}", check.name), ..check });
            }
            for (name, e) in [("f_F", &pkg.f_f), ("u_F", &pkg.u_f)] {
                let check_name = format!("{name} endomorphism of F");
                cert.push(match e {
                    Some(e) => Check { name: check_name, ..verify_endomorphism(law, e) },
                    None => Check::skipped(check_name, format!("{name} not supplied")),
                });
            }
        }
        None => cert.push(Check::skipped("F group law", "F not supplied")),
    }

    match &pkg.h {
        Some(h) => {
            cert.push(Check::from_bool("h nonzero", !h.is_zero(), ""));
            for (name, src, dst) in [("f_F", &pkg.f_f, &pkg.f), ("u_F", &pkg.u_f, u)] {
                let prefix = format!("h: {name} -> {}", &name[..1]);
                match src {
                    Some(src) => {
                        for check in verify_isogeny(h, src, dst).checks {
                            cert.push(Check { name: format!("{prefix} {}", check.name), ..check });
                        }
                    }
                    None => cert.push(Check::skipped(prefix, format!("{name} not supplied"))),
                }
            }
        }
        None => cert.push(Check::skipped("h isogeny", "h not supplied")),
    }

    cert.push(ladder_check(&pkg.f, u, depths));
    cert
}

/// Valuation sets of the torsion ladder of `f` and the periodic ladder of
/// `u`, at the largest depths the truncation supports. Periodic valuations
/// outside the torsion set are reported as a finding: at finite depth the
/// matching torsion level may lie beyond the computed range.
fn ladder_check<S: Scalar>(f: &TruncatedSeries<S>, u: &TruncatedSeries<S>, depths: LadderDepths) -> Check {
    let name = "ladder comparison";
    for n in (1..=depths.torsion).rev() {
        for m in (0..=depths.periodic).rev() {
            match ladder_compare(f, n, u, m) {
                Ok(cmp) => {
                    let detail = format!(
                        "depths ({n}, {m}); torsion {:?}, periodic {:?}",
                        cmp.torsion.iter().rev().map(|r| r.to_string()).collect::<Vec<_>>(),
                        cmp.periodic.iter().rev().map(|r| r.to_string()).collect::<Vec<_>>(),
                    );
                    let status = if cmp.periodic_within_torsion { Status::Pass } else { Status::Finding };
                    return Check::new(name, status, detail);
                }
                Err(Error::TruncationTooSmall { .. }) => continue,
                Err(e) => return Check::fail(name, e.to_string()),
            }
        }
    }
    Check::skipped(name, format!("truncation {} too small for any ladder depth", f.trunc()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formal_group::{lubin_tate_group, LubinTateData};
    use crate::padic::ExtensionSpec;

    fn d1(trunc: usize) -> DynamicalPackage<i128> {
        let z = ExtensionSpec::zp(3, 10).unwrap();
        let f_f = TruncatedSeries::from_ints(&z, &[0, 3, 0, 1], trunc);
        let lt = LubinTateData::new(f_f.clone()).unwrap();
        DynamicalPackage {
            f: TruncatedSeries::from_ints(&z, &[0, 9, 6, 1], trunc),
            u: Some(TruncatedSeries::from_ints(&z, &[0, 4, 1], trunc)),
            law: Some(lubin_tate_group(&lt, trunc.min(8)).unwrap()),
            f_f: Some(f_f),
            u_f: None,
            h: Some(TruncatedSeries::from_ints(&z, &[0, 0, 1], trunc)),
        }
    }

    #[test]
    fn first_package() {
        let cert = package_verify(&d1(16), LadderDepths::default());
        assert!(cert.passed(), "{cert}");
        assert_eq!(cert.get("u_F endomorphism of F").unwrap().status, Status::Skipped);
        assert_eq!(cert.get("h: u_F -> u").unwrap().status, Status::Skipped);
        assert_eq!(cert.get("h: f_F -> f intertwining").unwrap().status, Status::Pass);
        assert_eq!(cert.get("F associativity").unwrap().status, Status::Pass);
        assert_eq!(cert.get("ladder comparison").unwrap().status, Status::Pass);
    }

    #[test]
    fn ladder_depth_falls_back() {
        let check = ladder_check(&d1(8).f, d1(8).u.as_ref().unwrap(), LadderDepths { torsion: 3, periodic: 2 });
        // Only torsion depth 1 fits in x^8, so 1/3 is visible on the periodic
        // side alone.
        assert_eq!(check.status, Status::Finding, "{}", check.detail);
        assert_eq!(check.detail, r#"depths (1, 1); torsion ["1"], periodic ["1", "1/3"]"#);
    }

    #[test]
    fn missing_u() {
        let z = ExtensionSpec::<i128>::zp(3, 10).unwrap();
        let pkg = DynamicalPackage {
            f: TruncatedSeries::from_ints(&z, &[0, 0, 3, 1], 16),
            u: None,
            law: None,
            f_f: None,
            u_f: None,
            h: None,
        };
        let cert = package_verify(&pkg, LadderDepths::default());
        assert!(!cert.passed());
        assert_eq!(cert.get("f stability").unwrap().status, Status::Fail);
        assert_eq!(cert.get("u stability").unwrap().detail, "u not supplied");
    }

    #[test]
    fn invisible_height_is_skipped() {
        let z = ExtensionSpec::<i128>::zp(3, 20).unwrap();
        let g = TruncatedSeries::from_ints(&z, &[0, 81, 540, 1386, 1782, 1287, 546, 135, 18, 1], 8);
        let u = TruncatedSeries::from_ints(&z, &[0, 25, 50, 35, 10, 1], 8);
        let cert = package_verify(&DynamicalPackage::new(g, u), LadderDepths::default());
        assert!(cert.passed(), "{cert}");
        assert_eq!(cert.get("f stability").unwrap().status, Status::Skipped);
        assert_eq!(cert.get("ladder comparison").unwrap().status, Status::Skipped);
    }

    #[test]
    fn mismatched_rings() {
        let mut pkg = d1(16);
        pkg.h = Some(TruncatedSeries::from_ints(&ExtensionSpec::zp(3, 11).unwrap(), &[0, 0, 1], 16));
        let cert = package_verify(&pkg, LadderDepths::default());
        assert_eq!(cert.checks.len(), 1);
        assert_eq!(cert.checks[0].status, Status::Fail);
    }
}
