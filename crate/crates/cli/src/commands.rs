use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use padyn::battery::{verify_examples, BatteryConfig};
use padyn::certificate::Certificate;
use padyn::dynamics::{condense, package_verify, preper_ladder, verify_isogeny, LadderDepths};
use padyn::formal_group::{lt_hom, lubin_tate_group, FormalGroupLaw, LubinTateData};
use padyn::json::{
    context_to_json, formal_group_to_json, package_from_json, series_to_json, ContextJson, DEFAULT_GROUP_DEGREE,
};
use padyn::newton::{iterate_ladder, NewtonPolygon};
use padyn::padic::RingElement;
use padyn::scalar::fits;
use padyn::series::TruncatedSeries;
use padyn::{Error, Scalar};

use crate::input::{load_package, parse_json, Defaults, InputError, SeriesInput};
use crate::{Cli, Command};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Input(#[from] InputError),
    #[error(transparent)]
    Lib(#[from] Error),
}

/// What a command prints, and whether it counts as a pass.
pub struct Report {
    pub text: String,
    pub json: Value,
    pub passed: bool,
    pub warnings: Vec<String>,
}

impl Report {
    fn ok(text: String, json: Value) -> Self {
        Report { text, json, passed: true, warnings: Vec::new() }
    }

    fn series<S: Scalar>(f: &TruncatedSeries<S>) -> Self {
        Report::ok(format!("{f}\n"), json!(series_to_json(f)))
    }

    fn certificate(cert: &Certificate) -> Self {
        let passed = cert.passed();
        let verdict = if passed { "all checks passed" } else { "verification failed" };
        Report {
            text: format!("{cert}{verdict}\n"),
            json: json!({ "passed": passed, "checks": cert.checks }),
            passed,
            warnings: Vec::new(),
        }
    }
}

/// The battery builds group laws at precision `N + 12`, which can outgrow
/// the machine-word backend before any single operation reports it.
pub fn needs_big_backend(cli: &Cli) -> bool {
    match cli.command {
        Command::VerifyExamples { .. } => {
            let digits = cli.precision + DEFAULT_GROUP_DEGREE.min(cli.trunc) as u32;
            !fits::<i128>(&BigInt::from(3).pow(digits))
        }
        _ => false,
    }
}

fn defaults(cli: &Cli) -> Result<Defaults, CliError> {
    let context = match &cli.context {
        Some(arg) => parse_json::<ContextJson>(arg, "context")?,
        None => ContextJson { p: cli.p, precision: cli.precision, modulus: None, kind: "trivial".into() },
    };
    Ok(Defaults { context, trunc: cli.trunc })
}

pub fn execute<S: Scalar>(cli: &Cli) -> Result<Report, CliError> {
    let defaults = defaults(cli)?;
    let load = |arg: &str, what: &str| SeriesInput::load(arg, what, &defaults);
    let report = match &cli.command {
        Command::Compose { a, b } => {
            let a = load(a, "a")?.series::<S>()?;
            let b = load(b, "b")?.series_over(a.spec())?;
            Report::series(&a.compose(&b)?)
        }
        Command::Iterate { series, n, digits } => {
            let f = load(series, "series")?.series::<S>()?;
            match digits {
                Some(k) => {
                    let it = f.padic_iterate(n, *k)?;
                    let mut text = format!("{}\n", it.series);
                    for s in &it.steps {
                        let x = s.x_order.map_or("none".to_string(), |o| o.to_string());
                        text.push_str(&format!("step {}: x-order {x}, p-order {}\n", s.m, s.p_order));
                    }
                    let json = json!({
                        "series": series_to_json(&it.series),
                        "residue": it.residue.to_string(),
                        "steps": it.steps,
                    });
                    Report::ok(text, json)
                }
                None => {
                    let n = n.to_i64().ok_or_else(|| Error::Parse(format!("iteration count {n} out of range")))?;
                    Report::series(&f.iterate_signed(n)?)
                }
            }
        }
        Command::Commute { a, b } => {
            let a = load(a, "a")?.series::<S>()?;
            let b = load(b, "b")?.series_over(a.spec())?;
            let defect = a.commutator_defect(&b)?;
            let first = defect.x_order();
            let text = match first {
                None => format!("defect ZERO through degree {}\n", defect.trunc()),
                Some(i) => format!("defect {defect}\nfirst nonzero degree {i}\n"),
            };
            let json =
                json!({ "zero": first.is_none(), "first_defect_degree": first, "defect": series_to_json(&defect) });
            Report { passed: first.is_none(), ..Report::ok(text, json) }
        }
        Command::Inverse { series } => Report::series(&load(series, "series")?.series::<S>()?.compositional_inverse()?),
        Command::Condense { series, d } => {
            if *d == 0 {
                return Err(Error::Parse("condensation degree must be positive".into()).into());
            }
            Report::series(&condense(&load(series, "series")?.series::<S>()?, *d)?)
        }
        Command::Newton { series } => {
            let np = NewtonPolygon::of_series(&load(series, "series")?.series::<S>()?, true)?;
            let roots: Vec<(String, usize)> = np.root_valuations().iter().map(|(v, n)| (v.to_string(), *n)).collect();
            let mut text = String::from("segments:");
            for s in &np.segments {
                text.push_str(&format!(" ({}, {})", s.slope, s.length));
            }
            text.push_str("\nroot valuations:");
            for (v, n) in &roots {
                text.push_str(&format!(" {n} x {v}"));
            }
            text.push('\n');
            Report::ok(text, json!({ "segments": np.segments, "root_valuations": roots }))
        }
        Command::Ladder { series, depth, periodic } => ladder::<S>(&load(series, "series")?, *depth, *periodic)?,
        Command::LtBuild { series, degree } => {
            let f = load(series, "series")?.series::<S>()?;
            let degree = degree.unwrap_or(DEFAULT_GROUP_DEGREE.min(f.trunc()));
            let law = lubin_tate_group(&LubinTateData::new(f)?, degree)?;
            Report::ok(format!("F(x, y) = {}\n", format_law(&law)), json!(formal_group_to_json(&law)))
        }
        Command::LtEndo { series, a, to } => {
            let src = LubinTateData::new(load(series, "series")?.series::<S>()?)?;
            let dst = match to {
                Some(to) => LubinTateData::new(load(to, "to")?.series_over(src.spec())?)?,
                None => src.clone(),
            };
            let a = RingElement::from_bigint(src.spec(), a);
            let trunc = src.f.trunc().min(dst.f.trunc());
            Report::series(&lt_hom(&a, &src, &dst, trunc)?)
        }
        Command::VerifyIsogeny { h, src, dst } => {
            let h = load(h, "h")?.series::<S>()?;
            let src = load(src, "src")?.series_over(h.spec())?;
            let dst = load(dst, "dst")?.series_over(h.spec())?;
            Report::certificate(&verify_isogeny(&h, &src, &dst))
        }
        Command::VerifyPackage { package, torsion_depth, periodic_depth } => {
            let pkg = package_from_json::<S>(&load_package(package)?)?;
            let depths = LadderDepths { torsion: *torsion_depth, periodic: *periodic_depth };
            Report::certificate(&package_verify(&pkg, depths))
        }
        Command::VerifyExamples { cases } => {
            let cfg = BatteryConfig { precision: cli.precision, trunc: cli.trunc, seed: cli.seed, cases: *cases };
            Report::certificate(&verify_examples::<S>(&cfg))
        }
    };
    Ok(report)
}

/// Ladders need the truncation to cover the iterates. A bare coefficient
/// list is a polynomial, so its truncation can be raised; a series document
/// fixes its own.
fn ladder<S: Scalar>(input: &SeriesInput, depth: usize, periodic: bool) -> Result<Report, CliError> {
    let mut input = input.clone();
    let mut warnings = Vec::new();
    for _ in 0..8 {
        let f = input.series::<S>()?;
        let result = if periodic { preper_ladder(&f, depth) } else { iterate_ladder(&f, depth) };
        match result {
            Ok(levels) => {
                let mut text = String::new();
                for l in &levels {
                    let roots: Vec<String> =
                        l.new_roots.iter().map(|v| format!("{} x {}", v.count, v.valuation)).collect();
                    text.push_str(&format!("level {}: {}\n", l.level, roots.join(", ")));
                }
                let json = json!({ "context": context_to_json(f.spec()), "trunc": f.trunc(), "levels": levels });
                return Ok(Report { warnings, ..Report::ok(text, json) });
            }
            Err(Error::TruncationTooSmall { needed, available })
                if !input.explicit_trunc && needed != usize::MAX && needed > available =>
            {
                let raised = if periodic { needed.max(2 * available) } else { needed };
                warnings.push(format!("raising truncation from {available} to {raised} for depth {depth}"));
                input = input.with_trunc(raised);
            }
            Err(e) => return Err(e.into()),
        }
    }
    Err(Error::TruncationTooSmall { needed: input.doc.trunc + 1, available: input.doc.trunc }.into())
}

fn format_law<S: Scalar>(law: &FormalGroupLaw<S>) -> String {
    let mut terms = Vec::new();
    for k in 0..=law.total_degree() {
        for i in (0..=k).rev() {
            let c = law.coeff(i, k - i);
            if c.is_zero() {
                continue;
            }
            let b = c.balanced();
            let coeff = if b.len() > 1 {
                format!("({c})")
            } else if b[0] == BigInt::from(1) {
                String::new()
            } else {
                b[0].to_string()
            };
            let var = |name: &str, e: usize| match e {
                0 => String::new(),
                1 => name.to_string(),
                _ => format!("{name}^{e}"),
            };
            terms.push(format!("{coeff}{}{}", var("x", i), var("y", k - i)));
        }
    }
    format!("{} mod degree {}", terms.join(" + "), law.total_degree() + 1)
}
