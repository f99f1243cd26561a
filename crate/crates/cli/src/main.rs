mod commands;
mod input;

use std::process::ExitCode;

use clap::{Parser, Subcommand};
use num_bigint::BigInt;

use commands::{execute, CliError, Report};

#[derive(Parser, Debug)]
#[command(name = "padyn", version, about = "Exact p-adic power series and stable p-adic dynamical systems")]
pub struct Cli {
    /// Residue characteristic for bare coefficient lists.
    #[arg(long, global = true, default_value_t = 3)]
    pub p: u64,
    /// p-adic precision N: coefficients are computed mod p^N.
    #[arg(long, global = true, default_value_t = 20)]
    pub precision: u32,
    /// Truncation M: series are computed mod x^(M+1).
    #[arg(long, global = true, default_value_t = 64)]
    pub trunc: usize,
    /// Ring context document for bare coefficient lists; overrides --p and --precision.
    #[arg(long, global = true)]
    pub context: Option<String>,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for the randomized property drivers.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// a(b(x)).
    Compose {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// The n-th iterate; negative n iterates the inverse. With --digits k,
    /// n is read as a p-adic integer mod p^k.
    Iterate {
        #[arg(long)]
        series: String,
        #[arg(long, allow_hyphen_values = true)]
        n: BigInt,
        #[arg(long)]
        digits: Option<u32>,
    },
    /// a(b(x)) - b(a(x)); exit 1 unless it is zero.
    Commute {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// Compositional inverse of an invertible series.
    Inverse {
        #[arg(long)]
        series: String,
    },
    /// The series g with g(x^d) = f(x)^d.
    Condense {
        #[arg(long)]
        series: String,
        #[arg(long)]
        d: usize,
    },
    /// Newton polygon of f/x^k, k the x-order of f, and its root valuations.
    Newton {
        #[arg(long)]
        series: String,
    },
    /// Root-valuation ladder of the iterates of a noninvertible series, or
    /// of u^(p^k) - x for an invertible one with --periodic.
    Ladder {
        #[arg(long)]
        series: String,
        #[arg(long, default_value_t = 2)]
        depth: usize,
        #[arg(long)]
        periodic: bool,
    },
    /// Lubin-Tate formal group law of a Lubin-Tate series.
    LtBuild {
        #[arg(long)]
        series: String,
        /// Total degree of the law; defaults to min(12, truncation of the series).
        #[arg(long)]
        degree: Option<usize>,
    },
    /// The endomorphism [a] of the Lubin-Tate group of f, or the
    /// homomorphism from the group of f to that of --to.
    LtEndo {
        #[arg(long)]
        series: String,
        #[arg(long, allow_hyphen_values = true)]
        a: BigInt,
        #[arg(long)]
        to: Option<String>,
    },
    /// Checks h(f_src(x)) = f_dst(h(x)).
    VerifyIsogeny {
        #[arg(long)]
        h: String,
        #[arg(long)]
        src: String,
        #[arg(long)]
        dst: String,
    },
    /// Runs every package check on a package document.
    VerifyPackage {
        #[arg(long)]
        package: String,
        #[arg(long, default_value_t = 2)]
        torsion_depth: usize,
        #[arg(long, default_value_t = 1)]
        periodic_depth: usize,
    },
    /// Runs the built-in battery of worked examples.
    #[command(name = "verify-paper-examples")]
    VerifyExamples {
        /// Cases per randomized property.
        #[arg(long, default_value_t = 200)]
        cases: usize,
    },
}

fn run(cli: &Cli) -> Result<Report, CliError> {
    if commands::needs_big_backend(cli) {
        return execute::<BigInt>(cli);
    }
    match execute::<i128>(cli) {
        Err(CliError::Lib(padyn::Error::PrecisionExhausted { .. })) => execute::<BigInt>(cli),
        other => other,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            for w in &report.warnings {
                eprintln!("warning: {w}");
            }
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&report.json).expect("reports serialize"));
            } else {
                print!("{}", report.text);
            }
            if report.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
