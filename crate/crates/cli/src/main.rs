//! x0n: verification pipelines for Delta functions, Eisenstein series, Green functions,
//! theta lifts and arithmetic intersection tables on X0(N).
//!
//! Exit codes: 0 when every check passes, 1 for usage errors and invalid input,
//! 2 for tolerance or numerical failures. Failures print a JSON diagnostic on stderr.

// negated float comparisons are used on purpose: they also reject NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod args;
mod commands;
mod output;

use anyhow::Result;
use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use num_rational::Rational64;
use output::{Format, Report};
use serde_json::json;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Debug, Parser)]
#[command(name = "x0n", version, about = "Verification pipelines on the modular curve X0(N)")]
struct Cli {
    /// Worker threads for the parallel kernels
    #[arg(long, global = true, env = "X0N_THREADS")]
    threads: Option<usize>,
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the report here instead of stdout
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// q-expansions of Delta_N and its Atkin-Lehner images
    Delta {
        #[command(subcommand)]
        action: DeltaAction,
    },
    /// The three exponent identities for every square-free level up to a bound
    Identities {
        #[arg(long)]
        level_max: u64,
    },
    /// Both sides of the Kronecker limit formula at a point
    Klf {
        #[arg(long, value_parser = args::level)]
        level: u64,
        #[arg(long, value_parser = args::upper_half_plane, allow_hyphen_values = true)]
        z: Complex64,
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
    },
    /// The Kudla Green function, or its asymptotics at a cusp
    Green(GreenCommand),
    /// Both sides of the theta-lift identity for the Eisenstein series
    Thetalift {
        #[arg(long, value_parser = args::level)]
        level: u64,
        #[arg(long, value_parser = args::upper_half_plane, allow_hyphen_values = true)]
        tau: Complex64,
        #[arg(long, default_value_t = 2.0)]
        s: f64,
        /// Also evaluate the vector-valued series as a coset sum over 0 <= c < B
        #[arg(long)]
        bound: Option<i64>,
        /// Quadrature tolerance
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        /// Lift the Atkin-Lehner translate of the Eisenstein series instead
        #[arg(long)]
        atkin_lehner: bool,
        /// Largest accepted componentwise relative residual
        #[arg(long, default_value_t = 1e-3)]
        max_residual: f64,
    },
    /// Degrees of the arithmetic special divisors Z(n, mu, v)
    Degrees {
        #[arg(long, value_parser = args::level)]
        level: u64,
        #[arg(long, value_parser = args::rational)]
        n_max: Rational64,
        #[arg(long, value_parser = args::positive, default_value = "1")]
        v: f64,
    },
    /// Symbolic intersection pairing of two divisor expressions
    Intersect {
        #[arg(long, value_parser = args::level)]
        level: u64,
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        /// Value of v for the numeric rendering of log v terms
        #[arg(long, value_parser = args::positive)]
        v: Option<f64>,
    },
    /// Dump the encoded pairing table of a level
    Table {
        #[arg(long, value_parser = args::level)]
        level: u64,
    },
    /// Check <Z, X_p^0> = <Z, X_p^inf> = deg Z log p / 2 on every row
    Vertical {
        #[arg(long, value_parser = args::level)]
        level: u64,
        #[arg(long)]
        p: u64,
        #[arg(long, value_parser = args::positive, default_value = "1")]
        v: f64,
        #[arg(long, value_parser = args::rational)]
        n_max: Rational64,
    },
}

#[derive(Debug, Subcommand)]
enum DeltaAction {
    /// Exact q-expansion to a given number of coefficients
    Expand {
        #[arg(long, value_parser = args::level)]
        level: u64,
        #[arg(long)]
        order: usize,
        /// Expand the image under the Atkin-Lehner involution W_Q
        #[arg(long)]
        atkin_lehner: Option<u64>,
        /// Expand Delta_N^0 instead
        #[arg(long)]
        zero: bool,
    },
}

#[derive(Debug, Args)]
#[command(args_conflicts_with_subcommands = true, subcommand_negates_reqs = true)]
struct GreenCommand {
    #[command(subcommand)]
    check: Option<GreenCheck>,
    #[command(flatten)]
    point: GreenPoint,
}

#[derive(Debug, Args)]
struct GreenPoint {
    #[arg(long, value_parser = args::level, required = true)]
    level: Option<u64>,
    #[arg(long, allow_hyphen_values = true, required = true)]
    r: Option<i64>,
    #[arg(long, value_parser = args::rational, allow_hyphen_values = true, required = true)]
    n: Option<Rational64>,
    #[arg(long, value_parser = args::positive, required = true)]
    v: Option<f64>,
    #[arg(long, value_parser = args::upper_half_plane, allow_hyphen_values = true, required = true)]
    z: Option<Complex64>,
}

#[derive(Debug, Subcommand)]
enum GreenCheck {
    /// Residual of the Green function against its logarithmic singularity at a cusp
    CuspCheck {
        #[arg(long, value_parser = args::level)]
        level: u64,
        #[arg(long, allow_hyphen_values = true, default_value_t = 0)]
        r: i64,
        #[arg(long, value_parser = args::rational, allow_hyphen_values = true, default_value = "0")]
        n: Rational64,
        #[arg(long, value_parser = args::positive, default_value = "1")]
        v: f64,
        /// The cusp 1/M; defaults to infinity (M = N)
        #[arg(long)]
        cusp: Option<u64>,
        #[arg(long, allow_hyphen_values = true, default_value_t = 0.1)]
        x0: f64,
        #[arg(long, value_parser = args::grid, default_value = "4,6,8,12")]
        y_grid: std::vec::Vec<f64>,
        #[arg(long, default_value_t = 1e-4)]
        tol: f64,
    },
}

fn run(cli: &Cli) -> Result<Report> {
    use commands as c;
    match &cli.command {
        Command::Delta { action: DeltaAction::Expand { level, order, atkin_lehner, zero } } => {
            c::delta_expand(*level, *order, *atkin_lehner, *zero)
        }
        Command::Identities { level_max } => c::identities(*level_max),
        Command::Klf { level, z, tol } => c::klf(*level, *z, *tol),
        Command::Green(g) => match &g.check {
            Some(GreenCheck::CuspCheck { level, r, n, v, cusp, x0, y_grid, tol }) => {
                c::green_cusp_check(*level, *r, *n, *v, *cusp, *x0, y_grid, *tol)
            }
            None => {
                let p = &g.point;
                let missing = || anyhow::anyhow!(x0n::Error::InvalidArgument("green needs --level, --r, --n, --v and --z".into()));
                c::green(
                    p.level.ok_or_else(missing)?,
                    p.r.ok_or_else(missing)?,
                    p.n.ok_or_else(missing)?,
                    p.v.ok_or_else(missing)?,
                    p.z.ok_or_else(missing)?,
                )
            }
        },
        Command::Thetalift { level, tau, s, bound, tol, atkin_lehner, max_residual } => {
            c::thetalift(*level, *tau, *s, *bound, *tol, *atkin_lehner, *max_residual)
        }
        Command::Degrees { level, n_max, v } => c::degrees(*level, *n_max, *v),
        Command::Intersect { level, a, b, v } => c::intersect(*level, a, b, *v),
        Command::Table { level } => c::table(*level),
        Command::Vertical { level, p, v, n_max } => c::vertical(*level, *p, *v, *n_max),
    }
}

/// Input errors exit with 1, numerical failures with 2.
fn exit_code_for(err: &anyhow::Error) -> u8 {
    use x0n::Error as E;
    match err.downcast_ref::<E>() {
        Some(E::NotSquareFree(_))
        | Some(E::NotADivisor { .. })
        | Some(E::Congruence(_))
        | Some(E::InvalidArgument(_))
        | Some(E::UndeterminedPairing(..)) => 1,
        Some(_) => 2,
        None => 1,
    }
}

fn diagnostic(status: &str, message: &str) {
    eprintln!("{}", json!({ "status": status, "message": message }));
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            diagnostic("usage_error", &format!("cannot configure {t} threads: {e}"));
            return ExitCode::from(1);
        }
    }
    match run(&cli) {
        Ok(report) => {
            if let Err(e) = output::emit(&report, cli.format, cli.output.as_ref()) {
                diagnostic("io_error", &format!("{e:#}"));
                return ExitCode::from(1);
            }
            if report.ok {
                ExitCode::SUCCESS
            } else {
                diagnostic("tolerance_failure", report.failure.as_deref().unwrap_or("check failed"));
                ExitCode::from(2)
            }
        }
        Err(e) => {
            let code = exit_code_for(&e);
            let status = if code == 1 { "usage_error" } else { "numerical_failure" };
            diagnostic(status, &format!("{e:#}"));
            ExitCode::from(code)
        }
    }
}
