//! Command-line front end: solve, ranging, classification, and continuity
//! probes over the JSON formats. JSON goes to stdout, diagnostics to stderr,
//! and output is byte-identical across runs on identical inputs.
//!
//! Exit codes: 0 optimal/success, 1 usage or input error, 2 infeasible,
//! 3 unbounded, 4 ranging or probing hit a non-optimal problem.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{ArgGroup, Parser, Subcommand};

use parlp::sensitivity::{self, RangingReport};
use parlp::solver::SolveStatus;
use parlp::{
    classify, probe, EnumCap, Error, LpProblem, PerturbationRay, Rational, RationalVector,
};

#[derive(Parser)]
#[command(
    name = "parlp",
    version,
    about = "Exact parametric linear programming toolkit",
    long_about = "Solves small standard-form problems (max p^T x, Ax = b, x >= 0) in exact \
                  rational arithmetic, with KKT-certified duals, rhs/objective ranging, \
                  regularity classification, and continuity probes along problem families.\n\n\
                  The enumeration cap (default 20 columns, 12 rows) can be overridden with \
                  PARLP_ENUM_CAP=COLS or PARLP_ENUM_CAP=COLS,ROWS."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve a problem file; prints the outcome JSON.
    Solve { file: PathBuf },
    /// Theta-interval ranging at the representative optimal vertex, with a
    /// re-solve verification table.
    #[command(group(ArgGroup::new("ray").required(true).args(["rhs", "obj"])))]
    Sensitivity {
        file: PathBuf,
        /// JSON file with the rhs direction delta-b (array of rationals).
        #[arg(long, value_name = "FILE")]
        rhs: Option<PathBuf>,
        /// JSON file with the objective direction delta-p (array of rationals).
        #[arg(long, value_name = "FILE")]
        obj: Option<PathBuf>,
        /// Comma-separated thetas to verify; defaults to {lo, lo/2, 0, hi/2, hi}.
        #[arg(long = "theta-grid", value_delimiter = ',', value_parser = parse_rational, allow_hyphen_values = true)]
        theta_grid: Option<Vec<Rational>>,
    },
    /// Classify a problem: feasibility, boundedness, regularity, strong
    /// regularity, singleton-solvability, with witnesses.
    Classify { file: PathBuf },
    /// Probe a family file: value continuity, solution lsc, and usc reports.
    Probe {
        file: PathBuf,
        /// Comma-separated member indices, e.g. --N 1,16,256.
        #[arg(long = "N", value_delimiter = ',', required = true)]
        n: Vec<u64>,
        /// Emit the per-N table as CSV instead of the JSON report.
        #[arg(long)]
        csv: bool,
    },
    /// Reproduce Example 1 and print its report.
    Example1 {
        /// Comma-separated member indices; defaults to 1..=100.
        #[arg(long = "N", value_delimiter = ',')]
        n: Option<Vec<u64>>,
    },
}

fn parse_rational(s: &str) -> Result<Rational, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    let cap = match cap_from_env() {
        Ok(cap) => cap,
        Err(message) => return fail(1, &message),
    };
    match run(cli.command, &cap) {
        Ok(code) => ExitCode::from(code),
        Err(err) => fail(exit_code_for(&err), &err.to_string()),
    }
}

fn fail(code: u8, message: &str) -> ExitCode {
    eprintln!("parlp: {message}");
    ExitCode::from(code)
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::NotOptimal(_) | Error::NotOptimalBasic => 4,
        Error::Infeasible => 2,
        _ => 1,
    }
}

fn cap_from_env() -> Result<EnumCap, String> {
    let mut cap = EnumCap::default();
    let Some(raw) = std::env::var_os("PARLP_ENUM_CAP") else {
        return Ok(cap);
    };
    let raw = raw
        .into_string()
        .map_err(|_| "PARLP_ENUM_CAP is not valid UTF-8".to_string())?;
    let mut parts = raw.split(',');
    let cols = parts.next().unwrap_or_default();
    cap.max_cols = cols
        .trim()
        .parse()
        .map_err(|_| format!("PARLP_ENUM_CAP: bad column cap {cols:?}"))?;
    if let Some(rows) = parts.next() {
        cap.max_rows = rows
            .trim()
            .parse()
            .map_err(|_| format!("PARLP_ENUM_CAP: bad row cap {rows:?}"))?;
    }
    if parts.next().is_some() {
        return Err("PARLP_ENUM_CAP takes COLS or COLS,ROWS".into());
    }
    Ok(cap)
}

fn read_file(path: &Path) -> Result<String, Error> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::Value(format!("cannot read {}: {e}", path.display())))
}

fn load_problem(path: &Path) -> Result<LpProblem, Error> {
    parlp::parse_problem(&read_file(path)?)
}

fn load_delta(path: &Path) -> Result<RationalVector, Error> {
    let raw: Vec<String> = serde_json::from_str(&read_file(path)?)
        .map_err(|e| Error::Schema(format!("{}: {e}", path.display())))?;
    raw.iter()
        .map(|s| s.parse())
        .collect::<Result<Vec<Rational>, Error>>()
        .map(RationalVector::new)
}

fn print_json<T: serde::Serialize>(value: &T) {
    println!(
        "{}",
        serde_json::to_string(value).expect("report serialization cannot fail")
    );
}

fn status_code(status: SolveStatus) -> u8 {
    match status {
        SolveStatus::Optimal => 0,
        SolveStatus::Infeasible => 2,
        SolveStatus::Unbounded => 3,
    }
}

fn run(command: Command, cap: &EnumCap) -> Result<u8, Error> {
    match command {
        Command::Solve { file } => {
            let outcome = parlp::solve(&load_problem(&file)?, cap)?;
            print_json(&outcome);
            Ok(status_code(outcome.status))
        }
        Command::Sensitivity {
            file,
            rhs,
            obj,
            theta_grid,
        } => {
            let problem = load_problem(&file)?;
            let report = run_sensitivity(&problem, rhs, obj, theta_grid, cap)?;
            print_json(&report);
            Ok(0)
        }
        Command::Classify { file } => {
            let classification = classify::classify(&load_problem(&file)?, cap)?;
            let code = status_code(classification.status);
            print_json(&classification);
            Ok(code)
        }
        Command::Probe { file, n, csv } => {
            let family = parlp::parse_family(&read_file(&file)?)?;
            let report = probe::probe_family(&family, &n, cap)?;
            if csv {
                print!("{}", probe::probe_report_csv(&report));
            } else {
                print_json(&report);
            }
            Ok(0)
        }
        Command::Example1 { n } => {
            let ns = n.unwrap_or_else(|| (1..=100).collect());
            let report = probe::run_example1(&ns, cap)?;
            print_json(&report);
            Ok(0)
        }
    }
}

fn run_sensitivity(
    problem: &LpProblem,
    rhs: Option<PathBuf>,
    obj: Option<PathBuf>,
    theta_grid: Option<Vec<Rational>>,
    cap: &EnumCap,
) -> Result<RangingReport, Error> {
    let outcome = parlp::solve(problem, cap)?;
    let point = outcome
        .representative()
        .ok_or_else(|| Error::NotOptimal(format!("problem is {}", outcome.status.as_str())))?;
    let (ray, interval) = match (rhs, obj) {
        (Some(path), None) => {
            let delta = load_delta(&path)?;
            let interval = sensitivity::rhs_interval(problem, point, &delta)?;
            (PerturbationRay::Rhs(delta), interval)
        }
        (None, Some(path)) => {
            let delta = load_delta(&path)?;
            let interval = sensitivity::objective_interval(problem, point, &delta)?;
            (PerturbationRay::Objective(delta), interval)
        }
        _ => unreachable!("clap enforces exactly one of --rhs/--obj"),
    };
    let grid = theta_grid.unwrap_or_else(|| sensitivity::default_theta_grid(&interval));
    sensitivity::verify_interval(problem, &ray, &interval, &grid, cap)
}
