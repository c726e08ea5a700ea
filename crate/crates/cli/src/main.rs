//! `eulersum`: run the identity suite, evaluate single quantities, list cases.
//!
//! Exit codes: 0 when every case passes, 1 when any case fails or errors,
//! 2 for usage errors.

mod eval;
mod render;

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use eulersum_core::registry::{builtin_registry, run_cases, SuiteOptions};

#[derive(Debug, Parser)]
#[command(name = "eulersum", version, about = "Exact and numerical checks of Euler-sum identities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Output {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run the verification suite.
    Verify {
        /// Tolerance override for numeric cases (never below a case's accuracy floor).
        #[arg(long, value_parser = positive_f64)]
        tol: Option<f64>,
        /// Only run cases whose id starts with this prefix.
        #[arg(long)]
        filter: Option<String>,
        #[arg(long, value_enum, default_value_t = Output::Text)]
        output: Output,
        /// Run cases one after another.
        #[arg(long)]
        no_parallel: bool,
        /// Corrupt the named case (negative control for the exit-code contract).
        #[arg(long, hide = true)]
        inject_failure: Option<String>,
    },
    /// Evaluate one quantity: zeta S | polylog S X | hsum M Q | gp P | integral Q.
    Eval {
        name: String,
        #[arg(allow_hyphen_values = true)]
        params: Vec<String>,
        /// Tolerance for series and quadrature.
        #[arg(long, default_value_t = 1e-10, value_parser = positive_f64)]
        tol: f64,
    },
    /// List registry ids, descriptions and anchors.
    List,
}

fn positive_f64(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(format!("tolerance must be positive, got {s}"))
    }
}

const USAGE_ERROR: u8 = 2;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Verify {
            tol,
            filter,
            output,
            no_parallel,
            inject_failure,
        } => {
            let cases = builtin_registry();
            if let Some(id) = &inject_failure {
                if !cases.iter().any(|c| &c.id == id) {
                    eprintln!("error: --inject-failure: no case with id {id:?}");
                    return ExitCode::from(USAGE_ERROR);
                }
            }
            let options = SuiteOptions {
                filter,
                tol_override: tol,
                parallel: !no_parallel,
                inject_failure,
            };
            let report = run_cases(cases, &options);
            match output {
                Output::Text => print!("{}", render::text_report(&report)),
                Output::Json => match serde_json::to_string_pretty(&report) {
                    Ok(s) => println!("{s}"),
                    Err(e) => {
                        eprintln!("error: serializing report: {e}");
                        return ExitCode::FAILURE;
                    }
                },
            }
            if report.all_passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Command::Eval { name, params, tol } => match eval::evaluate(&name, &params, tol) {
            Ok(v) => {
                println!("{v}");
                ExitCode::SUCCESS
            }
            Err(e) => {
                eprintln!("error: {e}");
                eprintln!("{}", eval::USAGE);
                ExitCode::from(USAGE_ERROR)
            }
        },
        Command::List => {
            print!("{}", render::listing(&builtin_registry()));
            ExitCode::SUCCESS
        }
    }
}
