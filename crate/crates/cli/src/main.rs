//! `fmodule`: compute and verify the structure maps of the Hopf algebroid of
//! A-typical formal A-modules from the command line.
//!
//! Exit status: 0 on success, 1 when a verification fails, 2 on usage errors.

mod cache;
mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use config::{OutputFormat, Settings};

#[derive(Parser)]
#[command(name = "fmodule", version, about = "Structure maps of the Hopf algebroid of A-typical formal A-modules")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// TOML file with the same keys as the flags; flags take precedence.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(flatten)]
    settings: Settings,
}

#[derive(Subcommand, Clone, Copy)]
enum Command {
    /// Logarithm coefficients l_0..l_n (--n, --convention).
    Logs,
    /// Right unit of the k-th generator (--k, --convention).
    RightUnit,
    /// Coproduct of t_k (--k, --D, --route).
    Coproduct,
    /// Witt polynomial w_I (--seq) or classical w_j (--classical) in --m variables.
    Witt,
    /// Invariance of I_h (--h, --kmax, --convention).
    Invariance,
    /// Presentation of the height-h stabilizer algebra (--h, --kmax).
    Stabilizer,
    /// Every verification suite through degree --D (default 2(q^3 - 1)).
    VerifyAll,
}

/// Errors that reflect a bad invocation rather than a failed computation.
fn is_usage_error(e: &anyhow::Error) -> bool {
    use fmodule::Error;
    match e.downcast_ref::<Error>() {
        Some(Error::InvalidRing(_) | Error::OutOfRange(_) | Error::Parse(_) | Error::Sequence(_)) => true,
        Some(_) => false,
        None => true,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    let settings = match &cli.config {
        Some(path) => match Settings::load(path) {
            Ok(base) => cli.settings.clone().over(base),
            Err(e) => {
                eprintln!("error: {e:#}");
                return ExitCode::from(2);
            }
        },
        None => cli.settings.clone(),
    };
    let result = match cli.command {
        Command::Logs => commands::logs_cmd(&settings),
        Command::RightUnit => commands::right_unit_cmd(&settings),
        Command::Coproduct => commands::coproduct_cmd(&settings),
        Command::Witt => commands::witt_cmd(&settings),
        Command::Invariance => commands::invariance_cmd(&settings),
        Command::Stabilizer => commands::stabilizer_cmd(&settings),
        Command::VerifyAll => commands::verify_all_cmd(&settings),
    };
    match result {
        Ok(out) => {
            match settings.output() {
                OutputFormat::Text => print!("{}", out.text),
                OutputFormat::Json => {
                    println!("{}", serde_json::to_string_pretty(&out.json).expect("output serializes"))
                }
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(if is_usage_error(&e) { 2 } else { 1 })
        }
    }
}
