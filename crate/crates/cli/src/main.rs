//! `skewbrace`: verify skew braces, extract their σ/τ maps and R-maps, check
//! Yang-Baxter maps, and enumerate braces of small order.
//!
//! Exit codes: 0 success, 1 mathematical failure (a witness is printed),
//! 2 input or usage error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

mod commands;

#[derive(Debug, Parser)]
#[command(name = "skewbrace", version, about = "Skew left braces and set-theoretic Yang-Baxter maps")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format (defaults depend on the subcommand)
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Worker threads for exhaustive sweeps and the brace search
    #[arg(long, global = true, default_value_t = 1)]
    pub jobs: usize,

    /// Report every failing tuple instead of the first one
    #[arg(long, global = true)]
    pub all_witnesses: bool,

    /// Write the main output to this file instead of stdout
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the full identity suite on a brace file
    Verify { file: PathBuf },
    /// Print σ_x and τ_x as permutations
    Maps {
        file: PathBuf,
        /// Only this element (default: all)
        #[arg(long)]
        element: Option<usize>,
    },
    /// Export the R-map R(a, b) = (σ_a(b), τ_b(a))
    #[command(name = "r-map")]
    RMap { file: PathBuf },
    /// Check the Yang-Baxter equation for an R-map or brace file
    #[command(name = "check-ybe")]
    CheckYbe { file: PathBuf },
    /// Enumerate skew braces of a given order
    Enumerate {
        #[arg(long)]
        order: usize,
        /// Keep one canonical representative per isomorphism class
        #[arg(long)]
        up_to_iso: bool,
        /// Use the brute-force oracle enumerator (order <= 5)
        #[arg(long)]
        oracle: bool,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}
