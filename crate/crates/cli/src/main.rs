//! `zmspec`: batch driver for projective point sets over `Z_m`, the matrices
//! `A` and `B = A·Aᵀ`, and exact checks of the spectrum of `B`.
//!
//! Exit codes: 0 success, 1 verification mismatch, 2 usage or domain error,
//! 3 size guardrail.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use zmspec::{Error, PointOrder, DEFAULT_GUARDRAIL};

#[derive(Debug, Parser)]
#[command(name = "zmspec", version, about)]
struct Cli {
    /// Largest θ_{n,m} any command may enumerate.
    #[arg(
        long,
        global = true,
        env = "ZMSPEC_GUARDRAIL",
        default_value_t = DEFAULT_GUARDRAIL as u64,
        value_parser = clap::value_parser!(u64).range(1..)
    )]
    guardrail: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Ordering {
    Lex,
    KGrouped,
}

impl From<Ordering> for PointOrder {
    fn from(o: Ordering) -> Self {
        match o {
            Ordering::Lex => PointOrder::Lex,
            Ordering::KGrouped => PointOrder::KGrouped,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Matrixmarket,
    Table,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Which {
    #[value(name = "A", alias = "a")]
    A,
    #[value(name = "B", alias = "b")]
    B,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SpectrumFormat {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print θ_{n,m}, the number of points of P_{n,m}.
    Theta {
        #[arg(short)]
        n: usize,
        #[arg(short)]
        m: u64,
    },
    /// List the points of P_{n,m}.
    Points {
        #[arg(short)]
        n: usize,
        #[arg(short)]
        m: u64,
        #[arg(long, value_enum, default_value_t = Ordering::Lex)]
        ordering: Ordering,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Dump A_{n,m} or B_{n,m} with point labels.
    Matrix {
        #[arg(short)]
        n: usize,
        #[arg(short)]
        m: u64,
        #[arg(long, value_enum, default_value_t = Which::B)]
        which: Which,
        #[arg(long, value_enum, default_value_t = Ordering::Lex)]
        ordering: Ordering,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Print the closed-form spectrum of B_{n,m}; with --verify, check it
    /// exactly against the matrix and print the report as JSON.
    Spectrum {
        #[arg(short)]
        n: usize,
        #[arg(short)]
        m: u64,
        #[arg(long)]
        verify: bool,
        #[arg(long, value_enum, default_value_t = SpectrumFormat::Text)]
        format: SpectrumFormat,
    },
    /// Check B_{n,m1·m2} against B_{n,m1} ⊗ B_{n,m2} under the CRT relabeling.
    TensorCheck {
        #[arg(short)]
        n: usize,
        #[arg(long)]
        m1: u64,
        #[arg(long)]
        m2: u64,
    },
    /// Closed-form and brute-force solution counts modulo p^e.
    Count {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        e: u32,
        /// Coefficients of the 2×2 system [a b; c d].
        #[arg(long, num_args = 4, value_names = ["A", "B", "C", "D"], allow_hyphen_values = true,
              conflicts_with = "pair", required_unless_present = "pair")]
        coeffs: Option<Vec<i64>>,
        /// Two points as comma-separated tuples, e.g. `0,0,1 0,1,0`.
        #[arg(long, num_args = 2, value_names = ["U", "V"])]
        pair: Option<Vec<String>>,
        /// Restrict solutions to p^g·Z^n; without it, count primitive solutions.
        #[arg(long, requires = "pair")]
        layer: Option<u32>,
    },
    /// Run a quick battery of exact checks.
    Selftest,
}

fn exit_code(err: &Error) -> u8 {
    match err {
        Error::Size { .. } => 3,
        Error::Invariant(_) => 1,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let guardrail = usize::try_from(cli.guardrail).unwrap_or(usize::MAX);
    match commands::run(cli.command, guardrail) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(err) => {
            eprintln!("zmspec: {err}");
            ExitCode::from(exit_code(&err))
        }
    }
}
