//! `twistflag`: Chow ranks of twisted flag varieties, partition counts,
//! Schur bases and exhaustive checks in split matrix algebras.
//!
//! Exit codes: 0 success, 1 invalid input, 2 a verification failed,
//! 3 the enumeration budget was exceeded.

mod commands;
mod report;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use twistflag::algebra_lab::Budget;
use twistflag::Error;

use crate::report::Report;

#[derive(Debug, Parser)]
#[command(name = "twistflag", version, about = "Chow ranks of twisted flag varieties and the combinatorics behind them")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Free ranks of CH^k of a flag variety over a base.
    Ranks(RanksArgs),
    /// Coefficients n_i of a fibration decomposition.
    Coeffs(CoeffsArgs),
    /// Bounded partition counts.
    Partitions(PartitionsArgs),
    /// Basis of a split Grassmannian's Chow ring, by weight.
    SchurBasis(SchurBasisArgs),
    /// Run the invariant suites.
    Verify(VerifyArgs),
    /// Count flags of subspaces of F_q^n by enumeration.
    FlagsCount(FlagsCountArgs),
}

/// Hypotheses on the index of the algebra. They are recorded, never checked.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, ValueEnum)]
pub enum HypothesisArg {
    /// gcd(ind A, i_s) = 1 for the chosen s.
    CoprimeChosen,
    /// ind A is a prime power.
    PrimePower,
    /// gcd(ind A, i_1, ..., i_r) = 1.
    CoprimeAll,
    /// A is split.
    Split,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RanksMode {
    /// Flag bundle of a vector bundle over the base.
    Direct,
    /// Twisted flag variety with i_1 = 1 over SB(A).
    FirstIndexOne,
    /// Twisted flag variety over SB_{i_s}(A); needs --s.
    General,
    /// Twisted flag variety with i_1 > 1, through Flag(1, i_1, ..., i_r; A) over SB(A).
    SbPipeline,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CoeffsCase {
    FlagBundle,
    FirstIndexOne,
    General,
    Product,
}

#[derive(Debug, Args)]
pub struct RanksArgs {
    /// Degree of the algebra.
    #[arg(long)]
    pub n: u32,
    /// Strictly increasing indices, e.g. 1,2,4.
    #[arg(long)]
    pub indices: String,
    /// point, projective:N (for P^(N-1)), grassmannian:N,D, symbolic, or ranks such as 1,2,1.
    #[arg(long)]
    pub base: String,
    #[arg(long, value_enum, default_value_t = RanksMode::Direct)]
    pub mode: RanksMode,
    /// Position of the projection index, 1-based (general mode).
    #[arg(long)]
    pub s: Option<usize>,
    /// Asserted hypothesis; repeat for several.
    #[arg(long, value_enum)]
    pub hypothesis: Vec<HypothesisArg>,
}

#[derive(Debug, Args)]
pub struct CoeffsArgs {
    #[arg(long)]
    pub n: u32,
    #[arg(long)]
    pub indices: String,
    #[arg(long = "case", value_enum, default_value_t = CoeffsCase::FlagBundle)]
    pub case: CoeffsCase,
    /// Position of the projection index, 1-based (general case).
    #[arg(long)]
    pub s: Option<usize>,
    /// Asserted hypothesis; repeat for several.
    #[arg(long, value_enum)]
    pub hypothesis: Vec<HypothesisArg>,
    /// Degree of the second factor (product case).
    #[arg(long)]
    pub plus_n: Option<u32>,
    /// Indices of the second factor (product case).
    #[arg(long)]
    pub plus_indices: Option<String>,
}

#[derive(Debug, Args)]
pub struct PartitionsArgs {
    /// Integer to partition.
    #[arg(long)]
    pub n: u32,
    /// Largest number of parts.
    #[arg(long, required_unless_present = "blocks", conflicts_with = "blocks")]
    pub m: Option<u32>,
    /// Largest part.
    #[arg(long = "A", alias = "a", required_unless_present = "blocks", conflicts_with = "blocks")]
    pub a: Option<u32>,
    /// Count partitions with exactly m parts.
    #[arg(long, conflicts_with = "blocks")]
    pub exact: bool,
    /// Several blocks m:A,m:A,...; counts tuples with total weight n.
    #[arg(long)]
    pub blocks: Option<String>,
}

#[derive(Debug, Args)]
pub struct SchurBasisArgs {
    #[arg(long)]
    pub n: u32,
    #[arg(long)]
    pub d: u32,
    /// Also print each Schur polynomial in the Chern classes.
    #[arg(long)]
    pub polynomials: bool,
    /// Enumeration budget (defaults to the environment, then 1000000).
    #[arg(long)]
    pub budget: Option<u64>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// partitions, schur, chow, algebra or all.
    #[arg(long, default_value = "all")]
    pub suite: String,
    #[arg(long)]
    pub n_max: Option<u32>,
    /// Field order for the algebra suite: 2, 3 or 5.
    #[arg(long, default_value_t = 2)]
    pub q: u32,
    #[arg(long)]
    pub budget: Option<u64>,
}

#[derive(Debug, Args)]
pub struct FlagsCountArgs {
    #[arg(long)]
    pub n: usize,
    /// Strictly increasing subspace dimensions.
    #[arg(long)]
    pub indices: String,
    #[arg(long, default_value_t = 2)]
    pub q: u32,
    #[arg(long)]
    pub budget: Option<u64>,
}

/// The budget from the command line, else the environment, else the default.
pub fn resolve_budget(flag: Option<u64>) -> twistflag::Result<Budget> {
    match flag {
        Some(limit) => Ok(Budget::new(limit)),
        None => Budget::from_env(),
    }
}

fn exit_code(error: &Error) -> u8 {
    match error {
        Error::BudgetExceeded { .. } => 3,
        Error::NegativeRank { .. } | Error::Inconsistent(_) => 2,
        _ => 1,
    }
}

fn dispatch(command: Command) -> twistflag::Result<Report> {
    match command {
        Command::Ranks(args) => commands::ranks(&args),
        Command::Coeffs(args) => commands::coeffs(&args),
        Command::Partitions(args) => commands::partitions(&args),
        Command::SchurBasis(args) => commands::schur_basis(&args),
        Command::Verify(args) => commands::verify(&args),
        Command::FlagsCount(args) => commands::flags_count(&args),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match dispatch(cli.command) {
        Ok(report) => {
            match cli.format {
                Format::Table => print!("{}", report.to_table()),
                Format::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&report.to_json()).expect("report serializes")
                ),
            }
            if report.verification_failed {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
