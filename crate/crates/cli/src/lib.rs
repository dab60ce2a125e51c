//! Batch verification front end for `circumlab`.

pub mod audit;
pub mod commands;
pub mod pipeline;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use circumlab::enumerate::Filter;
use circumlab::families::FamilyKind;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "circumlab",
    version,
    about = "Check degree-sequence circumference and Hamiltonicity bounds on small graphs"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Audit every graph6 token in a file (or stdin) and emit JSON lines.
    Verify(VerifyArgs),
    /// Print every labeled graph on N vertices as graph6.
    Enumerate(EnumerateArgs),
    /// Audit the extremal families over a range of minimum degrees.
    Extremal(ExtremalArgs),
    /// Print a long-cycle certificate for one graph.
    Certify(CertifyArgs),
}

#[derive(Debug, Args)]
pub struct Jobs {
    /// Worker threads (default: available parallelism).
    #[arg(long, env = "CIRCUMLAB_JOBS")]
    pub jobs: Option<usize>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Input file, one graph6 token per line; `-` or absent reads stdin.
    pub file: Option<PathBuf>,
    #[command(flatten)]
    pub jobs: Jobs,
    /// Stop with exit code 2 at the first malformed line.
    #[arg(long)]
    pub strict: bool,
    /// Write JSON lines here instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Print a summary table on stdout; JSON lines then go only to --output.
    #[arg(long)]
    pub table: bool,
}

#[derive(Debug, Args)]
pub struct EnumerateArgs {
    /// Number of vertices, 1 to 8.
    pub n: usize,
    #[arg(long, default_value = "all")]
    pub filter: Filter,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ExtremalArgs {
    /// Minimum degree or inclusive range, e.g. `2` or `2..5`.
    #[arg(long, default_value = "2..5", value_parser = parse_delta_range)]
    pub delta: DeltaRange,
    /// Comma-separated subset of E1, E2, E3.
    #[arg(long, value_delimiter = ',', default_value = "E1,E2,E3")]
    pub family: Vec<FamilyKind>,
    #[command(flatten)]
    pub jobs: Jobs,
    /// Print an aligned table on stdout; JSON lines then go only to --output.
    #[arg(long)]
    pub table: bool,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CertifyArgs {
    /// A single graph6 token.
    pub token: String,
    /// Re-validate the certificate from the token's adjacency alone.
    #[arg(long)]
    pub check: bool,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DeltaRange {
    pub lo: usize,
    pub hi: usize,
}

pub fn parse_delta_range(s: &str) -> Result<DeltaRange, String> {
    let num = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("`{t}`: {e}"));
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (num(a)?, num(b.strip_prefix('=').unwrap_or(b))?),
        None => {
            let d = num(s)?;
            (d, d)
        }
    };
    if lo > hi {
        return Err(format!("empty range {lo}..{hi}"));
    }
    Ok(DeltaRange { lo, hi })
}

pub fn run(cli: Cli) -> i32 {
    match cli.command {
        Command::Verify(a) => commands::verify(&a),
        Command::Enumerate(a) => commands::enumerate(&a),
        Command::Extremal(a) => commands::extremal(&a),
        Command::Certify(a) => commands::certify(&a),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn delta_ranges() {
        assert_eq!(parse_delta_range("2..5"), Ok(DeltaRange { lo: 2, hi: 5 }));
        assert_eq!(parse_delta_range("3..=4"), Ok(DeltaRange { lo: 3, hi: 4 }));
        assert_eq!(parse_delta_range("1"), Ok(DeltaRange { lo: 1, hi: 1 }));
        assert!(parse_delta_range("5..2").is_err());
        assert!(parse_delta_range("x").is_err());
    }

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
