//! `ncrel`: node reliability and node cop-win reliability from the shell.
//!
//! Exit status is 0 on success, 1 when a checked property does not hold,
//! and 2 on usage or input errors.

mod commands;
mod input;

use std::fmt::Display;
use std::io;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use ncrel_core::ReliabilityMeasure;
use thiserror::Error;

use input::GraphInput;

#[derive(Parser, Debug)]
#[command(
    name = "ncrel",
    version,
    about = "Exact node and cop-win reliability of small graphs"
)]
struct Cli {
    /// Worker threads for enumeration, UMR searches and root scans
    /// (default: all cores)
    #[arg(long, global = true, value_name = "N")]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Count vectors and reliability polynomials
    Poly {
        #[command(flatten)]
        input: GraphInput,
        #[arg(long, value_enum, default_value_t = PolyKind::Cs)]
        kind: PolyKind,
    },
    /// Cop-win status by dismantling and, for small graphs, game search
    Copwin {
        #[command(flatten)]
        input: GraphInput,
    },
    /// Build named family members
    Family {
        /// Family spec `TAG:p1[,p2[,p3]]`, tags C STAR U A B F G1 G2 G3 H
        #[arg(required = true, value_name = "SPEC")]
        specs: Vec<String>,
    },
    /// Canonical key, bicyclic type and family names of graphs
    Classify {
        #[command(flatten)]
        input: GraphInput,
    },
    /// All connected graphs of order n with n - 1 + m edges, as graph6
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        cyclomatic: usize,
        /// Print only the number of graphs
        #[arg(long)]
        count: bool,
        /// Use the slower filtering generator (order <= 7)
        #[arg(long)]
        filter: bool,
    },
    /// Exact dominance of one reliability function over another on [0, 1]
    Compare {
        /// graph6 or family spec
        #[arg(long, value_name = "GRAPH")]
        left: String,
        /// graph6 or family spec
        #[arg(long, value_name = "GRAPH")]
        right: String,
        #[arg(long, value_parser = parse_measure, default_value = "ncrel")]
        measure: ReliabilityMeasure,
    },
    /// Search a class of m-cyclic graphs for a uniformly most reliable member
    Umr {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        cyclomatic: usize,
        #[arg(long, value_parser = parse_measure, default_value = "ncrel")]
        measure: ReliabilityMeasure,
        /// Omit the per-vector comparisons
        #[arg(long)]
        summary: bool,
    },
    /// Check H(n, m) against every m-cyclic graph of order n (m >= 3)
    #[command(name = "conjecture-h")]
    ConjectureH {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 3)]
        cyclomatic: usize,
    },
    /// Complex roots of reliability polynomials, one JSON record per graph
    Roots {
        #[command(flatten)]
        input: GraphInput,
        /// Scan every m-cyclic graph of this order (with --cyclomatic)
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, requires = "n")]
        cyclomatic: Option<usize>,
        /// Scan every connected graph of order at most this
        #[arg(long, value_name = "MAX_N")]
        connected: Option<usize>,
        #[arg(long, value_parser = parse_measure, default_value = "ecrel")]
        measure: ReliabilityMeasure,
        #[arg(long, default_value_t = ncrel_core::roots::DEFAULT_TOLERANCE)]
        tol: f64,
        /// Print only the aggregate over the scanned graphs
        #[arg(long)]
        summary: bool,
    },
    /// Run the built-in reproduction checks
    #[command(name = "verify-paper")]
    VerifyPaper {
        /// all, table1, appendix, or a check number 1..=12
        #[arg(long, default_value = "all", value_parser = parse_scope)]
        scope: ncrel_core::verify::Scope,
        /// Where the regenerated order-7 bicyclic table is written
        #[arg(long, value_name = "PATH", default_value = "appendix-7-2.tsv")]
        appendix: PathBuf,
        /// Print results as JSON lines
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum PolyKind {
    /// Connected set counts S_1..S_n
    Cs,
    /// Cop-win set counts W_1..W_n
    Cw,
    /// Node reliability polynomial in p
    Nrel,
    /// Node cop-win reliability polynomial in p
    Ncrel,
    /// Edge cop-win reliability polynomial in q
    Ecrel,
}

fn parse_measure(s: &str) -> Result<ReliabilityMeasure, String> {
    s.parse().map_err(|e: ncrel_core::Error| e.to_string())
}

fn parse_scope(s: &str) -> Result<ncrel_core::verify::Scope, String> {
    s.parse().map_err(|e: ncrel_core::Error| e.to_string())
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{flag}: {source}")]
    Usage {
        flag: &'static str,
        source: ncrel_core::Error,
    },
    #[error("{0}")]
    Missing(String),
    #[error(transparent)]
    Compute(#[from] ncrel_core::Error),
    #[error("{path}: {source}")]
    Io { path: String, source: io::Error },
    #[error("writing output: {0}")]
    Output(#[from] io::Error),
}

impl CliError {
    pub fn usage(flag: &'static str, source: ncrel_core::Error) -> Self {
        CliError::Usage { flag, source }
    }

    pub fn io(path: impl Display, source: io::Error) -> Self {
        CliError::Io {
            path: path.to_string(),
            source,
        }
    }
}

/// Whether every property a command checked held.
pub enum Outcome {
    Ok,
    Failed,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
        {
            eprintln!("error: --jobs: {e}");
            return ExitCode::from(2);
        }
    }
    match commands::run(cli.command) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::Failed) => ExitCode::from(1),
        Err(CliError::Output(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
