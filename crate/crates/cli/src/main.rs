//! `evfuse` — batch evidence fusion over JSON evidence documents.
//!
//! Subcommands mirror the three fusion routes of the underlying library plus
//! a seeded end-to-end simulation. All reports are deterministic: numbers
//! print with six decimals, tables follow frame and bitmask order, and the
//! simulator draws from a fixed, portable generator.

mod combine;
mod docs;
mod experts;
mod logfuse;
mod report;
mod simulate;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

/// Exit code for malformed input: unreadable files, schema violations,
/// mismatched frames, oversized products, bad parameters.
const EXIT_INPUT_ERROR: u8 = 1;

/// Exit code for a normalized combination that collapses to total conflict.
const EXIT_TOTAL_CONFLICT: u8 = 2;

#[derive(Parser)]
#[command(
    name = "evfuse",
    version,
    about = "Combine evidence documents over a shared label frame"
)]
struct Cli {
    /// Emit the result as a JSON evidence document instead of a text report.
    #[arg(long, global = true)]
    json: bool,

    /// Numeric tolerance for agreement checks such as `experts --verify`.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tolerance: f64,

    /// Cap on the expert count of any product ensemble.
    #[arg(long, global = true, default_value_t = 1_000_000)]
    max_experts: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Normalized,
    Unnormalized,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Engine {
    /// Direct enumeration of focal pairs, O(4^n) worst case.
    Naive,
    /// Pointwise commonality product via lattice transforms, O(n·2^n).
    Fast,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Pipeline {
    /// Combine boolean opinions by intersection; probabilistic documents are
    /// projected to their possibility subsets first.
    Boolean,
    /// Combine probabilistic opinions by prior-discounted products;
    /// requires probabilistic documents.
    Probabilistic,
}

#[derive(Subcommand)]
enum Command {
    /// Fold two or more mass documents with a conjunctive rule.
    Combine {
        /// Combination rule: renormalize conflict away, or keep it on ∅.
        #[arg(long, value_enum, default_value_t = Mode::Normalized)]
        mode: Mode,
        /// Combination kernel; both produce the same numbers.
        #[arg(long, value_enum, default_value_t = Engine::Fast)]
        engine: Engine,
        /// Mass documents, combined left to right in argument order.
        #[arg(required = true, num_args = 2..)]
        files: Vec<PathBuf>,
    },
    /// Combine expert ensembles and project them to a belief state.
    Experts {
        #[arg(long, value_enum, default_value_t = Pipeline::Probabilistic)]
        pipeline: Pipeline,
        /// Prior constants per label (JSON); defaults to all ones.
        #[arg(long)]
        priors: Option<PathBuf>,
        /// Also combine the per-file belief states directly and check that
        /// both routes agree within the tolerance.
        #[arg(long)]
        verify: bool,
        /// Ensemble documents, combined left to right in argument order.
        #[arg(required = true, num_args = 1..)]
        files: Vec<PathBuf>,
    },
    /// Sum Gaussian log-opinion states and rank the labels.
    Logfuse {
        /// Prior probabilities per label (JSON); defaults to all ones.
        #[arg(long)]
        priors: Option<PathBuf>,
        /// Gaussian state documents, summed in argument order.
        #[arg(required = true, num_args = 1..)]
        files: Vec<PathBuf>,
    },
    /// Generate seeded random ensembles and run both fusion routes on them.
    Simulate {
        /// Seed for the ChaCha8 generator; identical seeds give identical
        /// output bytes.
        #[arg(long)]
        seed: u64,
        /// Number of labels (1..=20); labels are named a, b, c, ...
        #[arg(long, default_value_t = 3)]
        labels: usize,
        /// Experts per source.
        #[arg(long, default_value_t = 4)]
        experts: usize,
        /// Number of independent sources.
        #[arg(long, default_value_t = 3)]
        sources: usize,
        /// Index of a label every expert favors and always deems possible.
        #[arg(long)]
        bias: Option<usize>,
    },
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    match cli.command {
        Command::Combine {
            mode,
            engine,
            ref files,
        } => combine::run(files, mode, engine, cli.json),
        Command::Experts {
            pipeline,
            ref priors,
            verify,
            ref files,
        } => experts::run(
            files,
            pipeline,
            priors.as_deref(),
            verify,
            cli.json,
            cli.tolerance,
            cli.max_experts,
        ),
        Command::Logfuse {
            ref priors,
            ref files,
        } => logfuse::run(files, priors.as_deref(), cli.json),
        Command::Simulate {
            seed,
            labels,
            experts,
            sources,
            bias,
        } => simulate::run(
            seed,
            labels,
            experts,
            sources,
            bias,
            cli.json,
            cli.max_experts,
        ),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // Usage problems are input errors (exit 1); --help and
            // --version are successes.
            let failed = err.use_stderr();
            let _ = err.print();
            return if failed {
                ExitCode::from(EXIT_INPUT_ERROR)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(EXIT_INPUT_ERROR)
        }
    }
}
