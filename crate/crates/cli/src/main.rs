//! Command-line front end: load or generate a dataset, run the requested
//! join, print TSV pairs, optionally gate against the brute-force oracle
//! and dump a stats document.

use std::collections::HashSet;
use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, ValueEnum};

use segjoin::{
    rs_join, self_join, IndexSide, JoinConfig, MatchPair, SelectionStrategy, Threshold,
    VerifierKind,
};
use segjoin_cli::dataset::{load_dataset, DatasetError};
use segjoin_cli::experiment::{selection_totals_rs, selection_totals_self};
use segjoin_cli::gen::{generate, GeneratorConfig};
use segjoin_cli::oracle::{brute_force_join, brute_force_rs_join};
use segjoin_cli::report::ReportRecord;

#[derive(Debug, Parser)]
#[command(
    name = "segjoin",
    version,
    about = "Edit-distance similarity join over newline-delimited strings"
)]
struct Args {
    /// Join a dataset with itself, or a left file against a right file.
    #[arg(long, value_enum)]
    mode: Mode,

    /// Edit-distance threshold.
    #[arg(long)]
    tau: usize,

    /// Dataset file (self mode).
    #[arg(long, value_name = "PATH")]
    input: Option<PathBuf>,

    /// Left dataset file (rs mode).
    #[arg(long, value_name = "PATH")]
    left: Option<PathBuf>,

    /// Right dataset file (rs mode).
    #[arg(long, value_name = "PATH")]
    right: Option<PathBuf>,

    /// Substring selection strategy.
    #[arg(long, value_enum, default_value_t = Selector::Multimatch)]
    selector: Selector,

    /// Candidate verification method.
    #[arg(long, value_enum, default_value_t = Verifier::ExtensionShare)]
    verifier: Verifier,

    /// Write a flat JSON stats document to this file.
    #[arg(long, value_name = "PATH")]
    stats: Option<PathBuf>,

    /// Recompute the result by brute force and fail on any discrepancy.
    #[arg(long)]
    oracle_check: bool,

    /// Probe workers (rs mode only).
    #[arg(long, value_name = "N")]
    threads: Option<usize>,

    /// Generate a seeded synthetic dataset of COUNT strings instead of
    /// reading --input (self mode).
    #[arg(long = "gen", value_name = "COUNT")]
    gen_count: Option<usize>,

    /// Generator seed.
    #[arg(long, default_value_t = 42)]
    seed: u64,

    /// Generator minimum string length.
    #[arg(long, default_value_t = 8)]
    len_min: usize,

    /// Generator maximum string length.
    #[arg(long, default_value_t = 24)]
    len_max: usize,

    /// Generator alphabet size: the first K symbols of [a-z A-Z 0-9].
    #[arg(long, default_value_t = 26, value_name = "K")]
    alphabet: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    #[value(name = "self")]
    SelfJoin,
    Rs,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Selector {
    Length,
    Shift,
    Position,
    Multimatch,
}

impl From<Selector> for SelectionStrategy {
    fn from(s: Selector) -> Self {
        match s {
            Selector::Length => SelectionStrategy::Length,
            Selector::Shift => SelectionStrategy::Shift,
            Selector::Position => SelectionStrategy::Position,
            Selector::Multimatch => SelectionStrategy::MultiMatch,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Verifier {
    Dp,
    Banded,
    Extension,
    ExtensionShare,
}

impl From<Verifier> for VerifierKind {
    fn from(v: Verifier) -> Self {
        match v {
            Verifier::Dp => VerifierKind::FullDp,
            Verifier::Banded => VerifierKind::Banded,
            Verifier::Extension => VerifierKind::Extension,
            Verifier::ExtensionShare => VerifierKind::ExtensionSharePrefix,
        }
    }
}

#[derive(Debug, thiserror::Error)]
enum Failure {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Load(#[from] DatasetError),
    #[error("cannot write {}: {source}", path.display())]
    Write {
        path: PathBuf,
        source: io::Error,
    },
    #[error("cannot write results: {0}")]
    Stdout(#[from] io::Error),
    #[error("oracle mismatch: {0}")]
    Oracle(String),
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Load(_) | Failure::Write { .. } | Failure::Stdout(_) => 2,
            Failure::Oracle(_) => 3,
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure::Usage(message.into())
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(args) => args,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&args) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {failure}");
            ExitCode::from(failure.exit_code())
        }
    }
}

fn validate(args: &Args) -> Result<(), Failure> {
    match args.mode {
        Mode::SelfJoin => {
            match (&args.input, args.gen_count) {
                (Some(_), None) | (None, Some(_)) => {}
                (Some(_), Some(_)) => {
                    return Err(usage("--input and --gen are mutually exclusive"))
                }
                (None, None) => return Err(usage("self mode needs --input or --gen")),
            }
            if args.left.is_some() || args.right.is_some() {
                return Err(usage("--left/--right only apply to --mode rs"));
            }
            if args.threads.is_some() {
                return Err(usage("--threads only applies to --mode rs"));
            }
        }
        Mode::Rs => {
            if args.left.is_none() || args.right.is_none() {
                return Err(usage("rs mode needs both --left and --right"));
            }
            if args.input.is_some() || args.gen_count.is_some() {
                return Err(usage("--input/--gen only apply to --mode self"));
            }
            if args.threads == Some(0) {
                return Err(usage("--threads must be at least 1"));
            }
        }
    }
    if args.gen_count.is_some() {
        if args.len_min > args.len_max {
            return Err(usage("--len-min must not exceed --len-max"));
        }
        if !(1..=62).contains(&args.alphabet) {
            return Err(usage("--alphabet must be between 1 and 62"));
        }
    }
    Ok(())
}

fn run(args: &Args) -> Result<(), Failure> {
    validate(args)?;
    let config = JoinConfig {
        tau: Threshold(args.tau),
        strategy: args.selector.into(),
        verifier: args.verifier.into(),
        threads: args.threads.unwrap_or(1),
        index_side: IndexSide::Auto,
    };

    match args.mode {
        Mode::SelfJoin => {
            let records = match (&args.input, args.gen_count) {
                (Some(path), None) => load_dataset(path)?,
                (None, Some(count)) => generate(&GeneratorConfig {
                    count,
                    len_min: args.len_min,
                    len_max: args.len_max,
                    alphabet: args.alphabet,
                    seed: args.seed,
                }),
                _ => unreachable!("validated"),
            };
            let result = self_join(&records, &config);
            if args.oracle_check {
                oracle_gate(&result.pairs, &brute_force_join(&records, args.tau))?;
            }
            write_pairs(&result.pairs)?;
            if let Some(path) = &args.stats {
                let totals = selection_totals_self(&records, config.tau);
                write_stats(path, &ReportRecord::new("self", config, &result.stats, totals))?;
            }
        }
        Mode::Rs => {
            let left = load_dataset(args.left.as_ref().expect("validated"))?;
            let right = load_dataset(args.right.as_ref().expect("validated"))?;
            let result = rs_join(&left, &right, &config);
            if args.oracle_check {
                oracle_gate(&result.pairs, &brute_force_rs_join(&left, &right, args.tau))?;
            }
            write_pairs(&result.pairs)?;
            if let Some(path) = &args.stats {
                // Auto indexes the larger side (ties to the right); report
                // the totals for the side that actually probed.
                let (probing, indexed) = if left.len() > right.len() {
                    (&right, &left)
                } else {
                    (&left, &right)
                };
                let totals = selection_totals_rs(probing, indexed, config.tau);
                write_stats(path, &ReportRecord::new("rs", config, &result.stats, totals))?;
            }
        }
    }
    Ok(())
}

fn oracle_gate(actual: &[MatchPair], expected: &[MatchPair]) -> Result<(), Failure> {
    if actual == expected {
        return Ok(());
    }
    let key = |p: &MatchPair| (p.a, p.b, p.distance);
    let got: HashSet<_> = actual.iter().map(key).collect();
    let want: HashSet<_> = expected.iter().map(key).collect();
    Err(Failure::Oracle(format!(
        "{} pairs missing, {} spurious",
        want.difference(&got).count(),
        got.difference(&want).count(),
    )))
}

fn write_pairs(pairs: &[MatchPair]) -> Result<(), Failure> {
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    for p in pairs {
        writeln!(out, "{}\t{}\t{}", p.a, p.b, p.distance)?;
    }
    out.flush()?;
    Ok(())
}

fn write_stats(path: &PathBuf, record: &ReportRecord) -> Result<(), Failure> {
    let mut document = record.to_json();
    document.push('\n');
    fs::write(path, document).map_err(|source| Failure::Write {
        path: path.clone(),
        source,
    })
}
