//! The `mlcmine` command line: `generate`, `mine`, `compare` and `bench`.
//!
//! Exit codes are 0 on success, 1 for usage errors and 2 for data or
//! validation errors. Data paths default to files in the directory named by
//! `MLCMINE_DATA_DIR`, or the current directory.

mod bench;

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::constraints::{Constraint, SplitConstraint};
use crate::error::Error;
use crate::miner::{
    compare_runs, mine_basic, mine_mlc_prune_with, mine_test_and_generate, MinSupTable, MiningResult,
    PruneSchedule,
};
use crate::sample;
use crate::taxonomy::{ConceptHierarchy, Fanout};
use crate::transactions::TransactionDatabase;

pub use bench::{bench_csv, point_seed, run_bench, BenchConfig, BenchRow, NegSpec, BENCH_CSV_HEADER};

pub const DATA_DIR_ENV: &str = "MLCMINE_DATA_DIR";
pub const HIERARCHY_FILE: &str = "hierarchy.tsv";
pub const TRANSACTIONS_FILE: &str = "transactions.tsv";

#[derive(Debug, Parser)]
#[command(name = "mlcmine", version, about = "Multi-level constrained frequent itemset mining")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a synthetic hierarchy and transaction database.
    Generate(GenerateArgs),
    /// Mine one dataset and write a report.
    Mine(MineArgs),
    /// Diff two JSON reports.
    Compare(CompareArgs),
    /// Time basic against mlc-prune over a grid of generated datasets.
    Bench(BenchArgs),
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[arg(long, default_value_t = 10)]
    pub roots: u32,
    #[arg(long, default_value_t = 3)]
    pub levels: usize,
    /// Children per internal node, `N` or `MIN-MAX`.
    #[arg(long, default_value = "2-4")]
    pub fanout: String,
    #[arg(long, default_value_t = 3000)]
    pub transactions: usize,
    #[arg(long, default_value_t = 8.0)]
    pub mean_items: f64,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    /// Directory for `hierarchy.tsv` and `transactions.tsv`.
    #[arg(long)]
    pub out_dir: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AlgorithmArg {
    Basic,
    /// Test-and-generate; incomplete.
    #[value(alias = "test-and-generate")]
    Tag,
    #[value(alias = "mlc-prune")]
    Prune,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ScheduleArg {
    PerLevel,
    UpFront,
}

#[derive(Debug, Args)]
pub struct MineArgs {
    #[arg(long)]
    pub hierarchy: Option<PathBuf>,
    #[arg(long)]
    pub transactions: Option<PathBuf>,
    /// Use the bundled grocery dataset instead of files.
    #[arg(long, conflicts_with_all = ["hierarchy", "transactions"])]
    pub sample: bool,
    #[arg(long, value_enum, default_value_t = AlgorithmArg::Basic)]
    pub algorithm: AlgorithmArg,
    /// One threshold per level, e.g. `5,4,3` or `30%,20%,10%`.
    #[arg(long)]
    pub minsup: String,
    /// Flat constraint for basic and tag.
    #[arg(long)]
    pub constraint: Option<String>,
    /// Items removed before mining, for prune.
    #[arg(long)]
    pub neg: Option<String>,
    /// Negation-free constraint checked after mining, for prune.
    #[arg(long)]
    pub aff: Option<String>,
    #[arg(long, value_enum, default_value_t = ScheduleArg::PerLevel)]
    pub schedule: ScheduleArg,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Report destination; stdout when absent.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    pub a: PathBuf,
    pub b: PathBuf,
    /// Exit with status 2 unless the filtered lists agree.
    #[arg(long)]
    pub check: bool,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// Comma-separated database sizes.
    #[arg(long, default_value = "3000,4000,5000,6000")]
    pub sizes: String,
    /// Comma-separated root counts.
    #[arg(long, default_value = "10")]
    pub roots: String,
    /// Per-level thresholds for one grid point; repeat for a sweep.
    #[arg(long = "minsup")]
    pub minsups: Vec<String>,
    #[arg(long, default_value_t = 3)]
    pub levels: usize,
    #[arg(long, default_value = "2-4")]
    pub fanout: String,
    #[arg(long, default_value_t = 8.0)]
    pub mean_items: f64,
    /// Runs per algorithm and point; the median time is reported.
    #[arg(long, default_value_t = 3)]
    pub reps: usize,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    /// Share of roots to remove when `--neg` is absent.
    #[arg(long, default_value_t = 0.5)]
    pub prune_fraction: f64,
    /// Items removed at every point, instead of a share of roots.
    #[arg(long)]
    pub neg: Option<String>,
    /// Affirmation paired with `--neg`.
    #[arg(long, requires = "neg")]
    pub aff: Option<String>,
    /// CSV destination; stdout when absent.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

/// Failure of one invocation.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Data(#[from] Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Data(_) => 2,
        }
    }
}

/// Which constraint a run uses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConstraintSpec {
    Flat(String),
    Split { neg: String, aff: String },
}

/// A validated `mine` invocation.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub hierarchy: Option<PathBuf>,
    pub transactions: Option<PathBuf>,
    pub algorithm: AlgorithmArg,
    pub minsup: MinSupTable,
    pub constraint: ConstraintSpec,
    pub schedule: PruneSchedule,
    pub format: Format,
    pub output: Option<PathBuf>,
}

impl RunConfig {
    /// Checks flag pairing. Paths stay `None` for the bundled dataset.
    pub fn from_args(args: &MineArgs) -> Result<Self, CliError> {
        let constraint = match args.algorithm {
            AlgorithmArg::Basic | AlgorithmArg::Tag => {
                if args.neg.is_some() || args.aff.is_some() {
                    return Err(CliError::Usage(
                        "--neg/--aff belong to --algorithm prune; use --constraint".into(),
                    ));
                }
                ConstraintSpec::Flat(args.constraint.clone().unwrap_or_default())
            }
            AlgorithmArg::Prune => {
                if args.constraint.is_some() {
                    return Err(CliError::Usage(
                        "--algorithm prune takes --neg and --aff, not --constraint".into(),
                    ));
                }
                ConstraintSpec::Split {
                    neg: args.neg.clone().unwrap_or_default(),
                    aff: args.aff.clone().unwrap_or_default(),
                }
            }
        };
        let minsup = MinSupTable::parse(&args.minsup).map_err(|e| CliError::Usage(e.to_string()))?;
        let (hierarchy, transactions) = if args.sample {
            (None, None)
        } else {
            (
                Some(data_path(args.hierarchy.as_deref(), HIERARCHY_FILE)),
                Some(data_path(args.transactions.as_deref(), TRANSACTIONS_FILE)),
            )
        };
        Ok(RunConfig {
            hierarchy,
            transactions,
            algorithm: args.algorithm,
            minsup,
            constraint,
            schedule: match args.schedule {
                ScheduleArg::PerLevel => PruneSchedule::PerLevel,
                ScheduleArg::UpFront => PruneSchedule::UpFront,
            },
            format: args.format,
            output: args.output.clone(),
        })
    }

    pub fn load(&self) -> Result<(ConceptHierarchy, TransactionDatabase), Error> {
        match (&self.hierarchy, &self.transactions) {
            (Some(hp), Some(tp)) => {
                let h = ConceptHierarchy::parse_tsv(&read(hp)?)?;
                let db = TransactionDatabase::parse_tsv(&h, &read(tp)?)?;
                Ok((h, db))
            }
            _ => Ok((sample::hierarchy(), sample::database())),
        }
    }

    /// Loads the data and runs the selected algorithm.
    pub fn execute(&self) -> Result<MiningResult, Error> {
        let (h, db) = self.load()?;
        match &self.constraint {
            ConstraintSpec::Flat(text) => {
                let ct = Constraint::parse(text, &h)?;
                if self.algorithm == AlgorithmArg::Tag {
                    mine_test_and_generate(&h, &db, &self.minsup, &ct)
                } else {
                    mine_basic(&h, &db, &self.minsup, &ct)
                }
            }
            ConstraintSpec::Split { neg, aff } => {
                let sc = SplitConstraint::parse(neg, aff, &h)?;
                mine_mlc_prune_with(&h, &db, &self.minsup, &sc, self.schedule)
            }
        }
    }
}

fn data_path(given: Option<&Path>, file: &str) -> PathBuf {
    match given {
        Some(p) => p.to_path_buf(),
        None => data_dir().join(file),
    }
}

fn data_dir() -> PathBuf {
    std::env::var_os(DATA_DIR_ENV).map_or_else(|| PathBuf::from("."), PathBuf::from)
}

fn read(path: &Path) -> Result<String, Error> {
    fs::read_to_string(path).map_err(|e| {
        Error::Io(std::io::Error::new(e.kind(), format!("{}: {e}", path.display())))
    })
}

fn write_to(path: Option<&Path>, text: &str, out: &mut dyn Write) -> Result<(), Error> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| {
            Error::Io(std::io::Error::new(e.kind(), format!("{}: {e}", p.display())))
        }),
        None => Ok(out.write_all(text.as_bytes())?),
    }
}

fn list<T: std::str::FromStr>(text: &str, what: &str) -> Result<Vec<T>, CliError> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse().map_err(|_| CliError::Usage(format!("invalid {what} `{s}`"))))
        .collect()
}

fn fanout(text: &str) -> Result<Fanout, CliError> {
    text.parse().map_err(|e: Error| CliError::Usage(e.to_string()))
}

fn cmd_generate(args: &GenerateArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let h = ConceptHierarchy::generate(args.roots, fanout(&args.fanout)?, args.levels, args.seed)?;
    let db = TransactionDatabase::generate(&h, args.transactions, args.mean_items, args.seed)?;
    let dir = args.out_dir.clone().unwrap_or_else(data_dir);
    fs::create_dir_all(&dir).map_err(Error::from)?;
    let hp = dir.join(HIERARCHY_FILE);
    let tp = dir.join(TRANSACTIONS_FILE);
    write_to(Some(&hp), &h.to_tsv(), out)?;
    write_to(Some(&tp), &db.to_tsv(), out)?;
    writeln!(
        out,
        "seed {}: {} items ({} terminal) -> {}; {} transactions, {} item occurrences -> {}",
        args.seed,
        h.len(),
        h.terminal_items().len(),
        hp.display(),
        db.len(),
        db.item_count(),
        tp.display()
    )
    .map_err(Error::from)?;
    Ok(())
}

fn summary(r: &MiningResult, err: &mut dyn Write) -> std::io::Result<()> {
    writeln!(err, "{} on {} transactions, minsup {:?}", r.algorithm, r.transactions, r.minsup)?;
    let shown = if r.constraint.is_empty() { "(none)" } else { r.constraint.as_str() };
    writeln!(err, "constraint: {shown}")?;
    for l in &r.levels {
        let frequent: usize = l.passes.iter().map(|p| p.frequent.len()).sum();
        let filtered: usize = l.passes.iter().map(|p| p.filtered.len()).sum();
        writeln!(
            err,
            "level {}: {} passes, {} frequent, {} satisfy the constraint",
            l.level,
            l.passes.len(),
            frequent,
            filtered
        )?;
    }
    let c = &r.counters;
    writeln!(
        err,
        "candidates {}, support computations {}, constraint checks {}, {:.3} ms",
        c.candidates_generated, c.support_computations, c.constraint_checks, r.elapsed_ms
    )
}

fn cmd_mine(args: &MineArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    let cfg = RunConfig::from_args(args)?;
    if cfg.algorithm == AlgorithmArg::Tag {
        writeln!(
            err,
            "WARNING: test-and-generate is incomplete; it can omit itemsets that satisfy the constraint."
        )
        .map_err(Error::from)?;
    }
    let result = cfg.execute()?;
    let text = match cfg.format {
        Format::Json => result.to_json()? + "\n",
        Format::Csv => result.to_csv(),
    };
    write_to(cfg.output.as_deref(), &text, out)?;
    summary(&result, err).map_err(Error::from)?;
    Ok(())
}

fn cmd_compare(args: &CompareArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let a = MiningResult::from_json(&read(&args.a)?)?;
    let b = MiningResult::from_json(&read(&args.b)?)?;
    let cmp = compare_runs(&a, &b);
    write!(out, "{cmp}").map_err(Error::from)?;
    if args.check && !cmp.filtered_identical() {
        return Err(Error::InvalidParameter("filtered itemsets differ".into()).into());
    }
    Ok(())
}

fn cmd_bench(args: &BenchArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let minsups = if args.minsups.is_empty() {
        vec![MinSupTable::parse("30%,20%,10%")?]
    } else {
        args.minsups
            .iter()
            .map(|m| MinSupTable::parse(m).map_err(|e| CliError::Usage(e.to_string())))
            .collect::<Result<_, _>>()?
    };
    let cfg = BenchConfig {
        sizes: list(&args.sizes, "size")?,
        roots: list(&args.roots, "root count")?,
        minsups,
        levels: args.levels,
        fanout: fanout(&args.fanout)?,
        mean_items: args.mean_items,
        reps: args.reps,
        seed: args.seed,
        neg: match &args.neg {
            Some(neg) => NegSpec::Text {
                neg: neg.clone(),
                aff: args.aff.clone().unwrap_or_default(),
            },
            None => NegSpec::RootFraction(args.prune_fraction),
        },
    };
    let rows = run_bench(&cfg)?;
    write_to(args.output.as_deref(), &bench_csv(&rows), out)?;
    Ok(())
}

pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    match &cli.command {
        Command::Generate(a) => cmd_generate(a, out),
        Command::Mine(a) => cmd_mine(a, out, err),
        Command::Compare(a) => cmd_compare(a, out),
        Command::Bench(a) => cmd_bench(a, out),
    }
}

/// Parses `args` (program name first), runs, and returns the exit code.
pub fn main_with_args<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match run(&cli, out, err) {
        Ok(()) => 0,
        // A closed reader such as `head` is not a failure.
        Err(CliError::Data(Error::Io(e))) if e.kind() == std::io::ErrorKind::BrokenPipe => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
