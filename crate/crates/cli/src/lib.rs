//! Command-line front end for `recurselab-core`.
//!
//! [`run`] parses an argument vector, writes records to `out`, diagnostics
//! to `err`, and returns the process exit status: 0 on success, 1 when a
//! check fails (the first witness is printed), 2 on usage errors.

use std::ffi::OsString;
use std::io::Write;
use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

mod commands;
mod explore;
pub mod hspec_file;
pub mod output;
mod verify;

pub use output::{Format, Table};

pub const DEFAULT_FUEL: u64 = 1_000_000;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Runtime(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Runtime(_) | CliError::Io(_) => 1,
        }
    }
}

/// What a subcommand produced: a table, plus the first failing witness of a
/// check when there is one.
#[derive(Debug, Default)]
pub struct Report {
    pub table: Table,
    pub failure: Option<String>,
}

impl From<Table> for Report {
    fn from(table: Table) -> Self {
        Report { table, failure: None }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "recurselab",
    version,
    about = "Explore classic recursion schemes and their costs"
)]
pub struct Cli {
    /// Output format
    #[arg(long, global = true, value_enum, default_value = "text")]
    pub format: Format,
    /// Omit the elapsed-time column so output is byte-reproducible
    #[arg(long, global = true)]
    pub deterministic: bool,
    /// Step budget for evaluations
    #[arg(long, global = true, env = "RECURSELAB_FUEL", default_value_t = DEFAULT_FUEL)]
    pub fuel: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate a schema at one argument tuple
    Eval(EvalArgs),
    /// Cost functions F, T, V, K at one argument tuple
    Cost(CostArgs),
    /// The V_n and T_n tables
    Sequence(SequenceArgs),
    /// Run a verification suite
    Verify(VerifyArgs),
    /// Classify a boolean auxiliary function for totality
    Classify(HSource),
    /// Truncated power series coefficients
    Series(SeriesArgs),
    /// Exploratory searches
    #[command(subcommand)]
    Explore(ExploreCommand),
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    /// mc91, mc91-modified, gen91, tak3, gabriel, boolean-b, k, vh, takm
    #[arg(long)]
    pub schema: String,
    /// Comma-separated integers
    #[arg(long, allow_hyphen_values = true)]
    pub args: String,
    /// full, memo, need, or all
    #[arg(long, default_value = "full")]
    pub strategy: String,
    /// Parameters a,b,c,d of gen91 (rationals allowed as p/q)
    #[arg(long, allow_hyphen_values = true)]
    pub params: Option<String>,
    #[command(flatten)]
    pub h: HSource,
}

#[derive(Debug, Clone, Args)]
pub struct HSource {
    /// Auxiliary-function file (TOML with `default` and `entries`)
    #[arg(long)]
    pub hspec: Option<PathBuf>,
    /// Auxiliary rule name, used when no file is given
    #[arg(long)]
    pub rule: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CostFunction {
    #[value(name = "F", alias = "f")]
    F,
    #[value(name = "T", alias = "t")]
    T,
    #[value(name = "V", alias = "v")]
    V,
    #[value(name = "K", alias = "k")]
    K,
}

#[derive(Debug, Args)]
pub struct CostArgs {
    #[arg(long, value_enum)]
    pub function: CostFunction,
    #[arg(long, allow_hyphen_values = true)]
    pub args: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SequenceChoice {
    #[value(name = "Vn", alias = "vn")]
    Vn,
    #[value(name = "Tn", alias = "tn")]
    Tn,
    #[value(name = "both")]
    Both,
}

#[derive(Debug, Args)]
pub struct SequenceArgs {
    #[arg(long, value_enum, default_value = "both")]
    pub name: SequenceChoice,
    #[arg(long, default_value_t = 9)]
    pub max: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Lemma1,
    Theorem1,
    Theorem3,
    Theorem4,
    Lemma4,
    Gf,
    Bounds,
    Kclosed,
    Vclosed,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    pub suite: Suite,
    /// Inclusive range `lo..hi`; its meaning depends on the suite
    #[arg(long, allow_hyphen_values = true)]
    pub range: Option<String>,
    /// Dimension for theorem4
    #[arg(long, default_value_t = 4)]
    pub m: usize,
    /// Series order for gf
    #[arg(long, default_value_t = recurselab_core::combinatorics::DEFAULT_ORDER)]
    pub order: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SeriesName {
    Catalan,
    CentralBinomial,
    #[value(name = "Vn", alias = "vn")]
    Vn,
    #[value(name = "Tn", alias = "tn")]
    Tn,
    GfResidual,
    VResidual,
}

#[derive(Debug, Args)]
pub struct SeriesArgs {
    #[arg(long, value_enum)]
    pub name: SeriesName,
    #[arg(long, default_value_t = recurselab_core::combinatorics::DEFAULT_ORDER)]
    pub order: usize,
}

#[derive(Debug, Subcommand)]
pub enum ExploreCommand {
    /// Fixed-point search for an auxiliary function on a box
    Fixedpoint {
        #[command(flatten)]
        h: HSource,
        /// Box `lo..hi` in every coordinate
        #[arg(long = "box", default_value = "-1..5", allow_hyphen_values = true)]
        region: String,
        /// Candidate values `lo..hi`
        #[arg(long, default_value = "-20..20", allow_hyphen_values = true)]
        values: String,
    },
    /// Auxiliary functions below max(x,y,z): search for one with no fixed point
    OpenProblem3 {
        #[arg(long, default_value_t = 2)]
        max_val: i64,
        #[arg(long = "box", default_value_t = 3)]
        box_size: i64,
        #[arg(long, default_value_t = 64)]
        limit: usize,
    },
    /// Cost of full expansion in m dimensions
    TakmCost {
        #[arg(long, allow_hyphen_values = true)]
        args: String,
        #[arg(long, default_value = "recurrence")]
        mode: String,
    },
    /// Relative error of the V_n asymptotic
    Darboux {
        #[arg(long, default_value = "100,200,400,800")]
        n: String,
    },
    /// Full-expansion cost of g(n,0,n+1) against floor((3+sqrt 8)^n)
    GabrielGrowth {
        #[arg(long, default_value_t = 8)]
        max: u32,
    },
}

/// Parses `"a,b,c"` into integers.
pub fn parse_ints(s: &str) -> Result<Vec<i64>, CliError> {
    s.split(',')
        .map(|p| {
            p.trim()
                .parse::<i64>()
                .map_err(|e| CliError::Usage(format!("invalid integer {p:?}: {e}")))
        })
        .collect()
}

/// Parses an inclusive range `"lo..hi"`.
pub fn parse_range(s: &str) -> Result<RangeInclusive<i64>, CliError> {
    let bad = || CliError::Usage(format!("invalid range {s:?}, expected lo..hi"));
    let (lo, hi) = s.split_once("..").ok_or_else(bad)?;
    let hi = hi.strip_prefix('=').unwrap_or(hi);
    let lo: i64 = lo.trim().parse().map_err(|_| bad())?;
    let hi: i64 = hi.trim().parse().map_err(|_| bad())?;
    if lo > hi {
        return Err(bad());
    }
    Ok(lo..=hi)
}

/// Runs the command line `argv` (including the program name).
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let sink: &mut dyn Write = if code == 0 { out } else { err };
            let _ = write!(sink, "{text}");
            return if code == 0 { 0 } else { 2 };
        }
    };
    let start = Instant::now();
    let result = dispatch(&cli);
    let elapsed = (!cli.deterministic).then(|| start.elapsed().as_micros());
    match result {
        Ok(report) => {
            if let Err(e) = output::render(&report.table, cli.format, elapsed, out) {
                let _ = writeln!(err, "error: {e}");
                return 1;
            }
            match report.failure {
                Some(w) => {
                    let _ = writeln!(err, "check failed: {w}");
                    1
                }
                None => 0,
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(cli: &Cli) -> Result<Report, CliError> {
    match &cli.command {
        Command::Eval(a) => commands::eval(a, cli.fuel),
        Command::Cost(a) => commands::cost(a),
        Command::Sequence(a) => Ok(commands::sequence(a).into()),
        Command::Verify(a) => verify::run(a, cli.fuel),
        Command::Classify(h) => commands::classify(h),
        Command::Series(a) => Ok(commands::series(a).into()),
        Command::Explore(e) => explore::run(e, cli.fuel),
    }
}
