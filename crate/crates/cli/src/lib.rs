//! The `nucifera` command line: certify single graphs, run group searches,
//! compare graphs up to isomorphism, manage group tables and re-check a
//! results directory from its stored artifacts.
//!
//! Exit statuses: 0 success (or a nuciferous / isomorphic verdict), 1 a
//! negative verdict or failed re-check, 2 usage and parse errors, 3 internal
//! failures such as an exactness violation.

pub mod commands;
pub mod layout;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use nucifera_core::{CanonError, CertifyError, GraphError, GroupError, SearchError};
use thiserror::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

/// Default results root when neither `--out` nor `NUCIFERA_OUT` is given.
pub const DEFAULT_OUT: &str = "nucifera-results";

#[derive(Debug, Parser)]
#[command(
    name = "nucifera",
    version,
    about = "Exact search for nuciferous Cayley graphs"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Certify one graph; with no path, the shipped 24-vertex fixture.
    Verify(VerifyArgs),
    /// Search every connection set of one or more groups.
    Search(SearchArgs),
    /// Decide whether two graphs are isomorphic.
    Iso(IsoArgs),
    /// List, validate or import group multiplication tables.
    Groups {
        #[command(subcommand)]
        action: GroupsAction,
    },
    /// Re-certify every stored hit of a results directory and rebuild the
    /// summary.
    Report(ReportArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Graph6,
    Adj,
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Graph file in graph6 or adjacency-matrix text.
    pub path: Option<PathBuf>,
    /// Print the exact inverse as reduced fractions.
    #[arg(long)]
    pub inverse: bool,
    /// `json` for a machine-readable certificate; `graph6` or `adj` to echo
    /// the graph in that encoding before the verdict.
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    /// Group spec such as "D(12) x C(2)", or @FILE for a table file.
    #[arg(long = "group", short = 'g', required = true)]
    pub groups: Vec<String>,
    #[arg(long)]
    pub degree_min: Option<usize>,
    #[arg(long)]
    pub degree_max: Option<usize>,
    /// Worker threads (default: all available cores).
    #[arg(long)]
    pub jobs: Option<usize>,
    /// Results root.
    #[arg(long, env = "NUCIFERA_OUT", default_value = DEFAULT_OUT)]
    pub out: PathBuf,
    /// Summary printed on stdout: `csv` or `json`.
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Continue from existing resume files instead of starting over.
    #[arg(long)]
    pub resume: bool,
    /// Subsets per work block.
    #[arg(long, default_value_t = 4096)]
    pub block_size: u64,
}

#[derive(Debug, Args)]
pub struct IsoArgs {
    pub first: PathBuf,
    pub second: PathBuf,
    /// Print a verified vertex bijection when the graphs are isomorphic.
    #[arg(long)]
    pub witness: bool,
    /// Relabel the second graph by a random permutation from this seed
    /// before comparing.
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Subcommand)]
pub enum GroupsAction {
    /// Builtin constructors and their size caps.
    List,
    /// Check the group axioms on a table file.
    Validate { path: PathBuf },
    /// Validate a table file and store it, identity first, under
    /// `<out>/tables/`.
    Import {
        path: PathBuf,
        /// Display name (default: the file stem).
        #[arg(long)]
        name: Option<String>,
        #[arg(long, env = "NUCIFERA_OUT", default_value = DEFAULT_OUT)]
        out: PathBuf,
    },
}

#[derive(Debug, Args)]
pub struct ReportArgs {
    /// Results root (default: `--out` / `NUCIFERA_OUT`).
    pub dir: Option<PathBuf>,
    #[arg(long, env = "NUCIFERA_OUT", default_value = DEFAULT_OUT)]
    pub out: PathBuf,
    /// `csv` or `json`.
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Negative(String),
    #[error("{0}")]
    Internal(String),
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Io { .. } => EXIT_USAGE,
            CliError::Negative(_) => EXIT_NEGATIVE,
            CliError::Internal(_) => EXIT_INTERNAL,
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>) -> impl FnOnce(std::io::Error) -> CliError {
        let path = path.into();
        move |source| CliError::Io { path, source }
    }
}

impl From<GroupError> for CliError {
    fn from(e: GroupError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<GraphError> for CliError {
    fn from(e: GraphError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<CertifyError> for CliError {
    fn from(e: CertifyError) -> Self {
        match e {
            CertifyError::ExactnessNotGuaranteed { .. } | CertifyError::ExactnessViolation(_) => {
                CliError::Internal(e.to_string())
            }
            other => CliError::Negative(other.to_string()),
        }
    }
}

impl From<CanonError> for CliError {
    fn from(e: CanonError) -> Self {
        CliError::Internal(e.to_string())
    }
}

impl From<SearchError> for CliError {
    fn from(e: SearchError) -> Self {
        match e {
            SearchError::Certify(c) => c.into(),
            SearchError::DegreeRange { .. }
            | SearchError::ResumeMismatch(_)
            | SearchError::Io(_) => CliError::Usage(e.to_string()),
            other => CliError::Internal(other.to_string()),
        }
    }
}

/// Parses `args` (including the program name) and runs the command,
/// returning the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{}", e.render());
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match dispatch(cli, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, CliError> {
    match cli.command {
        Command::Verify(a) => commands::verify::run(&a, out),
        Command::Search(a) => commands::search::run(&a, out, err),
        Command::Iso(a) => commands::iso::run(&a, out),
        Command::Groups { action } => commands::groups::run(&action, out),
        Command::Report(a) => commands::report::run(&a, out, err),
    }
}

/// Writes to a command's output stream, mapping failures to a CLI error.
pub(crate) fn emit(out: &mut dyn Write, text: &str) -> Result<(), CliError> {
    out.write_all(text.as_bytes())
        .map_err(|e| CliError::Internal(format!("writing output: {e}")))
}
