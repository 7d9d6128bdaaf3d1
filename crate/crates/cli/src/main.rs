//! `seqfmeca`: file-based analysis pipeline over `.rau` interaction models.
//!
//! check -> enumerate -> worksheet init -> worksheet merge -> report,
//! plus mutate for error-scenario export. Exit codes are stable: 0 success,
//! 1 diagnostics with errors, 2 usage error, 3 I/O error.

mod commands;
mod output;

use clap::{Args, Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "seqfmeca",
    version,
    about = "Message failure-mode enumeration and FMECA worksheets for interaction models"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse, validate and lint a model.
    Check(CheckArgs),
    /// List every failure-mode candidate of a model.
    Enumerate(EnumerateArgs),
    /// Create, merge and check FMECA worksheets.
    #[command(subcommand)]
    Worksheet(WorksheetCommand),
    /// Emit a worksheet as a Markdown/CSV/JSON table or a ranked summary.
    Report(ReportArgs),
    /// Export mutant traces as sequence-diagram text.
    Mutate(MutateArgs),
}

#[derive(Args)]
struct CheckArgs {
    /// Model file (`.rau`).
    model: PathBuf,
    /// Machine-readable diagnostics on standard output.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct EnumerateArgs {
    model: PathBuf,
    /// Profile override file.
    #[arg(long)]
    profile: Option<PathBuf>,
    /// Full candidate records as JSON instead of one id per line.
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum WorksheetCommand {
    /// Write a blank worksheet with one row per candidate.
    Init(WorksheetInitArgs),
    /// Apply an annotation document and rewrite the worksheet.
    Merge(WorksheetMergeArgs),
    /// Check worksheet completeness against a fresh enumeration.
    Check(WorksheetCheckArgs),
}

#[derive(Args)]
struct WorksheetInitArgs {
    model: PathBuf,
    #[arg(long)]
    profile: Option<PathBuf>,
    /// Destination file; standard output when omitted.
    #[arg(long, short)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct WorksheetMergeArgs {
    worksheet: PathBuf,
    annotations: PathBuf,
    /// Destination file; rewrites the worksheet in place when omitted.
    #[arg(long, short)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct WorksheetCheckArgs {
    model: PathBuf,
    worksheet: PathBuf,
    #[arg(long)]
    profile: Option<PathBuf>,
    /// Treat warnings (undisposed rows) as failures.
    #[arg(long)]
    strict: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct ReportArgs {
    worksheet: PathBuf,
    /// markdown, csv or json.
    #[arg(long, default_value = "markdown")]
    format: String,
    /// Risk matrix config; falls back to $SEQFMECA_MATRIX, then the
    /// built-in default.
    #[arg(long)]
    matrix: Option<PathBuf>,
    /// Destination file; standard output when omitted.
    #[arg(long, short)]
    out: Option<PathBuf>,
    /// Emit the ranked risk summary instead of the worksheet table.
    #[arg(long)]
    summary: bool,
    /// Cap ranked rows in the summary.
    #[arg(long)]
    top: Option<usize>,
    /// Leave waived rows out.
    #[arg(long)]
    exclude_waived: bool,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct MutateSelector {
    /// One candidate id, as printed by `enumerate`.
    #[arg(long)]
    candidate: Option<String>,
    /// Every candidate of one error model, e.g. `E.3`.
    #[arg(long)]
    error: Option<String>,
}

#[derive(Args)]
struct MutateArgs {
    model: PathBuf,
    #[command(flatten)]
    selector: MutateSelector,
    /// Directory receiving one `.puml` file per mutant.
    #[arg(long)]
    out_dir: PathBuf,
    #[arg(long)]
    profile: Option<PathBuf>,
    /// Seed recorded by the E9 `random` variant.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = if err.use_stderr() { 2 } else { 0 };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::Check(args) => commands::check::run(&args.model, args.json),
        Command::Enumerate(args) => {
            commands::enumerate::run(&args.model, args.profile.as_deref(), args.json)
        }
        Command::Worksheet(WorksheetCommand::Init(args)) => {
            commands::worksheet::init(&args.model, args.profile.as_deref(), args.out.as_deref())
        }
        Command::Worksheet(WorksheetCommand::Merge(args)) => {
            commands::worksheet::merge(&args.worksheet, &args.annotations, args.out.as_deref())
        }
        Command::Worksheet(WorksheetCommand::Check(args)) => commands::worksheet::check(
            &args.model,
            &args.worksheet,
            args.profile.as_deref(),
            args.strict,
            args.json,
        ),
        Command::Report(args) => commands::report::run(&args),
        Command::Mutate(args) => commands::mutate::run(&args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            err.report();
            ExitCode::from(err.exit_code())
        }
    }
}
