//! `seqfmeca report`: worksheet tables and ranked summaries.

use crate::output::{load_matrix, print_diagnostics, read_text, write_artifact, CmdError};
use crate::ReportArgs;
use seqfmeca_core::fmeca::load_worksheet;
use seqfmeca_core::report::{emit_fmeca, emit_summary, ReportFormat, ReportOptions};

pub fn run(args: &ReportArgs) -> Result<(), CmdError> {
    let Some(format) = ReportFormat::parse_token(&args.format) else {
        return Err(CmdError::Usage(format!(
            "unknown format `{}` (expected markdown, csv or json)",
            args.format
        )));
    };
    if args.top == Some(0) {
        return Err(CmdError::Usage("--top must be at least 1".into()));
    }
    let worksheet = match load_worksheet(&read_text(&args.worksheet)?) {
        Ok(worksheet) => worksheet,
        Err(diags) => {
            print_diagnostics(&diags, false);
            return Err(CmdError::Diagnostics);
        }
    };
    let matrix = load_matrix(args.matrix.as_deref())?;
    let options = ReportOptions {
        format,
        include_waived: !args.exclude_waived,
        top_n: args.top,
    };
    let document = if args.summary {
        emit_summary(&worksheet, &matrix, &options)
    } else {
        emit_fmeca(&worksheet, &matrix, &options)
    };
    write_artifact(args.out.as_deref(), &document)
}
