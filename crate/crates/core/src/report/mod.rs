//! Analyst-facing output: FMECA tables (Markdown, CSV, JSON), ranked risk
//! summaries, and sequence-diagram text for nominal and mutant traces.
//!
//! Every emitter is a pure function of its inputs and byte-deterministic.

mod fmeca_table;
mod plantuml;
mod summary;

pub use fmeca_table::emit_fmeca;
pub use plantuml::{emit_mutant_sequence, emit_sequence_text, mutant_file_name};
pub use summary::emit_summary;

/// Output format for worksheet tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ReportFormat {
    #[default]
    Markdown,
    Csv,
    Json,
}

impl ReportFormat {
    pub fn parse_token(token: &str) -> Option<Self> {
        match token.to_lowercase().as_str() {
            "markdown" | "md" => Some(Self::Markdown),
            "csv" => Some(Self::Csv),
            "json" => Some(Self::Json),
            _ => None,
        }
    }
}

/// Report tuning knobs.
#[derive(Debug, Clone)]
pub struct ReportOptions {
    pub format: ReportFormat,
    /// When false, waived rows are left out of tables and summaries.
    pub include_waived: bool,
    /// Cap on ranked rows shown in summaries; `None` shows all.
    pub top_n: Option<usize>,
}

impl Default for ReportOptions {
    fn default() -> Self {
        Self {
            format: ReportFormat::Markdown,
            include_waived: true,
            top_n: None,
        }
    }
}
