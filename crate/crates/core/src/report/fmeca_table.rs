//! FMECA worksheet tables.
//!
//! Columns mirror the worksheet's seven groups - interaction/message,
//! failure mode (error), causes, effects at three levels, severity and
//! probability, online detection means, potential solutions - plus the
//! computed risk class.

use super::{ReportFormat, ReportOptions};
use crate::fmeca::{RiskMatrix, Worksheet, WorksheetRow};
use serde::Serialize;
use std::fmt::Write;

/// Renders the worksheet in the requested format.
pub fn emit_fmeca(worksheet: &Worksheet, matrix: &RiskMatrix, options: &ReportOptions) -> String {
    let rows: Vec<&WorksheetRow> = worksheet
        .rows
        .iter()
        .filter(|r| options.include_waived || !r.is_waived())
        .collect();
    match options.format {
        ReportFormat::Markdown => markdown(worksheet, matrix, &rows),
        ReportFormat::Csv => csv(matrix, &rows),
        ReportFormat::Json => json(worksheet, matrix, &rows),
    }
}

fn risk_class_cell(row: &WorksheetRow, matrix: &RiskMatrix) -> String {
    if row.is_waived() {
        return "waived".to_string();
    }
    match (row.severity, row.probability) {
        (Some(severity), Some(probability)) => matrix.rank(severity, probability).to_string(),
        _ => "-".to_string(),
    }
}

fn effects_cell(row: &WorksheetRow) -> String {
    lettered(&[&row.effect_local, &row.effect_upper, &row.effect_system])
}

fn detection_cell(row: &WorksheetRow) -> String {
    lettered(&[&row.detection_failure_mode, &row.detection_effects])
}

fn solutions_cell(row: &WorksheetRow) -> String {
    lettered(&[&row.prevention, &row.protection, &row.other_actions, &row.remarks])
}

/// Joins non-empty parts with their `a.`/`b.`/... markers, keeping the
/// letter tied to the position so "b." always means the second slot.
fn lettered(parts: &[&str]) -> String {
    let mut out = String::new();
    for (i, part) in parts.iter().enumerate() {
        if part.is_empty() {
            continue;
        }
        if !out.is_empty() {
            out.push(' ');
        }
        let _ = write!(out, "{}. {part}", (b'a' + i as u8) as char);
    }
    out
}

// --- Markdown ------------------------------------------------------------

const HEADERS: [&str; 9] = [
    "Interaction/Message",
    "Failure mode (error)",
    "Causes",
    "Effects",
    "Severity",
    "Probability",
    "Risk class",
    "Possible detection means (online)",
    "Potential solutions",
];

fn markdown(worksheet: &Worksheet, matrix: &RiskMatrix, rows: &[&WorksheetRow]) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# FMECA worksheet - {}", worksheet.model_name);
    let _ = writeln!(out);
    let _ = writeln!(out, "Model digest: `{}`", worksheet.model_digest);
    let _ = writeln!(out, "Risk matrix: {}", matrix.name);

    // One table per interaction, in row order.
    let mut interactions: Vec<&str> = Vec::new();
    for row in rows {
        let interaction = interaction_of(row);
        if !interactions.contains(&interaction) {
            interactions.push(interaction);
        }
    }
    for interaction in interactions {
        let _ = writeln!(out);
        let _ = writeln!(out, "## {interaction}");
        let _ = writeln!(out);
        let _ = writeln!(out, "| {} |", HEADERS.join(" | "));
        let _ = writeln!(out, "|{}", "---|".repeat(HEADERS.len()));
        for row in rows.iter().filter(|r| interaction_of(r) == interaction) {
            let cells = [
                row.display_name.clone(),
                row.failure_mode_text.clone(),
                row.cause.clone(),
                effects_cell(row),
                row.severity.map(|s| s.to_string()).unwrap_or_else(|| "-".into()),
                row.probability.map(|p| p.to_string()).unwrap_or_else(|| "-".into()),
                risk_class_cell(row, matrix),
                detection_cell(row),
                solutions_cell(row),
            ];
            let escaped: Vec<String> = cells.iter().map(|c| md_escape(c)).collect();
            let _ = writeln!(out, "| {} |", escaped.join(" | "));
        }
    }
    out
}

fn interaction_of(row: &WorksheetRow) -> &str {
    row.candidate_id.split('/').next().unwrap_or("")
}

fn md_escape(cell: &str) -> String {
    let mut out = String::with_capacity(cell.len());
    for ch in cell.chars() {
        match ch {
            '|' => out.push_str("\\|"),
            '\n' => out.push_str("<br>"),
            '\r' => {}
            other => out.push(other),
        }
    }
    if out.is_empty() {
        out.push('-');
    }
    out
}

// --- CSV -----------------------------------------------------------------

const CSV_HEADERS: [&str; 16] = [
    "candidate_id",
    "interaction_message",
    "failure_mode_error",
    "causes",
    "effect_local",
    "effect_upper",
    "effect_system",
    "severity",
    "probability",
    "risk_class",
    "detection_failure_mode",
    "detection_effects",
    "prevention",
    "protection",
    "other_actions",
    "remarks",
];

fn csv(matrix: &RiskMatrix, rows: &[&WorksheetRow]) -> String {
    let mut out = String::new();
    out.push_str(&csv_record(&CSV_HEADERS.map(String::from)));
    for row in rows {
        let record = [
            row.candidate_id.clone(),
            row.display_name.clone(),
            row.failure_mode_text.clone(),
            row.cause.clone(),
            row.effect_local.clone(),
            row.effect_upper.clone(),
            row.effect_system.clone(),
            row.severity.map(|s| s.to_string()).unwrap_or_default(),
            row.probability.map(|p| p.to_string()).unwrap_or_default(),
            risk_class_cell(row, matrix),
            row.detection_failure_mode.clone(),
            row.detection_effects.clone(),
            row.prevention.clone(),
            row.protection.clone(),
            row.other_actions.clone(),
            row.remarks.clone(),
        ];
        out.push_str(&csv_record(&record));
    }
    out
}

/// One CRLF-terminated record with standard quoting: fields containing
/// comma, quote, CR or LF are quoted and inner quotes doubled.
fn csv_record(fields: &[String]) -> String {
    let mut out = String::new();
    for (i, field) in fields.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        if field.contains(['"', ',', '\n', '\r']) {
            out.push('"');
            out.push_str(&field.replace('"', "\"\""));
            out.push('"');
        } else {
            out.push_str(field);
        }
    }
    out.push_str("\r\n");
    out
}

// --- JSON ----------------------------------------------------------------

#[derive(Serialize)]
struct JsonReport<'a> {
    version: u32,
    model_name: &'a str,
    model_digest: &'a str,
    matrix: &'a str,
    rows: Vec<JsonRow<'a>>,
}

#[derive(Serialize)]
struct JsonRow<'a> {
    #[serde(flatten)]
    row: &'a WorksheetRow,
    risk_class: Option<crate::fmeca::RiskClass>,
}

fn json(worksheet: &Worksheet, matrix: &RiskMatrix, rows: &[&WorksheetRow]) -> String {
    let report = JsonReport {
        version: crate::fmeca::DOCUMENT_VERSION,
        model_name: &worksheet.model_name,
        model_digest: &worksheet.model_digest,
        matrix: &matrix.name,
        rows: rows
            .iter()
            .map(|row| JsonRow {
                row,
                risk_class: match (row.severity, row.probability) {
                    (Some(s), Some(p)) if !row.is_waived() => Some(matrix.rank(s, p)),
                    _ => None,
                },
            })
            .collect(),
    };
    let mut out = serde_json::to_string_pretty(&report).expect("report serializes");
    out.push('\n');
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fmeca::{Probability, Severity, Worksheet, DOCUMENT_VERSION};

    fn sample_worksheet() -> Worksheet {
        let mut row = WorksheetRow {
            candidate_id: "I/m2/E3/-/-".into(),
            display_name: "I :: Set level".into(),
            failure_mode_text: "Omission (E.3)".into(),
            cause: String::new(),
            effect_local: "no level set".into(),
            effect_upper: "no movement".into(),
            effect_system: "operator waits, with \"stress\"".into(),
            severity: Some(Severity::Minor),
            probability: Some(Probability::Probable),
            detection_failure_mode: String::new(),
            detection_effects: "level sensor".into(),
            prevention: "user manual, training".into(),
            protection: "dry run before start".into(),
            other_actions: String::new(),
            remarks: String::new(),
            waived: None,
            residual_severity: None,
            residual_probability: None,
        };
        row.cause = "operator skips a step".into();
        Worksheet {
            version: DOCUMENT_VERSION,
            model_name: "M".into(),
            model_digest: "abc".into(),
            matrix: "default".into(),
            rows: vec![row],
        }
    }

    #[test]
    fn markdown_contains_row_and_risk() {
        let worksheet = sample_worksheet();
        let out = emit_fmeca(
            &worksheet,
            &RiskMatrix::default_matrix(),
            &ReportOptions::default(),
        );
        assert!(out.contains("| I :: Set level |"));
        assert!(out.contains("Omission (E.3)"));
        assert!(out.contains("minor (4)"));
        assert!(out.contains("probable"));
        assert!(out.contains("tolerable"));
        assert!(out.contains("a. no level set b. no movement c. operator waits"));
    }

    #[test]
    fn empty_worksheet_is_header_only() {
        let mut worksheet = sample_worksheet();
        worksheet.rows.clear();
        let out = emit_fmeca(
            &worksheet,
            &RiskMatrix::default_matrix(),
            &ReportOptions {
                format: ReportFormat::Csv,
                ..ReportOptions::default()
            },
        );
        assert_eq!(out.lines().count(), 1);
        assert!(out.starts_with("candidate_id,"));
    }

    #[test]
    fn csv_quotes_tricky_fields() {
        let worksheet = sample_worksheet();
        let out = emit_fmeca(
            &worksheet,
            &RiskMatrix::default_matrix(),
            &ReportOptions {
                format: ReportFormat::Csv,
                ..ReportOptions::default()
            },
        );
        assert!(out.contains("\"operator waits, with \"\"stress\"\"\""));
        assert!(out.ends_with("\r\n"));
        assert_eq!(out.matches("\r\n").count(), 2);
    }

    #[test]
    fn json_report_parses_back() {
        let worksheet = sample_worksheet();
        let out = emit_fmeca(
            &worksheet,
            &RiskMatrix::default_matrix(),
            &ReportOptions {
                format: ReportFormat::Json,
                ..ReportOptions::default()
            },
        );
        let value: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(value["version"], 1);
        assert_eq!(value["rows"][0]["risk_class"], "tolerable");
    }

    #[test]
    fn waived_rows_can_be_excluded() {
        let mut worksheet = sample_worksheet();
        worksheet.rows[0].waived = Some("out of scope".into());
        let shown = emit_fmeca(
            &worksheet,
            &RiskMatrix::default_matrix(),
            &ReportOptions::default(),
        );
        assert!(shown.contains("waived"));
        let hidden = emit_fmeca(
            &worksheet,
            &RiskMatrix::default_matrix(),
            &ReportOptions {
                include_waived: false,
                ..ReportOptions::default()
            },
        );
        assert!(!hidden.contains("I :: Set level"));
    }

    #[test]
    fn emission_is_deterministic() {
        let worksheet = sample_worksheet();
        let matrix = RiskMatrix::default_matrix();
        for format in [ReportFormat::Markdown, ReportFormat::Csv, ReportFormat::Json] {
            let options = ReportOptions {
                format,
                ..ReportOptions::default()
            };
            assert_eq!(
                emit_fmeca(&worksheet, &matrix, &options),
                emit_fmeca(&worksheet, &matrix, &options)
            );
        }
    }
}
