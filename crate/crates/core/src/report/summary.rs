//! Ranked risk summary: class counts, top rows, undisposed and waived
//! candidates.

use super::ReportOptions;
use crate::fmeca::{rank_rows, RiskClass, RiskMatrix, Worksheet};
use std::fmt::Write;

/// A Markdown summary focusing attention on the worst rows. Row order
/// equals [`rank_rows`] order.
pub fn emit_summary(worksheet: &Worksheet, matrix: &RiskMatrix, options: &ReportOptions) -> String {
    let ranked: Vec<_> = rank_rows(worksheet, matrix)
        .into_iter()
        .filter(|r| options.include_waived || !r.is_waived())
        .collect();

    let mut counts: Vec<(RiskClass, usize)> = RiskClass::ALL.iter().map(|&c| (c, 0)).collect();
    let mut undisposed = Vec::new();
    let mut waived = Vec::new();
    for row in &ranked {
        if row.is_waived() {
            waived.push(*row);
        } else if let (Some(severity), Some(probability)) = (row.severity, row.probability) {
            let class = matrix.rank(severity, probability);
            for (c, count) in &mut counts {
                if *c == class {
                    *count += 1;
                }
            }
        } else {
            undisposed.push(*row);
        }
    }

    let mut out = String::new();
    let _ = writeln!(out, "# Risk summary - {}", worksheet.model_name);
    let _ = writeln!(out);
    let _ = writeln!(
        out,
        "{} rows ({} disposed, {} waived, {} undisposed); matrix: {}",
        ranked.len(),
        ranked.len() - undisposed.len() - waived.len(),
        waived.len(),
        undisposed.len(),
        matrix.name,
    );
    let _ = writeln!(out);
    let _ = writeln!(out, "| Risk class | Rows |");
    let _ = writeln!(out, "|---|---|");
    for (class, count) in &counts {
        let _ = writeln!(out, "| {class} | {count} |");
    }

    let disposed_ranked: Vec<_> = ranked
        .iter()
        .filter(|r| !r.is_waived() && r.severity.is_some() && r.probability.is_some())
        .collect();
    if !disposed_ranked.is_empty() {
        let shown = options.top_n.unwrap_or(disposed_ranked.len());
        let _ = writeln!(out);
        let _ = writeln!(out, "## Top rows");
        let _ = writeln!(out);
        for (i, row) in disposed_ranked.iter().take(shown).enumerate() {
            let severity = row.severity.expect("disposed");
            let probability = row.probability.expect("disposed");
            let _ = writeln!(
                out,
                "{}. `{}` {} - {} - {}, {} -> {}",
                i + 1,
                row.candidate_id,
                row.display_name,
                row.failure_mode_text,
                severity,
                probability,
                matrix.rank(severity, probability),
            );
        }
    }
    if !undisposed.is_empty() {
        let _ = writeln!(out);
        let _ = writeln!(out, "## Undisposed candidates");
        let _ = writeln!(out);
        for row in &undisposed {
            let _ = writeln!(out, "- `{}`", row.candidate_id);
        }
    }
    if !waived.is_empty() {
        let _ = writeln!(out);
        let _ = writeln!(out, "## Waived");
        let _ = writeln!(out);
        for row in &waived {
            let _ = writeln!(
                out,
                "- `{}` - {}",
                row.candidate_id,
                row.waived.as_deref().unwrap_or_default()
            );
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fmeca::{Probability, Severity, WorksheetRow, DOCUMENT_VERSION};

    fn row(id: &str, severity: Option<Severity>, probability: Option<Probability>) -> WorksheetRow {
        WorksheetRow {
            candidate_id: id.into(),
            display_name: format!("I :: {id}"),
            failure_mode_text: "text".into(),
            cause: String::new(),
            effect_local: String::new(),
            effect_upper: String::new(),
            effect_system: String::new(),
            severity,
            probability,
            detection_failure_mode: String::new(),
            detection_effects: String::new(),
            prevention: String::new(),
            protection: String::new(),
            other_actions: String::new(),
            remarks: String::new(),
            waived: None,
            residual_severity: None,
            residual_probability: None,
        }
    }

    fn worksheet(rows: Vec<WorksheetRow>) -> Worksheet {
        Worksheet {
            version: DOCUMENT_VERSION,
            model_name: "M".into(),
            model_digest: "d".into(),
            matrix: "default".into(),
            rows,
        }
    }

    #[test]
    fn counts_and_top_rows() {
        let ws = worksheet(vec![
            row("I/m1/E3/-/-", Some(Severity::Minor), Some(Probability::Probable)),
            row(
                "I/m2/E8/p/above_max",
                Some(Severity::Catastrophic),
                Some(Probability::Occasional),
            ),
            row("I/m3/E3/-/-", None, None),
        ]);
        let out = emit_summary(&ws, &RiskMatrix::default_matrix(), &ReportOptions::default());
        assert!(out.contains("| intolerable | 1 |"));
        assert!(out.contains("| tolerable | 1 |"));
        assert!(out.contains("1. `I/m2/E8/p/above_max`"));
        assert!(out.contains("## Undisposed candidates"));
        assert!(out.contains("- `I/m3/E3/-/-`"));
    }

    #[test]
    fn all_waived_lists_waivers_and_zero_counts() {
        let mut a = row("I/m1/E3/-/-", None, None);
        a.waived = Some("tooling covers it".into());
        let mut b = row("I/m2/E3/-/-", None, None);
        b.waived = Some("duplicate of m1".into());
        let ws = worksheet(vec![b, a]);
        let out = emit_summary(&ws, &RiskMatrix::default_matrix(), &ReportOptions::default());
        assert!(out.contains("| intolerable | 0 |"));
        assert!(!out.contains("## Top rows"));
        let first = out.find("I/m1/E3").unwrap();
        let second = out.find("I/m2/E3").unwrap();
        assert!(first < second);
        assert!(out.contains("tooling covers it"));
    }

    #[test]
    fn top_n_caps_the_list() {
        let ws = worksheet(vec![
            row("a", Some(Severity::Minor), Some(Probability::Probable)),
            row("b", Some(Severity::Major), Some(Probability::Probable)),
            row("c", Some(Severity::Severe), Some(Probability::Probable)),
        ]);
        let out = emit_summary(
            &ws,
            &RiskMatrix::default_matrix(),
            &ReportOptions {
                top_n: Some(1),
                ..ReportOptions::default()
            },
        );
        assert!(out.contains("1. `c`"));
        assert!(!out.contains("2. `"));
    }
}
