//! Worksheet lifecycle: init from candidates, merge analyst annotations,
//! rank by risk, and check completeness against a fresh enumeration.

use super::documents::{Annotation, AnnotationDoc};
use super::{Probability, RiskClass, RiskMatrix, Severity};
use crate::catalog::CandidateSet;
use crate::diag::{Diagnostic, DiagnosticCode as Code, Location, ModelPath};
use crate::dsl::model_digest;
use crate::model::SystemModel;
use serde::{Deserialize, Serialize};

/// One FMECA row. A row is *disposed* when severity and probability are
/// both set, or when it is waived with a justification.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WorksheetRow {
    pub candidate_id: String,
    /// Interaction/message display name, e.g. `InstallInit :: Set power`.
    pub display_name: String,
    /// Analyst wording of the failure mode, always carrying the error id.
    pub failure_mode_text: String,
    #[serde(default)]
    pub cause: String,
    #[serde(default)]
    pub effect_local: String,
    #[serde(default)]
    pub effect_upper: String,
    #[serde(default)]
    pub effect_system: String,
    #[serde(default)]
    pub severity: Option<Severity>,
    #[serde(default)]
    pub probability: Option<Probability>,
    #[serde(default)]
    pub detection_failure_mode: String,
    #[serde(default)]
    pub detection_effects: String,
    #[serde(default)]
    pub prevention: String,
    #[serde(default)]
    pub protection: String,
    #[serde(default)]
    pub other_actions: String,
    #[serde(default)]
    pub remarks: String,
    /// Waiver justification; `Some` means the analyst decided the candidate
    /// needs no risk disposition.
    #[serde(default)]
    pub waived: Option<String>,
    #[serde(default)]
    pub residual_severity: Option<Severity>,
    #[serde(default)]
    pub residual_probability: Option<Probability>,
}

impl WorksheetRow {
    fn blank(candidate_id: String, display_name: String, failure_mode_text: String) -> Self {
        Self {
            candidate_id,
            display_name,
            failure_mode_text,
            cause: String::new(),
            effect_local: String::new(),
            effect_upper: String::new(),
            effect_system: String::new(),
            severity: None,
            probability: None,
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

    pub fn is_waived(&self) -> bool {
        self.waived.is_some()
    }

    pub fn is_disposed(&self) -> bool {
        (self.severity.is_some() && self.probability.is_some()) || self.is_waived()
    }
}

/// The worksheet: one row per candidate, tied to the analyzed model by
/// content digest so drift is detectable.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Worksheet {
    pub version: u32,
    pub model_name: String,
    pub model_digest: String,
    /// Which matrix the analysis assumes ("default" or a config name).
    pub matrix: String,
    pub rows: Vec<WorksheetRow>,
}

impl Worksheet {
    pub fn row(&self, candidate_id: &str) -> Option<&WorksheetRow> {
        self.rows.iter().find(|r| r.candidate_id == candidate_id)
    }
}

/// Candidates were enumerated from a different model revision.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("candidate set digest {candidates} does not match model digest {model}")]
pub struct DigestMismatch {
    pub model: String,
    pub candidates: String,
}

/// One blank row per candidate, in enumeration order, with the failure-mode
/// text pre-filled from the error model.
pub fn init_worksheet(
    model: &SystemModel,
    candidates: &CandidateSet,
) -> Result<Worksheet, DigestMismatch> {
    let digest = model_digest(model);
    if digest != candidates.model_digest {
        return Err(DigestMismatch {
            model: digest,
            candidates: candidates.model_digest.clone(),
        });
    }
    let rows = candidates
        .items
        .iter()
        .map(|candidate| {
            let display_name = match &candidate.message {
                Some(id) => {
                    let operation = model
                        .interaction(&candidate.interaction)
                        .and_then(|i| i.message(id))
                        .map(|m| m.operation.clone())
                        .unwrap_or_else(|| id.clone());
                    format!("{} :: {}", candidate.interaction, operation)
                }
                None => candidate.interaction.clone(),
            };
            WorksheetRow::blank(candidate.id.clone(), display_name, candidate.prefill_text())
        })
        .collect();
    Ok(Worksheet {
        version: super::DOCUMENT_VERSION,
        model_name: model.name.clone(),
        model_digest: digest,
        matrix: "default".to_string(),
        rows,
    })
}

/// Copies annotation fields onto matching rows.
///
/// Returns the merged worksheet plus diagnostics; any error diagnostic
/// (unknown id, malformed token, residual violation, empty waiver) means
/// the merge must not be persisted. Valid annotations are applied
/// regardless, and applying the same document twice changes nothing.
pub fn merge_annotations(
    worksheet: &Worksheet,
    annotations: &AnnotationDoc,
) -> (Worksheet, Vec<Diagnostic>) {
    let mut merged = worksheet.clone();
    let mut diags = Vec::new();
    for annotation in &annotations.annotations {
        merge_one(&mut merged, annotation, &mut diags);
    }
    (merged, diags)
}

fn merge_one(worksheet: &mut Worksheet, annotation: &Annotation, diags: &mut Vec<Diagnostic>) {
    let path = || ModelPath::new(format!("annotation[{}]", annotation.candidate));
    let Some(row) = worksheet
        .rows
        .iter_mut()
        .find(|r| r.candidate_id == annotation.candidate)
    else {
        diags.push(Diagnostic::error(
            Code::UnknownCandidate,
            Location::Path(path()),
            format!("no worksheet row for candidate `{}`", annotation.candidate),
        ));
        return;
    };

    let mut severity = row.severity;
    let mut probability = row.probability;
    let mut residual_severity = row.residual_severity;
    let mut residual_probability = row.residual_probability;
    let mut ok = true;

    if let Some(token) = &annotation.severity {
        match Severity::parse_token(token) {
            Some(parsed) => severity = Some(parsed),
            None => {
                diags.push(Diagnostic::error(
                    Code::BadSeverity,
                    Location::Path(path()),
                    format!("malformed severity token `{token}`"),
                ));
                ok = false;
            }
        }
    }
    if let Some(token) = &annotation.probability {
        match Probability::parse_token(token) {
            Some(parsed) => probability = Some(parsed),
            None => {
                diags.push(Diagnostic::error(
                    Code::BadProbability,
                    Location::Path(path()),
                    format!("malformed probability token `{token}`"),
                ));
                ok = false;
            }
        }
    }
    if let Some(residual) = &annotation.residual {
        if let Some(token) = &residual.severity {
            match Severity::parse_token(token) {
                Some(parsed) => residual_severity = Some(parsed),
                None => {
                    diags.push(Diagnostic::error(
                        Code::BadSeverity,
                        Location::Path(path()),
                        format!("malformed residual severity token `{token}`"),
                    ));
                    ok = false;
                }
            }
        }
        if let Some(token) = &residual.probability {
            match Probability::parse_token(token) {
                Some(parsed) => residual_probability = Some(parsed),
                None => {
                    diags.push(Diagnostic::error(
                        Code::BadProbability,
                        Location::Path(path()),
                        format!("malformed residual probability token `{token}`"),
                    ));
                    ok = false;
                }
            }
        }
    }

    // Protection can only reduce harm (level number grows); prevention can
    // only reduce likelihood.
    if let (Some(residual), Some(initial)) = (residual_severity, severity) {
        if residual.level() < initial.level() {
            diags.push(Diagnostic::error(
                Code::ResidualInvariant,
                Location::Path(path()),
                format!(
                    "residual severity {residual} is more severe than initial severity {initial}"
                ),
            ));
            ok = false;
        }
    }
    if residual_severity.is_some() && severity.is_none() {
        diags.push(Diagnostic::error(
            Code::ResidualInvariant,
            Location::Path(path()),
            "residual severity requires an initial severity",
        ));
        ok = false;
    }
    if let (Some(residual), Some(initial)) = (residual_probability, probability) {
        if residual > initial {
            diags.push(Diagnostic::error(
                Code::ResidualInvariant,
                Location::Path(path()),
                format!(
                    "residual probability {residual} is more likely than initial probability {initial}"
                ),
            ));
            ok = false;
        }
    }
    if residual_probability.is_some() && probability.is_none() {
        diags.push(Diagnostic::error(
            Code::ResidualInvariant,
            Location::Path(path()),
            "residual probability requires an initial probability",
        ));
        ok = false;
    }
    if let Some(justification) = &annotation.waived {
        if justification.trim().is_empty() {
            diags.push(Diagnostic::error(
                Code::EmptyWaiverJustification,
                Location::Path(path()),
                "a waiver requires a non-empty justification",
            ));
            ok = false;
        }
    }
    if !ok {
        return;
    }

    row.severity = severity;
    row.probability = probability;
    row.residual_severity = residual_severity;
    row.residual_probability = residual_probability;
    if let Some(text) = &annotation.failure_mode_text {
        row.failure_mode_text = text.clone();
    }
    if let Some(text) = &annotation.cause {
        row.cause = text.clone();
    }
    if let Some(effects) = &annotation.effects {
        if let Some(text) = &effects.local {
            row.effect_local = text.clone();
        }
        if let Some(text) = &effects.upper {
            row.effect_upper = text.clone();
        }
        if let Some(text) = &effects.system {
            row.effect_system = text.clone();
        }
    }
    if let Some(detection) = &annotation.detection {
        if let Some(text) = &detection.failure_mode {
            row.detection_failure_mode = text.clone();
        }
        if let Some(text) = &detection.effects {
            row.detection_effects = text.clone();
        }
    }
    if let Some(solutions) = &annotation.solutions {
        if let Some(text) = &solutions.prevention {
            row.prevention = text.clone();
        }
        if let Some(text) = &solutions.protection {
            row.protection = text.clone();
        }
        if let Some(text) = &solutions.other_actions {
            row.other_actions = text.clone();
        }
        if let Some(text) = &solutions.remarks {
            row.remarks = text.clone();
        }
    }
    if let Some(justification) = &annotation.waived {
        row.waived = Some(justification.clone());
    }
}

/// Risk before and after mitigations. `before` uses the initial pair,
/// `after` substitutes residual values where present; merge validation
/// guarantees `after <= before`.
pub fn residual_risk(row: &WorksheetRow, matrix: &RiskMatrix) -> Option<(RiskClass, RiskClass)> {
    let severity = row.severity?;
    let probability = row.probability?;
    if row.is_waived() {
        return None;
    }
    let before = matrix.rank(severity, probability);
    let after = matrix.rank(
        row.residual_severity.unwrap_or(severity),
        row.residual_probability.unwrap_or(probability),
    );
    Some((before, after))
}

/// Completeness of a worksheet against a fresh enumeration: digest drift is
/// an error, every candidate without a row is an error, every undisposed
/// row a warning, every stale row an info.
pub fn completeness_check(worksheet: &Worksheet, candidates: &CandidateSet) -> Vec<Diagnostic> {
    let mut diags = Vec::new();
    if worksheet.model_digest != candidates.model_digest {
        diags.push(Diagnostic::error(
            Code::DigestDrift,
            Location::Path(ModelPath::new("worksheet")),
            format!(
                "worksheet was built from model digest {} but the model now digests to {}",
                worksheet.model_digest, candidates.model_digest
            ),
        ));
    }
    for candidate in &candidates.items {
        if worksheet.row(&candidate.id).is_none() {
            diags.push(Diagnostic::error(
                Code::MissingRow,
                Location::Path(ModelPath::new(format!("candidate[{}]", candidate.id))),
                format!("candidate `{}` has no worksheet row", candidate.id),
            ));
        }
    }
    for row in &worksheet.rows {
        if !row.is_disposed() {
            diags.push(Diagnostic::warning(
                Code::UndisposedRow,
                Location::Path(ModelPath::new(format!("row[{}]", row.candidate_id))),
                format!("row `{}` has no risk disposition yet", row.candidate_id),
            ));
        }
        if candidates.get(&row.candidate_id).is_none() {
            diags.push(Diagnostic::info(
                Code::StaleRow,
                Location::Path(ModelPath::new(format!("row[{}]", row.candidate_id))),
                format!(
                    "row `{}` refers to a candidate that no longer exists",
                    row.candidate_id
                ),
            ));
        }
    }
    diags
}

/// Rows by descending criticality: disposed rows ordered by (risk class
/// descending, severity level ascending, probability descending, candidate
/// id), then undisposed rows, then waived rows, each by id. A permutation
/// of the input independent of input order.
pub fn rank_rows<'a>(worksheet: &'a Worksheet, matrix: &RiskMatrix) -> Vec<&'a WorksheetRow> {
    let mut disposed: Vec<&WorksheetRow> = Vec::new();
    let mut undisposed: Vec<&WorksheetRow> = Vec::new();
    let mut waived: Vec<&WorksheetRow> = Vec::new();
    for row in &worksheet.rows {
        if row.is_waived() {
            waived.push(row);
        } else if row.severity.is_some() && row.probability.is_some() {
            disposed.push(row);
        } else {
            undisposed.push(row);
        }
    }
    disposed.sort_by(|a, b| {
        let (sev_a, prob_a) = (a.severity.unwrap(), a.probability.unwrap());
        let (sev_b, prob_b) = (b.severity.unwrap(), b.probability.unwrap());
        matrix
            .rank(sev_b, prob_b)
            .cmp(&matrix.rank(sev_a, prob_a))
            .then_with(|| sev_a.level().cmp(&sev_b.level()))
            .then_with(|| prob_b.cmp(&prob_a))
            .then_with(|| a.candidate_id.cmp(&b.candidate_id))
    });
    undisposed.sort_by(|a, b| a.candidate_id.cmp(&b.candidate_id));
    waived.sort_by(|a, b| a.candidate_id.cmp(&b.candidate_id));
    disposed.extend(undisposed);
    disposed.extend(waived);
    disposed
}
