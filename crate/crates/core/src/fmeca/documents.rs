//! On-disk document formats: worksheet, annotation and matrix files.
//!
//! All three are JSON with a `version` field checked on load. Field layouts
//! are documented in `docs/formats.md`. Serialization is byte-deterministic:
//! struct field order is fixed and maps are emitted in scale order.

use super::{Probability, RiskClass, RiskMatrix, Severity, Worksheet};
use crate::diag::{Diagnostic, DiagnosticCode as Code, Location, ModelPath};
use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

/// Version stamped into every document this build writes.
pub const DOCUMENT_VERSION: u32 = 1;

/// Analyst annotations to merge onto a worksheet. Every field is optional:
/// absent fields leave the row untouched.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Annotation {
    pub candidate: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub failure_mode_text: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cause: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub effects: Option<EffectsAnnotation>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub severity: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub probability: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detection: Option<DetectionAnnotation>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub solutions: Option<SolutionsAnnotation>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub waived: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub residual: Option<ResidualAnnotation>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct EffectsAnnotation {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub local: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub upper: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub system: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct DetectionAnnotation {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub failure_mode: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub effects: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct SolutionsAnnotation {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub prevention: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub protection: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub other_actions: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub remarks: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct ResidualAnnotation {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub severity: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub probability: Option<String>,
}

/// The annotation document.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnnotationDoc {
    pub version: u32,
    pub annotations: Vec<Annotation>,
}

fn version_error(found: u32) -> Vec<Diagnostic> {
    vec![Diagnostic::error(
        Code::BadDocumentVersion,
        Location::Path(ModelPath::new("version")),
        format!("unsupported document version {found}, expected {DOCUMENT_VERSION}"),
    )]
}

fn json_error(context: &str, err: serde_json::Error) -> Vec<Diagnostic> {
    vec![Diagnostic::error(
        Code::SyntaxError,
        Location::Path(ModelPath::new(context)),
        format!("malformed {context} document: {err}"),
    )]
}

/// Parses and version-checks a worksheet document.
pub fn load_worksheet(json: &str) -> Result<Worksheet, Vec<Diagnostic>> {
    let worksheet: Worksheet =
        serde_json::from_str(json).map_err(|e| json_error("worksheet", e))?;
    if worksheet.version != DOCUMENT_VERSION {
        return Err(version_error(worksheet.version));
    }
    Ok(worksheet)
}

/// Serializes a worksheet to its canonical JSON (pretty, trailing newline).
pub fn save_worksheet(worksheet: &Worksheet) -> String {
    let mut out = serde_json::to_string_pretty(worksheet).expect("worksheet serializes");
    out.push('\n');
    out
}

/// Parses and version-checks an annotation document.
pub fn load_annotations(json: &str) -> Result<AnnotationDoc, Vec<Diagnostic>> {
    let doc: AnnotationDoc =
        serde_json::from_str(json).map_err(|e| json_error("annotation", e))?;
    if doc.version != DOCUMENT_VERSION {
        return Err(version_error(doc.version));
    }
    Ok(doc)
}

/// Matrix config document: a 5x5 table keyed by severity then probability
/// name.
#[derive(Debug, Clone, Serialize, Deserialize)]
struct MatrixDoc {
    version: u32,
    classes: IndexMap<String, IndexMap<String, String>>,
}

/// Parses, version-checks and validates a matrix document; every missing
/// or malformed cell, monotonicity breach and impossible-column breach is
/// reported.
pub fn load_matrix_doc(json: &str, name: &str) -> Result<RiskMatrix, Vec<Diagnostic>> {
    let doc: MatrixDoc = serde_json::from_str(json).map_err(|e| json_error("matrix", e))?;
    if doc.version != DOCUMENT_VERSION {
        return Err(version_error(doc.version));
    }
    let mut diags = Vec::new();
    let mut cells = [[RiskClass::Acceptable; 5]; 5];
    for severity in Severity::ALL {
        let Some(row) = doc.classes.get(severity.name()) else {
            diags.push(Diagnostic::error(
                Code::MatrixMissingCell,
                Location::Path(ModelPath::new(format!("matrix[{}]", severity.name()))),
                format!("matrix row `{}` is missing", severity.name()),
            ));
            continue;
        };
        for probability in Probability::ALL {
            let Some(token) = row.get(probability.name()) else {
                diags.push(Diagnostic::error(
                    Code::MatrixMissingCell,
                    Location::Path(ModelPath::new(format!(
                        "matrix[{}][{}]",
                        severity.name(),
                        probability.name()
                    ))),
                    format!(
                        "matrix cell ({}, {}) is missing",
                        severity.name(),
                        probability.name()
                    ),
                ));
                continue;
            };
            match RiskClass::parse_token(token) {
                Some(class) => {
                    cells[severity.level() as usize - 1][match probability {
                        Probability::Frequent => 0,
                        Probability::Probable => 1,
                        Probability::Occasional => 2,
                        Probability::Rare => 3,
                        Probability::Impossible => 4,
                    }] = class;
                }
                None => diags.push(Diagnostic::error(
                    Code::MatrixMissingCell,
                    Location::Path(ModelPath::new(format!(
                        "matrix[{}][{}]",
                        severity.name(),
                        probability.name()
                    ))),
                    format!("`{token}` is not a risk class"),
                )),
            }
        }
    }
    if !diags.is_empty() {
        return Err(diags);
    }
    let matrix = RiskMatrix::from_cells(cells, name);
    let violations = matrix.validate();
    if violations.is_empty() {
        Ok(matrix)
    } else {
        Err(violations)
    }
}

/// Serializes a matrix to the config document format.
pub fn save_matrix_doc(matrix: &RiskMatrix) -> String {
    let mut classes = IndexMap::new();
    for severity in Severity::ALL {
        let mut row = IndexMap::new();
        for probability in Probability::ALL {
            row.insert(
                probability.name().to_string(),
                matrix.rank(severity, probability).name().to_string(),
            );
        }
        classes.insert(severity.name().to_string(), row);
    }
    let doc = MatrixDoc {
        version: DOCUMENT_VERSION,
        classes,
    };
    let mut out = serde_json::to_string_pretty(&doc).expect("matrix serializes");
    out.push('\n');
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrix_round_trips_through_config() {
        let matrix = RiskMatrix::default_matrix();
        let json = save_matrix_doc(&matrix);
        let loaded = load_matrix_doc(&json, "default").unwrap();
        for severity in Severity::ALL {
            for probability in Probability::ALL {
                assert_eq!(loaded.rank(severity, probability), matrix.rank(severity, probability));
            }
        }
    }

    #[test]
    fn missing_cells_are_reported() {
        let json = r#"{"version":1,"classes":{"catastrophic":{"frequent":"intolerable"}}}"#;
        let err = load_matrix_doc(json, "partial").unwrap_err();
        assert!(err.iter().all(|d| d.code == Code::MatrixMissingCell));
        assert!(err.len() >= 5);
    }

    #[test]
    fn non_monotone_config_is_rejected() {
        let mut cells = [[RiskClass::Acceptable; 5]; 5];
        // (negligible, frequent) worse than (minor, frequent).
        cells[4][0] = RiskClass::Intolerable;
        let json = save_matrix_doc(&RiskMatrix::from_cells(cells, "broken"));
        let err = load_matrix_doc(&json, "broken").unwrap_err();
        assert!(err.iter().any(|d| d.code == Code::MatrixNotMonotone), "{err:?}");
    }

    #[test]
    fn version_is_checked() {
        let json = r#"{"version":9,"classes":{}}"#;
        let err = load_matrix_doc(json, "v9").unwrap_err();
        assert_eq!(err[0].code, Code::BadDocumentVersion);

        let ws = r#"{"version":2,"model_name":"m","model_digest":"d","matrix":"default","rows":[]}"#;
        assert!(load_worksheet(ws).is_err());
    }

    #[test]
    fn worksheet_save_load_round_trip() {
        let worksheet = Worksheet {
            version: DOCUMENT_VERSION,
            model_name: "M".into(),
            model_digest: "abc".into(),
            matrix: "default".into(),
            rows: vec![],
        };
        let json = save_worksheet(&worksheet);
        let loaded = load_worksheet(&json).unwrap();
        assert_eq!(loaded, worksheet);
        assert_eq!(save_worksheet(&loaded), json);
    }
}
