//! Diagnostics: findings reported by validation, linting, parsing and
//! worksheet checks.
//!
//! Codes are stable identifiers: the same finding always carries the same
//! code across releases, so downstream tooling may filter on them.

use serde::{Deserialize, Serialize};
use std::fmt;

/// How serious a finding is. Errors make a model (or document) unusable,
/// warnings flag risky-but-legal constructs, infos are advisory.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DiagnosticSeverity {
    Error,
    Warning,
    Info,
}

impl fmt::Display for DiagnosticSeverity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Error => write!(f, "error"),
            Self::Warning => write!(f, "warning"),
            Self::Info => write!(f, "info"),
        }
    }
}

/// Stable diagnostic codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DiagnosticCode {
    // Lexical / syntactic (parser)
    InvalidEncoding,
    IllegalCharacter,
    UnterminatedString,
    MalformedNumber,
    SyntaxError,
    // Semantic (parser)
    DuplicateName,
    DuplicatePredecessor,
    // Model well-formedness (validation)
    UnresolvedParticipant,
    UnresolvedActor,
    UnresolvedUseCase,
    UnknownPredecessor,
    PredecessorCycle,
    DurationBoundOrder,
    IntervalBoundOrder,
    EmptyEnumDomain,
    EmptyUseCaseActors,
    MissingAllocation,
    // Task-allocation lints
    UsecaseNoAllocation,
    UsecaseNoActor,
    HumanConcurrentLoad,
    RealizesExcluded,
    // Profiles
    UnknownErrorModel,
    BadApplicability,
    // Worksheet / annotations / matrix
    UnknownCandidate,
    BadSeverity,
    BadProbability,
    ResidualInvariant,
    EmptyWaiverJustification,
    MissingRow,
    UndisposedRow,
    StaleRow,
    DigestDrift,
    MatrixMissingCell,
    MatrixNotMonotone,
    MatrixImpossibleCell,
    BadDocumentVersion,
}

impl DiagnosticCode {
    /// The stable textual form of the code.
    pub fn as_str(&self) -> &'static str {
        match self {
            Self::InvalidEncoding => "invalid-encoding",
            Self::IllegalCharacter => "illegal-character",
            Self::UnterminatedString => "unterminated-string",
            Self::MalformedNumber => "malformed-number",
            Self::SyntaxError => "syntax-error",
            Self::DuplicateName => "duplicate-name",
            Self::DuplicatePredecessor => "duplicate-predecessor",
            Self::UnresolvedParticipant => "unresolved-participant",
            Self::UnresolvedActor => "unresolved-actor",
            Self::UnresolvedUseCase => "unresolved-usecase",
            Self::UnknownPredecessor => "unknown-predecessor",
            Self::PredecessorCycle => "predecessor-cycle",
            Self::DurationBoundOrder => "duration-bound-order",
            Self::IntervalBoundOrder => "interval-bound-order",
            Self::EmptyEnumDomain => "empty-enum-domain",
            Self::EmptyUseCaseActors => "empty-usecase-actors",
            Self::MissingAllocation => "missing-allocation",
            Self::UsecaseNoAllocation => "usecase-no-allocation",
            Self::UsecaseNoActor => "usecase-no-actor",
            Self::HumanConcurrentLoad => "human-concurrent-load",
            Self::RealizesExcluded => "realizes-excluded",
            Self::UnknownErrorModel => "unknown-error-model",
            Self::BadApplicability => "bad-applicability",
            Self::UnknownCandidate => "unknown-candidate",
            Self::BadSeverity => "bad-severity",
            Self::BadProbability => "bad-probability",
            Self::ResidualInvariant => "residual-invariant",
            Self::EmptyWaiverJustification => "empty-waiver-justification",
            Self::MissingRow => "missing-row",
            Self::UndisposedRow => "undisposed-row",
            Self::StaleRow => "stale-row",
            Self::DigestDrift => "digest-drift",
            Self::MatrixMissingCell => "matrix-missing-cell",
            Self::MatrixNotMonotone => "matrix-not-monotone",
            Self::MatrixImpossibleCell => "matrix-impossible-cell",
            Self::BadDocumentVersion => "bad-document-version",
        }
    }
}

impl fmt::Display for DiagnosticCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A region of source text. Lines and columns are 1-based; the start is
/// inclusive and the end exclusive.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SourceSpan {
    pub file: String,
    pub start_line: u32,
    pub start_col: u32,
    pub end_line: u32,
    pub end_col: u32,
}

impl SourceSpan {
    pub fn new(file: impl Into<String>, start: (u32, u32), end: (u32, u32)) -> Self {
        debug_assert!(start <= end);
        Self {
            file: file.into(),
            start_line: start.0,
            start_col: start.1,
            end_line: end.0,
            end_col: end.1,
        }
    }
}

impl fmt::Display for SourceSpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.file, self.start_line, self.start_col)
    }
}

/// A path into the model, e.g. `interaction[InstallInit].msg[m2]`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ModelPath(String);

impl ModelPath {
    pub fn root() -> Self {
        Self(String::new())
    }

    pub fn new(segment: impl Into<String>) -> Self {
        Self(segment.into())
    }

    /// Appends a `kind[name]` segment.
    pub fn child(&self, kind: &str, name: &str) -> Self {
        if self.0.is_empty() {
            Self(format!("{kind}[{name}]"))
        } else {
            Self(format!("{}.{kind}[{name}]", self.0))
        }
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for ModelPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Where a diagnostic points: a source span (parser) or a model path
/// (validation and document checks).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Location {
    Span(SourceSpan),
    Path(ModelPath),
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Span(s) => s.fmt(f),
            Self::Path(p) => p.fmt(f),
        }
    }
}

/// One finding.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Diagnostic {
    pub severity: DiagnosticSeverity,
    pub code: DiagnosticCode,
    pub location: Location,
    pub text: String,
}

impl Diagnostic {
    pub fn error(code: DiagnosticCode, location: Location, text: impl Into<String>) -> Self {
        Self {
            severity: DiagnosticSeverity::Error,
            code,
            location,
            text: text.into(),
        }
    }

    pub fn warning(code: DiagnosticCode, location: Location, text: impl Into<String>) -> Self {
        Self {
            severity: DiagnosticSeverity::Warning,
            code,
            location,
            text: text.into(),
        }
    }

    pub fn info(code: DiagnosticCode, location: Location, text: impl Into<String>) -> Self {
        Self {
            severity: DiagnosticSeverity::Info,
            code,
            location,
            text: text.into(),
        }
    }

    pub fn is_error(&self) -> bool {
        self.severity == DiagnosticSeverity::Error
    }

    pub fn at_path(code: DiagnosticCode, path: ModelPath, text: impl Into<String>) -> Self {
        Self::error(code, Location::Path(path), text)
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}[{}]: {} ({})",
            self.severity, self.code, self.text, self.location
        )
    }
}

/// Sorts diagnostics into the canonical reporting order: by location,
/// then code, then severity.
pub fn sort_diagnostics(diags: &mut [Diagnostic]) {
    diags.sort_by(|a, b| {
        location_key(&a.location)
            .cmp(&location_key(&b.location))
            .then_with(|| a.code.as_str().cmp(b.code.as_str()))
            .then_with(|| a.severity.cmp(&b.severity))
    });
}

fn location_key(loc: &Location) -> (u8, String, u32, u32) {
    match loc {
        Location::Span(s) => (0, s.file.clone(), s.start_line, s.start_col),
        Location::Path(p) => (1, p.as_str().to_string(), 0, 0),
    }
}

/// True if any diagnostic in the slice is an error.
pub fn has_errors(diags: &[Diagnostic]) -> bool {
    diags.iter().any(Diagnostic::is_error)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn codes_are_stable_strings() {
        assert_eq!(DiagnosticCode::UnresolvedParticipant.as_str(), "unresolved-participant");
        assert_eq!(DiagnosticCode::PredecessorCycle.to_string(), "predecessor-cycle");
    }

    #[test]
    fn model_path_builds_segments() {
        let p = ModelPath::root().child("interaction", "I").child("msg", "m2");
        assert_eq!(p.as_str(), "interaction[I].msg[m2]");
    }

    #[test]
    fn sorting_is_by_path_then_code() {
        let a = Diagnostic::at_path(
            DiagnosticCode::UnresolvedParticipant,
            ModelPath::new("b"),
            "x",
        );
        let b = Diagnostic::at_path(DiagnosticCode::DuplicateName, ModelPath::new("a"), "y");
        let mut v = vec![a.clone(), b.clone()];
        sort_diagnostics(&mut v);
        assert_eq!(v, vec![b, a]);
    }
}
