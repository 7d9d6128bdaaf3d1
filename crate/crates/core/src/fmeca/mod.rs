//! Qualitative risk: severity and probability scales, the risk matrix, and
//! the analyst worksheet built from enumerated candidates.

mod documents;
mod matrix;
mod worksheet;

pub use documents::{
    load_annotations, load_matrix_doc, load_worksheet, save_matrix_doc, save_worksheet,
    Annotation, AnnotationDoc, DetectionAnnotation, EffectsAnnotation, ResidualAnnotation,
    SolutionsAnnotation, DOCUMENT_VERSION,
};
pub use matrix::RiskMatrix;
pub use worksheet::{
    completeness_check, init_worksheet, merge_annotations, rank_rows, residual_risk,
    DigestMismatch, Worksheet, WorksheetRow,
};

use serde::{Deserialize, Serialize};
use std::fmt;

/// Harm severity. Level 1 is the worst; the numbering runs from
/// catastrophic (1) down to negligible (5).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Severity {
    Catastrophic,
    Severe,
    Major,
    Minor,
    Negligible,
}

impl Severity {
    pub const ALL: [Severity; 5] = [
        Self::Catastrophic,
        Self::Severe,
        Self::Major,
        Self::Minor,
        Self::Negligible,
    ];

    pub fn level(self) -> u8 {
        match self {
            Self::Catastrophic => 1,
            Self::Severe => 2,
            Self::Major => 3,
            Self::Minor => 4,
            Self::Negligible => 5,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::Catastrophic => "catastrophic",
            Self::Severe => "severe",
            Self::Major => "major",
            Self::Minor => "minor",
            Self::Negligible => "negligible",
        }
    }

    pub fn from_level(level: u8) -> Option<Self> {
        Self::ALL.into_iter().find(|s| s.level() == level)
    }

    /// Accepts `minor`, `4` or `minor(4)` style tokens.
    pub fn parse_token(token: &str) -> Option<Self> {
        let token = token.trim();
        if let Ok(level) = token.parse::<u8>() {
            return Self::from_level(level);
        }
        let (name, level) = match token.split_once('(') {
            Some((name, rest)) => (name.trim(), rest.strip_suffix(')')?.trim().parse::<u8>().ok()),
            None => (token, None),
        };
        let parsed = Self::ALL.into_iter().find(|s| s.name() == name.to_lowercase())?;
        match level {
            Some(level) if level != parsed.level() => None,
            _ => Some(parsed),
        }
    }
}

impl fmt::Display for Severity {
    /// `name (level)`, e.g. `minor (4)`: the inverted numbering stays
    /// unambiguous next to the name.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({})", self.name(), self.level())
    }
}

/// Qualitative probability that the failure mode leads to the harm.
/// Declared in ascending likelihood so the derived order compares how
/// likely: `Impossible < ... < Frequent`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Probability {
    Impossible,
    Rare,
    Occasional,
    Probable,
    Frequent,
}

impl Probability {
    /// In descending likelihood, the conventional reading order of the
    /// scale.
    pub const ALL: [Probability; 5] = [
        Self::Frequent,
        Self::Probable,
        Self::Occasional,
        Self::Rare,
        Self::Impossible,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::Frequent => "frequent",
            Self::Probable => "probable",
            Self::Occasional => "occasional",
            Self::Rare => "rare",
            Self::Impossible => "impossible",
        }
    }

    pub fn abbreviation(self) -> &'static str {
        match self {
            Self::Frequent => "F",
            Self::Probable => "P",
            Self::Occasional => "O",
            Self::Rare => "R",
            Self::Impossible => "I",
        }
    }

    /// Accepts full names or the single-letter abbreviations F/P/O/R/I.
    pub fn parse_token(token: &str) -> Option<Self> {
        let token = token.trim();
        Self::ALL
            .into_iter()
            .find(|p| p.name() == token.to_lowercase() || p.abbreviation() == token)
    }
}

impl fmt::Display for Probability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Risk classes, declared in ascending badness.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RiskClass {
    Acceptable,
    Tolerable,
    Undesirable,
    Intolerable,
}

impl RiskClass {
    pub const ALL: [RiskClass; 4] = [
        Self::Intolerable,
        Self::Undesirable,
        Self::Tolerable,
        Self::Acceptable,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::Intolerable => "intolerable",
            Self::Undesirable => "undesirable",
            Self::Tolerable => "tolerable",
            Self::Acceptable => "acceptable",
        }
    }

    pub fn parse_token(token: &str) -> Option<Self> {
        let token = token.trim().to_lowercase();
        Self::ALL.into_iter().find(|c| c.name() == token)
    }
}

impl fmt::Display for RiskClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}
