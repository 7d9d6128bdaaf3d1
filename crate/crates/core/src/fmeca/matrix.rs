//! The 5x5 qualitative risk matrix.
//!
//! A matrix is valid when it is monotone - risk never worsens as severity
//! moves toward negligible or probability toward impossible - and when the
//! whole impossible column is acceptable. Validation runs on every load;
//! a non-monotone user matrix is rejected with diagnostics.

use super::{Probability, RiskClass, Severity};
use crate::diag::{Diagnostic, DiagnosticCode as Code, Location, ModelPath};

/// Mapping (severity, probability) -> risk class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RiskMatrix {
    /// Rows by severity level (index 0 = catastrophic), columns in
    /// descending likelihood (index 0 = frequent).
    cells: [[RiskClass; 5]; 5],
    /// Where the matrix came from, for report headers ("default" or a file
    /// name).
    pub name: String,
}

impl RiskMatrix {
    /// The shipped default: an ALARP-style monotone gradient. Frequent or
    /// probable harm at severity 1-2 is intolerable, as is occasional
    /// catastrophic harm; the impossible column is acceptable throughout,
    /// reaching acceptable at (negligible, rare).
    pub fn default_matrix() -> Self {
        use RiskClass::*;
        let cells = [
            // frequent,  probable,    occasional,  rare,        impossible
            [Intolerable, Intolerable, Intolerable, Undesirable, Acceptable], // catastrophic
            [Intolerable, Intolerable, Undesirable, Tolerable, Acceptable],   // severe
            [Undesirable, Undesirable, Tolerable, Tolerable, Acceptable],     // major
            [Tolerable, Tolerable, Tolerable, Acceptable, Acceptable],        // minor
            [Tolerable, Acceptable, Acceptable, Acceptable, Acceptable],      // negligible
        ];
        let matrix = Self {
            cells,
            name: "default".to_string(),
        };
        debug_assert!(matrix.validate().is_empty());
        matrix
    }

    /// Builds a matrix from explicit cells; the caller still runs
    /// [`RiskMatrix::validate`].
    pub fn from_cells(cells: [[RiskClass; 5]; 5], name: impl Into<String>) -> Self {
        Self {
            cells,
            name: name.into(),
        }
    }

    /// The class for one (severity, probability) pair. Total: every pair
    /// has a cell.
    pub fn rank(&self, severity: Severity, probability: Probability) -> RiskClass {
        self.cells[Self::row(severity)][Self::column(probability)]
    }

    /// All monotonicity/impossible-column violations, empty when valid.
    pub fn validate(&self) -> Vec<Diagnostic> {
        let mut diags = Vec::new();
        let path = |severity: Severity, probability: Probability| {
            Location::Path(ModelPath::new(format!(
                "matrix[{}][{}]",
                severity.name(),
                probability.name()
            )))
        };

        for severity in Severity::ALL {
            if self.rank(severity, Probability::Impossible) != RiskClass::Acceptable {
                diags.push(Diagnostic::error(
                    Code::MatrixImpossibleCell,
                    path(severity, Probability::Impossible),
                    format!(
                        "cell ({}, impossible) must be acceptable, found {}",
                        severity.name(),
                        self.rank(severity, Probability::Impossible)
                    ),
                ));
            }
        }

        // Moving down a column toward negligible must never worsen risk.
        for probability in Probability::ALL {
            for window in Severity::ALL.windows(2) {
                let (worse, milder) = (window[0], window[1]);
                if self.rank(milder, probability) > self.rank(worse, probability) {
                    diags.push(Diagnostic::error(
                        Code::MatrixNotMonotone,
                        path(milder, probability),
                        format!(
                            "risk ({}, {}) = {} is worse than ({}, {}) = {}",
                            milder.name(),
                            probability.name(),
                            self.rank(milder, probability),
                            worse.name(),
                            probability.name(),
                            self.rank(worse, probability),
                        ),
                    ));
                }
            }
        }
        // Moving along a row toward impossible must never worsen risk.
        for severity in Severity::ALL {
            for window in Probability::ALL.windows(2) {
                let (likelier, rarer) = (window[0], window[1]);
                if self.rank(severity, rarer) > self.rank(severity, likelier) {
                    diags.push(Diagnostic::error(
                        Code::MatrixNotMonotone,
                        path(severity, rarer),
                        format!(
                            "risk ({}, {}) = {} is worse than ({}, {}) = {}",
                            severity.name(),
                            rarer.name(),
                            self.rank(severity, rarer),
                            severity.name(),
                            likelier.name(),
                            self.rank(severity, likelier),
                        ),
                    ));
                }
            }
        }
        diags
    }

    fn row(severity: Severity) -> usize {
        severity.level() as usize - 1
    }

    fn column(probability: Probability) -> usize {
        match probability {
            Probability::Frequent => 0,
            Probability::Probable => 1,
            Probability::Occasional => 2,
            Probability::Rare => 3,
            Probability::Impossible => 4,
        }
    }
}

impl Default for RiskMatrix {
    fn default() -> Self {
        Self::default_matrix()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_matrix_is_valid() {
        assert!(RiskMatrix::default_matrix().validate().is_empty());
    }

    #[test]
    fn impossible_column_is_acceptable() {
        let matrix = RiskMatrix::default_matrix();
        for severity in Severity::ALL {
            assert_eq!(matrix.rank(severity, Probability::Impossible), RiskClass::Acceptable);
        }
    }

    #[test]
    fn pinned_default_cells() {
        let matrix = RiskMatrix::default_matrix();
        assert_eq!(
            matrix.rank(Severity::Catastrophic, Probability::Occasional),
            RiskClass::Intolerable
        );
        assert_eq!(
            matrix.rank(Severity::Severe, Probability::Probable),
            RiskClass::Intolerable
        );
        assert_eq!(
            matrix.rank(Severity::Minor, Probability::Probable),
            RiskClass::Tolerable
        );
        assert_eq!(matrix.rank(Severity::Negligible, Probability::Rare), RiskClass::Acceptable);
        // (negligible, frequent) stays tolerable or better.
        assert!(matrix.rank(Severity::Negligible, Probability::Frequent) <= RiskClass::Tolerable);
    }

    #[test]
    fn non_monotone_matrix_is_rejected() {
        let mut cells = [[RiskClass::Acceptable; 5]; 5];
        // Minor risk worse than catastrophic risk at the same probability.
        cells[Severity::Minor.level() as usize - 1][0] = RiskClass::Intolerable;
        let matrix = RiskMatrix::from_cells(cells, "broken");
        let diags = matrix.validate();
        assert!(diags.iter().any(|d| d.code == Code::MatrixNotMonotone));
    }

    #[test]
    fn bad_impossible_cell_is_rejected() {
        let mut cells = RiskMatrix::default_matrix().cells;
        cells[0][4] = RiskClass::Tolerable;
        let matrix = RiskMatrix::from_cells(cells, "broken");
        let diags = matrix.validate();
        assert!(diags.iter().any(|d| d.code == Code::MatrixImpossibleCell));
    }
}
