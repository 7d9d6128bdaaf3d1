//! `seqfmeca check`: parse, validate and lint.

use crate::output::{load_model, print_diagnostics, CmdError};
use seqfmeca_core::diag::Diagnostic;
use seqfmeca_core::model::{allocation_lints, validate_model};
use std::path::Path;

pub fn run(model_path: &Path, json: bool) -> Result<(), CmdError> {
    let model = load_model(model_path, json)?;
    let mut diags = validate_model(&model);
    if !diags.iter().any(Diagnostic::is_error) {
        // Lints assume a well-formed model.
        diags.extend(allocation_lints(&model));
    }
    print_diagnostics(&diags, json);
    if diags.iter().any(Diagnostic::is_error) {
        Err(CmdError::Diagnostics)
    } else {
        Ok(())
    }
}
