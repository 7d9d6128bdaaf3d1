//! `seqfmeca worksheet init|merge|check`.

use crate::output::{
    load_profiles, load_valid_model, print_diagnostics, read_text, write_artifact, write_file,
    CmdError,
};
use seqfmeca_core::catalog::enumerate_candidates;
use seqfmeca_core::diag::{Diagnostic, DiagnosticSeverity};
use seqfmeca_core::fmeca::{
    completeness_check, init_worksheet, load_annotations, load_worksheet, merge_annotations,
    save_worksheet,
};
use std::path::Path;

pub fn init(model_path: &Path, profile: Option<&Path>, out: Option<&Path>) -> Result<(), CmdError> {
    let model = load_valid_model(model_path, false)?;
    let profiles = load_profiles(profile)?;
    let candidates = enumerate_candidates(&model, &profiles);
    let worksheet = init_worksheet(&model, &candidates)
        .expect("candidates were enumerated from this model");
    write_artifact(out, &save_worksheet(&worksheet))
}

pub fn merge(
    worksheet_path: &Path,
    annotations_path: &Path,
    out: Option<&Path>,
) -> Result<(), CmdError> {
    let worksheet = match load_worksheet(&read_text(worksheet_path)?) {
        Ok(worksheet) => worksheet,
        Err(diags) => {
            print_diagnostics(&diags, false);
            return Err(CmdError::Diagnostics);
        }
    };
    let annotations = match load_annotations(&read_text(annotations_path)?) {
        Ok(doc) => doc,
        Err(diags) => {
            print_diagnostics(&diags, false);
            return Err(CmdError::Diagnostics);
        }
    };
    let (merged, diags) = merge_annotations(&worksheet, &annotations);
    if diags.iter().any(Diagnostic::is_error) {
        // Nothing is persisted on a failed merge.
        print_diagnostics(&diags, false);
        return Err(CmdError::Diagnostics);
    }
    print_diagnostics(&diags, false);
    write_file(out.unwrap_or(worksheet_path), &save_worksheet(&merged))
}

pub fn check(
    model_path: &Path,
    worksheet_path: &Path,
    profile: Option<&Path>,
    strict: bool,
    json: bool,
) -> Result<(), CmdError> {
    let model = load_valid_model(model_path, json)?;
    let profiles = load_profiles(profile)?;
    let candidates = enumerate_candidates(&model, &profiles);
    let worksheet = match load_worksheet(&read_text(worksheet_path)?) {
        Ok(worksheet) => worksheet,
        Err(diags) => {
            print_diagnostics(&diags, json);
            return Err(CmdError::Diagnostics);
        }
    };
    let diags = completeness_check(&worksheet, &candidates);
    print_diagnostics(&diags, json);
    let failing = diags.iter().any(|d| {
        d.is_error() || (strict && d.severity == DiagnosticSeverity::Warning)
    });
    if failing {
        Err(CmdError::Diagnostics)
    } else {
        Ok(())
    }
}
