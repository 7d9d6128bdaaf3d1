//! Shared command plumbing: file access mapped to exit 3, diagnostic
//! printing (human on stderr, JSON on stdout), and the error type carrying
//! the exit code.

use seqfmeca_core::catalog::{parse_profile_config, ProfileConfig};
use seqfmeca_core::diag::Diagnostic;
use seqfmeca_core::dsl;
use seqfmeca_core::fmeca::{load_matrix_doc, RiskMatrix};
use seqfmeca_core::model::{validate_model, SystemModel};
use serde_json::json;
use std::io::Write;
use std::path::Path;

/// Why a command failed. Diagnostics are printed where they occur; this
/// only carries what `main` needs for the exit code.
#[derive(Debug)]
pub enum CmdError {
    /// Diagnostics with error severity were printed.
    Diagnostics,
    /// Bad selector or argument value.
    Usage(String),
    /// File system problem.
    Io(String),
}

impl CmdError {
    pub fn exit_code(&self) -> u8 {
        match self {
            Self::Diagnostics => 1,
            Self::Usage(_) => 2,
            Self::Io(_) => 3,
        }
    }

    pub fn report(&self) {
        match self {
            Self::Diagnostics => {}
            Self::Usage(text) => eprintln!("usage error: {text}"),
            Self::Io(text) => eprintln!("i/o error: {text}"),
        }
    }
}

pub fn read_file(path: &Path) -> Result<Vec<u8>, CmdError> {
    std::fs::read(path).map_err(|e| CmdError::Io(format!("{}: {e}", path.display())))
}

pub fn read_text(path: &Path) -> Result<String, CmdError> {
    std::fs::read_to_string(path).map_err(|e| CmdError::Io(format!("{}: {e}", path.display())))
}

pub fn write_file(path: &Path, contents: &str) -> Result<(), CmdError> {
    std::fs::write(path, contents).map_err(|e| CmdError::Io(format!("{}: {e}", path.display())))
}

/// Writes an artifact to `out` or standard output.
pub fn write_artifact(out: Option<&Path>, contents: &str) -> Result<(), CmdError> {
    match out {
        Some(path) => write_file(path, contents),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(contents.as_bytes())
                .map_err(|e| CmdError::Io(format!("stdout: {e}")))
        }
    }
}

/// Prints diagnostics: human format to stderr, or the versioned JSON to
/// stdout when `json` is set. Artifacts never interleave with human
/// diagnostics.
pub fn print_diagnostics(diags: &[Diagnostic], json: bool) {
    if json {
        let doc = json!({
            "version": seqfmeca_core::fmeca::DOCUMENT_VERSION,
            "diagnostics": diags,
        });
        println!("{}", serde_json::to_string_pretty(&doc).expect("diagnostics serialize"));
        return;
    }
    for diag in diags {
        eprintln!("{}[{}]: {}", diag.severity, diag.code, diag.text);
        eprintln!("  --> {}", diag.location);
    }
}

/// Parses a model file; parse errors are printed and become exit 1.
pub fn load_model(path: &Path, json: bool) -> Result<SystemModel, CmdError> {
    let bytes = read_file(path)?;
    let result = dsl::parse_bytes(&bytes, &path.display().to_string());
    if result.has_errors() || result.model.is_none() {
        print_diagnostics(&result.diagnostics, json);
        return Err(CmdError::Diagnostics);
    }
    Ok(result.model.expect("checked above"))
}

/// Parses a model and requires it well-formed (validation errors are
/// printed and become exit 1). Lint warnings do not block.
pub fn load_valid_model(path: &Path, json: bool) -> Result<SystemModel, CmdError> {
    let model = load_model(path, json)?;
    let diags = validate_model(&model);
    if diags.iter().any(Diagnostic::is_error) {
        print_diagnostics(&diags, json);
        return Err(CmdError::Diagnostics);
    }
    Ok(model)
}

/// Loads profile overrides, or the defaults when no path is given.
pub fn load_profiles(path: Option<&Path>) -> Result<ProfileConfig, CmdError> {
    let Some(path) = path else {
        return Ok(ProfileConfig::default());
    };
    let text = read_text(path)?;
    let (config, diags) = parse_profile_config(&text, &path.display().to_string());
    match config {
        Some(config) => Ok(config),
        None => {
            print_diagnostics(&diags, false);
            Err(CmdError::Diagnostics)
        }
    }
}

/// Loads the risk matrix: `--matrix` flag, else `$SEQFMECA_MATRIX`, else
/// the built-in default. Validation failures are printed and become exit 1.
pub fn load_matrix(flag: Option<&Path>) -> Result<RiskMatrix, CmdError> {
    let from_env = std::env::var_os("SEQFMECA_MATRIX").map(std::path::PathBuf::from);
    let path = match (flag, &from_env) {
        (Some(path), _) => path,
        (None, Some(path)) => path.as_path(),
        (None, None) => return Ok(RiskMatrix::default_matrix()),
    };
    let text = read_text(path)?;
    let name = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "matrix".to_string());
    match load_matrix_doc(&text, &name) {
        Ok(matrix) => Ok(matrix),
        Err(diags) => {
            print_diagnostics(&diags, false);
            Err(CmdError::Diagnostics)
        }
    }
}
