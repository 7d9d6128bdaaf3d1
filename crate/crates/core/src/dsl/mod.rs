//! The textual modeling language: parser and canonical serializer.
//!
//! Files use the `.rau` extension and must be UTF-8; LF and CRLF are both
//! accepted and LF is emitted. Parsing never fails hard: problems come back
//! as diagnostics with source spans, and the parser recovers after a bad
//! declaration so one run reports as much as possible.
//!
//! `parse(serialize(m))` reconstructs a structurally equal model for every
//! well-formed `m`. The full grammar is in `docs/grammar.ebnf`.

mod emit;
mod lexer;
mod parser;

pub use emit::serialize;

pub(crate) use lexer::{Tok, Token};

/// Tokenizes with the modeling-language lexer; shared with the profile
/// override parser so both speak the same surface syntax.
pub(crate) fn tokenize(text: &str, file: &str) -> (Vec<Token>, Vec<crate::diag::Diagnostic>) {
    lexer::Lexer::new(text, file).tokenize()
}

use crate::diag::{Diagnostic, DiagnosticCode as Code, Location, SourceSpan};
use crate::model::SystemModel;
use sha2::{Digest, Sha256};

/// Outcome of a parse: the model is present exactly when no error-severity
/// diagnostic was produced.
#[derive(Debug, Clone, PartialEq)]
pub struct ParseResult {
    pub model: Option<SystemModel>,
    pub diagnostics: Vec<Diagnostic>,
}

impl ParseResult {
    pub fn has_errors(&self) -> bool {
        self.diagnostics.iter().any(Diagnostic::is_error)
    }
}

/// Parses model text. `file` is used in diagnostic spans only.
pub fn parse(text: &str, file: &str) -> ParseResult {
    parser::parse(text, file)
}

/// Parses raw bytes, reporting invalid UTF-8 as a diagnostic instead of
/// failing.
pub fn parse_bytes(bytes: &[u8], file: &str) -> ParseResult {
    match std::str::from_utf8(bytes) {
        Ok(text) => parse(text, file),
        Err(err) => {
            let prefix = &bytes[..err.valid_up_to()];
            let line = prefix.iter().filter(|&&b| b == b'\n').count() as u32 + 1;
            let col = prefix
                .iter()
                .rev()
                .take_while(|&&b| b != b'\n')
                .count() as u32
                + 1;
            ParseResult {
                model: None,
                diagnostics: vec![Diagnostic::error(
                    Code::InvalidEncoding,
                    Location::Span(SourceSpan::new(file, (line, col), (line, col + 1))),
                    "input is not valid UTF-8",
                )],
            }
        }
    }
}

/// Content digest of a model: the SHA-256 of its canonical serialization,
/// hex encoded. Any structural edit changes it.
pub fn model_digest(model: &SystemModel) -> String {
    let canonical = serialize(model);
    let hash = Sha256::digest(canonical.as_bytes());
    let mut out = String::with_capacity(64);
    for byte in hash {
        use std::fmt::Write;
        let _ = write!(out, "{byte:02x}");
    }
    out
}
