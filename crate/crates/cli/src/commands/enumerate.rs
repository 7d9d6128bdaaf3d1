//! `seqfmeca enumerate`: the deterministic candidate list.

use crate::output::{load_profiles, load_valid_model, write_artifact, CmdError};
use seqfmeca_core::catalog::enumerate_candidates;
use serde_json::json;
use std::path::Path;

pub fn run(model_path: &Path, profile: Option<&Path>, json: bool) -> Result<(), CmdError> {
    let model = load_valid_model(model_path, json)?;
    let profiles = load_profiles(profile)?;
    let candidates = enumerate_candidates(&model, &profiles);
    if json {
        let doc = json!({
            "version": seqfmeca_core::fmeca::DOCUMENT_VERSION,
            "model_name": candidates.model_name,
            "model_digest": candidates.model_digest,
            "candidates": candidates.items,
        });
        let mut text = serde_json::to_string_pretty(&doc).expect("candidates serialize");
        text.push('\n');
        write_artifact(None, &text)
    } else {
        let mut lines = String::new();
        for id in candidates.ids() {
            lines.push_str(id);
            lines.push('\n');
        }
        write_artifact(None, &lines)
    }
}
