//! Parser for profile override files.
//!
//! Same surface syntax as the modeling language: `#` comments, identifiers,
//! strings, semicolon-terminated entries. One block per actor kind, each
//! entry overriding one error model:
//!
//! ```text
//! profile human {
//!   E4 rare;
//!   E9 suppressed "use E6-E8 on the response";
//! }
//! profile external { E9 applies; }
//! profile internal { E11 suppressed; }
//! ```
//!
//! Unlisted entries keep the built-in defaults for that kind.

use super::{ActorProfile, Applicability, ErrorModelId, ProfileConfig};
use crate::diag::{Diagnostic, DiagnosticCode as Code, Location, SourceSpan};

/// Applies a profile override file on top of the defaults. On any error the
/// config is `None` and diagnostics explain why.
pub fn parse_profile_config(text: &str, file: &str) -> (Option<ProfileConfig>, Vec<Diagnostic>) {
    use crate::dsl::Tok;

    let (tokens, mut diags) = crate::dsl::tokenize(text, file);
    let mut config = ProfileConfig::default();
    let mut pos = 0usize;

    let error = |diags: &mut Vec<Diagnostic>, span: SourceSpan, text: String| {
        diags.push(Diagnostic::error(Code::SyntaxError, Location::Span(span), text));
    };

    loop {
        match &tokens[pos].tok {
            Tok::Eof => break,
            Tok::Ident(word) if word == "profile" => {
                pos += 1;
            }
            other => {
                error(
                    &mut diags,
                    tokens[pos].span.clone(),
                    format!("expected `profile`, found {other}"),
                );
                break;
            }
        }
        let profile: &mut ActorProfile = match &tokens[pos].tok {
            Tok::Ident(kind) => {
                let target = match kind.as_str() {
                    "human" => Some(&mut config.human),
                    "external" => Some(&mut config.external_system),
                    "internal" => Some(&mut config.internal),
                    _ => None,
                };
                match target {
                    Some(t) => {
                        pos += 1;
                        t
                    }
                    None => {
                        error(
                            &mut diags,
                            tokens[pos].span.clone(),
                            format!("profile kind must be `human`, `external` or `internal`, found `{kind}`"),
                        );
                        break;
                    }
                }
            }
            other => {
                error(
                    &mut diags,
                    tokens[pos].span.clone(),
                    format!("expected a profile kind, found {other}"),
                );
                break;
            }
        };
        if !matches!(tokens[pos].tok, Tok::LBrace) {
            error(
                &mut diags,
                tokens[pos].span.clone(),
                format!("expected `{{`, found {}", tokens[pos].tok),
            );
            break;
        }
        pos += 1;
        loop {
            match &tokens[pos].tok {
                Tok::RBrace => {
                    pos += 1;
                    break;
                }
                Tok::Eof => {
                    error(&mut diags, tokens[pos].span.clone(), "unclosed `profile` block".into());
                    break;
                }
                Tok::Ident(tag) => {
                    let tag_span = tokens[pos].span.clone();
                    let Some(model) = ErrorModelId::parse_tag(tag) else {
                        diags.push(Diagnostic::error(
                            Code::UnknownErrorModel,
                            Location::Span(tag_span),
                            format!("unknown error model `{tag}`"),
                        ));
                        break;
                    };
                    pos += 1;
                    let applicability = match &tokens[pos].tok {
                        Tok::Ident(word) => match word.as_str() {
                            "applies" => Applicability::Applies,
                            "rare" => Applicability::Rare,
                            "suppressed" => Applicability::Suppressed,
                            other => {
                                diags.push(Diagnostic::error(
                                    Code::BadApplicability,
                                    Location::Span(tokens[pos].span.clone()),
                                    format!(
                                        "applicability must be `applies`, `rare` or `suppressed`, found `{other}`"
                                    ),
                                ));
                                break;
                            }
                        },
                        other => {
                            error(
                                &mut diags,
                                tokens[pos].span.clone(),
                                format!("expected an applicability, found {other}"),
                            );
                            break;
                        }
                    };
                    pos += 1;
                    let mut note = None;
                    if let Tok::Str(text) = &tokens[pos].tok {
                        note = Some(text.clone());
                        pos += 1;
                    }
                    if !matches!(tokens[pos].tok, Tok::Semi) {
                        error(
                            &mut diags,
                            tokens[pos].span.clone(),
                            format!("expected `;`, found {}", tokens[pos].tok),
                        );
                        break;
                    }
                    pos += 1;
                    profile.set(model, applicability, note);
                }
                other => {
                    error(
                        &mut diags,
                        tokens[pos].span.clone(),
                        format!("expected an error model tag or `}}`, found {other}"),
                    );
                    break;
                }
            }
        }
        if diags.iter().any(Diagnostic::is_error) {
            break;
        }
    }

    if diags.iter().any(Diagnostic::is_error) {
        (None, diags)
    } else {
        (Some(config), diags)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_apply_when_file_is_empty() {
        let (config, diags) = parse_profile_config("", "p.rau");
        assert!(diags.is_empty());
        let config = config.unwrap();
        assert!(config.human.suppresses(ErrorModelId::E9));
        assert!(!config.external_system.suppresses(ErrorModelId::E9));
    }

    #[test]
    fn overrides_replace_entries() {
        let src = "profile human { E9 applies; E3 rare; }\nprofile internal { E11 suppressed \"single box\"; }\n";
        let (config, diags) = parse_profile_config(src, "p.rau");
        assert!(diags.is_empty(), "{diags:?}");
        let config = config.unwrap();
        assert!(!config.human.suppresses(ErrorModelId::E9));
        assert_eq!(config.human.applicability(ErrorModelId::E3), Applicability::Rare);
        assert!(config.internal.suppresses(ErrorModelId::E11));
        assert_eq!(config.internal.note(ErrorModelId::E11), Some("single box"));
    }

    #[test]
    fn unknown_error_model_is_reported() {
        let (config, diags) = parse_profile_config("profile human { E12 rare; }", "p.rau");
        assert!(config.is_none());
        assert!(diags.iter().any(|d| d.code == Code::UnknownErrorModel));
    }

    #[test]
    fn bad_kind_is_reported() {
        let (config, diags) = parse_profile_config("profile robot { }", "p.rau");
        assert!(config.is_none());
        assert!(!diags.is_empty());
    }
}
