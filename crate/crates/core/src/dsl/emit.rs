//! Canonical serializer.
//!
//! Emits the one normalized form of a model: declaration order preserved,
//! two-space indent, single spaces between words, LF line endings. Parsing
//! the output reconstructs a structurally equal model.

use crate::model::{
    Interaction, Message, Parameter, Response, SystemModel, UseCase, ValueDomain,
};
use std::fmt::Write;

pub fn serialize(model: &SystemModel) -> String {
    let mut out = String::new();
    let empty_system = model.actors.is_empty()
        && model.objects.is_empty()
        && model.use_cases.is_empty();
    if empty_system {
        let _ = writeln!(out, "system {} {{}}", model.name);
    } else {
        let _ = writeln!(out, "system {} {{", model.name);
        for actor in &model.actors {
            let _ = writeln!(out, "  actor {} kind {};", actor.name, actor.kind);
        }
        for object in &model.objects {
            let _ = writeln!(out, "  object {object};");
        }
        for use_case in &model.use_cases {
            emit_use_case(&mut out, model, use_case);
        }
        out.push_str("}\n");
    }
    for interaction in &model.interactions {
        out.push('\n');
        emit_interaction(&mut out, interaction);
    }
    out
}

fn emit_use_case(out: &mut String, model: &SystemModel, use_case: &UseCase) {
    let _ = write!(out, "  usecase {}", quoted(&use_case.name));
    if !use_case.linked_actors.is_empty() {
        let _ = write!(out, " actors {}", use_case.linked_actors.join(", "));
    }
    if let Some(allocation) = model.boundary.get(&use_case.name) {
        let _ = write!(out, " allocation {allocation}");
    }
    if !use_case.description.is_empty() {
        let _ = write!(out, " desc {}", quoted(&use_case.description));
    }
    out.push_str(";\n");
}

fn emit_interaction(out: &mut String, interaction: &Interaction) {
    let _ = write!(out, "interaction {}", interaction.name);
    if let Some(realized) = &interaction.realizes {
        let _ = write!(out, " realizes {}", quoted(realized));
    }
    if interaction.messages.is_empty() {
        out.push_str(" {}\n");
        return;
    }
    out.push_str(" {\n");
    for message in &interaction.messages {
        emit_message(out, message);
    }
    out.push_str("}\n");
}

fn emit_message(out: &mut String, message: &Message) {
    let _ = write!(
        out,
        "  msg {}: {} -> {} : {}",
        message.id,
        message.sender,
        message.receiver,
        operation_token(&message.operation)
    );
    emit_params(out, &message.parameters);
    if !message.predecessors.is_empty() {
        let _ = write!(out, " after {}", message.predecessors.join(", "));
    }
    if let Some(bound) = message.send_deadline {
        let _ = write!(out, " deadline send {bound}");
    }
    if let Some(bound) = message.treatment_deadline {
        let _ = write!(out, " treat {bound}");
    }
    if let Some(response) = &message.response {
        emit_response(out, response);
    }
    out.push_str(";\n");
}

fn emit_response(out: &mut String, response: &Response) {
    out.push_str(" response");
    emit_params(out, &response.values);
    if let Some(bound) = response.receive_deadline {
        let _ = write!(out, " deadline {bound}");
    }
}

fn emit_params(out: &mut String, params: &[Parameter]) {
    out.push('(');
    for (i, param) in params.iter().enumerate() {
        if i > 0 {
            out.push_str(", ");
        }
        let _ = write!(out, "{}: {}", param.name, param.type_tag);
        match &param.domain {
            Some(ValueDomain::Interval { lower, upper, unit }) => {
                let _ = write!(out, " in {lower}..{upper}");
                if let Some(unit) = unit {
                    let _ = write!(out, " {unit}");
                }
            }
            Some(ValueDomain::OneOf(values)) => {
                let rendered: Vec<String> = values.iter().map(|v| value_token(v)).collect();
                let _ = write!(out, " in {{{}}}", rendered.join(", "));
            }
            None => {}
        }
    }
    out.push(')');
}

/// Identifiers emit bare; anything else emits quoted.
fn operation_token(op: &str) -> String {
    if is_identifier(op) {
        op.to_string()
    } else {
        quoted(op)
    }
}

fn value_token(v: &str) -> String {
    operation_token(v)
}

fn is_identifier(s: &str) -> bool {
    let mut bytes = s.bytes();
    match bytes.next() {
        Some(b) if b.is_ascii_alphabetic() => {}
        _ => return false,
    }
    bytes.all(|b| b.is_ascii_alphanumeric() || b == b'_')
}

fn quoted(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for ch in s.chars() {
        match ch {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            other => out.push(other),
        }
    }
    out.push('"');
    out
}
