//! Sequence-diagram text in PlantUML syntax (subset: `participant`, arrows,
//! `note over`).
//!
//! Mutant output differs from nominal only at the injected deviation plus
//! one note line naming the candidate.

use crate::model::Interaction;
use crate::trace::{ArgValue, Delivery, MutantTrace, ResponseTag, Trace, TraceEvent};
use std::fmt::Write;

/// Renders a nominal trace of the interaction.
pub fn emit_sequence_text(interaction: &Interaction, trace: &Trace) -> String {
    render(interaction, trace, None)
}

/// Renders a mutant trace with its deviation note.
pub fn emit_mutant_sequence(interaction: &Interaction, mutant: &MutantTrace) -> String {
    render(
        interaction,
        &mutant.trace,
        Some((mutant.candidate_id.as_str(), mutant.note.as_str())),
    )
}

/// A file name for one mutant: the candidate id with `/` -> `__` and the
/// interaction-level `*` -> `any`, plus an index suffix when one candidate
/// yields several mutants.
pub fn mutant_file_name(candidate_id: &str, index: usize, total: usize) -> String {
    let base = candidate_id.replace('/', "__").replace('*', "any");
    if total > 1 {
        format!("{base}__{index}.puml")
    } else {
        format!("{base}.puml")
    }
}

fn render(interaction: &Interaction, trace: &Trace, deviation: Option<(&str, &str)>) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "@startuml");
    let _ = writeln!(out, "title {}", interaction.name);
    for participant in &interaction.participants {
        let _ = writeln!(out, "participant {participant}");
    }

    // The note goes at the first visibly deviated event; purely structural
    // deviations (omission, reordering) get it ahead of the arrows.
    let note_at = deviation.map(|_| {
        trace
            .events
            .iter()
            .position(|e| !e.is_nominal_shape() || e.message.id().is_none())
    });

    if let (Some((candidate, note)), Some(None)) = (deviation, note_at) {
        emit_note(&mut out, interaction, candidate, note);
    }
    for (index, event) in trace.events.iter().enumerate() {
        // The extraneous event has no arrow; it renders as its note line.
        if let Some(id) = event.message.id() {
            let Some(message) = interaction.message(id) else {
                continue;
            };
            emit_arrow(&mut out, message, event);
            if event.response != ResponseTag::Absent && message.response.is_some() {
                emit_response_arrow(&mut out, message);
            }
        }
        if let (Some((candidate, note)), Some(Some(at))) = (deviation, note_at) {
            if at == index {
                emit_note(&mut out, interaction, candidate, note);
            }
        }
    }
    let _ = writeln!(out, "@enduml");
    out
}

fn emit_arrow(out: &mut String, message: &crate::model::Message, event: &TraceEvent) {
    let arrow = match event.delivery {
        Delivery::Delivered => "->",
        Delivery::ReceiverAbsent | Delivery::LinkDown => "->x",
    };
    let _ = writeln!(
        out,
        "{} {arrow} {} : {}({})",
        message.sender,
        message.receiver,
        message.operation,
        render_args(&event.arguments),
    );
}

fn emit_response_arrow(out: &mut String, message: &crate::model::Message) {
    let values = message
        .response
        .as_ref()
        .map(|r| {
            r.values
                .iter()
                .map(|p| p.name.clone())
                .collect::<Vec<_>>()
                .join(", ")
        })
        .unwrap_or_default();
    let _ = writeln!(
        out,
        "{} --> {} : response({values})",
        message.receiver, message.sender
    );
}

fn render_args(arguments: &[(String, ArgValue)]) -> String {
    arguments
        .iter()
        .map(|(name, value)| match value {
            ArgValue::Nominal => name.clone(),
            other => format!("{name}={other}"),
        })
        .collect::<Vec<_>>()
        .join(", ")
}

fn emit_note(out: &mut String, interaction: &Interaction, candidate: &str, note: &str) {
    let over = if interaction.participants.is_empty() {
        "-".to_string()
    } else {
        interaction.participants.join(", ")
    };
    let _ = writeln!(out, "note over {over} : deviation {candidate}: {note}");
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{enumerate_candidates, ErrorModelId, ProfileConfig};
    use crate::model::{Actor, ActorKind, Message, SystemModel};
    use crate::trace::{mutate, nominal_trace};

    fn model() -> SystemModel {
        let mut model = SystemModel::new("M");
        model.actors.push(Actor {
            name: "Op".into(),
            kind: ActorKind::Human,
        });
        model.objects.push("Sys".into());
        let mut i = crate::model::Interaction::new("I");
        i.participants = vec!["Op".into(), "Sys".into()];
        let m1 = Message::new("m1", "Op", "Sys", "Power on");
        let mut m2 = Message::new("m2", "Op", "Sys", "Set level");
        m2.predecessors = vec!["m1".into()];
        i.messages.extend([m1, m2]);
        model.interactions.push(i);
        model
    }

    #[test]
    fn nominal_output_has_one_arrow_per_message() {
        let model = model();
        let interaction = &model.interactions[0];
        let trace = nominal_trace(interaction).unwrap();
        let out = emit_sequence_text(interaction, &trace);
        assert!(out.starts_with("@startuml\n"));
        assert!(out.ends_with("@enduml\n"));
        assert_eq!(out.matches("Op -> Sys :").count(), 2);
        assert!(out.contains("participant Op\n"));
        let power_line = out.lines().position(|l| l.contains("Power on"));
        let level_line = out.lines().position(|l| l.contains("Set level"));
        assert!(power_line < level_line);
    }

    #[test]
    fn omission_mutant_lacks_exactly_one_arrow_and_carries_a_note() {
        let model = model();
        let interaction = &model.interactions[0];
        let nominal = nominal_trace(interaction).unwrap();
        let candidates = enumerate_candidates(&model, &ProfileConfig::default());
        let e3 = candidates
            .items
            .iter()
            .find(|c| c.error == ErrorModelId::E3 && c.message.as_deref() == Some("m2"))
            .unwrap();
        let mutant = &mutate(interaction, e3, 0).unwrap()[0];
        let nominal_text = emit_sequence_text(interaction, &nominal);
        let mutant_text = emit_mutant_sequence(interaction, mutant);
        assert!(!mutant_text.contains("Set level"));
        assert!(mutant_text.contains("deviation I/m2/E3/-/-"));
        let removed: Vec<&str> = nominal_text
            .lines()
            .filter(|l| !mutant_text.contains(l))
            .collect();
        assert_eq!(removed, vec!["Op -> Sys : Set level()"]);
    }

    #[test]
    fn wrong_order_mutant_swaps_arrows() {
        let model = model();
        let interaction = &model.interactions[0];
        let candidates = enumerate_candidates(&model, &ProfileConfig::default());
        let e2 = candidates
            .items
            .iter()
            .find(|c| c.error == ErrorModelId::E2)
            .unwrap();
        let mutant = &mutate(interaction, e2, 0).unwrap()[0];
        let out = emit_mutant_sequence(interaction, mutant);
        let power_line = out.lines().position(|l| l.contains("Power on"));
        let level_line = out.lines().position(|l| l.contains("Set level"));
        assert!(level_line < power_line, "{out}");
    }

    #[test]
    fn file_names_are_safe_and_unique() {
        assert_eq!(mutant_file_name("I/m2/E3/-/-", 0, 1), "I__m2__E3__-__-.puml");
        assert_eq!(mutant_file_name("I/*/E1/Op/-", 2, 4), "I__any__E1__Op__-__2.puml");
    }
}
