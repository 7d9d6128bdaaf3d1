//! Model well-formedness checks.

use super::{Interaction, Message, Parameter, SystemModel, ValueDomain};
use crate::diag::{sort_diagnostics, Diagnostic, DiagnosticCode as Code, ModelPath};

/// Reports every violation of the model invariants: name uniqueness,
/// reference resolution, precedence acyclicity, and bound ordering.
///
/// The empty list means the model is well-formed. Output order is
/// deterministic (by model path, then code), and the check is idempotent.
pub fn validate_model(model: &SystemModel) -> Vec<Diagnostic> {
    let mut diags = Vec::new();
    let root = ModelPath::new(format!("system[{}]", model.name));

    check_unique(
        model.actors.iter().map(|a| a.name.as_str()),
        "actor",
        &root,
        &mut diags,
    );
    check_unique(
        model.objects.iter().map(String::as_str),
        "object",
        &root,
        &mut diags,
    );
    // Actors and objects share the participant namespace: a name may not be
    // both.
    for object in &model.objects {
        if model.actor(object).is_some() {
            diags.push(Diagnostic::at_path(
                Code::DuplicateName,
                root.child("object", object),
                format!("`{object}` is declared both as an actor and as an object"),
            ));
        }
    }
    check_unique(
        model.use_cases.iter().map(|u| u.name.as_str()),
        "usecase",
        &root,
        &mut diags,
    );
    check_unique(
        model.interactions.iter().map(|i| i.name.as_str()),
        "interaction",
        &root,
        &mut diags,
    );

    for use_case in &model.use_cases {
        let path = root.child("usecase", &use_case.name);
        for actor in &use_case.linked_actors {
            if model.actor(actor).is_none() {
                diags.push(Diagnostic::at_path(
                    Code::UnresolvedActor,
                    path.clone(),
                    format!("use case `{}` links unknown actor `{actor}`", use_case.name),
                ));
            }
        }
    }

    for (use_case, _) in model.boundary.iter() {
        if model.use_case(use_case).is_none() {
            diags.push(Diagnostic::at_path(
                Code::UnresolvedUseCase,
                root.child("allocation", use_case),
                format!("allocation refers to unknown use case `{use_case}`"),
            ));
        }
    }

    for interaction in &model.interactions {
        validate_interaction(model, interaction, &root, &mut diags);
    }

    sort_diagnostics(&mut diags);
    diags
}

fn validate_interaction(
    model: &SystemModel,
    interaction: &Interaction,
    root: &ModelPath,
    diags: &mut Vec<Diagnostic>,
) {
    let path = root.child("interaction", &interaction.name);

    if let Some(realized) = &interaction.realizes {
        if model.use_case(realized).is_none() {
            diags.push(Diagnostic::at_path(
                Code::UnresolvedUseCase,
                path.clone(),
                format!(
                    "interaction `{}` realizes unknown use case `{realized}`",
                    interaction.name
                ),
            ));
        }
    }

    for participant in &interaction.participants {
        if !model.is_declared_participant(participant) {
            diags.push(Diagnostic::at_path(
                Code::UnresolvedParticipant,
                path.clone(),
                format!("participant `{participant}` is not a declared actor or object"),
            ));
        }
    }

    check_unique(
        interaction.messages.iter().map(|m| m.id.as_str()),
        "msg",
        &path,
        diags,
    );

    for message in &interaction.messages {
        validate_message(interaction, message, &path, diags);
    }

    // Cycle detection over ids that resolve; dangling ids are reported above
    // per message.
    if interaction.nominal_order().is_err() {
        diags.push(Diagnostic::at_path(
            Code::PredecessorCycle,
            path,
            format!(
                "precedence constraints of interaction `{}` form a cycle",
                interaction.name
            ),
        ));
    }
}

fn validate_message(
    interaction: &Interaction,
    message: &Message,
    interaction_path: &ModelPath,
    diags: &mut Vec<Diagnostic>,
) {
    let path = interaction_path.child("msg", &message.id);

    for endpoint in [&message.sender, &message.receiver] {
        if !interaction.participants.iter().any(|p| p == endpoint) {
            diags.push(Diagnostic::at_path(
                Code::UnresolvedParticipant,
                path.clone(),
                format!(
                    "message `{}` references `{endpoint}` which is not in the interaction's participants",
                    message.id
                ),
            ));
        }
    }

    let mut seen = Vec::new();
    for pred in &message.predecessors {
        if interaction.message(pred).is_none() {
            diags.push(Diagnostic::at_path(
                Code::UnknownPredecessor,
                path.clone(),
                format!("message `{}` is after unknown message `{pred}`", message.id),
            ));
        }
        if seen.contains(&pred) {
            diags.push(Diagnostic::at_path(
                Code::DuplicatePredecessor,
                path.clone(),
                format!("message `{}` lists predecessor `{pred}` twice", message.id),
            ));
        }
        seen.push(pred);
    }

    for (label, bound) in [
        ("send deadline", message.send_deadline),
        ("treatment deadline", message.treatment_deadline),
        (
            "response deadline",
            message.response.as_ref().and_then(|r| r.receive_deadline),
        ),
    ] {
        if let Some(bound) = bound {
            if bound.min > bound.max {
                diags.push(Diagnostic::at_path(
                    Code::DurationBoundOrder,
                    path.clone(),
                    format!(
                        "{label} of message `{}` has min {} > max {}",
                        message.id, bound.min, bound.max
                    ),
                ));
            }
        }
    }

    for parameter in &message.parameters {
        validate_parameter(parameter, &path, diags);
    }
    if let Some(response) = &message.response {
        for parameter in &response.values {
            validate_parameter(parameter, &path, diags);
        }
    }
}

fn validate_parameter(parameter: &Parameter, message_path: &ModelPath, diags: &mut Vec<Diagnostic>) {
    let path = message_path.child("param", &parameter.name);
    match &parameter.domain {
        Some(ValueDomain::Interval { lower, upper, .. }) if lower > upper => {
            diags.push(Diagnostic::at_path(
                Code::IntervalBoundOrder,
                path,
                format!(
                    "parameter `{}` has interval lower bound {lower} > upper bound {upper}",
                    parameter.name
                ),
            ));
        }
        Some(ValueDomain::OneOf(values)) if values.is_empty() => {
            diags.push(Diagnostic::at_path(
                Code::EmptyEnumDomain,
                path,
                format!("parameter `{}` has an empty enumerated domain", parameter.name),
            ));
        }
        _ => {}
    }
}

fn check_unique<'a>(
    names: impl Iterator<Item = &'a str>,
    kind: &str,
    parent: &ModelPath,
    diags: &mut Vec<Diagnostic>,
) {
    let mut seen: Vec<&str> = Vec::new();
    for name in names {
        if seen.contains(&name) {
            diags.push(Diagnostic::at_path(
                Code::DuplicateName,
                parent.child(kind, name),
                format!("{kind} `{name}` is declared more than once"),
            ));
        } else {
            seen.push(name);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{Actor, ActorKind, Message};

    fn base_model() -> SystemModel {
        let mut model = SystemModel::new("M");
        model.actors.push(Actor {
            name: "A".into(),
            kind: ActorKind::Human,
        });
        model.objects.push("Sys".into());
        model
    }

    #[test]
    fn unresolved_participant_is_reported() {
        let mut model = base_model();
        let mut i = Interaction::new("I");
        i.participants = vec!["A".into(), "Ghost".into()];
        i.messages.push(Message::new("m1", "A", "Ghost", "Op"));
        model.interactions.push(i);

        let diags = validate_model(&model);
        assert_eq!(diags.len(), 1);
        assert_eq!(diags[0].code, Code::UnresolvedParticipant);
        assert!(diags[0].is_error());
    }

    #[test]
    fn predecessor_cycle_is_reported_once() {
        let mut model = base_model();
        let mut i = Interaction::new("I");
        i.participants = vec!["A".into(), "Sys".into()];
        let mut m1 = Message::new("m1", "A", "Sys", "Op1");
        m1.predecessors = vec!["m2".into()];
        let mut m2 = Message::new("m2", "A", "Sys", "Op2");
        m2.predecessors = vec!["m1".into()];
        i.messages.extend([m1, m2]);
        model.interactions.push(i);

        let diags = validate_model(&model);
        let cycles: Vec<_> = diags.iter().filter(|d| d.code == Code::PredecessorCycle).collect();
        assert_eq!(cycles.len(), 1);
    }

    #[test]
    fn validation_is_deterministic() {
        let mut model = base_model();
        model.actors.push(Actor {
            name: "A".into(),
            kind: ActorKind::Human,
        });
        let mut i = Interaction::new("I");
        i.participants = vec!["Ghost".into(), "Other".into()];
        model.interactions.push(i);

        let first = validate_model(&model);
        let second = validate_model(&model);
        assert_eq!(first, second);
        assert!(first.len() >= 3);
    }

    #[test]
    fn well_formed_model_yields_empty_list() {
        let mut model = base_model();
        let mut i = Interaction::new("I");
        i.participants = vec!["A".into(), "Sys".into()];
        i.messages.push(Message::new("m1", "A", "Sys", "Op"));
        model.interactions.push(i);
        assert!(validate_model(&model).is_empty());
    }
}
