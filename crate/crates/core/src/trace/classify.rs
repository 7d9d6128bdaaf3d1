//! Classifies the difference between a nominal trace and a mutant back to
//! the error model that produced it. This is the check behind the
//! single-fault property: every mutant must classify to exactly its
//! candidate's error model.

use super::{ArgValue, Delivery, ResponseTag, TimingTag, Trace, TreatmentTag};
use crate::catalog::ErrorModelId;
use crate::model::Interaction;

/// Returns the error model the mutant realizes relative to `nominal`, or
/// `None` if the difference is not a single clean deviation.
pub fn classify(interaction: &Interaction, nominal: &Trace, mutant: &Trace) -> Option<ErrorModelId> {
    use ErrorModelId::*;

    if mutant.len() == nominal.len() + 1 {
        return classify_insertion(nominal, mutant).then_some(E1);
    }
    if mutant.len() + 1 == nominal.len() {
        return classify_deletion(nominal, mutant).then_some(E3);
    }
    if mutant.len() != nominal.len() {
        return None;
    }

    let nominal_ids = nominal.message_ids();
    let mutant_ids = mutant.message_ids();
    if nominal_ids != mutant_ids {
        // Same multiset, different order, events untouched => wrong order.
        let mut sorted_a = nominal_ids.clone();
        let mut sorted_b = mutant_ids.clone();
        sorted_a.sort_unstable();
        sorted_b.sort_unstable();
        if sorted_a != sorted_b {
            return None;
        }
        let all_nominal_shape = mutant.events.iter().all(|e| e.is_nominal_shape());
        return (all_nominal_shape && nominal.events.iter().all(|e| e.is_nominal_shape()))
            .then_some(E2);
    }

    // Same ids in the same order: the deviation lives in event fields.
    let changed: Vec<usize> = nominal
        .events
        .iter()
        .zip(&mutant.events)
        .enumerate()
        .filter(|(_, (a, b))| a != b)
        .map(|(i, _)| i)
        .collect();
    if changed.is_empty() {
        return None;
    }

    // A link failure hits every message of one channel pair at once.
    if changed
        .iter()
        .all(|&i| mutant.events[i].delivery == Delivery::LinkDown)
    {
        return classify_link_down(interaction, nominal, mutant, &changed).then_some(E11);
    }

    if changed.len() != 1 {
        return None;
    }
    let index = changed[0];
    let before = &nominal.events[index];
    let after = &mutant.events[index];

    if after.delivery == Delivery::ReceiverAbsent {
        let response_consistent =
            after.response == ResponseTag::Absent || after.response == before.response;
        let rest_equal = after.arguments == before.arguments
            && after.timing == before.timing
            && after.treatment == before.treatment;
        return (response_consistent && rest_equal).then_some(E4);
    }
    if after.delivery != before.delivery {
        return None;
    }

    if after.timing != before.timing {
        let only_timing = after.arguments == before.arguments
            && after.treatment == before.treatment
            && after.response == before.response;
        return (only_timing && after.timing != TimingTag::OnTime).then_some(E5);
    }
    if after.treatment != before.treatment {
        let only_treatment =
            after.arguments == before.arguments && after.response == before.response;
        return (only_treatment && after.treatment == TreatmentTag::Overrun).then_some(E10);
    }
    if after.response != before.response {
        let only_response = after.arguments == before.arguments;
        let tag_is_value_fault = matches!(
            after.response,
            ResponseTag::Constant | ResponseTag::Random | ResponseTag::OutOfLimits
        );
        return (only_response && tag_is_value_fault).then_some(E9);
    }

    classify_arguments(&before.arguments, &after.arguments)
}

fn classify_insertion(nominal: &Trace, mutant: &Trace) -> bool {
    // Exactly one extraneous event whose removal restores the nominal trace.
    for i in 0..mutant.len() {
        if mutant.events[i].message.id().is_some() {
            continue;
        }
        let mut rest = mutant.events.clone();
        rest.remove(i);
        if rest == nominal.events {
            return true;
        }
    }
    false
}

fn classify_deletion(nominal: &Trace, mutant: &Trace) -> bool {
    for i in 0..nominal.len() {
        let mut rest = nominal.events.clone();
        rest.remove(i);
        if rest == mutant.events {
            return true;
        }
    }
    false
}

fn classify_link_down(
    interaction: &Interaction,
    nominal: &Trace,
    mutant: &Trace,
    changed: &[usize],
) -> bool {
    let pair_of = |index: usize| {
        mutant.events[index]
            .message
            .id()
            .and_then(|id| interaction.message(id))
            .map(|m| (m.sender.clone(), m.receiver.clone()))
    };
    let Some(pair) = pair_of(changed[0]) else {
        return false;
    };
    // Every changed event is on the pair and changed only in delivery (plus
    // the response-absent consequence).
    for &i in changed {
        if pair_of(i) != Some(pair.clone()) {
            return false;
        }
        let before = &nominal.events[i];
        let after = &mutant.events[i];
        let response_consistent =
            after.response == ResponseTag::Absent || after.response == before.response;
        if !(response_consistent
            && after.arguments == before.arguments
            && after.timing == before.timing
            && after.treatment == before.treatment)
        {
            return false;
        }
    }
    // And every event on the pair is changed: the link is a shared resource.
    for (i, event) in mutant.events.iter().enumerate() {
        let Some(id) = event.message.id() else { continue };
        let Some(message) = interaction.message(id) else { continue };
        if (message.sender.clone(), message.receiver.clone()) == pair && !changed.contains(&i) {
            return false;
        }
    }
    true
}

fn classify_arguments(
    before: &[(String, ArgValue)],
    after: &[(String, ArgValue)],
) -> Option<ErrorModelId> {
    use ErrorModelId::*;
    if after.len() + 1 == before.len() {
        // One argument dropped from the end.
        return (after == &before[..after.len()]).then_some(E7);
    }
    if after.len() == before.len() + 1 {
        let (last_name, last_value) = after.last()?;
        let appended_surplus = *last_value == ArgValue::Surplus && last_name == "extra";
        return (appended_surplus && &after[..before.len()] == before).then_some(E7);
    }
    if after.len() != before.len() {
        return None;
    }
    let diffs: Vec<usize> = before
        .iter()
        .zip(after)
        .enumerate()
        .filter(|(_, (a, b))| a != b)
        .map(|(i, _)| i)
        .collect();
    if diffs.len() != 1 {
        return None;
    }
    let (name_before, _) = &before[diffs[0]];
    let (name_after, value) = &after[diffs[0]];
    if name_before != name_after {
        return None;
    }
    match value {
        ArgValue::TypeMismatch => Some(E6),
        ArgValue::BelowMin(_) | ArgValue::AboveMax(_) | ArgValue::Perturbed => Some(E8),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{enumerate_candidates, ProfileConfig};
    use crate::model::{Actor, ActorKind, Interaction, Message, Parameter, SystemModel, TypeTag};
    use crate::trace::{mutate, nominal_trace};

    fn sample_model() -> SystemModel {
        let mut model = SystemModel::new("M");
        model.actors.push(Actor {
            name: "H".into(),
            kind: ActorKind::Human,
        });
        model.objects.push("Sys".into());
        let mut i = Interaction::new("I");
        i.participants = vec!["H".into(), "Sys".into()];
        let mut m1 = Message::new("m1", "H", "Sys", "First");
        m1.send_deadline = Some(crate::model::DurationBound::new(0, 1000));
        m1.treatment_deadline = Some(crate::model::DurationBound::new(0, 500));
        let mut m2 = Message::new("m2", "H", "Sys", "Second");
        m2.predecessors = vec!["m1".into()];
        m2.parameters.push(
            Parameter::new("level", TypeTag::Number).with_interval(
                crate::Decimal::from_int(0),
                crate::Decimal::from_int(7),
                None,
            ),
        );
        m2.response = Some(crate::model::Response {
            values: vec![Parameter::new("ok", TypeTag::Boolean)],
            receive_deadline: None,
        });
        let mut m3 = Message::new("m3", "H", "Sys", "Third");
        m3.predecessors = vec!["m2".into()];
        i.messages.extend([m1, m2, m3]);
        model.interactions.push(i);
        model
    }

    #[test]
    fn every_mutant_classifies_to_its_candidate() {
        let model = sample_model();
        let interaction = &model.interactions[0];
        let nominal = nominal_trace(interaction).unwrap();
        let candidates = enumerate_candidates(&model, &ProfileConfig::default());
        assert!(!candidates.items.is_empty());
        for candidate in &candidates.items {
            let mutants = mutate(interaction, candidate, 0).unwrap();
            assert!(!mutants.is_empty(), "candidate {} yielded no mutants", candidate.id);
            for mutant in mutants {
                let classified = classify(interaction, &nominal, &mutant.trace);
                assert_eq!(
                    classified,
                    Some(candidate.error),
                    "mutant `{}` of {} misclassified",
                    mutant.note,
                    candidate.id
                );
            }
        }
    }

    #[test]
    fn identical_traces_classify_to_nothing() {
        let model = sample_model();
        let interaction = &model.interactions[0];
        let nominal = nominal_trace(interaction).unwrap();
        assert_eq!(classify(interaction, &nominal, &nominal), None);
    }
}
