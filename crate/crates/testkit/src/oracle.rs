//! Independent oracles.
//!
//! These re-derive expected results from the written rules, on purpose not
//! sharing logic with the production implementations they check.

use seqfmeca_core::catalog::{ErrorModelId, ProfileConfig};
use seqfmeca_core::model::{Interaction, SystemModel};
use std::collections::BTreeMap;

/// Brute-force candidate counts per error model, walking the granularity
/// rules literally:
///
/// E1 per distinct sender per interaction; E2 per direct predecessor; E3
/// and E4 per message; E5 two per declared send deadline and two per
/// declared response receive deadline; E6 per message with parameters; E7
/// twice that; E8 two per interval parameter else one; E9 per response
/// (responder profile permitting); E10 per treatment deadline; E11 per
/// distinct (sender, receiver) pair. Suppressed entries of the governing
/// profile (sender, except the responder for E9) drop out.
pub fn candidate_counts(model: &SystemModel, profiles: &ProfileConfig) -> BTreeMap<ErrorModelId, usize> {
    use ErrorModelId::*;
    let mut counts: BTreeMap<ErrorModelId, usize> = BTreeMap::new();
    let mut add = |error: ErrorModelId, n: usize| {
        if n > 0 {
            *counts.entry(error).or_insert(0) += n;
        }
    };

    for interaction in &model.interactions {
        let mut senders: Vec<&str> = Vec::new();
        let mut pairs: Vec<(&str, &str)> = Vec::new();
        for message in &interaction.messages {
            if !senders.contains(&message.sender.as_str()) {
                senders.push(&message.sender);
            }
            let pair = (message.sender.as_str(), message.receiver.as_str());
            if !pairs.contains(&pair) {
                pairs.push(pair);
            }
        }
        for sender in &senders {
            if !profiles.for_participant(model, sender).suppresses(E1) {
                add(E1, 1);
            }
        }
        for (sender, _) in &pairs {
            if !profiles.for_participant(model, sender).suppresses(E11) {
                add(E11, 1);
            }
        }

        for message in &interaction.messages {
            let sender = profiles.for_participant(model, &message.sender);
            let responder = profiles.for_participant(model, &message.receiver);
            if !sender.suppresses(E2) {
                add(E2, message.predecessors.len());
            }
            if !sender.suppresses(E3) {
                add(E3, 1);
            }
            if !sender.suppresses(E4) {
                add(E4, 1);
            }
            if !sender.suppresses(E5) {
                if message.send_deadline.is_some() {
                    add(E5, 2);
                }
                if message
                    .response
                    .as_ref()
                    .is_some_and(|r| r.receive_deadline.is_some())
                {
                    add(E5, 2);
                }
            }
            if !message.parameters.is_empty() {
                if !sender.suppresses(E6) {
                    add(E6, 1);
                }
                if !sender.suppresses(E7) {
                    add(E7, 2);
                }
                if !sender.suppresses(E8) {
                    for parameter in &message.parameters {
                        add(E8, if parameter.is_interval_bounded() { 2 } else { 1 });
                    }
                }
            }
            if message.response.is_some() && !responder.suppresses(E9) {
                add(E9, 1);
            }
            if message.treatment_deadline.is_some() && !sender.suppresses(E10) {
                add(E10, 1);
            }
        }
    }
    counts
}

/// Direct predecessors of one message via an explicit adjacency-list walk:
/// build every (pred, succ) edge, then collect the edges ending at the
/// message, preserving declaration order of the constraints.
pub fn adjacency_predecessors(interaction: &Interaction, message_id: &str) -> Option<Vec<String>> {
    interaction.messages.iter().find(|m| m.id == message_id)?;
    let mut edges: Vec<(String, String)> = Vec::new();
    for message in &interaction.messages {
        for pred in &message.predecessors {
            edges.push((pred.clone(), message.id.clone()));
        }
    }
    Some(
        edges
            .into_iter()
            .filter(|(_, succ)| succ == message_id)
            .map(|(pred, _)| pred)
            .collect(),
    )
}

/// Reference linearization: in-degree bookkeeping plus a scan for the
/// smallest declaration index, distinct mechanics from the production
/// ready-scan.
pub fn reference_nominal_order(interaction: &Interaction) -> Option<Vec<String>> {
    let n = interaction.messages.len();
    let index_of = |id: &str| interaction.messages.iter().position(|m| m.id == id);
    let mut indegree = vec![0usize; n];
    let mut successors: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, message) in interaction.messages.iter().enumerate() {
        for pred in &message.predecessors {
            if let Some(p) = index_of(pred) {
                indegree[i] += 1;
                successors[p].push(i);
            }
        }
    }
    let mut done = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let next = (0..n).find(|&i| !done[i] && indegree[i] == 0)?;
        done[next] = true;
        order.push(interaction.messages[next].id.clone());
        for &succ in &successors[next] {
            indegree[succ] -= 1;
        }
    }
    Some(order)
}

/// True when `order` satisfies every direct precedence constraint of the
/// interaction.
pub fn satisfies_constraints(interaction: &Interaction, order: &[&str]) -> bool {
    let position = |id: &str| order.iter().position(|x| *x == id);
    for message in &interaction.messages {
        let Some(at) = position(&message.id) else {
            continue;
        };
        for pred in &message.predecessors {
            if let Some(pred_at) = position(pred) {
                if pred_at >= at {
                    return false;
                }
            }
        }
    }
    true
}

/// The direct constraints `order` violates, as (message, predecessor)
/// pairs.
pub fn violated_constraints<'a>(
    interaction: &'a Interaction,
    order: &[&str],
) -> Vec<(&'a str, &'a str)> {
    let position = |id: &str| order.iter().position(|x| *x == id);
    let mut violations = Vec::new();
    for message in &interaction.messages {
        let Some(at) = position(&message.id) else {
            continue;
        };
        for pred in &message.predecessors {
            if let Some(pred_at) = position(pred) {
                if pred_at >= at {
                    violations.push((message.id.as_str(), pred.as_str()));
                }
            }
        }
    }
    violations
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random_model;
    use seqfmeca_core::model::{Actor, ActorKind, Message};

    #[test]
    fn reference_order_matches_declared_chain() {
        let mut model = SystemModel::new("M");
        model.actors.push(Actor {
            name: "A".into(),
            kind: ActorKind::Human,
        });
        model.objects.push("B".into());
        let mut interaction = Interaction::new("I");
        interaction.participants = vec!["A".into(), "B".into()];
        let mut m2 = Message::new("m2", "A", "B", "Second");
        m2.predecessors = vec!["m1".into()];
        interaction.messages.push(m2);
        interaction.messages.push(Message::new("m1", "A", "B", "First"));
        let order = reference_nominal_order(&interaction).unwrap();
        assert_eq!(order, vec!["m1".to_string(), "m2".to_string()]);
    }

    #[test]
    fn generated_interactions_linearize() {
        for seed in 0..30 {
            let model = random_model(seed);
            for interaction in &model.interactions {
                let order = reference_nominal_order(interaction).unwrap();
                let refs: Vec<&str> = order.iter().map(String::as_str).collect();
                assert!(satisfies_constraints(interaction, &refs), "seed {seed}");
            }
        }
    }
}
