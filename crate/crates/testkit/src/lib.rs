//! Test support: a seeded random model generator and oracles implemented
//! independently of the production code paths they check.
//!
//! Everything here is deterministic in the seed, so failures reproduce.

pub mod oracle;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use seqfmeca_core::model::{
    Actor, ActorKind, Allocation, DurationBound, Interaction, Message, Parameter, Response,
    SystemModel, TypeTag, ValueDomain,
};
use seqfmeca_core::Decimal;

/// Limits for [`random_model`]. The defaults match the property suites:
/// up to 8 messages per model, up to 3 parameters per message.
#[derive(Debug, Clone)]
pub struct GeneratorLimits {
    pub max_messages: usize,
    pub max_parameters: usize,
}

impl Default for GeneratorLimits {
    fn default() -> Self {
        Self {
            max_messages: 8,
            max_parameters: 3,
        }
    }
}

/// A well-formed random model. Precedence constraints only reference
/// earlier messages, so the result is acyclic by construction; names are
/// generated unique.
pub fn random_model(seed: u64) -> SystemModel {
    random_model_with(seed, &GeneratorLimits::default())
}

pub fn random_model_with(seed: u64, limits: &GeneratorLimits) -> SystemModel {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut model = SystemModel::new(format!("M{seed}"));

    let actor_count = rng.random_range(1..=3);
    for i in 0..actor_count {
        model.actors.push(Actor {
            name: format!("A{i}"),
            kind: if rng.random_bool(0.6) {
                ActorKind::Human
            } else {
                ActorKind::ExternalSystem
            },
        });
    }
    let object_count = rng.random_range(1..=2);
    for i in 0..object_count {
        model.objects.push(format!("O{i}"));
    }

    let usecase_count = rng.random_range(0..=3);
    for i in 0..usecase_count {
        let title = format!("Use Case {i}");
        let mut linked = Vec::new();
        for actor in &model.actors {
            if rng.random_bool(0.5) {
                linked.push(actor.name.clone());
            }
        }
        if linked.is_empty() && rng.random_bool(0.8) {
            linked.push(model.actors[0].name.clone());
        }
        model.use_cases.push(seqfmeca_core::model::UseCase {
            name: title.clone(),
            linked_actors: linked,
            description: if rng.random_bool(0.3) {
                format!("scenario {i}")
            } else {
                String::new()
            },
        });
        if rng.random_bool(0.9) {
            let allocation = match rng.random_range(0..3) {
                0 => Allocation::InsideSystem,
                1 => Allocation::OperationalProcess,
                _ => Allocation::Excluded,
            };
            model.boundary.set(title, allocation);
        }
    }

    let participants: Vec<String> = model
        .actors
        .iter()
        .map(|a| a.name.clone())
        .chain(model.objects.iter().cloned())
        .collect();

    let interaction_count = rng.random_range(1..=2);
    let mut budget = limits.max_messages;
    for i in 0..interaction_count {
        let mut interaction = Interaction::new(format!("I{i}"));
        if !model.use_cases.is_empty() && rng.random_bool(0.5) {
            let pick = rng.random_range(0..model.use_cases.len());
            interaction.realizes = Some(model.use_cases[pick].name.clone());
        }
        let message_count = rng.random_range(0..=budget.min(5));
        budget -= message_count;
        for k in 0..message_count {
            let message = random_message(&mut rng, k, &participants, limits);
            for endpoint in [message.sender.clone(), message.receiver.clone()] {
                if !interaction.participants.contains(&endpoint) {
                    interaction.participants.push(endpoint);
                }
            }
            interaction.messages.push(message);
        }
        model.interactions.push(interaction);
    }
    model
}

fn random_message(
    rng: &mut ChaCha8Rng,
    index: usize,
    participants: &[String],
    limits: &GeneratorLimits,
) -> Message {
    let sender = participants[rng.random_range(0..participants.len())].clone();
    let receiver = participants[rng.random_range(0..participants.len())].clone();
    let operation = if rng.random_bool(0.3) {
        format!("Step {index} of the procedure")
    } else {
        format!("Op{index}")
    };
    let mut message = Message::new(format!("m{index}"), sender, receiver, operation);

    let parameter_count = rng.random_range(0..=limits.max_parameters);
    for p in 0..parameter_count {
        message.parameters.push(random_parameter(rng, p));
    }
    // Only earlier ids may be predecessors, which keeps the graph acyclic.
    for earlier in 0..index {
        if rng.random_bool(0.35) && message.predecessors.len() < 2 {
            message.predecessors.push(format!("m{earlier}"));
        }
    }
    if rng.random_bool(0.3) {
        message.send_deadline = Some(random_bound(rng));
    }
    if rng.random_bool(0.2) {
        message.treatment_deadline = Some(random_bound(rng));
    }
    if rng.random_bool(0.3) {
        let value_count = rng.random_range(0..=2);
        message.response = Some(Response {
            values: (0..value_count).map(|v| random_parameter(rng, v + 10)).collect(),
            receive_deadline: if rng.random_bool(0.3) {
                Some(random_bound(rng))
            } else {
                None
            },
        });
    }
    message
}

fn random_parameter(rng: &mut ChaCha8Rng, index: usize) -> Parameter {
    let type_tag = match rng.random_range(0..4) {
        0 => TypeTag::Number,
        1 => TypeTag::Text,
        2 => TypeTag::Boolean,
        _ => TypeTag::Enum,
    };
    let mut parameter = Parameter::new(format!("p{index}"), type_tag);
    parameter.domain = match type_tag {
        TypeTag::Number if rng.random_bool(0.6) => {
            let scale = rng.random_range(0..=2u8);
            let a = Decimal::new(rng.random_range(-1000..1000), scale);
            let b = Decimal::new(rng.random_range(-1000..1000), scale);
            let (lower, upper) = if a <= b { (a, b) } else { (b, a) };
            let unit = if rng.random_bool(0.5) {
                Some("bar".to_string())
            } else {
                None
            };
            Some(ValueDomain::Interval { lower, upper, unit })
        }
        TypeTag::Enum => {
            let count = rng.random_range(1..=3);
            Some(ValueDomain::OneOf(
                (0..count).map(|v| format!("v{v}")).collect(),
            ))
        }
        _ => None,
    };
    parameter
}

fn random_bound(rng: &mut ChaCha8Rng) -> DurationBound {
    let a: u64 = rng.random_range(0..5_000);
    let b: u64 = rng.random_range(0..5_000);
    DurationBound::new(a.min(b), a.max(b))
}

/// Deterministic pseudo-random bytes for fuzz-style inputs.
pub fn arbitrary_bytes(seed: u64, max_len: usize) -> Vec<u8> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let len = rng.random_range(0..=max_len);
    (0..len).map(|_| rng.random()).collect()
}

/// Deterministic "almost valid" source text: model fragments with random
/// corruption, worth more to a parser fuzz than raw bytes.
pub fn arbitrary_source(seed: u64) -> String {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let fragments = [
        "system", "interaction", "actor", "object", "usecase", "msg", "after", "deadline",
        "send", "treat", "response", "kind", "human", "external", "allocation", "inside",
        "CS", "m1", "{", "}", "(", ")", ":", ";", ",", "->", "..", "\"title\"", "7", "3.5",
        "-2", "ms", "s", "min", "#c", "\n", "\"", "in", "number", "€", "\\",
    ];
    let len = rng.random_range(0..60);
    let mut out = String::new();
    for _ in 0..len {
        out.push_str(fragments[rng.random_range(0..fragments.len())]);
        if rng.random_bool(0.7) {
            out.push(' ');
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use seqfmeca_core::model::validate_model;

    #[test]
    fn generated_models_are_well_formed() {
        for seed in 0..50 {
            let model = random_model(seed);
            let diags = validate_model(&model);
            assert!(diags.is_empty(), "seed {seed}: {diags:?}");
        }
    }

    #[test]
    fn generation_is_deterministic() {
        assert_eq!(random_model(7), random_model(7));
        assert_eq!(arbitrary_bytes(9, 64), arbitrary_bytes(9, 64));
    }

    #[test]
    fn message_budget_is_respected() {
        for seed in 0..50 {
            let model = random_model(seed);
            let total: usize = model.interactions.iter().map(|i| i.messages.len()).sum();
            assert!(total <= 8, "seed {seed} has {total} messages");
        }
    }
}
