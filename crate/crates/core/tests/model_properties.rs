//! Cross-checks between the model operations and the trace view over
//! generated models.

use seqfmeca_core::model::message_elements;
use seqfmeca_core::trace::nominal_trace;
use seqfmeca_testkit::{oracle, random_model};

#[test]
fn predecessors_match_an_independent_adjacency_walk() {
    for seed in 0..60 {
        let model = random_model(seed);
        for interaction in &model.interactions {
            for message in &interaction.messages {
                let direct: Vec<String> = interaction
                    .predecessors(&message.id)
                    .unwrap()
                    .into_iter()
                    .map(str::to_string)
                    .collect();
                let walked = oracle::adjacency_predecessors(interaction, &message.id).unwrap();
                assert_eq!(direct, walked, "seed {seed}, message {}", message.id);
            }
        }
    }
}

#[test]
fn diamond_predecessors_keep_declaration_order() {
    use seqfmeca_core::model::{Actor, ActorKind, Interaction, Message, SystemModel};
    let mut model = SystemModel::new("M");
    model.actors.push(Actor {
        name: "A".into(),
        kind: ActorKind::Human,
    });
    model.objects.push("B".into());
    let mut interaction = Interaction::new("I");
    interaction.participants = vec!["A".into(), "B".into()];
    let m1 = Message::new("m1", "A", "B", "One");
    let mut m2 = Message::new("m2", "A", "B", "Two");
    m2.predecessors = vec!["m1".into()];
    let mut m3 = Message::new("m3", "A", "B", "Three");
    m3.predecessors = vec!["m1".into()];
    let mut m4 = Message::new("m4", "A", "B", "Four");
    m4.predecessors = vec!["m2".into(), "m3".into()];
    interaction.messages.extend([m1, m2, m3, m4]);

    assert_eq!(interaction.predecessors("m4").unwrap(), ["m2", "m3"]);
    assert_eq!(
        oracle::adjacency_predecessors(&interaction, "m4").unwrap(),
        vec!["m2".to_string(), "m3".to_string()]
    );
}

#[test]
fn element_neighbours_agree_with_the_nominal_trace() {
    for seed in 0..60 {
        let model = random_model(seed);
        for interaction in &model.interactions {
            let trace = nominal_trace(interaction).unwrap();
            let order: Vec<&str> = trace.message_ids();
            for (position, id) in order.iter().enumerate() {
                let elements = message_elements(interaction, id).unwrap();
                let previous = position.checked_sub(1).map(|i| order[i]);
                let next = order.get(position + 1).copied();
                assert_eq!(
                    elements.previous.map(|m| m.id.as_str()),
                    previous,
                    "seed {seed}, message {id}"
                );
                assert_eq!(elements.next.map(|m| m.id.as_str()), next);
            }
        }
    }
}
