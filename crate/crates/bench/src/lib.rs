//! Deterministic model corpora for the benchmarks.

use seqfmeca_core::model::{
    Actor, ActorKind, Interaction, Message, Parameter, Response, SystemModel, TypeTag,
};
use seqfmeca_core::Decimal;

/// A model with one interaction of `messages` chained messages, a bounded
/// numeric parameter on every third message and a response on every fifth.
pub fn chain_model(messages: usize) -> SystemModel {
    let mut model = SystemModel::new("Bench");
    model.actors.push(Actor {
        name: "Operator".into(),
        kind: ActorKind::Human,
    });
    model.objects.push("Sys".into());
    let mut interaction = Interaction::new("Chain");
    interaction.participants = vec!["Operator".into(), "Sys".into()];
    for index in 0..messages {
        let mut message = Message::new(
            format!("m{index}"),
            "Operator",
            "Sys",
            format!("Step {index}"),
        );
        if index > 0 {
            message.predecessors = vec![format!("m{}", index - 1)];
        }
        if index % 3 == 0 {
            message.parameters.push(
                Parameter::new("level", TypeTag::Number).with_interval(
                    Decimal::from_int(0),
                    Decimal::from_int(100),
                    Some("bar".into()),
                ),
            );
        }
        if index % 5 == 0 {
            message.response = Some(Response {
                values: vec![Parameter::new("ok", TypeTag::Boolean)],
                receive_deadline: None,
            });
        }
        interaction.messages.push(message);
    }
    model.interactions.push(interaction);
    model
}
