//! Domain model: systems, actors, use cases, boundary allocation and
//! message interactions.
//!
//! All types are plain immutable data. Construction does not check
//! well-formedness; [`validate::validate_model`] reports violations as
//! diagnostics instead of failing, so a broken model can still be inspected.

mod elements;
mod lints;
mod validate;

pub use elements::{message_elements, EventRef, MessageElements, MessageEnd};
pub use lints::{allocation_lints, allocation_lints_with, LintOptions};
pub use validate::validate_model;

use crate::decimal::Decimal;
use serde::{Deserialize, Serialize};
use std::fmt;

/// Root of an analysis: every other construct hangs off this.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SystemModel {
    pub name: String,
    pub actors: Vec<Actor>,
    /// Internal participants (e.g. the control system itself). These are
    /// plain names: the system under design receives messages but is not an
    /// actor.
    pub objects: Vec<String>,
    pub use_cases: Vec<UseCase>,
    pub interactions: Vec<Interaction>,
    pub boundary: BoundaryAllocation,
}

impl SystemModel {
    pub fn new(name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            ..Self::default()
        }
    }

    pub fn actor(&self, name: &str) -> Option<&Actor> {
        self.actors.iter().find(|a| a.name == name)
    }

    pub fn use_case(&self, name: &str) -> Option<&UseCase> {
        self.use_cases.iter().find(|u| u.name == name)
    }

    pub fn interaction(&self, name: &str) -> Option<&Interaction> {
        self.interactions.iter().find(|i| i.name == name)
    }

    /// True if `name` is a declared actor or internal object.
    pub fn is_declared_participant(&self, name: &str) -> bool {
        self.actor(name).is_some() || self.objects.iter().any(|o| o == name)
    }
}

/// An outside user of the system: a human or an external system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Actor {
    pub name: String,
    pub kind: ActorKind,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ActorKind {
    Human,
    ExternalSystem,
}

impl fmt::Display for ActorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Human => write!(f, "human"),
            Self::ExternalSystem => write!(f, "external"),
        }
    }
}

/// A named unit of intended use, linked to the actors that take part in it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UseCase {
    pub name: String,
    pub linked_actors: Vec<String>,
    pub description: String,
}

/// Where a use case lands once the system boundary is drawn.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Allocation {
    InsideSystem,
    OperationalProcess,
    Excluded,
}

impl fmt::Display for Allocation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::InsideSystem => write!(f, "inside"),
            Self::OperationalProcess => write!(f, "process"),
            Self::Excluded => write!(f, "excluded"),
        }
    }
}

/// Per use case, at most one allocation decision, in declaration order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BoundaryAllocation {
    entries: Vec<(String, Allocation)>,
}

impl BoundaryAllocation {
    pub fn new() -> Self {
        Self::default()
    }

    /// Records the decision for a use case. Returns false (and keeps the
    /// first entry) if the use case was already allocated.
    pub fn set(&mut self, use_case: impl Into<String>, allocation: Allocation) -> bool {
        let use_case = use_case.into();
        if self.get(&use_case).is_some() {
            return false;
        }
        self.entries.push((use_case, allocation));
        true
    }

    pub fn get(&self, use_case: &str) -> Option<Allocation> {
        self.entries
            .iter()
            .find(|(u, _)| u == use_case)
            .map(|(_, a)| *a)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, Allocation)> {
        self.entries.iter().map(|(u, a)| (u.as_str(), *a))
    }
}

/// A scenario: an ordered exchange of messages between participants.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interaction {
    pub name: String,
    /// Title of the use case this interaction realizes, if any.
    pub realizes: Option<String>,
    /// Participant names in first-use order. Senders and receivers of every
    /// message must appear here.
    pub participants: Vec<String>,
    /// Messages in declaration order. Declaration order breaks ties in the
    /// nominal linearization.
    pub messages: Vec<Message>,
}

impl Interaction {
    pub fn new(name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            realizes: None,
            participants: Vec::new(),
            messages: Vec::new(),
        }
    }

    pub fn message(&self, id: &str) -> Option<&Message> {
        self.messages.iter().find(|m| m.id == id)
    }

    pub fn message_index(&self, id: &str) -> Option<usize> {
        self.messages.iter().position(|m| m.id == id)
    }

    /// Direct "after" constraints of a message, in the order they were
    /// declared.
    pub fn predecessors(&self, message_id: &str) -> Result<Vec<&str>, LookupError> {
        let msg = self.message(message_id).ok_or_else(|| LookupError {
            interaction: self.name.clone(),
            message: message_id.to_string(),
        })?;
        Ok(msg.predecessors.iter().map(String::as_str).collect())
    }

    /// The deterministic linearization of the precedence partial order:
    /// repeatedly emit the declaration-earliest message whose predecessors
    /// have all been emitted.
    pub fn nominal_order(&self) -> Result<Vec<&Message>, PrecedenceCycle> {
        let n = self.messages.len();
        let mut emitted = vec![false; n];
        let mut order = Vec::with_capacity(n);
        for _ in 0..n {
            let next = self.messages.iter().enumerate().position(|(i, m)| {
                !emitted[i]
                    && m.predecessors.iter().all(|p| {
                        self.message_index(p)
                            .map(|pi| emitted[pi])
                            // Dangling predecessors never become ready; they
                            // are validation errors, not cycles.
                            .unwrap_or(true)
                    })
            });
            match next {
                Some(i) => {
                    emitted[i] = true;
                    order.push(&self.messages[i]);
                }
                None => {
                    let stuck = self
                        .messages
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| !emitted[*i])
                        .map(|(_, m)| m.id.clone())
                        .collect();
                    return Err(PrecedenceCycle {
                        interaction: self.name.clone(),
                        involved: stuck,
                    });
                }
            }
        }
        Ok(order)
    }

    /// The distinct (sender, receiver) pairs, in first-occurrence order.
    pub fn channel_pairs(&self) -> Vec<(&str, &str)> {
        let mut pairs: Vec<(&str, &str)> = Vec::new();
        for m in &self.messages {
            let pair = (m.sender.as_str(), m.receiver.as_str());
            if !pairs.contains(&pair) {
                pairs.push(pair);
            }
        }
        pairs
    }

    /// The participants that send at least one message, in first-occurrence
    /// order.
    pub fn sending_participants(&self) -> Vec<&str> {
        let mut senders: Vec<&str> = Vec::new();
        for m in &self.messages {
            if !senders.contains(&m.sender.as_str()) {
                senders.push(&m.sender);
            }
        }
        senders
    }
}

/// One directed communication.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Message {
    pub id: String,
    pub sender: String,
    pub receiver: String,
    /// What the message asks for. May be a plain identifier or a free-text
    /// title; reports use it as the display name.
    pub operation: String,
    pub parameters: Vec<Parameter>,
    /// Ids of messages this one must come after (direct constraints only).
    pub predecessors: Vec<String>,
    pub send_deadline: Option<DurationBound>,
    pub treatment_deadline: Option<DurationBound>,
    pub response: Option<Response>,
}

impl Message {
    pub fn new(
        id: impl Into<String>,
        sender: impl Into<String>,
        receiver: impl Into<String>,
        operation: impl Into<String>,
    ) -> Self {
        Self {
            id: id.into(),
            sender: sender.into(),
            receiver: receiver.into(),
            operation: operation.into(),
            parameters: Vec::new(),
            predecessors: Vec::new(),
            send_deadline: None,
            treatment_deadline: None,
            response: None,
        }
    }
}

/// One message argument slot.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Parameter {
    pub name: String,
    pub type_tag: TypeTag,
    pub domain: Option<ValueDomain>,
}

impl Parameter {
    pub fn new(name: impl Into<String>, type_tag: TypeTag) -> Self {
        Self {
            name: name.into(),
            type_tag,
            domain: None,
        }
    }

    pub fn with_interval(mut self, lower: Decimal, upper: Decimal, unit: Option<String>) -> Self {
        self.domain = Some(ValueDomain::Interval { lower, upper, unit });
        self
    }

    /// True if the domain is a numeric interval (both bounds known).
    pub fn is_interval_bounded(&self) -> bool {
        matches!(self.domain, Some(ValueDomain::Interval { .. }))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TypeTag {
    Number,
    Text,
    Boolean,
    Enum,
}

impl fmt::Display for TypeTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Number => write!(f, "number"),
            Self::Text => write!(f, "text"),
            Self::Boolean => write!(f, "boolean"),
            Self::Enum => write!(f, "enum"),
        }
    }
}

/// Constraint on the values a parameter may take.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ValueDomain {
    Interval {
        lower: Decimal,
        upper: Decimal,
        unit: Option<String>,
    },
    OneOf(Vec<String>),
}

/// The implicit reply to a message: its return values and the bound on when
/// they must arrive.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Response {
    pub values: Vec<Parameter>,
    pub receive_deadline: Option<DurationBound>,
}

/// A duration in milliseconds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DurationMs(pub u64);

impl DurationMs {
    pub fn millis(self) -> u64 {
        self.0
    }
}

impl fmt::Display for DurationMs {
    /// Renders in the largest unit that divides evenly: `min`, `s` or `ms`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ms = self.0;
        if ms > 0 && ms.is_multiple_of(60_000) {
            write!(f, "{}min", ms / 60_000)
        } else if ms > 0 && ms.is_multiple_of(1_000) {
            write!(f, "{}s", ms / 1_000)
        } else {
            write!(f, "{ms}ms")
        }
    }
}

/// An inclusive min..max window on a duration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DurationBound {
    pub min: DurationMs,
    pub max: DurationMs,
}

impl DurationBound {
    pub fn new(min_ms: u64, max_ms: u64) -> Self {
        Self {
            min: DurationMs(min_ms),
            max: DurationMs(max_ms),
        }
    }
}

impl fmt::Display for DurationBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.min, self.max)
    }
}

/// A message id that does not exist in the interaction.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("no message `{message}` in interaction `{interaction}`")]
pub struct LookupError {
    pub interaction: String,
    pub message: String,
}

/// The precedence constraints of an interaction are not acyclic.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("precedence cycle in interaction `{interaction}` involving {involved:?}")]
pub struct PrecedenceCycle {
    pub interaction: String,
    pub involved: Vec<String>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn msg(id: &str, after: &[&str]) -> Message {
        let mut m = Message::new(id, "A", "B", "Op");
        m.predecessors = after.iter().map(|s| s.to_string()).collect();
        m
    }

    fn interaction(msgs: Vec<Message>) -> Interaction {
        let mut i = Interaction::new("I");
        i.participants = vec!["A".into(), "B".into()];
        i.messages = msgs;
        i
    }

    #[test]
    fn nominal_order_respects_constraints() {
        // declared [m2, m1] with m2 after m1
        let i = interaction(vec![msg("m2", &["m1"]), msg("m1", &[])]);
        let order: Vec<&str> = i.nominal_order().unwrap().iter().map(|m| m.id.as_str()).collect();
        assert_eq!(order, ["m1", "m2"]);
    }

    #[test]
    fn nominal_order_breaks_ties_by_declaration() {
        let i = interaction(vec![msg("a", &[]), msg("b", &[])]);
        let order: Vec<&str> = i.nominal_order().unwrap().iter().map(|m| m.id.as_str()).collect();
        assert_eq!(order, ["a", "b"]);
    }

    #[test]
    fn nominal_order_diamond() {
        let i = interaction(vec![
            msg("m1", &[]),
            msg("m2", &["m1"]),
            msg("m3", &["m1"]),
            msg("m4", &["m2", "m3"]),
        ]);
        let order: Vec<&str> = i.nominal_order().unwrap().iter().map(|m| m.id.as_str()).collect();
        assert_eq!(order, ["m1", "m2", "m3", "m4"]);
    }

    #[test]
    fn nominal_order_detects_cycles() {
        let i = interaction(vec![msg("m1", &["m2"]), msg("m2", &["m1"])]);
        let err = i.nominal_order().unwrap_err();
        assert_eq!(err.involved, vec!["m1".to_string(), "m2".to_string()]);
    }

    #[test]
    fn predecessors_are_direct_only() {
        let i = interaction(vec![msg("m1", &[]), msg("m2", &["m1"]), msg("m3", &["m2"])]);
        assert_eq!(i.predecessors("m3").unwrap(), ["m2"]);
        assert_eq!(i.predecessors("m1").unwrap(), Vec::<&str>::new());
        assert!(i.predecessors("nope").is_err());
    }

    #[test]
    fn duration_display_picks_largest_unit() {
        assert_eq!(DurationMs(120_000).to_string(), "2min");
        assert_eq!(DurationMs(1_500).to_string(), "1500ms");
        assert_eq!(DurationMs(3_000).to_string(), "3s");
        assert_eq!(DurationMs(0).to_string(), "0ms");
    }

    #[test]
    fn boundary_rejects_second_allocation() {
        let mut b = BoundaryAllocation::new();
        assert!(b.set("U", Allocation::InsideSystem));
        assert!(!b.set("U", Allocation::Excluded));
        assert_eq!(b.get("U"), Some(Allocation::InsideSystem));
    }
}
