//! Executable form of the error catalog: nominal traces and single-fault
//! trace mutations.
//!
//! The nominal trace of an interaction is the deterministic linearization of
//! its precedence constraints. [`mutate`] turns one failure-mode candidate
//! into the concrete trace(s) realizing it, each differing from nominal in
//! exactly the respect the candidate describes.

mod classify;

pub use classify::classify;

use crate::catalog::{CandidateElement, CandidateVariant, ErrorModelId, FailureModeCandidate};
use crate::decimal::Decimal;
use crate::model::{Interaction, Message, PrecedenceCycle, ValueDomain};
use std::collections::BTreeMap;
use std::fmt;

/// What an event refers to: a declared message, or the sentinel for an
/// action outside the planned interaction (E1).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MessageRef {
    Known(String),
    Extraneous,
}

impl MessageRef {
    pub fn id(&self) -> Option<&str> {
        match self {
            Self::Known(id) => Some(id),
            Self::Extraneous => None,
        }
    }
}

impl fmt::Display for MessageRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Known(id) => f.write_str(id),
            Self::Extraneous => f.write_str("EXTRANEOUS"),
        }
    }
}

/// The value slot of one argument in a trace event.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ArgValue {
    /// As specified.
    Nominal,
    /// A value of the wrong type; a tagged non-value, never a real value.
    TypeMismatch,
    /// One granularity step below the domain's lower bound.
    BelowMin(Decimal),
    /// One granularity step above the domain's upper bound.
    AboveMax(Decimal),
    /// Off-specification in an unbounded domain.
    Perturbed,
    /// An argument the receiver does not expect.
    Surplus,
}

impl fmt::Display for ArgValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Nominal => f.write_str("~"),
            Self::TypeMismatch => f.write_str("<wrong-type>"),
            Self::BelowMin(v) => write!(f, "{v}"),
            Self::AboveMax(v) => write!(f, "{v}"),
            Self::Perturbed => f.write_str("<perturbed>"),
            Self::Surplus => f.write_str("<extra>"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Delivery {
    Delivered,
    ReceiverAbsent,
    LinkDown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TimingTag {
    OnTime,
    TooSoon,
    TooLate,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TreatmentTag {
    WithinLimit,
    Overrun,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ResponseTag {
    Nominal,
    Constant,
    Random,
    OutOfLimits,
    Absent,
}

/// One step of a trace.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceEvent {
    pub message: MessageRef,
    pub arguments: Vec<(String, ArgValue)>,
    pub delivery: Delivery,
    pub timing: TimingTag,
    pub treatment: TreatmentTag,
    pub response: ResponseTag,
}

impl TraceEvent {
    fn nominal(message: &Message) -> Self {
        Self {
            message: MessageRef::Known(message.id.clone()),
            arguments: message
                .parameters
                .iter()
                .map(|p| (p.name.clone(), ArgValue::Nominal))
                .collect(),
            delivery: Delivery::Delivered,
            timing: TimingTag::OnTime,
            treatment: TreatmentTag::WithinLimit,
            response: ResponseTag::Nominal,
        }
    }

    fn extraneous() -> Self {
        Self {
            message: MessageRef::Extraneous,
            arguments: Vec::new(),
            delivery: Delivery::Delivered,
            timing: TimingTag::OnTime,
            treatment: TreatmentTag::WithinLimit,
            response: ResponseTag::Nominal,
        }
    }

    pub fn is_nominal_shape(&self) -> bool {
        self.delivery == Delivery::Delivered
            && self.timing == TimingTag::OnTime
            && self.treatment == TreatmentTag::WithinLimit
            && self.response == ResponseTag::Nominal
            && self.arguments.iter().all(|(_, v)| *v == ArgValue::Nominal)
    }

    /// A delivery failure means the declared response cannot come back.
    fn fail_delivery(&mut self, delivery: Delivery, message: &Message) {
        self.delivery = delivery;
        if message.response.is_some() {
            self.response = ResponseTag::Absent;
        }
    }
}

/// An ordered list of trace events.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Trace {
    pub events: Vec<TraceEvent>,
}

impl Trace {
    pub fn len(&self) -> usize {
        self.events.len()
    }

    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }

    pub fn message_ids(&self) -> Vec<&str> {
        self.events.iter().filter_map(|e| e.message.id()).collect()
    }
}

/// One mutated trace realizing a candidate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MutantTrace {
    pub candidate_id: String,
    pub trace: Trace,
    /// Human-readable description of the injected deviation.
    pub note: String,
}

/// Errors from [`mutate`].
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MutateError {
    #[error("candidate `{candidate}` does not belong to interaction `{interaction}`: {reason}")]
    CandidateMismatch {
        candidate: String,
        interaction: String,
        reason: String,
    },
    #[error(transparent)]
    Cycle(#[from] PrecedenceCycle),
}

/// The nominal trace: the stable linearization of the precedence partial
/// order with every tag nominal.
pub fn nominal_trace(interaction: &Interaction) -> Result<Trace, PrecedenceCycle> {
    let order = interaction.nominal_order()?;
    Ok(Trace {
        events: order.into_iter().map(TraceEvent::nominal).collect(),
    })
}

/// Applies a candidate as concrete trace mutations.
///
/// `seed` only feeds the note of the E9 `random` variant so reruns are
/// reproducible and auditable.
pub fn mutate(
    interaction: &Interaction,
    candidate: &FailureModeCandidate,
    seed: u64,
) -> Result<Vec<MutantTrace>, MutateError> {
    let mismatch = |reason: &str| MutateError::CandidateMismatch {
        candidate: candidate.id.clone(),
        interaction: interaction.name.clone(),
        reason: reason.to_string(),
    };
    if candidate.interaction != interaction.name {
        return Err(mismatch("interaction name differs"));
    }
    let nominal = nominal_trace(interaction)?;

    let message = match &candidate.message {
        Some(id) => Some(
            interaction
                .message(id)
                .ok_or_else(|| mismatch("message id not found"))?,
        ),
        None => None,
    };
    let event_index = |id: &str| {
        nominal
            .events
            .iter()
            .position(|e| e.message.id() == Some(id))
            .expect("nominal trace covers every message")
    };

    let mut mutants = Vec::new();
    let mut push = |trace: Trace, note: String| {
        mutants.push(MutantTrace {
            candidate_id: candidate.id.clone(),
            trace,
            note,
        });
    };

    match candidate.error {
        ErrorModelId::E1 => {
            let Some(CandidateElement::Participant(sender)) = &candidate.element else {
                return Err(mismatch("E1 candidate lacks a participant element"));
            };
            for position in 0..=nominal.len() {
                let mut trace = nominal.clone();
                trace.events.insert(position, TraceEvent::extraneous());
                push(
                    trace,
                    format!("extraneous message by {sender} inserted at position {position}"),
                );
            }
        }
        ErrorModelId::E2 => {
            let Some(CandidateElement::Predecessor(pred)) = &candidate.element else {
                return Err(mismatch("E2 candidate lacks a predecessor element"));
            };
            let message = message.ok_or_else(|| mismatch("E2 candidate lacks a message"))?;
            if interaction.message(pred).is_none() {
                return Err(mismatch("predecessor id not found"));
            }
            let (trace, clean) = reorder_before(interaction, &nominal, &message.id, pred);
            let mut note = format!("{} executed before its predecessor {pred}", message.id);
            if !clean {
                note.push_str(" (co-violates other constraints implying the same order)");
            }
            push(trace, note);
        }
        ErrorModelId::E3 => {
            let message = message.ok_or_else(|| mismatch("E3 candidate lacks a message"))?;
            let mut trace = nominal.clone();
            trace.events.remove(event_index(&message.id));
            push(trace, format!("{} omitted from the interaction", message.id));
        }
        ErrorModelId::E4 => {
            let message = message.ok_or_else(|| mismatch("E4 candidate lacks a message"))?;
            let mut trace = nominal.clone();
            trace.events[event_index(&message.id)].fail_delivery(Delivery::ReceiverAbsent, message);
            push(trace, format!("no instance present to receive {}", message.id));
        }
        ErrorModelId::E5 => {
            let message = message.ok_or_else(|| mismatch("E5 candidate lacks a message"))?;
            let window = match &candidate.element {
                Some(CandidateElement::Timing(kind)) => kind,
                _ => return Err(mismatch("E5 candidate lacks a timing element")),
            };
            let (tag, word) = match candidate.variant {
                Some(CandidateVariant::TooSoon) => (TimingTag::TooSoon, "too soon"),
                Some(CandidateVariant::TooLate) => (TimingTag::TooLate, "too late"),
                _ => return Err(mismatch("E5 candidate lacks a too_soon/too_late variant")),
            };
            let mut trace = nominal.clone();
            trace.events[event_index(&message.id)].timing = tag;
            push(
                trace,
                format!("{} {window} event occurs {word} for its declared window", message.id),
            );
        }
        ErrorModelId::E6 => {
            let message = message.ok_or_else(|| mismatch("E6 candidate lacks a message"))?;
            for (i, parameter) in message.parameters.iter().enumerate() {
                let mut trace = nominal.clone();
                trace.events[event_index(&message.id)].arguments[i].1 = ArgValue::TypeMismatch;
                push(
                    trace,
                    format!(
                        "argument {} of {} carries a value of the wrong type",
                        parameter.name, message.id
                    ),
                );
            }
        }
        ErrorModelId::E7 => {
            let message = message.ok_or_else(|| mismatch("E7 candidate lacks a message"))?;
            match candidate.variant {
                Some(CandidateVariant::TooFew) => {
                    let mut trace = nominal.clone();
                    let event = &mut trace.events[event_index(&message.id)];
                    let dropped = event
                        .arguments
                        .pop()
                        .ok_or_else(|| mismatch("E7 candidate on a parameterless message"))?;
                    push(
                        trace,
                        format!("argument {} of {} is missing", dropped.0, message.id),
                    );
                }
                Some(CandidateVariant::TooMany) => {
                    let mut trace = nominal.clone();
                    let event = &mut trace.events[event_index(&message.id)];
                    event.arguments.push(("extra".to_string(), ArgValue::Surplus));
                    push(
                        trace,
                        format!("{} carries one argument more than expected", message.id),
                    );
                }
                _ => return Err(mismatch("E7 candidate lacks a too_few/too_many variant")),
            }
        }
        ErrorModelId::E8 => {
            let message = message.ok_or_else(|| mismatch("E8 candidate lacks a message"))?;
            let Some(CandidateElement::Parameter(name)) = &candidate.element else {
                return Err(mismatch("E8 candidate lacks a parameter element"));
            };
            let index = message
                .parameters
                .iter()
                .position(|p| &p.name == name)
                .ok_or_else(|| mismatch("parameter not found"))?;
            let parameter = &message.parameters[index];
            let (value, note) = match candidate.variant {
                Some(CandidateVariant::BelowMin) => {
                    let (lower, step) = interval_step(parameter)
                        .ok_or_else(|| mismatch("below_min on a parameter without an interval"))?;
                    let sentinel = lower
                        .0
                        .checked_sub(step)
                        .ok_or_else(|| mismatch("interval bound underflow"))?;
                    (
                        ArgValue::BelowMin(sentinel),
                        format!("{name} = {sentinel}, below the domain minimum"),
                    )
                }
                Some(CandidateVariant::AboveMax) => {
                    let (bounds, step) = interval_step(parameter)
                        .ok_or_else(|| mismatch("above_max on a parameter without an interval"))?;
                    let sentinel = bounds
                        .1
                        .checked_add(step)
                        .ok_or_else(|| mismatch("interval bound overflow"))?;
                    (
                        ArgValue::AboveMax(sentinel),
                        format!("{name} = {sentinel}, above the domain maximum"),
                    )
                }
                Some(CandidateVariant::Perturbed) => (
                    ArgValue::Perturbed,
                    format!("{name} carries an off-specification value"),
                ),
                _ => return Err(mismatch("E8 candidate lacks a value variant")),
            };
            let mut trace = nominal.clone();
            trace.events[event_index(&message.id)].arguments[index].1 = value;
            push(trace, note);
        }
        ErrorModelId::E9 => {
            let message = message.ok_or_else(|| mismatch("E9 candidate lacks a message"))?;
            if message.response.is_none() {
                return Err(mismatch("E9 candidate on a message without a response"));
            }
            for (tag, note) in [
                (ResponseTag::Constant, format!("response to {} is stuck constant", message.id)),
                (
                    ResponseTag::Random,
                    format!("response to {} is random (seed {seed})", message.id),
                ),
                (
                    ResponseTag::OutOfLimits,
                    format!("response to {} is out of limits", message.id),
                ),
            ] {
                let mut trace = nominal.clone();
                trace.events[event_index(&message.id)].response = tag;
                push(trace, note);
            }
        }
        ErrorModelId::E10 => {
            let message = message.ok_or_else(|| mismatch("E10 candidate lacks a message"))?;
            if message.treatment_deadline.is_none() {
                return Err(mismatch("E10 candidate on a message without a treatment deadline"));
            }
            let mut trace = nominal.clone();
            trace.events[event_index(&message.id)].treatment = TreatmentTag::Overrun;
            push(
                trace,
                format!("treatment of {} overruns its declared period", message.id),
            );
        }
        ErrorModelId::E11 => {
            let Some(CandidateElement::Pair(sender, receiver)) = &candidate.element else {
                return Err(mismatch("E11 candidate lacks a channel pair element"));
            };
            let mut trace = nominal.clone();
            let mut touched = 0usize;
            for event in &mut trace.events {
                let Some(id) = event.message.id() else { continue };
                let message = interaction.message(id).expect("trace event id resolves");
                if &message.sender == sender && &message.receiver == receiver {
                    event.fail_delivery(Delivery::LinkDown, message);
                    touched += 1;
                }
            }
            if touched == 0 {
                return Err(mismatch("no message uses the candidate's channel pair"));
            }
            push(trace, format!("link {sender} -> {receiver} is down"));
        }
    }

    Ok(mutants)
}

/// Total mutants per error model for the given candidates.
pub fn mutant_counts(
    interaction: &Interaction,
    candidates: &[FailureModeCandidate],
) -> Result<BTreeMap<ErrorModelId, usize>, MutateError> {
    let mut counts = BTreeMap::new();
    for candidate in candidates {
        let produced = mutate(interaction, candidate, 0)?.len();
        *counts.entry(candidate.error).or_insert(0) += produced;
    }
    Ok(counts)
}

fn interval_step(
    parameter: &crate::model::Parameter,
) -> Option<((Decimal, Decimal), Decimal)> {
    match &parameter.domain {
        Some(ValueDomain::Interval { lower, upper, .. }) => {
            let scale = lower.scale().max(upper.scale());
            Some(((*lower, *upper), Decimal::new(1, scale)))
        }
        _ => None,
    }
}

/// Rebuilds the trace so `message` runs immediately before `pred`,
/// violating that one constraint and, when the partial order allows it, no
/// other. Returns the trace and whether the violation is isolated.
///
/// Works by reversing the targeted edge, fusing (message, pred) into one
/// node and re-running the stable linearization. If dropping the direct
/// edge still leaves a path pred => message, the targeted order is implied
/// by other constraints and no isolated violation exists; the fallback
/// simply reinserts `message` before `pred`.
fn reorder_before(
    interaction: &Interaction,
    nominal: &Trace,
    message: &str,
    pred: &str,
) -> (Trace, bool) {
    let ids: Vec<&str> = interaction.messages.iter().map(|m| m.id.as_str()).collect();
    let index_of = |id: &str| ids.iter().position(|x| *x == id);
    let (Some(msg_idx), Some(pred_idx)) = (index_of(message), index_of(pred)) else {
        return (nominal.clone(), false);
    };

    // Direct predecessor edges, minus the targeted one.
    let mut preds_of: Vec<Vec<usize>> = interaction
        .messages
        .iter()
        .map(|m| {
            m.predecessors
                .iter()
                .filter_map(|p| index_of(p))
                .collect::<Vec<_>>()
        })
        .collect();
    preds_of[msg_idx].retain(|&p| p != pred_idx);

    if reachable(&preds_of, pred_idx, msg_idx) {
        // The order is transitively implied; an isolated violation is
        // impossible. Move the event anyway.
        let mut trace = nominal.clone();
        let from = trace
            .events
            .iter()
            .position(|e| e.message.id() == Some(message))
            .expect("message in nominal trace");
        let event = trace.events.remove(from);
        let to = trace
            .events
            .iter()
            .position(|e| e.message.id() == Some(pred))
            .expect("pred in nominal trace");
        trace.events.insert(to, event);
        return (trace, false);
    }

    // Fuse msg and pred into one node emitted as [msg, pred].
    let fused_key = msg_idx.min(pred_idx);
    let node_of = |i: usize| if i == pred_idx { msg_idx } else { i };
    let n = ids.len();
    let mut emitted = vec![false; n];
    let mut order: Vec<usize> = Vec::with_capacity(n);
    let mut remaining: Vec<usize> = (0..n).filter(|&i| i != pred_idx).collect();
    while !remaining.is_empty() {
        let ready = remaining
            .iter()
            .copied()
            .filter(|&node| {
                let members: Vec<usize> = if node == msg_idx {
                    vec![msg_idx, pred_idx]
                } else {
                    vec![node]
                };
                members.iter().all(|&member| {
                    preds_of[member]
                        .iter()
                        .all(|&p| node_of(p) == node || emitted[node_of(p)])
                })
            })
            .min_by_key(|&node| if node == msg_idx { fused_key } else { node });
        let Some(next) = ready else {
            // Unexpected cycle through the fusion; fall back to identity.
            return (nominal.clone(), false);
        };
        emitted[next] = true;
        remaining.retain(|&x| x != next);
        if next == msg_idx {
            order.push(msg_idx);
            order.push(pred_idx);
        } else {
            order.push(next);
        }
    }

    let trace = Trace {
        events: order
            .into_iter()
            .map(|i| {
                nominal
                    .events
                    .iter()
                    .find(|e| e.message.id() == Some(ids[i]))
                    .expect("nominal trace covers every message")
                    .clone()
            })
            .collect(),
    };
    (trace, true)
}

fn reachable(preds_of: &[Vec<usize>], from: usize, to: usize) -> bool {
    // Walks predecessor edges backward from `to` looking for `from`.
    let mut stack = vec![to];
    let mut seen = vec![false; preds_of.len()];
    while let Some(node) = stack.pop() {
        if node == from {
            return true;
        }
        if seen[node] {
            continue;
        }
        seen[node] = true;
        stack.extend(preds_of[node].iter().copied());
    }
    false
}
