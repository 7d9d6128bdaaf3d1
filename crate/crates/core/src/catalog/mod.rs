//! The message error catalog: the eleven error models, per-actor-kind
//! applicability profiles, and systematic enumeration of failure-mode
//! candidates over a whole model.
//!
//! Enumeration granularity is one candidate per analyzable decision:
//!
//! - E1: one per (interaction, sending participant)
//! - E2: one per (message, direct predecessor)
//! - E3, E4: one per message
//! - E5: one per declared send/receive deadline per variant (too soon / too
//!   late)
//! - E6: one per message with parameters
//! - E7: two per message with parameters (too few / too many)
//! - E8: per parameter, two variants when interval-bounded (below min /
//!   above max), one `perturbed` variant otherwise
//! - E9: one per declared response, unless the responder's profile
//!   suppresses it
//! - E10: one per treatment deadline
//! - E11: one per distinct (sender, receiver) pair per interaction

mod profile_text;

pub use profile_text::parse_profile_config;

use crate::dsl::model_digest;
use crate::model::{message_elements, ActorKind, Interaction, Message, MessageElements, SystemModel};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::fmt;

/// The eleven message error models.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ErrorModelId {
    E1,
    E2,
    E3,
    E4,
    E5,
    E6,
    E7,
    E8,
    E9,
    E10,
    E11,
}

impl ErrorModelId {
    pub const ALL: [ErrorModelId; 11] = [
        Self::E1,
        Self::E2,
        Self::E3,
        Self::E4,
        Self::E5,
        Self::E6,
        Self::E7,
        Self::E8,
        Self::E9,
        Self::E10,
        Self::E11,
    ];

    /// The model number, 1..=11.
    pub fn number(self) -> u8 {
        match self {
            Self::E1 => 1,
            Self::E2 => 2,
            Self::E3 => 3,
            Self::E4 => 4,
            Self::E5 => 5,
            Self::E6 => 6,
            Self::E7 => 7,
            Self::E8 => 8,
            Self::E9 => 9,
            Self::E10 => 10,
            Self::E11 => 11,
        }
    }

    /// Compact form used in candidate ids: `E1`..`E11`.
    pub fn code(self) -> &'static str {
        match self {
            Self::E1 => "E1",
            Self::E2 => "E2",
            Self::E3 => "E3",
            Self::E4 => "E4",
            Self::E5 => "E5",
            Self::E6 => "E6",
            Self::E7 => "E7",
            Self::E8 => "E8",
            Self::E9 => "E9",
            Self::E10 => "E10",
            Self::E11 => "E11",
        }
    }

    /// Dotted display form used in reports: `E.1`..`E.11`.
    pub fn dotted(self) -> String {
        format!("E.{}", self.number())
    }

    /// The canonical statement of the error model.
    pub fn description(self) -> &'static str {
        match self {
            Self::E1 => "Sending of a message not belonging to the planned interaction.",
            Self::E2 => "Execution of one or several messages in a wrong order.",
            Self::E3 => "Omission of a message among an interaction.",
            Self::E4 => "Lack of an instance to receive the message.",
            Self::E5 => {
                "Sending or receiving of a message outside its specified time limits (too soon or too late)."
            }
            Self::E6 => {
                "The arguments type is different from the type of parameters expected by the receiver."
            }
            Self::E7 => {
                "The number of message arguments is different from the number of parameters expected by the receiver."
            }
            Self::E8 => {
                "The value of message arguments is different from the value of parameters expected by the receiver."
            }
            Self::E9 => {
                "The values returned by a response to a message do not fit with the expected values (for example: constant, random, out of limits, etc.)."
            }
            Self::E10 => "Treatment of a message out of the specified time limits.",
            Self::E11 => "Lack of link between sender and receiver objects.",
        }
    }

    /// A short label for table headers, e.g. `Omission` for E3.
    pub fn short_label(self) -> &'static str {
        match self {
            Self::E1 => "Extraneous message",
            Self::E2 => "Wrong order",
            Self::E3 => "Omission",
            Self::E4 => "Missing receiver",
            Self::E5 => "Send/receive timing",
            Self::E6 => "Wrong argument type",
            Self::E7 => "Wrong argument count",
            Self::E8 => "Wrong argument value",
            Self::E9 => "Bad response values",
            Self::E10 => "Treatment timing",
            Self::E11 => "Link failure",
        }
    }

    /// Parses `E3`, `E.3` or `e3` style tags.
    pub fn parse_tag(tag: &str) -> Option<Self> {
        let digits = tag
            .strip_prefix('E')
            .or_else(|| tag.strip_prefix('e'))?
            .trim_start_matches('.');
        let number: u8 = digits.parse().ok()?;
        Self::ALL.iter().copied().find(|e| e.number() == number)
    }
}

impl fmt::Display for ErrorModelId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

/// How a profile treats one error model.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Applicability {
    Applies,
    Rare,
    Suppressed,
}

/// Per actor kind, how each error model applies, with an optional
/// substitution note for suppressed entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ActorProfile {
    entries: [Applicability; 11],
    notes: Vec<(ErrorModelId, String)>,
}

impl ActorProfile {
    /// Profile where every error model applies.
    pub fn all_applies() -> Self {
        Self {
            entries: [Applicability::Applies; 11],
            notes: Vec::new(),
        }
    }

    /// The default human profile: E4 is rare (the receiving instance being
    /// absent is unusual in human interaction), and E9 is suppressed because
    /// a human's bad reply is just bad data on the return message.
    pub fn human_default() -> Self {
        let mut profile = Self::all_applies();
        profile.set(ErrorModelId::E4, Applicability::Rare, None);
        profile.set(
            ErrorModelId::E9,
            Applicability::Suppressed,
            Some("use E6-E8 on the response".to_string()),
        );
        profile
    }

    pub fn applicability(&self, error: ErrorModelId) -> Applicability {
        self.entries[error.number() as usize - 1]
    }

    pub fn note(&self, error: ErrorModelId) -> Option<&str> {
        self.notes
            .iter()
            .find(|(e, _)| *e == error)
            .map(|(_, n)| n.as_str())
    }

    pub fn set(&mut self, error: ErrorModelId, applicability: Applicability, note: Option<String>) {
        self.entries[error.number() as usize - 1] = applicability;
        self.notes.retain(|(e, _)| *e != error);
        if let Some(note) = note {
            self.notes.push((error, note));
        }
    }

    pub fn suppresses(&self, error: ErrorModelId) -> bool {
        self.applicability(error) == Applicability::Suppressed
    }
}

/// Which profile governs which participant kind.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProfileConfig {
    pub human: ActorProfile,
    pub external_system: ActorProfile,
    /// Internal objects (non-actor participants such as the system under
    /// design).
    pub internal: ActorProfile,
}

impl Default for ProfileConfig {
    fn default() -> Self {
        Self {
            human: ActorProfile::human_default(),
            external_system: ActorProfile::all_applies(),
            internal: ActorProfile::all_applies(),
        }
    }
}

impl ProfileConfig {
    /// The profile in effect for a participant name within a model.
    pub fn for_participant<'a>(&'a self, model: &SystemModel, participant: &str) -> &'a ActorProfile {
        match model.actor(participant).map(|a| a.kind) {
            Some(ActorKind::Human) => &self.human,
            Some(ActorKind::ExternalSystem) => &self.external_system,
            None => &self.internal,
        }
    }
}

/// What part of a message a candidate targets.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CandidateElement {
    /// E1: the participant that could emit the extraneous message.
    Participant(String),
    /// E2: the direct predecessor whose ordering is violated.
    Predecessor(String),
    /// E6/E8: the parameter concerned.
    Parameter(String),
    /// E11: the (sender, receiver) channel.
    Pair(String, String),
    /// E5/E10: which declared deadline is exceeded.
    Timing(TimingKind),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TimingKind {
    Send,
    Receive,
    Treat,
}

impl fmt::Display for TimingKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Send => write!(f, "send"),
            Self::Receive => write!(f, "receive"),
            Self::Treat => write!(f, "treat"),
        }
    }
}

impl fmt::Display for CandidateElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Participant(p) => f.write_str(p),
            Self::Predecessor(p) => f.write_str(p),
            Self::Parameter(p) => f.write_str(p),
            Self::Pair(s, r) => write!(f, "{s}->{r}"),
            Self::Timing(t) => t.fmt(f),
        }
    }
}

/// Refinement of a candidate within one error model.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CandidateVariant {
    TooSoon,
    TooLate,
    TooFew,
    TooMany,
    BelowMin,
    AboveMax,
    Perturbed,
}

impl fmt::Display for CandidateVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::TooSoon => write!(f, "too_soon"),
            Self::TooLate => write!(f, "too_late"),
            Self::TooFew => write!(f, "too_few"),
            Self::TooMany => write!(f, "too_many"),
            Self::BelowMin => write!(f, "below_min"),
            Self::AboveMax => write!(f, "above_max"),
            Self::Perturbed => write!(f, "perturbed"),
        }
    }
}

/// Expected frequency hint carried from the profile.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LikelihoodHint {
    Normal,
    Rare,
}

/// One (message element, error model) pairing the analyst must dispose of.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FailureModeCandidate {
    /// Stable id, see [`FailureModeCandidate::id`].
    pub id: String,
    pub interaction: String,
    /// None for interaction-level candidates (E1 per sender, E11 per pair).
    pub message: Option<String>,
    pub error: ErrorModelId,
    pub element: Option<CandidateElement>,
    pub variant: Option<CandidateVariant>,
    pub likelihood_hint: LikelihoodHint,
}

impl FailureModeCandidate {
    /// `<interaction>/<message|*>/<error>/<element|->/<variant|->`.
    ///
    /// The id depends only on the candidate's own coordinates, so edits
    /// elsewhere in the model never change it.
    pub fn candidate_id(
        interaction: &str,
        message: Option<&str>,
        error: ErrorModelId,
        element: Option<&CandidateElement>,
        variant: Option<CandidateVariant>,
    ) -> String {
        format!(
            "{interaction}/{}/{}/{}/{}",
            message.unwrap_or("*"),
            error.code(),
            element.map(|e| e.to_string()).unwrap_or_else(|| "-".into()),
            variant.map(|v| v.to_string()).unwrap_or_else(|| "-".into()),
        )
    }

    fn new(
        interaction: &str,
        message: Option<&str>,
        error: ErrorModelId,
        element: Option<CandidateElement>,
        variant: Option<CandidateVariant>,
        likelihood_hint: LikelihoodHint,
    ) -> Self {
        Self {
            id: Self::candidate_id(interaction, message, error, element.as_ref(), variant),
            interaction: interaction.to_string(),
            message: message.map(str::to_string),
            error,
            element,
            variant,
            likelihood_hint,
        }
    }

    /// Pre-fill text for a worksheet row: the canonical description plus the
    /// element/variant when present.
    pub fn prefill_text(&self) -> String {
        let mut text = self.error.description().to_string();
        match (&self.element, self.variant) {
            (None, None) => {}
            (element, variant) => {
                let mut parts = Vec::new();
                if let Some(element) = element {
                    parts.push(element.to_string());
                }
                if let Some(variant) = variant {
                    parts.push(variant.to_string());
                }
                text.push_str(&format!(" [{}]", parts.join(", ")));
            }
        }
        text
    }
}

/// The ordered candidates enumerated from one model, tied to it by digest.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CandidateSet {
    pub model_name: String,
    pub model_digest: String,
    pub items: Vec<FailureModeCandidate>,
}

impl CandidateSet {
    pub fn ids(&self) -> impl Iterator<Item = &str> {
        self.items.iter().map(|c| c.id.as_str())
    }

    pub fn get(&self, id: &str) -> Option<&FailureModeCandidate> {
        self.items.iter().find(|c| c.id == id)
    }
}

/// The error models whose structural precondition holds on `elements`,
/// minus the profile's suppressed entries.
///
/// E1, E3, E4 and E11 are always structurally applicable; E2 needs a direct
/// predecessor, E5 a send or receive deadline, E6-E8 parameters, E9 a
/// response, E10 a treatment deadline.
pub fn applicable_errors(
    elements: &MessageElements<'_>,
    profile: &ActorProfile,
) -> BTreeSet<ErrorModelId> {
    ErrorModelId::ALL
        .into_iter()
        .filter(|&error| structurally_applicable(elements, error))
        .filter(|&error| !profile.suppresses(error))
        .collect()
}

fn structurally_applicable(elements: &MessageElements<'_>, error: ErrorModelId) -> bool {
    use ErrorModelId::*;
    match error {
        E1 | E3 | E4 | E11 => true,
        E2 => !elements.message.predecessors.is_empty(),
        E5 => elements.has_event_deadline(),
        E6 | E7 | E8 => elements.has_parameters(),
        E9 => elements.has_response(),
        E10 => elements.treatment_period.is_some(),
    }
}

/// Enumerates every failure-mode candidate of the model, deterministically
/// ordered by (interaction declaration order, interaction-level candidates
/// first, message declaration order, error number, element declaration
/// order, variant).
///
/// The profile governing a candidate is the message sender's, except E9
/// where the responder (the message receiver) answers and its profile
/// decides.
pub fn enumerate_candidates(model: &SystemModel, profiles: &ProfileConfig) -> CandidateSet {
    let mut items = Vec::new();
    for interaction in &model.interactions {
        enumerate_interaction(model, interaction, profiles, &mut items);
    }
    CandidateSet {
        model_name: model.name.clone(),
        model_digest: model_digest(model),
        items,
    }
}

fn enumerate_interaction(
    model: &SystemModel,
    interaction: &Interaction,
    profiles: &ProfileConfig,
    out: &mut Vec<FailureModeCandidate>,
) {
    use ErrorModelId::*;

    // Interaction-level candidates: E1 per sending participant, E11 per
    // distinct channel pair.
    for sender in interaction.sending_participants() {
        let profile = profiles.for_participant(model, sender);
        if profile.suppresses(E1) {
            continue;
        }
        out.push(FailureModeCandidate::new(
            &interaction.name,
            None,
            E1,
            Some(CandidateElement::Participant(sender.to_string())),
            None,
            hint(profile, E1),
        ));
    }
    for (sender, receiver) in interaction.channel_pairs() {
        let profile = profiles.for_participant(model, sender);
        if profile.suppresses(E11) {
            continue;
        }
        out.push(FailureModeCandidate::new(
            &interaction.name,
            None,
            E11,
            Some(CandidateElement::Pair(sender.to_string(), receiver.to_string())),
            None,
            hint(profile, E11),
        ));
    }

    for message in &interaction.messages {
        enumerate_message(model, interaction, message, profiles, out);
    }
}

fn enumerate_message(
    model: &SystemModel,
    interaction: &Interaction,
    message: &Message,
    profiles: &ProfileConfig,
    out: &mut Vec<FailureModeCandidate>,
) {
    use CandidateVariant::*;
    use ErrorModelId::*;

    let elements = message_elements(interaction, &message.id)
        .expect("message comes from this interaction");
    let sender_profile = profiles.for_participant(model, &message.sender);
    let responder_profile = profiles.for_participant(model, &message.receiver);

    let mut push = |error: ErrorModelId,
                    element: Option<CandidateElement>,
                    variant: Option<CandidateVariant>,
                    profile: &ActorProfile| {
        if !structurally_applicable(&elements, error) || profile.suppresses(error) {
            return;
        }
        out.push(FailureModeCandidate::new(
            &interaction.name,
            Some(&message.id),
            error,
            element,
            variant,
            hint(profile, error),
        ));
    };

    for pred in &message.predecessors {
        push(E2, Some(CandidateElement::Predecessor(pred.clone())), None, sender_profile);
    }
    push(E3, None, None, sender_profile);
    push(E4, None, None, sender_profile);
    if message.send_deadline.is_some() {
        for variant in [TooSoon, TooLate] {
            push(
                E5,
                Some(CandidateElement::Timing(TimingKind::Send)),
                Some(variant),
                sender_profile,
            );
        }
    }
    if message.response.as_ref().is_some_and(|r| r.receive_deadline.is_some()) {
        for variant in [TooSoon, TooLate] {
            push(
                E5,
                Some(CandidateElement::Timing(TimingKind::Receive)),
                Some(variant),
                sender_profile,
            );
        }
    }
    push(E6, None, None, sender_profile);
    push(E7, None, Some(TooFew), sender_profile);
    push(E7, None, Some(TooMany), sender_profile);
    for parameter in &message.parameters {
        let element = Some(CandidateElement::Parameter(parameter.name.clone()));
        if parameter.is_interval_bounded() {
            push(E8, element.clone(), Some(BelowMin), sender_profile);
            push(E8, element, Some(AboveMax), sender_profile);
        } else {
            push(E8, element, Some(Perturbed), sender_profile);
        }
    }
    push(E9, None, None, responder_profile);
    if message.treatment_deadline.is_some() {
        push(
            E10,
            Some(CandidateElement::Timing(TimingKind::Treat)),
            None,
            sender_profile,
        );
    }
}

fn hint(profile: &ActorProfile, error: ErrorModelId) -> LikelihoodHint {
    match profile.applicability(error) {
        Applicability::Rare => LikelihoodHint::Rare,
        _ => LikelihoodHint::Normal,
    }
}
