//! Decomposition of one message into its constituent element roles:
//! owning interaction, neighbours in the nominal order, endpoints, events,
//! parameters, response and treatment period.

use super::{DurationBound, Interaction, LookupError, Message, Parameter, Response};

/// Which end of a message an event belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MessageEnd {
    Send,
    Receive,
}

/// A send or receive event of a concrete message.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EventRef {
    pub message: String,
    pub end: MessageEnd,
}

/// The element view of one message. Derived on demand from
/// `(Interaction, Message)`; never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MessageElements<'a> {
    pub interaction: &'a str,
    pub message: &'a Message,
    /// Neighbours in the nominal linearization, not the declaration list.
    pub previous: Option<&'a Message>,
    pub next: Option<&'a Message>,
    pub sender: &'a str,
    pub receiver: &'a str,
    pub sending_event: EventRef,
    pub receiving_event: EventRef,
    pub parameters: &'a [Parameter],
    pub response: Option<&'a Response>,
    pub treatment_period: Option<DurationBound>,
}

impl MessageElements<'_> {
    pub fn has_parameters(&self) -> bool {
        !self.parameters.is_empty()
    }

    pub fn has_response(&self) -> bool {
        self.response.is_some()
    }

    /// True if any send/receive window is declared (message send deadline or
    /// response receive deadline).
    pub fn has_event_deadline(&self) -> bool {
        self.message.send_deadline.is_some()
            || self
                .response
                .is_some_and(|r| r.receive_deadline.is_some())
    }
}

/// Builds the element view for `message_id`.
///
/// Previous/next come from the nominal order, so an interaction with a
/// precedence cycle yields `None` neighbours (validation reports the cycle
/// separately).
pub fn message_elements<'a>(
    interaction: &'a Interaction,
    message_id: &str,
) -> Result<MessageElements<'a>, LookupError> {
    let message = interaction.message(message_id).ok_or_else(|| LookupError {
        interaction: interaction.name.clone(),
        message: message_id.to_string(),
    })?;

    let (previous, next) = match interaction.nominal_order() {
        Ok(order) => {
            let pos = order
                .iter()
                .position(|m| m.id == message_id)
                .expect("message is in its own interaction's order");
            (
                pos.checked_sub(1).map(|i| order[i]),
                order.get(pos + 1).copied(),
            )
        }
        Err(_) => (None, None),
    };

    Ok(MessageElements {
        interaction: &interaction.name,
        message,
        previous,
        next,
        sender: &message.sender,
        receiver: &message.receiver,
        sending_event: EventRef {
            message: message.id.clone(),
            end: MessageEnd::Send,
        },
        receiving_event: EventRef {
            message: message.id.clone(),
            end: MessageEnd::Receive,
        },
        parameters: &message.parameters,
        response: message.response.as_ref(),
        treatment_period: message.treatment_deadline,
    })
}
