//! Analysis core for message-based interaction models.
//!
//! The pipeline goes: parse a textual model ([`dsl`]), validate and lint it
//! ([`model`]), enumerate failure-mode candidates from the message error
//! catalog ([`catalog`]), make each candidate executable as a trace mutation
//! ([`trace`]), collect analyst dispositions in a worksheet with qualitative
//! risk ([`fmeca`]), and emit reports ([`report`]).
//!
//! All types are immutable after construction and every operation is a pure
//! function of its inputs, so outputs are byte-deterministic run to run.

pub mod catalog;
pub mod decimal;
pub mod diag;
pub mod dsl;
pub mod fmeca;
pub mod model;
pub mod report;
pub mod trace;

pub use catalog::{
    ActorProfile, Applicability, CandidateElement, CandidateSet, CandidateVariant, ErrorModelId,
    FailureModeCandidate, ProfileConfig,
};
pub use decimal::Decimal;
pub use diag::{Diagnostic, DiagnosticCode, DiagnosticSeverity, Location, ModelPath, SourceSpan};
pub use fmeca::{Probability, RiskClass, RiskMatrix, Severity, Worksheet, WorksheetRow};
pub use model::{
    Actor, ActorKind, Allocation, BoundaryAllocation, DurationBound, DurationMs, Interaction,
    Message, MessageElements, Parameter, Response, SystemModel, TypeTag, UseCase,
};
pub use trace::{MutantTrace, Trace, TraceEvent};
