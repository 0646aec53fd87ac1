//! Garside workbench: builds and certifies Garside structures on `G x Z`.
//!
//! The pipeline starts from one of three input classes and ends in a certified
//! combinatorial Garside structure with a normal-form engine:
//!
//! * abstract positive partial multiplication tables ([`partialmul`]),
//! * Coxeter presentation graphs of cyclic or glued type ([`coxeter`], [`artin`]),
//! * positive group presentations ([`presentations`]).
//!
//! Every criterion checked on the way is exhaustive at the scale of the input
//! and produces explicit witnesses on failure.

// Field elements carry a shared context whose root-isolation interval refines
// behind a mutex; equality and hashing depend only on the coefficient vector,
// so matrices over them are sound hash keys.
#![allow(clippy::mutable_key_type)]

pub mod artin;
pub mod cache;
pub mod coxeter;
pub mod examples_gen;
pub mod field;
pub mod garside;
pub mod partialmul;
pub mod poset;
pub mod presentations;
pub mod report;

pub use report::{CheckReport, ConditionResult, Verdict, Violation};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CoreError {
    #[error("label outside field context: {0}")]
    LabelOutsideContext(u64),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
    #[error("parabolic not finite: enumeration exceeded cap of {0} elements")]
    EnumerationCap(usize),
    #[error("no compatible order: orientation is cyclic within the subset")]
    CyclicOrientation,
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, CoreError>;
