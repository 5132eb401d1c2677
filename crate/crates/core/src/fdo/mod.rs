//! Identifier minting, metadata records, nanopublications and access control.

mod access;
mod mint;
mod nanopub;
mod provenance;

pub use access::{
    apply_access_policy, AccessPolicy, AccessView, Effect, PolicyRule, Requester,
    RequesterCondition,
};
pub use mint::{mint_upri, Minter};
pub use nanopub::{
    emit_nanopublication, parse_nanopublication, parse_nanopublications, Nanopublication,
    ParsedNanopublication, PublishedUnit, NP,
};
pub use provenance::ProvenanceRecord;

use crate::store::{StoreError, Upri};

#[derive(Debug, thiserror::Error)]
pub enum FdoError {
    #[error("malformed namespace `{0}`")]
    MalformedNamespace(String),
    #[error(transparent)]
    Store(#[from] StoreError),
    #[error("missing mandatory field {0}")]
    MissingField(String),
    #[error("{0} lies in the future")]
    FutureDate(String),
    #[error("unit {0} has neither data nor associated units")]
    EmptyUnit(Upri),
    #[error("the head graph does not link a {0} graph")]
    MissingGraph(String),
    #[error("the head graph refers to {0}, which is not in the dataset")]
    DanglingReference(Upri),
    #[error("assertion graph is named {found} but the unit is {expected}")]
    AssertionMismatch { expected: String, found: String },
    #[error("no nanopublication head graph found")]
    NoHead,
    #[error("expected one nanopublication, found {0}")]
    MultipleHeads(usize),
    #[error("policy line {line}: {message}")]
    Policy { line: usize, message: String },
}
