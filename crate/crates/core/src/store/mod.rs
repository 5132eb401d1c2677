//! Blank-node-free quad model, N-Quads/TriG carriers, layer tagging and
//! resource-kind resolution.

mod catalog;
mod dataset;
mod resource;
mod syntax;
mod term;

pub use catalog::{Layer, Vocab, VocabularyCatalog, OBO, OWL, RDF, RDFS, SU};
pub use dataset::{Quad, QuadDataset, DEFAULT_GRAPH};
pub use resource::{classify_resource, ResourceIndex, ResourceKind};
pub use syntax::{parse_quads, serialize_quads, Syntax};
pub use term::{Literal, Term, Upri, XSD};

#[derive(Debug, thiserror::Error)]
pub enum StoreError {
    #[error("invalid IRI `{iri}`: {reason}")]
    InvalidIri { iri: String, reason: String },
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: u64,
        column: u64,
        message: String,
    },
    #[error("blank node _:{label}{} is not allowed", position.map(|(l, c)| format!(" at line {l}, column {c}")).unwrap_or_default())]
    BlankNode {
        label: String,
        position: Option<(u64, u64)>,
    },
    #[error("unsupported input: {0}")]
    Unsupported(String),
    #[error("unknown syntax `{0}` (expected nquads or trig)")]
    UnknownSyntax(String),
    #[error("catalog error: {0}")]
    Catalog(String),
    #[error("resource {0} does not occur in the dataset")]
    UnknownResource(Upri),
    #[error("resource {0} has no identification")]
    UnresolvedKind(Upri),
    #[error("resource {resource} matches several exclusive kinds: {kinds:?}")]
    AmbiguousKind {
        resource: Upri,
        kinds: Vec<ResourceKind>,
    },
}
