//! Statement units: schemas, the partitioner, dual-axis classification and
//! dynamic labels.

mod classify;
mod label;
mod partition;
mod schema;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

pub use classify::{classify_unit, Classification, SubjectCategory};
pub use label::{render_dynamic_label, RenderedLabel};
pub use partition::{partition, PartitionResult};
pub use schema::{
    compile_schema, default_prefixes, RelationKind, SchemaError, Slot, StatementSchema,
    TripleTemplate,
};
pub(crate) use label::render_with;
pub(crate) use schema::{expand_iri, tokenize};

use crate::store::{Quad, StoreError, Term, Upri, Vocab};

#[derive(Debug, thiserror::Error)]
pub enum UnitError {
    #[error(transparent)]
    Schema(#[from] SchemaError),
    #[error(transparent)]
    Store(#[from] StoreError),
    #[error("schemas {first} and {second} both claim {quad} with equal rank")]
    OverlapConflict {
        first: Upri,
        second: Upri,
        quad: String,
    },
    #[error("{resource} is identified as more than one kind in graph {graph}")]
    MixedIdentification { resource: Upri, graph: Upri },
    #[error("label template of {unit} uses unbound placeholder {{{placeholder}}}")]
    UnboundPlaceholder { unit: Upri, placeholder: String },
    #[error("malformed label template `{0}`")]
    LabelTemplate(String),
}

/// Which of the three identification-unit kinds a unit is.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum IdentificationKind {
    NamedIndividual,
    SomeInstance,
    EveryInstance,
}

impl IdentificationKind {
    pub fn class_key(self) -> Vocab {
        match self {
            IdentificationKind::NamedIndividual => Vocab::NamedIndividualIdentificationUnit,
            IdentificationKind::SomeInstance => Vocab::SomeInstanceIdentificationUnit,
            IdentificationKind::EveryInstance => Vocab::EveryInstanceIdentificationUnit,
        }
    }

    pub fn predicate_key(self) -> Vocab {
        match self {
            IdentificationKind::NamedIndividual => Vocab::Type,
            IdentificationKind::SomeInstance => Vocab::SomeInstanceOf,
            IdentificationKind::EveryInstance => Vocab::EveryInstanceOf,
        }
    }
}

/// How a statement unit came about.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum UnitOrigin {
    Schema,
    Identification(IdentificationKind),
    IsAbout,
    /// Fallback unit for a triple no schema claimed, keyed by its predicate.
    Untyped(Upri),
    Membership,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ObjectRole {
    Argument,
    Adjunct,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitObject {
    pub term: Term,
    pub role: ObjectRole,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Marker {
    Negation,
    CardinalityRestriction,
    Disagreement,
}

impl Marker {
    pub fn class_key(self) -> Vocab {
        match self {
            Marker::Negation => Vocab::NegationUnit,
            Marker::CardinalityRestriction => Vocab::CardinalityRestrictionUnit,
            Marker::Disagreement => Vocab::DisagreementUnit,
        }
    }

    pub fn from_vocab(v: Vocab) -> Option<Marker> {
        match v {
            Vocab::NegationUnit => Some(Marker::Negation),
            Vocab::CardinalityRestrictionUnit => Some(Marker::CardinalityRestriction),
            Vocab::DisagreementUnit => Some(Marker::Disagreement),
            _ => None,
        }
    }
}

impl fmt::Display for Marker {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Marker::Negation => "negation",
            Marker::CardinalityRestriction => "cardinality-restriction",
            Marker::Disagreement => "disagreement",
        })
    }
}

/// The atom of the partition: one proposition and the quads that state it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StatementUnit {
    pub upri: Upri,
    /// The class that names the proposition type (schema class, identification
    /// class, is-about or untyped).
    pub unit_class: Upri,
    /// Identifier of the graph pattern used; the schema `id`.
    pub schema_id: Upri,
    /// All class memberships, `unit_class` included.
    pub classes: BTreeSet<Upri>,
    pub subject: Upri,
    pub objects: Vec<UnitObject>,
    /// Data graph; every quad's graph is `upri`.
    pub quads: BTreeSet<Quad>,
    pub origin: UnitOrigin,
    pub relation: RelationKind,
    pub category: Option<SubjectCategory>,
    pub markers: BTreeSet<Marker>,
    pub bindings: BTreeMap<String, Term>,
    pub label_template: Option<String>,
    /// Graph the quads were read from.
    pub source_graph: Upri,
    /// The quads as they were read, before re-homing.
    pub source_quads: BTreeSet<Quad>,
}

impl StatementUnit {
    pub fn is_identification(&self) -> bool {
        matches!(self.origin, UnitOrigin::Identification(_))
    }

    pub fn identification_kind(&self) -> Option<IdentificationKind> {
        match self.origin {
            UnitOrigin::Identification(kind) => Some(kind),
            _ => None,
        }
    }

    pub fn is_about(&self) -> bool {
        self.origin == UnitOrigin::IsAbout
    }

    pub fn arguments(&self) -> impl Iterator<Item = &Term> {
        self.objects
            .iter()
            .filter(|o| o.role == ObjectRole::Argument)
            .map(|o| &o.term)
    }

    /// Subjects and IRI objects of the data graph.
    pub fn resources(&self) -> BTreeSet<&Upri> {
        self.quads
            .iter()
            .flat_map(|q| std::iter::once(&q.subject).chain(q.object.as_iri()))
            .collect()
    }
}
