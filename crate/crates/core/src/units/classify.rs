use std::collections::BTreeSet;
use std::fmt;

use super::{Marker, RelationKind, StatementUnit};
use crate::store::{
    QuadDataset, ResourceIndex, ResourceKind, StoreError, Term, Upri, Vocab, VocabularyCatalog,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SubjectCategory {
    Assertional,
    Contingent,
    Universal,
}

impl SubjectCategory {
    pub fn class_key(self) -> Vocab {
        match self {
            SubjectCategory::Assertional => Vocab::AssertionalStatementUnit,
            SubjectCategory::Contingent => Vocab::ContingentStatementUnit,
            SubjectCategory::Universal => Vocab::UniversalStatementUnit,
        }
    }

    /// Statements about semantic units are statements about particulars.
    pub fn from_kind(kind: ResourceKind) -> Option<Self> {
        match kind {
            ResourceKind::NamedIndividual | ResourceKind::SemanticUnitResource => {
                Some(SubjectCategory::Assertional)
            }
            ResourceKind::SomeInstance => Some(SubjectCategory::Contingent),
            ResourceKind::EveryInstance => Some(SubjectCategory::Universal),
            ResourceKind::OntologyClass | ResourceKind::PropertyResource => None,
        }
    }

    pub(crate) fn resolve(index: &ResourceIndex, subject: &Upri) -> Result<Self, StoreError> {
        let kind = index.kind(subject)?;
        Self::from_kind(kind).ok_or_else(|| StoreError::UnresolvedKind(subject.clone()))
    }
}

impl fmt::Display for SubjectCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SubjectCategory::Assertional => "assertional",
            SubjectCategory::Contingent => "contingent",
            SubjectCategory::Universal => "universal",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub relation: RelationKind,
    pub category: SubjectCategory,
    pub markers: BTreeSet<Marker>,
}

pub fn classify_unit(
    unit: &StatementUnit,
    dataset: &QuadDataset,
    catalog: &VocabularyCatalog,
) -> Result<Classification, StoreError> {
    let index = ResourceIndex::build(dataset, catalog);
    let category = SubjectCategory::resolve(&index, &unit.subject)?;
    let type_ = catalog.iri(Vocab::Type);
    let markers = dataset
        .objects(&unit.upri, type_)
        .filter_map(Term::as_iri)
        .filter_map(|c| catalog.marker(c))
        .filter_map(Marker::from_vocab)
        .collect();
    Ok(Classification {
        relation: unit.relation,
        category,
        markers,
    })
}
