use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::{Layer, QuadDataset, StoreError, Term, Upri, Vocab, VocabularyCatalog, DEFAULT_GRAPH};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ResourceKind {
    NamedIndividual,
    SomeInstance,
    EveryInstance,
    OntologyClass,
    PropertyResource,
    SemanticUnitResource,
}

impl fmt::Display for ResourceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ResourceKind::NamedIndividual => "named-individual",
            ResourceKind::SomeInstance => "some-instance",
            ResourceKind::EveryInstance => "every-instance",
            ResourceKind::OntologyClass => "ontology-class",
            ResourceKind::PropertyResource => "property",
            ResourceKind::SemanticUnitResource => "semantic-unit",
        })
    }
}

/// Positional facts about every resource of a dataset, computed once.
#[derive(Clone, Debug, Default)]
pub struct ResourceIndex {
    units: BTreeSet<Upri>,
    typed: BTreeSet<Upri>,
    some: BTreeSet<Upri>,
    every: BTreeSet<Upri>,
    classes: BTreeSet<Upri>,
    non_predicate: BTreeSet<Upri>,
    predicates: BTreeSet<Upri>,
    class_of: BTreeMap<Upri, BTreeSet<Upri>>,
    labels: BTreeMap<Upri, BTreeSet<String>>,
}

impl ResourceIndex {
    pub fn build(dataset: &QuadDataset, catalog: &VocabularyCatalog) -> Self {
        let mut index = ResourceIndex::default();
        let default_graph = Upri::new_unchecked(DEFAULT_GRAPH);
        let type_ = catalog.iri(Vocab::Type);
        let some = catalog.iri(Vocab::SomeInstanceOf);
        let every = catalog.iri(Vocab::EveryInstanceOf);
        let label = catalog.iri(Vocab::Label);

        for quad in dataset {
            if quad.graph != default_graph {
                index.units.insert(quad.graph.clone());
            }
            index.predicates.insert(quad.predicate.clone());
            index.non_predicate.insert(quad.subject.clone());
            index.non_predicate.insert(quad.graph.clone());
            if let Term::Iri(o) = &quad.object {
                index.non_predicate.insert(o.clone());
            }

            if catalog.layer_of(quad) == Layer::SemanticUnits {
                if catalog.is_structural(&quad.predicate) {
                    index.units.insert(quad.subject.clone());
                    let object_is_unit = !catalog.is(&quad.predicate, Vocab::HasSemanticUnitSubject)
                        && !catalog.is(&quad.predicate, Vocab::Index);
                    if let (true, Term::Iri(o)) = (object_is_unit, &quad.object) {
                        index.units.insert(o.clone());
                    }
                }
                continue;
            }

            if &quad.predicate == label {
                if let Term::Literal(l) = &quad.object {
                    index
                        .labels
                        .entry(quad.subject.clone())
                        .or_default()
                        .insert(l.lexical().to_string());
                }
                continue;
            }
            let Term::Iri(object) = &quad.object else {
                continue;
            };
            let target = if &quad.predicate == type_ {
                if catalog.is_unit_class(object) {
                    continue;
                }
                &mut index.typed
            } else if &quad.predicate == some {
                &mut index.some
            } else if &quad.predicate == every {
                &mut index.every
            } else {
                continue;
            };
            target.insert(quad.subject.clone());
            index.classes.insert(object.clone());
            index
                .class_of
                .entry(quad.subject.clone())
                .or_default()
                .insert(object.clone());
        }
        index
    }

    pub fn occurs(&self, r: &Upri) -> bool {
        self.non_predicate.contains(r) || self.predicates.contains(r)
    }

    pub fn kind(&self, r: &Upri) -> Result<ResourceKind, StoreError> {
        let mut kinds = Vec::new();
        if self.units.contains(r) {
            kinds.push(ResourceKind::SemanticUnitResource);
        }
        if self.some.contains(r) {
            kinds.push(ResourceKind::SomeInstance);
        }
        if self.every.contains(r) {
            kinds.push(ResourceKind::EveryInstance);
        }
        if self.typed.contains(r) && !self.some.contains(r) && !self.every.contains(r) {
            kinds.push(ResourceKind::NamedIndividual);
        }
        if self.classes.contains(r) {
            kinds.push(ResourceKind::OntologyClass);
        }
        if self.predicates.contains(r) && !self.non_predicate.contains(r) {
            kinds.push(ResourceKind::PropertyResource);
        }
        match kinds.as_slice() {
            [kind] => Ok(*kind),
            [] if self.occurs(r) => Err(StoreError::UnresolvedKind(r.clone())),
            [] => Err(StoreError::UnknownResource(r.clone())),
            _ => Err(StoreError::AmbiguousKind {
                resource: r.clone(),
                kinds,
            }),
        }
    }

    /// Classes linked through type, some-instance-of or every-instance-of.
    pub fn classes_of(&self, r: &Upri) -> Option<&BTreeSet<Upri>> {
        self.class_of.get(r)
    }

    /// The lexicographically smallest label, so that rendering is deterministic.
    pub fn label(&self, r: &Upri) -> Option<&str> {
        self.labels
            .get(r)
            .and_then(|l| l.iter().next())
            .map(String::as_str)
    }

    pub fn unit_resources(&self) -> &BTreeSet<Upri> {
        &self.units
    }
}

pub fn classify_resource(
    dataset: &QuadDataset,
    r: &Upri,
    catalog: &VocabularyCatalog,
) -> Result<ResourceKind, StoreError> {
    ResourceIndex::build(dataset, catalog).kind(r)
}
