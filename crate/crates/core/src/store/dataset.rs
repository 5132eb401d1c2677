use std::cmp::Ordering;
use std::collections::BTreeSet;

use super::{Layer, Term, Upri, VocabularyCatalog};

/// Graph name given to quads that arrive without one.
pub const DEFAULT_GRAPH: &str = "urn:x-semunit:default-graph";

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Quad {
    pub subject: Upri,
    pub predicate: Upri,
    pub object: Term,
    pub graph: Upri,
}

impl Quad {
    pub fn new(subject: Upri, predicate: Upri, object: impl Into<Term>, graph: Upri) -> Self {
        Self {
            subject,
            predicate,
            object: object.into(),
            graph,
        }
    }

    pub fn in_graph(&self, graph: &Upri) -> Quad {
        Quad {
            graph: graph.clone(),
            ..self.clone()
        }
    }

    /// The triple part, ignoring the graph name.
    pub fn triple(&self) -> (&Upri, &Upri, &Term) {
        (&self.subject, &self.predicate, &self.object)
    }
}

// Serialization order: graph, subject, predicate, object.
impl Ord for Quad {
    fn cmp(&self, other: &Self) -> Ordering {
        (&self.graph, &self.subject, &self.predicate, &self.object).cmp(&(
            &other.graph,
            &other.subject,
            &other.predicate,
            &other.object,
        ))
    }
}

impl PartialOrd for Quad {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// An immutable, duplicate-free set of quads.
#[derive(Clone, Default, PartialEq, Eq, Debug)]
pub struct QuadDataset {
    quads: BTreeSet<Quad>,
}

impl QuadDataset {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.quads.len()
    }

    pub fn is_empty(&self) -> bool {
        self.quads.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Quad> {
        self.quads.iter()
    }

    pub fn contains(&self, quad: &Quad) -> bool {
        self.quads.contains(quad)
    }

    pub fn quads(&self) -> &BTreeSet<Quad> {
        &self.quads
    }

    /// A new snapshot holding the quads of both datasets.
    pub fn union(&self, other: impl IntoIterator<Item = Quad>) -> QuadDataset {
        let mut quads = self.quads.clone();
        quads.extend(other);
        QuadDataset { quads }
    }

    pub fn filter(&self, mut keep: impl FnMut(&Quad) -> bool) -> QuadDataset {
        self.quads.iter().filter(|q| keep(q)).cloned().collect()
    }

    pub fn graph_names(&self) -> BTreeSet<&Upri> {
        self.quads.iter().map(|q| &q.graph).collect()
    }

    pub fn graph<'a>(&'a self, name: &'a Upri) -> impl Iterator<Item = &'a Quad> + 'a {
        self.quads.iter().filter(move |q| &q.graph == name)
    }

    pub fn layer<'a>(
        &'a self,
        catalog: &'a VocabularyCatalog,
        layer: Layer,
    ) -> impl Iterator<Item = &'a Quad> + 'a {
        self.quads
            .iter()
            .filter(move |q| catalog.layer_of(q) == layer)
    }

    pub fn data_layer<'a>(
        &'a self,
        catalog: &'a VocabularyCatalog,
    ) -> impl Iterator<Item = &'a Quad> + 'a {
        self.layer(catalog, Layer::Data)
    }

    /// Objects of `subject predicate ?o` across all graphs, in order.
    pub fn objects<'a>(
        &'a self,
        subject: &'a Upri,
        predicate: &'a Upri,
    ) -> impl Iterator<Item = &'a Term> + 'a {
        self.quads
            .iter()
            .filter(move |q| &q.subject == subject && &q.predicate == predicate)
            .map(|q| &q.object)
    }
}

impl FromIterator<Quad> for QuadDataset {
    fn from_iter<T: IntoIterator<Item = Quad>>(iter: T) -> Self {
        Self {
            quads: iter.into_iter().collect(),
        }
    }
}

impl<'a> IntoIterator for &'a QuadDataset {
    type Item = &'a Quad;
    type IntoIter = std::collections::btree_set::Iter<'a, Quad>;

    fn into_iter(self) -> Self::IntoIter {
        self.quads.iter()
    }
}

impl IntoIterator for QuadDataset {
    type Item = Quad;
    type IntoIter = std::collections::btree_set::IntoIter<Quad>;

    fn into_iter(self) -> Self::IntoIter {
        self.quads.into_iter()
    }
}
