//! Compound units: typed statements, quality measurements, items, item groups,
//! granularity trees, contexts and collections.
//!
//! Every builder is a pure function of a [`PartitionResult`] (plus the compounds
//! built before it) and a [`Minter`]. [`ProcessedGraph`] runs them in dependency
//! order and exposes the five levels of representational granularity.

mod collection;
mod context;
mod group;
mod item;
mod tree;
mod typed;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

pub use collection::{make_collection_unit, CollectionBuild, CollectionKind};
pub use context::{build_context_units, Boundary, ContextBuild};
pub use group::build_item_group_units;
pub use item::build_item_units;
pub use tree::{build_granularity_tree_units, granular_item_group, CycleReport, GranularityTree, TreeBuild};
pub use typed::{build_quality_measurement_units, build_typed_statement_units};

use crate::fdo::Minter;
use crate::store::{Literal, Quad, QuadDataset, StoreError, Term, Upri, Vocab, VocabularyCatalog};
use crate::units::{PartitionResult, StatementUnit};

#[derive(Debug, thiserror::Error)]
pub enum CompoundError {
    #[error("{0} is listed more than once in a set")]
    DuplicateMember(Upri),
    #[error("member {0} does not resolve")]
    UnresolvedMember(Upri),
    #[error(transparent)]
    Store(#[from] StoreError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ItemKind {
    Instance,
    Class,
    TextHybrid,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GroupKind {
    Instance,
    Class,
    ClassAxiom,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ListKind {
    Ordered,
    Unordered,
    Set,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CompoundKind {
    TypedStatement,
    QualityMeasurement,
    Item(ItemKind),
    ItemGroup(GroupKind),
    GranularityTree,
    GranularItemGroup,
    Context,
    Dataset,
    List(ListKind),
    IndexedMembership,
}

impl CompoundKind {
    pub fn class_key(self) -> Vocab {
        match self {
            CompoundKind::TypedStatement => Vocab::TypedStatementUnit,
            CompoundKind::QualityMeasurement => Vocab::QualityMeasurementUnit,
            CompoundKind::Item(ItemKind::Instance) => Vocab::InstanceItemUnit,
            CompoundKind::Item(ItemKind::Class) => Vocab::ClassItemUnit,
            CompoundKind::Item(ItemKind::TextHybrid) => Vocab::TextResourceHybridItemUnit,
            CompoundKind::ItemGroup(GroupKind::Instance) => Vocab::InstanceItemGroupUnit,
            CompoundKind::ItemGroup(GroupKind::Class) => Vocab::ClassItemGroupUnit,
            CompoundKind::ItemGroup(GroupKind::ClassAxiom) => Vocab::ClassAxiomItemGroupUnit,
            CompoundKind::GranularityTree => Vocab::GranularityTreeUnit,
            CompoundKind::GranularItemGroup => Vocab::GranularItemGroupUnit,
            CompoundKind::Context => Vocab::ContextUnit,
            CompoundKind::Dataset => Vocab::DatasetUnit,
            CompoundKind::List(ListKind::Ordered) => Vocab::OrderedListUnit,
            CompoundKind::List(ListKind::Unordered) => Vocab::UnorderedListUnit,
            CompoundKind::List(ListKind::Set) => Vocab::SetUnit,
            CompoundKind::IndexedMembership => Vocab::IndexedMembershipUnit,
        }
    }

    pub fn from_class_key(key: Vocab) -> Option<Self> {
        ALL_KINDS.iter().copied().find(|k| k.class_key() == key)
    }
}

const ALL_KINDS: &[CompoundKind] = &[
    CompoundKind::TypedStatement,
    CompoundKind::QualityMeasurement,
    CompoundKind::Item(ItemKind::Instance),
    CompoundKind::Item(ItemKind::Class),
    CompoundKind::Item(ItemKind::TextHybrid),
    CompoundKind::ItemGroup(GroupKind::Instance),
    CompoundKind::ItemGroup(GroupKind::Class),
    CompoundKind::ItemGroup(GroupKind::ClassAxiom),
    CompoundKind::GranularityTree,
    CompoundKind::GranularItemGroup,
    CompoundKind::Context,
    CompoundKind::Dataset,
    CompoundKind::List(ListKind::Ordered),
    CompoundKind::List(ListKind::Unordered),
    CompoundKind::List(ListKind::Set),
    CompoundKind::IndexedMembership,
];

impl fmt::Display for CompoundKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CompoundKind::TypedStatement => "typed-statement",
            CompoundKind::QualityMeasurement => "quality-measurement",
            CompoundKind::Item(ItemKind::Instance) => "instance-item",
            CompoundKind::Item(ItemKind::Class) => "class-item",
            CompoundKind::Item(ItemKind::TextHybrid) => "text-hybrid-item",
            CompoundKind::ItemGroup(GroupKind::Instance) => "instance-item-group",
            CompoundKind::ItemGroup(GroupKind::Class) => "class-item-group",
            CompoundKind::ItemGroup(GroupKind::ClassAxiom) => "class-axiom-item-group",
            CompoundKind::GranularityTree => "granularity-tree",
            CompoundKind::GranularItemGroup => "granular-item-group",
            CompoundKind::Context => "context",
            CompoundKind::Dataset => "dataset",
            CompoundKind::List(ListKind::Ordered) => "ordered-list",
            CompoundKind::List(ListKind::Unordered) => "unordered-list",
            CompoundKind::List(ListKind::Set) => "set",
            CompoundKind::IndexedMembership => "indexed-membership",
        })
    }
}

/// A semantic unit whose data graph is the merge of its associated units.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompoundUnit {
    pub upri: Upri,
    pub kind: CompoundKind,
    pub subject: Option<Upri>,
    pub associated: BTreeSet<Upri>,
    /// `(a, b)`: `a hasLinkedSemanticUnit b`.
    pub linked: BTreeSet<(Upri, Upri)>,
    /// `(u, b)`: `u objectDescribedBySemanticUnit b`.
    pub described_by: BTreeSet<(Upri, Upri)>,
    /// The statement unit a typed statement unit was built around.
    pub reference: Option<Upri>,
    /// Position of an indexed membership.
    pub index: Option<u64>,
}

impl CompoundUnit {
    pub fn new(upri: Upri, kind: CompoundKind) -> Self {
        CompoundUnit {
            upri,
            kind,
            subject: None,
            associated: BTreeSet::new(),
            linked: BTreeSet::new(),
            described_by: BTreeSet::new(),
            reference: None,
            index: None,
        }
    }

    /// Semantic-units-layer quads describing this compound, in its own graph.
    pub fn quads(&self, catalog: &VocabularyCatalog) -> Vec<Quad> {
        let g = &self.upri;
        let q = |s: &Upri, p: Vocab, o: Term| Quad::new(s.clone(), catalog.iri(p).clone(), o, g.clone());
        let mut out = vec![q(g, Vocab::Type, catalog.iri(self.kind.class_key()).clone().into())];
        if let Some(s) = &self.subject {
            out.push(q(g, Vocab::HasSemanticUnitSubject, s.clone().into()));
        }
        for a in &self.associated {
            out.push(q(g, Vocab::HasAssociatedSemanticUnit, a.clone().into()));
        }
        for (a, b) in &self.linked {
            out.push(q(a, Vocab::HasLinkedSemanticUnit, b.clone().into()));
        }
        for (u, b) in &self.described_by {
            out.push(q(u, Vocab::ObjectDescribedBySemanticUnit, b.clone().into()));
        }
        if let Some(i) = self.index {
            out.push(q(g, Vocab::Index, Literal::integer(i as i64).into()));
        }
        out
    }

    pub fn report_line(&self) -> String {
        let associated: Vec<&str> = self.associated.iter().map(Upri::as_str).collect();
        format!(
            "unit {} kind={} subject={} associated={}",
            self.upri,
            self.kind,
            self.subject.as_ref().map_or("-", Upri::as_str),
            associated.join(",")
        )
    }
}

/// A partition together with every compound built over it.
#[derive(Clone, Debug)]
pub struct ProcessedGraph {
    pub partition: PartitionResult,
    pub typed: Vec<CompoundUnit>,
    pub quality: Vec<CompoundUnit>,
    pub items: Vec<CompoundUnit>,
    pub groups: Vec<CompoundUnit>,
    pub trees: Vec<(CompoundUnit, GranularityTree)>,
    pub cycles: Vec<CycleReport>,
    pub contexts: Vec<CompoundUnit>,
    pub boundaries: Vec<Boundary>,
    pub warnings: Vec<String>,
}

impl ProcessedGraph {
    pub fn build(partition: PartitionResult, catalog: &VocabularyCatalog, minter: &Minter) -> Self {
        let mut warnings = Vec::new();
        let (typed, w) = build_typed_statement_units(&partition, catalog, minter);
        warnings.extend(w);
        let quality = build_quality_measurement_units(&partition, &typed, minter);
        let (items, w) = build_item_units(&partition, &typed, &quality, catalog, minter);
        warnings.extend(w);
        let groups = build_item_group_units(&partition, &items, &typed, &quality, catalog, minter);
        let TreeBuild { trees, cycles } =
            build_granularity_tree_units(&partition, &typed, catalog, minter);
        let ContextBuild { units: contexts, boundaries } =
            build_context_units(&partition, catalog, minter);
        ProcessedGraph {
            partition,
            typed,
            quality,
            items,
            groups,
            trees,
            cycles,
            contexts,
            boundaries,
            warnings,
        }
    }

    pub fn compounds(&self) -> impl Iterator<Item = &CompoundUnit> {
        self.typed
            .iter()
            .chain(&self.quality)
            .chain(&self.items)
            .chain(&self.groups)
            .chain(self.trees.iter().map(|(u, _)| u))
            .chain(&self.contexts)
    }

    pub fn compound(&self, upri: &Upri) -> Option<&CompoundUnit> {
        self.compounds().find(|c| &c.upri == upri)
    }

    pub fn statement(&self, upri: &Upri) -> Option<&StatementUnit> {
        self.partition.unit(upri)
    }

    /// Granular item groups, computed on demand from the trees and items.
    pub fn granular_item_groups(&self) -> Vec<CompoundUnit> {
        self.trees
            .iter()
            .map(|(unit, tree)| granular_item_group(unit, tree, &self.items))
            .collect()
    }

    /// The merged data graph of any unit, statement or compound.
    pub fn data_graph(&self, upri: &Upri) -> BTreeSet<Quad> {
        let mut out = BTreeSet::new();
        let mut seen = BTreeSet::new();
        self.collect_data(upri, &mut out, &mut seen);
        out
    }

    fn collect_data(&self, upri: &Upri, out: &mut BTreeSet<Quad>, seen: &mut BTreeSet<Upri>) {
        if !seen.insert(upri.clone()) {
            return;
        }
        if let Some(unit) = self.statement(upri) {
            out.extend(unit.quads.iter().cloned());
        } else if let Some(compound) = self.compound(upri) {
            for a in &compound.associated {
                self.collect_data(a, out, seen);
            }
        }
    }

    /// The partition output plus the quads of every compound.
    pub fn dataset(&self, catalog: &VocabularyCatalog) -> QuadDataset {
        self.partition
            .dataset
            .union(self.compounds().flat_map(|c| c.quads(catalog)))
    }

    pub fn report(&self) -> String {
        let mut out = String::new();
        for c in self.compounds() {
            out.push_str(&c.report_line());
            out.push('\n');
        }
        out
    }

    /// Counts per compound kind, in kind order.
    pub fn counts(&self) -> BTreeMap<CompoundKind, usize> {
        let mut counts = BTreeMap::new();
        for c in self.compounds() {
            *counts.entry(c.kind).or_insert(0) += 1;
        }
        counts
    }
}

/// Minimal union-find over indices.
pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut x = x;
        while self.parent[x] != root {
            let next = self.parent[x];
            self.parent[x] = root;
            x = next;
        }
        root
    }

    /// Joins two sets; the smaller index becomes the root so results are stable.
    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}

/// Interns identifiers to indices for [`UnionFind`].
#[derive(Default)]
pub(crate) struct Interner {
    ids: BTreeMap<Upri, usize>,
    names: Vec<Upri>,
}

impl Interner {
    pub(crate) fn id(&mut self, upri: &Upri) -> usize {
        if let Some(&i) = self.ids.get(upri) {
            return i;
        }
        self.names.push(upri.clone());
        self.ids.insert(upri.clone(), self.names.len() - 1);
        self.names.len() - 1
    }

    pub(crate) fn get(&self, upri: &Upri) -> Option<usize> {
        self.ids.get(upri).copied()
    }

    pub(crate) fn len(&self) -> usize {
        self.names.len()
    }
}
