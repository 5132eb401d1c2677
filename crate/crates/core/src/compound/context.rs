use std::collections::BTreeMap;

use super::{CompoundKind, CompoundUnit, Interner, UnionFind};
use crate::fdo::Minter;
use crate::store::{ResourceIndex, ResourceKind, Upri, VocabularyCatalog};
use crate::units::PartitionResult;

/// Where an is-about statement unit sits between two frames of reference.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Boundary {
    pub unit: Upri,
    pub subject_context: Option<Upri>,
    pub object_context: Option<Upri>,
}

impl Boundary {
    /// Both ends fall into the same context.
    pub fn is_degenerate(&self) -> bool {
        self.subject_context.is_some() && self.subject_context == self.object_context
    }
}

#[derive(Clone, Debug, Default)]
pub struct ContextBuild {
    pub units: Vec<CompoundUnit>,
    pub boundaries: Vec<Boundary>,
}

/// Context units: connected components of the statement units once is-about
/// units are taken out.
///
/// Units connect through shared subjects and IRI objects; classes and
/// properties do not connect anything. An is-about unit belongs to the context
/// of its subject side and is recorded as a boundary to its object side.
pub fn build_context_units(
    partition: &PartitionResult,
    catalog: &VocabularyCatalog,
    minter: &Minter,
) -> ContextBuild {
    let index = ResourceIndex::build(&partition.dataset, catalog);
    let connects = |r: &Upri| {
        !matches!(
            index.kind(r),
            Ok(ResourceKind::OntologyClass | ResourceKind::PropertyResource)
        )
    };

    let mut names = Interner::default();
    let mut pairs = Vec::new();
    for unit in partition.units.iter().filter(|u| !u.is_about()) {
        let u = names.id(&unit.upri);
        for r in unit.resources() {
            if connects(r) {
                pairs.push((u, names.id(r)));
            }
        }
    }
    // Endpoints of is-about units must be known even if nothing else mentions them.
    for unit in partition.units.iter().filter(|u| u.is_about()) {
        names.id(&unit.subject);
    }
    let mut uf = UnionFind::new(names.len());
    for (a, b) in pairs {
        uf.union(a, b);
    }

    let mut members: BTreeMap<usize, Vec<&Upri>> = BTreeMap::new();
    for unit in partition.units.iter().filter(|u| !u.is_about()) {
        let root = uf.find(names.get(&unit.upri).expect("interned"));
        members.entry(root).or_default().push(&unit.upri);
    }
    let mut order: Vec<(usize, Vec<&Upri>)> = members.into_iter().collect();
    order.sort_by(|a, b| a.1.iter().min().cmp(&b.1.iter().min()));

    let mut contexts: Vec<CompoundUnit> = Vec::new();
    let mut by_root: BTreeMap<usize, usize> = BTreeMap::new();
    for (root, units) in order {
        let mut c = CompoundUnit::new(minter.mint(), CompoundKind::Context);
        c.associated = units.into_iter().cloned().collect();
        by_root.insert(root, contexts.len());
        contexts.push(c);
    }

    let mut boundaries = Vec::new();
    for unit in partition.units.iter().filter(|u| u.is_about()) {
        let mut side = |r: Option<&Upri>| {
            let id = r.and_then(|r| names.get(r))?;
            by_root.get(&uf.find(id)).copied()
        };
        let subject_side = side(Some(&unit.subject));
        let object_side = side(unit.arguments().next().and_then(|t| t.as_iri()));
        let home = match subject_side.or(object_side) {
            Some(i) => i,
            None => {
                let mut c = CompoundUnit::new(minter.mint(), CompoundKind::Context);
                c.associated.insert(unit.upri.clone());
                contexts.push(c);
                contexts.len() - 1
            }
        };
        contexts[home].associated.insert(unit.upri.clone());
        boundaries.push(Boundary {
            unit: unit.upri.clone(),
            subject_context: subject_side.map(|i| contexts[i].upri.clone()),
            object_context: object_side.map(|i| contexts[i].upri.clone()),
        });
    }
    ContextBuild {
        units: contexts,
        boundaries,
    }
}
