use std::collections::{BTreeMap, BTreeSet};

use super::{CompoundKind, CompoundUnit, GroupKind, UnionFind};
use crate::fdo::Minter;
use crate::store::{ResourceIndex, ResourceKind, Term, Upri, VocabularyCatalog};
use crate::units::PartitionResult;

/// Item group units: connected components of the item-link graph.
///
/// A statement unit links item A to item B when its subject is A's subject and
/// one of its argument objects is B's subject. Statement units that no item
/// reaches join the first group whose resources they touch.
pub fn build_item_group_units(
    partition: &PartitionResult,
    items: &[CompoundUnit],
    typed: &[CompoundUnit],
    quality: &[CompoundUnit],
    catalog: &VocabularyCatalog,
    minter: &Minter,
) -> Vec<CompoundUnit> {
    let by_subject: BTreeMap<&Upri, usize> = items
        .iter()
        .enumerate()
        .filter_map(|(i, item)| item.subject.as_ref().map(|s| (s, i)))
        .collect();
    let mut uf = UnionFind::new(items.len());
    let mut links: Vec<(usize, Upri, Upri, Upri)> = Vec::new();
    for unit in partition.non_identification() {
        let Some(&a) = by_subject.get(&unit.subject) else {
            continue;
        };
        for object in unit.arguments().filter_map(Term::as_iri) {
            if let Some(&b) = by_subject.get(object) {
                if a != b {
                    uf.union(a, b);
                    links.push((a, items[a].upri.clone(), items[b].upri.clone(), unit.upri.clone()));
                }
            }
        }
    }

    let mut components: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..items.len() {
        components.entry(uf.find(i)).or_default().push(i);
    }
    let mut groups: Vec<(CompoundUnit, BTreeSet<&Upri>, BTreeSet<&Upri>)> = Vec::new();
    for (root, members) in &components {
        let mut group = CompoundUnit::new(minter.mint(), CompoundKind::ItemGroup(GroupKind::Instance));
        let subjects: BTreeSet<&Upri> = members
            .iter()
            .filter_map(|&i| items[i].subject.as_ref())
            .collect();
        group.associated = members.iter().map(|&i| items[i].upri.clone()).collect();
        for (a, from, to, witness) in &links {
            if uf.find(*a) == *root {
                group.linked.insert((from.clone(), to.clone()));
                group.described_by.insert((witness.clone(), to.clone()));
            }
        }
        let resources: BTreeSet<&Upri> = partition
            .units
            .iter()
            .filter(|u| subjects.contains(&u.subject))
            .flat_map(|u| u.resources())
            .chain(subjects.iter().copied())
            .collect();
        groups.push((group, resources, subjects));
    }

    let reached = reachable(items, typed.iter().chain(quality), partition);
    let typed_of: BTreeMap<&Upri, &Upri> = typed
        .iter()
        .filter_map(|t| t.reference.as_ref().map(|r| (r, &t.upri)))
        .collect();
    for unit in &partition.units {
        if reached.contains(&unit.upri) {
            continue;
        }
        let touched = unit.resources();
        if let Some((group, _, subjects)) = groups
            .iter_mut()
            .find(|(_, resources, _)| !resources.is_disjoint(&touched))
        {
            group.associated.insert(unit.upri.clone());
            if let Some(t) = typed_of.get(&unit.upri) {
                group.associated.insert((*t).clone());
            }
            if !unit.is_identification() {
                subjects.insert(&unit.subject);
            }
        }
    }

    let index = ResourceIndex::build(&partition.dataset, catalog);
    groups
        .into_iter()
        .map(|(mut group, _, subjects)| {
            let kinds: Vec<_> = subjects.iter().map(|s| index.kind(s).ok()).collect();
            let classy = kinds.iter().all(|k| {
                matches!(k, Some(ResourceKind::SomeInstance | ResourceKind::EveryInstance))
            });
            let universal = kinds.contains(&Some(ResourceKind::EveryInstance));
            let kind = match (classy, universal) {
                (true, true) => GroupKind::ClassAxiom,
                (true, false) => GroupKind::Class,
                _ => GroupKind::Instance,
            };
            group.kind = CompoundKind::ItemGroup(kind);
            group
        })
        .collect()
}

/// Statement units contained, directly or through typed and quality units, in
/// some item.
fn reachable<'a>(
    items: &[CompoundUnit],
    inner: impl Iterator<Item = &'a CompoundUnit>,
    partition: &PartitionResult,
) -> BTreeSet<Upri> {
    let inner: BTreeMap<&Upri, &CompoundUnit> = inner.map(|t| (&t.upri, t)).collect();
    let mut out: BTreeSet<Upri> = items.iter().flat_map(|i| i.associated.iter().cloned()).collect();
    let mut frontier: Vec<Upri> = out.iter().cloned().collect();
    while let Some(next) = frontier.pop() {
        if let Some(t) = inner.get(&next) {
            for a in &t.associated {
                if out.insert(a.clone()) {
                    frontier.push(a.clone());
                }
            }
        }
    }
    out.retain(|u| partition.unit(u).is_some());
    out
}
