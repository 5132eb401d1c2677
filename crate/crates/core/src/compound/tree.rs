use std::collections::{BTreeMap, BTreeSet};

use super::{CompoundKind, CompoundUnit, Interner, UnionFind};
use crate::fdo::Minter;
use crate::store::{Upri, VocabularyCatalog};
use crate::units::PartitionResult;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GranularityTree {
    pub predicate: Upri,
    pub nodes: BTreeSet<Upri>,
    /// `(parent, child)` after transitive reduction.
    pub edges: BTreeSet<(Upri, Upri)>,
    pub root: Upri,
    pub depth: usize,
}

/// A component whose edges violate antisymmetry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleReport {
    pub predicate: Upri,
    pub nodes: BTreeSet<Upri>,
    pub units: BTreeSet<Upri>,
}

#[derive(Clone, Debug, Default)]
pub struct TreeBuild {
    pub trees: Vec<(CompoundUnit, GranularityTree)>,
    pub cycles: Vec<CycleReport>,
}

/// Granularity trees for every partial-order predicate of the catalog.
///
/// A statement unit contributes an edge for each of its quads that uses the
/// predicate with an IRI object. Edges implied by transitivity are dropped from
/// the tree shape but their units stay associated with the tree.
pub fn build_granularity_tree_units(
    partition: &PartitionResult,
    typed: &[CompoundUnit],
    catalog: &VocabularyCatalog,
    minter: &Minter,
) -> TreeBuild {
    let typed_of: BTreeMap<&Upri, &Upri> = typed
        .iter()
        .filter_map(|t| t.reference.as_ref().map(|r| (r, &t.upri)))
        .collect();
    let mut build = TreeBuild::default();
    for predicate in catalog.partial_orders() {
        let mut unit_edges: Vec<(&Upri, (Upri, Upri))> = Vec::new();
        for unit in partition.non_identification() {
            for quad in &unit.quads {
                if &quad.predicate == predicate {
                    if let Some(o) = quad.object.as_iri() {
                        unit_edges.push((&unit.upri, (quad.subject.clone(), o.clone())));
                    }
                }
            }
        }
        let edges: BTreeSet<(Upri, Upri)> = unit_edges.iter().map(|(_, e)| e.clone()).collect();

        let mut names = Interner::default();
        for (a, b) in &edges {
            names.id(a);
            names.id(b);
        }
        let mut uf = UnionFind::new(names.len());
        for (a, b) in &edges {
            let (x, y) = (names.id(a), names.id(b));
            uf.union(x, y);
        }
        let mut components: BTreeMap<usize, BTreeSet<(Upri, Upri)>> = BTreeMap::new();
        for (a, b) in &edges {
            let root = uf.find(names.get(a).expect("interned"));
            components.entry(root).or_default().insert((a.clone(), b.clone()));
        }

        for component in components.values() {
            let units_in = |keep: &dyn Fn(&(Upri, Upri)) -> bool| -> BTreeSet<Upri> {
                unit_edges
                    .iter()
                    .filter(|(_, e)| keep(e))
                    .map(|(u, _)| (*u).clone())
                    .collect()
            };
            if has_cycle(component) {
                build.cycles.push(CycleReport {
                    predicate: predicate.clone(),
                    nodes: component.iter().flat_map(|(a, b)| [a.clone(), b.clone()]).collect(),
                    units: units_in(&|e| component.contains(e)),
                });
                continue;
            }
            let reduced = transitive_reduction(component);
            let children = adjacency(&reduced);
            let targets: BTreeSet<&Upri> = reduced.iter().map(|(_, b)| b).collect();
            let roots: BTreeSet<&Upri> = reduced
                .iter()
                .map(|(a, _)| a)
                .filter(|a| !targets.contains(a))
                .collect();
            for root in roots {
                let (nodes, depth) = descend(root, &children);
                let tree_edges: BTreeSet<(Upri, Upri)> = reduced
                    .iter()
                    .filter(|(a, b)| nodes.contains(a) && nodes.contains(b))
                    .cloned()
                    .collect();
                let members = units_in(&|(a, b)| nodes.contains(a) && nodes.contains(b));
                let mut unit = CompoundUnit::new(minter.mint(), CompoundKind::GranularityTree);
                unit.subject = Some(root.clone());
                for m in &members {
                    unit.associated.insert(m.clone());
                    if let Some(t) = typed_of.get(m) {
                        unit.associated.insert((*t).clone());
                    }
                }
                build.trees.push((
                    unit,
                    GranularityTree {
                        predicate: predicate.clone(),
                        nodes,
                        edges: tree_edges,
                        root: root.clone(),
                        depth,
                    },
                ));
            }
        }
    }
    build
}

/// The granular item group of a tree: the items whose subjects are tree nodes.
pub fn granular_item_group(
    tree_unit: &CompoundUnit,
    tree: &GranularityTree,
    items: &[CompoundUnit],
) -> CompoundUnit {
    let mut unit = CompoundUnit::new(tree_unit.upri.join("-granular"), CompoundKind::GranularItemGroup);
    unit.subject = Some(tree.root.clone());
    unit.associated = items
        .iter()
        .filter(|i| i.subject.as_ref().is_some_and(|s| tree.nodes.contains(s)))
        .map(|i| i.upri.clone())
        .collect();
    unit
}

fn adjacency(edges: &BTreeSet<(Upri, Upri)>) -> BTreeMap<&Upri, Vec<&Upri>> {
    let mut out: BTreeMap<&Upri, Vec<&Upri>> = BTreeMap::new();
    for (a, b) in edges {
        out.entry(a).or_default().push(b);
    }
    out
}

fn has_cycle(edges: &BTreeSet<(Upri, Upri)>) -> bool {
    // Kahn's algorithm: a cycle leaves nodes with positive in-degree.
    let children = adjacency(edges);
    let mut indegree: BTreeMap<&Upri, usize> = BTreeMap::new();
    for (a, b) in edges {
        indegree.entry(a).or_insert(0);
        *indegree.entry(b).or_insert(0) += 1;
    }
    let mut ready: Vec<&Upri> = indegree.iter().filter(|(_, &d)| d == 0).map(|(n, _)| *n).collect();
    let mut seen = 0;
    while let Some(n) = ready.pop() {
        seen += 1;
        for c in children.get(n).into_iter().flatten() {
            let d = indegree.get_mut(c).expect("indexed");
            *d -= 1;
            if *d == 0 {
                ready.push(c);
            }
        }
    }
    seen < indegree.len()
}

/// Drops `a -> c` whenever `c` is reachable from `a` by a longer path. Acyclic input.
pub(crate) fn transitive_reduction(edges: &BTreeSet<(Upri, Upri)>) -> BTreeSet<(Upri, Upri)> {
    let children = adjacency(edges);
    edges
        .iter()
        .filter(|(a, c)| {
            let mut stack: Vec<&Upri> = children[a].iter().copied().filter(|b| *b != c).collect();
            let mut seen = BTreeSet::new();
            while let Some(n) = stack.pop() {
                if n == c {
                    return false;
                }
                if seen.insert(n) {
                    stack.extend(children.get(n).into_iter().flatten().copied());
                }
            }
            true
        })
        .cloned()
        .collect()
}

/// Nodes reachable from `root` and the longest path length.
fn descend(root: &Upri, children: &BTreeMap<&Upri, Vec<&Upri>>) -> (BTreeSet<Upri>, usize) {
    fn depth(n: &Upri, children: &BTreeMap<&Upri, Vec<&Upri>>, nodes: &mut BTreeSet<Upri>) -> usize {
        nodes.insert(n.clone());
        children
            .get(n)
            .into_iter()
            .flatten()
            .map(|c| 1 + depth(c, children, nodes))
            .max()
            .unwrap_or(0)
    }
    let mut nodes = BTreeSet::new();
    let d = depth(root, children, &mut nodes);
    (nodes, d)
}
