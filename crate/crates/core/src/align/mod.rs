//! Hierarchical alignment of two processed graphs.
//!
//! Item groups are matched first, then the items inside matched groups, then
//! the statement units inside matched items and finally their triples. Units
//! that sit outside any group (or item) on both sides are matched among
//! themselves at their own level.
//!
//! Every unit gets a multiset signature built from unit classes and subject
//! kinds, never from instance identifiers, so renaming instances or units on
//! one side does not change the result. Candidates are paired greedily by
//! Jaccard overlap of signatures. Ties go to the pair whose full content (the
//! signatures of every statement below it) overlaps most, then to signature
//! text, and only then to UPRI order.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_rational::Ratio;

use crate::compound::{CompoundUnit, ProcessedGraph};
use crate::store::{Quad, Term, Upri};
use crate::units::StatementUnit;

pub type Score = Ratio<usize>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Level {
    ItemGroup,
    Item,
    Statement,
    Triple,
}

pub const LEVELS: [Level; 4] = [Level::ItemGroup, Level::Item, Level::Statement, Level::Triple];

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Level::ItemGroup => "item-group",
            Level::Item => "item",
            Level::Statement => "statement",
            Level::Triple => "triple",
        })
    }
}

/// What a correspondence points at: a unit, or one triple of a statement unit.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Anchor {
    Unit(Upri),
    Triple { unit: Upri, quad: Quad },
}

impl Anchor {
    /// The unit itself, or the statement unit holding the triple.
    pub fn unit(&self) -> &Upri {
        match self {
            Anchor::Unit(u) | Anchor::Triple { unit: u, .. } => u,
        }
    }
}

impl fmt::Display for Anchor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Anchor::Unit(u) => write!(f, "<{u}>"),
            Anchor::Triple { unit, quad } => {
                write!(f, "<{unit}> <{}> <{}> {}", quad.subject, quad.predicate, quad.object)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Correspondence {
    pub level: Level,
    pub left: Anchor,
    pub right: Anchor,
    pub score: Score,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AlignmentReport {
    pub correspondences: Vec<Correspondence>,
    pub unmatched_left: BTreeMap<Level, Vec<Anchor>>,
    pub unmatched_right: BTreeMap<Level, Vec<Anchor>>,
    pub diagnostics: Vec<String>,
}

impl AlignmentReport {
    pub fn at(&self, level: Level) -> impl Iterator<Item = &Correspondence> {
        self.correspondences.iter().filter(move |c| c.level == level)
    }

    pub fn unmatched(&self, level: Level) -> (usize, usize) {
        let n = |m: &BTreeMap<Level, Vec<Anchor>>| m.get(&level).map_or(0, Vec::len);
        (n(&self.unmatched_left), n(&self.unmatched_right))
    }

    pub fn all_perfect(&self) -> bool {
        self.correspondences.iter().all(|c| c.score == Score::from_integer(1))
    }

    /// Tab-separated lines: `level left right score`, then unmatched anchors.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for d in &self.diagnostics {
            out.push_str(&format!("# {d}\n"));
        }
        for c in &self.correspondences {
            out.push_str(&format!("{}\t{}\t{}\t{}\n", c.level, c.left, c.right, c.score));
        }
        for (side, map) in [("left", &self.unmatched_left), ("right", &self.unmatched_right)] {
            for (level, anchors) in map {
                for a in anchors {
                    out.push_str(&format!("unmatched-{side}\t{level}\t{a}\n"));
                }
            }
        }
        out
    }
}

type Multiset = BTreeMap<String, usize>;

fn jaccard(a: &Multiset, b: &Multiset) -> Score {
    let keys: BTreeSet<&String> = a.keys().chain(b.keys()).collect();
    let (mut inter, mut union) = (0, 0);
    for k in keys {
        let (x, y) = (a.get(k).copied().unwrap_or(0), b.get(k).copied().unwrap_or(0));
        inter += x.min(y);
        union += x.max(y);
    }
    if union == 0 {
        Score::from_integer(1)
    } else {
        Score::new(inter, union)
    }
}

fn multiset(items: impl IntoIterator<Item = String>) -> Multiset {
    let mut m = Multiset::new();
    for i in items {
        *m.entry(i).or_insert(0) += 1;
    }
    m
}

fn sig_text(m: &Multiset) -> String {
    m.iter().map(|(k, n)| format!("{k}*{n}")).collect::<Vec<_>>().join(" ")
}

/// One side of the alignment with the lookups signatures need.
struct Side<'a> {
    g: &'a ProcessedGraph,
    /// Resource to `kind:class` for every resource with an identification unit.
    identity: BTreeMap<&'a Upri, String>,
    /// IRIs that are part of the shared vocabulary: predicates and identified classes.
    vocabulary: BTreeSet<&'a Upri>,
    compounds: BTreeMap<&'a Upri, &'a CompoundUnit>,
}

impl<'a> Side<'a> {
    fn new(g: &'a ProcessedGraph) -> Self {
        let mut identity: BTreeMap<&Upri, BTreeSet<String>> = BTreeMap::new();
        let mut vocabulary = BTreeSet::new();
        for u in &g.partition.units {
            vocabulary.extend(u.quads.iter().map(|q| &q.predicate));
            if let Some(kind) = u.identification_kind() {
                for class in u.arguments().filter_map(Term::as_iri) {
                    vocabulary.insert(class);
                    identity.entry(&u.subject).or_default().insert(format!("{kind:?}:{class}"));
                }
            }
        }
        let identity = identity
            .into_iter()
            .map(|(r, sigs)| (r, sigs.into_iter().collect::<Vec<_>>().join("+")))
            .collect();
        Side {
            g,
            identity,
            vocabulary,
            compounds: g.compounds().map(|c| (&c.upri, c)).collect(),
        }
    }

    fn iri_sig(&self, iri: &Upri) -> String {
        if let Some(id) = self.identity.get(iri) {
            id.clone()
        } else if self.vocabulary.contains(iri) {
            iri.to_string()
        } else {
            "_".to_string()
        }
    }

    fn term_sig(&self, t: &Term) -> String {
        match t {
            Term::Iri(i) => self.iri_sig(i),
            Term::Literal(l) => l.to_string(),
        }
    }

    fn subject_sig(&self, s: Option<&Upri>) -> String {
        s.map_or_else(|| "-".to_string(), |s| self.iri_sig(s))
    }

    fn unit_class(&self, upri: &Upri) -> Option<String> {
        if let Some(u) = self.g.statement(upri) {
            Some(u.unit_class.to_string())
        } else {
            self.compounds.get(upri).map(|c| c.kind.to_string())
        }
    }

    fn unit_subject(&self, upri: &Upri) -> Option<&'a Upri> {
        if let Some(u) = self.g.statement(upri) {
            Some(&u.subject)
        } else {
            self.compounds.get(upri).and_then(|c| c.subject.as_ref())
        }
    }

    /// Statement units reachable from a compound through its associations.
    fn statements_in(&self, upri: &Upri) -> BTreeSet<&'a Upri> {
        let mut out = BTreeSet::new();
        let mut stack = vec![upri];
        let mut seen = BTreeSet::new();
        while let Some(u) = stack.pop() {
            if !seen.insert(u) {
                continue;
            }
            if let Some(s) = self.g.statement(u) {
                out.insert(&s.upri);
            } else if let Some(c) = self.compounds.get(u) {
                stack.extend(c.associated.iter());
            }
        }
        out
    }

    fn triple_sig(&self, q: &Quad) -> Multiset {
        multiset([
            format!("s:{}", self.iri_sig(&q.subject)),
            format!("p:{}", q.predicate),
            format!("o:{}", self.term_sig(&q.object)),
        ])
    }

    fn group_sig(&self, c: &CompoundUnit) -> Multiset {
        multiset(c.associated.iter().map(|m| {
            format!(
                "{}|{}",
                self.unit_class(m).unwrap_or_default(),
                self.subject_sig(self.unit_subject(m))
            )
        }))
    }

    fn item_sig(&self, c: &CompoundUnit) -> Multiset {
        let mut m = multiset(
            self.statements_in(&c.upri)
                .into_iter()
                .filter_map(|s| self.unit_class(s))
                .map(|class| format!("unit:{class}")),
        );
        m.insert(format!("subject:{}", self.subject_sig(c.subject.as_ref())), 1);
        m
    }

    /// Signatures of every statement unit below a compound.
    fn content(&self, upri: &Upri) -> Multiset {
        multiset(
            self.statements_in(upri)
                .into_iter()
                .filter_map(|s| self.g.statement(s))
                .map(|s| sig_text(&self.statement_sig(s))),
        )
    }

    fn statement_sig(&self, u: &StatementUnit) -> Multiset {
        let mut m = multiset(u.quads.iter().map(|q| {
            let t = self.triple_sig(q);
            format!("triple:{}", sig_text(&t))
        }));
        *m.entry(format!("subject:{}", self.iri_sig(&u.subject))).or_insert(0) += 1;
        m
    }
}

struct Candidate {
    anchor: Anchor,
    class: String,
    sig: Multiset,
    /// Finer content signature, used to break ties.
    detail: Multiset,
}

/// Greedy maximum-overlap pairing of candidates with equal class.
fn greedy(left: &[Candidate], right: &[Candidate]) -> Vec<(usize, usize, Score)> {
    let mut pairs = Vec::new();
    for (i, l) in left.iter().enumerate() {
        for (j, r) in right.iter().enumerate() {
            if l.class != r.class {
                continue;
            }
            let score = jaccard(&l.sig, &r.sig);
            if score > Score::from_integer(0) {
                let detail = jaccard(&l.detail, &r.detail);
                let text = (sig_text(&l.sig), sig_text(&r.sig), sig_text(&l.detail), sig_text(&r.detail));
                pairs.push((score, detail, text, i, j));
            }
        }
    }
    pairs.sort_by(|a, b| {
        b.0.cmp(&a.0)
            .then_with(|| b.1.cmp(&a.1))
            .then_with(|| a.2.cmp(&b.2))
            .then_with(|| left[a.3].anchor.cmp(&left[b.3].anchor))
            .then_with(|| right[a.4].anchor.cmp(&right[b.4].anchor))
    });
    let (mut used_l, mut used_r) = (BTreeSet::new(), BTreeSet::new());
    let mut out = Vec::new();
    for (score, _, _, i, j) in pairs {
        if used_l.contains(&i) || used_r.contains(&j) {
            continue;
        }
        used_l.insert(i);
        used_r.insert(j);
        out.push((i, j, score));
    }
    out
}

/// Matches one batch and records correspondences; returns the matched unit pairs.
fn match_batch(
    level: Level,
    left: Vec<Candidate>,
    right: Vec<Candidate>,
    report: &mut AlignmentReport,
    matched: &mut (BTreeSet<Anchor>, BTreeSet<Anchor>),
) -> Vec<(Anchor, Anchor)> {
    let mut out = Vec::new();
    for (i, j, score) in greedy(&left, &right) {
        let (l, r) = (left[i].anchor.clone(), right[j].anchor.clone());
        matched.0.insert(l.clone());
        matched.1.insert(r.clone());
        report.correspondences.push(Correspondence {
            level,
            left: l.clone(),
            right: r.clone(),
            score,
        });
        out.push((l, r));
    }
    out
}

/// Aligns `a` (left) with `b` (right).
pub fn align_graphs(a: &ProcessedGraph, b: &ProcessedGraph) -> AlignmentReport {
    let (sa, sb) = (Side::new(a), Side::new(b));
    let mut report = AlignmentReport::default();

    let classes = |g: &ProcessedGraph| -> BTreeSet<Upri> {
        g.partition.units.iter().map(|u| u.unit_class.clone()).collect()
    };
    if classes(a).is_disjoint(&classes(b)) {
        report
            .diagnostics
            .push("the graphs share no statement unit class; nothing to align".to_string());
    }
    let disjoint = !report.diagnostics.is_empty();

    // Item groups.
    let group = |s: &Side, c: &CompoundUnit| Candidate {
        anchor: Anchor::Unit(c.upri.clone()),
        class: c.kind.to_string(),
        sig: s.group_sig(c),
        detail: s.content(&c.upri),
    };
    let mut matched_groups = (BTreeSet::new(), BTreeSet::new());
    let group_pairs = if disjoint {
        Vec::new()
    } else {
        match_batch(
            Level::ItemGroup,
            a.groups.iter().map(|c| group(&sa, c)).collect(),
            b.groups.iter().map(|c| group(&sb, c)).collect(),
            &mut report,
            &mut matched_groups,
        )
    };

    // Items, inside matched groups and then among items outside every group.
    let item = |s: &Side, c: &CompoundUnit| Candidate {
        anchor: Anchor::Unit(c.upri.clone()),
        class: c.kind.to_string(),
        sig: s.item_sig(c),
        detail: s.content(&c.upri),
    };
    let grouped = |g: &ProcessedGraph| -> BTreeSet<Upri> {
        g.groups.iter().flat_map(|c| c.associated.iter().cloned()).collect()
    };
    let (grouped_a, grouped_b) = (grouped(a), grouped(b));
    let mut matched_items = (BTreeSet::new(), BTreeSet::new());
    let mut item_pairs = Vec::new();
    if !disjoint {
        for (gl, gr) in &group_pairs {
            let members = |s: &Side, g: &ProcessedGraph, anchor: &Anchor, taken: &BTreeSet<Anchor>| {
                let group = s.compounds[anchor.unit()];
                g.items
                    .iter()
                    .filter(|c| group.associated.contains(&c.upri))
                    .filter(|c| !taken.contains(&Anchor::Unit(c.upri.clone())))
                    .map(|c| item(s, c))
                    .collect::<Vec<_>>()
            };
            let left = members(&sa, a, gl, &matched_items.0);
            let right = members(&sb, b, gr, &matched_items.1);
            item_pairs.extend(match_batch(Level::Item, left, right, &mut report, &mut matched_items));
        }
        let free = |s: &Side, g: &ProcessedGraph, grouped: &BTreeSet<Upri>| {
            g.items
                .iter()
                .filter(|c| !grouped.contains(&c.upri))
                .map(|c| item(s, c))
                .collect::<Vec<_>>()
        };
        let (left, right) = (free(&sa, a, &grouped_a), free(&sb, b, &grouped_b));
        item_pairs.extend(match_batch(Level::Item, left, right, &mut report, &mut matched_items));
    }

    // Statement units, inside matched items and then among units outside every item.
    let statement = |s: &Side, u: &StatementUnit| Candidate {
        anchor: Anchor::Unit(u.upri.clone()),
        class: u.unit_class.to_string(),
        sig: s.statement_sig(u),
        detail: Multiset::new(),
    };
    let in_items = |s: &Side, g: &ProcessedGraph| -> BTreeSet<Upri> {
        g.items
            .iter()
            .flat_map(|c| s.statements_in(&c.upri))
            .cloned()
            .collect()
    };
    let (itemized_a, itemized_b) = (in_items(&sa, a), in_items(&sb, b));
    let mut matched_units = (BTreeSet::new(), BTreeSet::new());
    let mut unit_pairs = Vec::new();
    if !disjoint {
        for (il, ir) in &item_pairs {
            let members = |s: &Side, anchor: &Anchor, taken: &BTreeSet<Anchor>| {
                s.statements_in(anchor.unit())
                    .into_iter()
                    .filter(|u| !taken.contains(&Anchor::Unit((*u).clone())))
                    .filter_map(|u| s.g.statement(u))
                    .map(|u| statement(s, u))
                    .collect::<Vec<_>>()
            };
            let left = members(&sa, il, &matched_units.0);
            let right = members(&sb, ir, &matched_units.1);
            unit_pairs.extend(match_batch(Level::Statement, left, right, &mut report, &mut matched_units));
        }
        let free = |s: &Side, g: &ProcessedGraph, itemized: &BTreeSet<Upri>| {
            g.partition
                .units
                .iter()
                .filter(|u| !itemized.contains(&u.upri))
                .map(|u| statement(s, u))
                .collect::<Vec<_>>()
        };
        let (left, right) = (free(&sa, a, &itemized_a), free(&sb, b, &itemized_b));
        unit_pairs.extend(match_batch(Level::Statement, left, right, &mut report, &mut matched_units));
    }

    // Triples of matched statement units.
    let mut matched_triples = (BTreeSet::new(), BTreeSet::new());
    for (ul, ur) in &unit_pairs {
        let triples = |s: &Side, anchor: &Anchor| {
            let unit = anchor.unit();
            s.g.statement(unit)
                .map(|u| {
                    u.quads
                        .iter()
                        .map(|q| Candidate {
                            anchor: Anchor::Triple {
                                unit: unit.clone(),
                                quad: q.clone(),
                            },
                            class: q.predicate.to_string(),
                            sig: s.triple_sig(q),
                            detail: Multiset::new(),
                        })
                        .collect::<Vec<_>>()
                })
                .unwrap_or_default()
        };
        let (left, right) = (triples(&sa, ul), triples(&sb, ur));
        match_batch(Level::Triple, left, right, &mut report, &mut matched_triples);
    }

    // Everything left over, per level.
    let all_triples = |g: &ProcessedGraph| -> Vec<Anchor> {
        g.partition
            .units
            .iter()
            .flat_map(|u| {
                u.quads.iter().map(|q| Anchor::Triple {
                    unit: u.upri.clone(),
                    quad: q.clone(),
                })
            })
            .collect()
    };
    let units = |cs: &[CompoundUnit]| -> Vec<Anchor> { cs.iter().map(|c| Anchor::Unit(c.upri.clone())).collect() };
    let statements = |g: &ProcessedGraph| -> Vec<Anchor> {
        g.partition.units.iter().map(|u| Anchor::Unit(u.upri.clone())).collect()
    };
    let levels = [
        (Level::ItemGroup, units(&a.groups), units(&b.groups), &matched_groups),
        (Level::Item, units(&a.items), units(&b.items), &matched_items),
        (Level::Statement, statements(a), statements(b), &matched_units),
        (Level::Triple, all_triples(a), all_triples(b), &matched_triples),
    ];
    for (level, left, right, matched) in levels {
        let mut l: Vec<Anchor> = left.into_iter().filter(|x| !matched.0.contains(x)).collect();
        let mut r: Vec<Anchor> = right.into_iter().filter(|x| !matched.1.contains(x)).collect();
        l.sort();
        r.sort();
        if !l.is_empty() {
            report.unmatched_left.insert(level, l);
        }
        if !r.is_empty() {
            report.unmatched_right.insert(level, r);
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ms(items: &[&str]) -> Multiset {
        multiset(items.iter().map(|s| s.to_string()))
    }

    #[test]
    fn multiset_jaccard() {
        assert_eq!(jaccard(&ms(&["a", "a", "b"]), &ms(&["a", "b", "b"])), Score::new(2, 4));
        assert_eq!(jaccard(&ms(&[]), &ms(&[])), Score::from_integer(1));
        assert_eq!(jaccard(&ms(&["a"]), &ms(&["b"])), Score::from_integer(0));
    }

    #[test]
    fn greedy_prefers_best_overlap_then_order() {
        let c = |name: &str, sig: &[&str]| Candidate {
            anchor: Anchor::Unit(Upri::new(format!("http://example.org/{name}")).unwrap()),
            class: "K".into(),
            sig: ms(sig),
            detail: Multiset::new(),
        };
        let left = vec![c("l1", &["a", "b"]), c("l2", &["a"])];
        let right = vec![c("r1", &["a"]), c("r2", &["a", "b"])];
        let pairs = greedy(&left, &right);
        assert_eq!(pairs.len(), 2);
        assert!(pairs.contains(&(0, 1, Score::from_integer(1))));
        assert!(pairs.contains(&(1, 0, Score::from_integer(1))));
    }
}
