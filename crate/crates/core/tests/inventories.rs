//! Unit inventories of the hand-encoded fixtures.

mod common;

use std::collections::BTreeMap;

use semantic_units::compound::{CompoundKind, GroupKind, ItemKind, ProcessedGraph};
use semantic_units::semantics::{reason_units, Reasoning};
use semantic_units::store::VocabularyCatalog;
use semantic_units::units::{IdentificationKind, Marker, StatementUnit, SubjectCategory};

fn classes(g: &ProcessedGraph) -> BTreeMap<&str, usize> {
    let mut out = BTreeMap::new();
    for u in &g.partition.units {
        *out.entry(u.unit_class.local_name()).or_insert(0) += 1;
    }
    out
}

fn reasoning(g: &ProcessedGraph) -> Reasoning {
    reason_units(&g.partition, &VocabularyCatalog::default()).expect("reasoning succeeds")
}

fn owl_lines(r: &Reasoning) -> Vec<String> {
    r.owl().iter().map(|a| a.to_string()).collect()
}

fn with_marker(g: &ProcessedGraph, m: Marker) -> Vec<&StatementUnit> {
    g.partition.units.iter().filter(|u| u.markers.contains(&m)).collect()
}

#[test]
fn statement_unit_of_a_single_relation() {
    let g = common::processed("single-statement.trig");
    assert_eq!(classes(&g), BTreeMap::from([("HasPartStatementUnit", 1)]));
    let unit = &g.partition.units[0];
    assert_eq!(unit.quads.len(), 1);
    // Nothing identifies the subject, so its category stays open.
    assert_eq!(unit.category, None);
    assert_eq!(g.partition.warnings.len(), 1);
}

#[test]
fn three_identification_kinds() {
    let g = common::processed("identification.trig");
    let kinds: Vec<_> = g.partition.units.iter().filter_map(|u| u.identification_kind()).collect();
    assert_eq!(
        kinds.iter().copied().collect::<std::collections::BTreeSet<_>>().len(),
        3,
        "{kinds:?}"
    );
    assert_eq!(g.partition.units.len(), 3);
    // Class affiliation plus label.
    assert!(g.partition.units.iter().all(|u| u.quads.len() == 2));
}

#[test]
fn assertional_contingent_and_universal() {
    let g = common::processed("hand-thumb.trig");
    let mut categories: Vec<_> = g
        .partition
        .non_identification()
        .map(|u| u.category.expect("resolved"))
        .collect();
    categories.sort();
    assert_eq!(
        categories,
        vec![SubjectCategory::Assertional, SubjectCategory::Contingent, SubjectCategory::Universal]
    );
}

#[test]
fn typed_statement_merges_three_units() {
    let g = common::processed("typed-statement.trig");
    assert_eq!(g.typed.len(), 1);
    let typed = &g.typed[0];
    assert_eq!(typed.associated.len(), 3);
    let reference = g.statement(typed.reference.as_ref().unwrap()).unwrap();
    assert_eq!(reference.unit_class.local_name(), "HasPartStatementUnit");
    let ids = typed
        .associated
        .iter()
        .filter_map(|a| g.statement(a))
        .filter(|u| u.identification_kind() == Some(IdentificationKind::NamedIndividual))
        .count();
    assert_eq!(ids, 2);
}

#[test]
fn class_item_over_four_universal_units() {
    let g = common::processed("class-item.trig");
    let items: Vec<_> = g.items.iter().filter(|c| c.kind == CompoundKind::Item(ItemKind::Class)).collect();
    assert_eq!(items.len(), 1);
    let item = items[0];
    assert_eq!(item.subject.as_ref().unwrap().local_name(), "everyAntenna1");
    let universal = g
        .data_graph(&item.upri)
        .iter()
        .map(|q| q.graph.clone())
        .collect::<std::collections::BTreeSet<_>>()
        .into_iter()
        .filter_map(|u| g.statement(&u).cloned())
        .filter(|u| !u.is_identification() && u.category == Some(SubjectCategory::Universal))
        .count();
    assert_eq!(universal, 4);
}

#[test]
fn class_axiom_group_spans_several_subjects() {
    let g = common::processed("class-axiom-group.trig");
    let groups: Vec<_> = g
        .groups
        .iter()
        .filter(|c| c.kind == CompoundKind::ItemGroup(GroupKind::ClassAxiom))
        .collect();
    assert_eq!(groups.len(), 1);
    let subjects: std::collections::BTreeSet<_> = groups[0]
        .associated
        .iter()
        .filter_map(|a| g.compound(a))
        .filter_map(|c| c.subject.clone())
        .collect();
    assert!(subjects.len() > 1, "{subjects:?}");
    assert_eq!(classes(&g).get("LongerThanStatementUnit"), Some(&1));
}

#[test]
fn three_context_units() {
    let g = common::processed("contexts.trig");
    assert_eq!(g.contexts.len(), 3);
    assert_eq!(g.boundaries.len(), 2);
    assert!(g.boundaries.iter().all(|b| !b.is_degenerate()));
    assert_eq!(classes(&g).get("IsAboutStatementUnit"), Some(&2));
}

#[test]
fn negated_type_replaces_plain_assertion() {
    let g = common::processed("negated-type.trig");
    assert_eq!(with_marker(&g, Marker::Negation).len(), 1);
    let owl = owl_lines(&reasoning(&g));
    assert!(owl.contains(&"rdf:type(<http://example.org/fruitX>, owl:complementOf(obo:PO_0030110))".to_string()));
    assert!(!owl.contains(&"rdf:type(<http://example.org/fruitX>, obo:PO_0030110)".to_string()));
}

#[test]
fn absence_of_a_part() {
    let g = common::processed("absent-part.trig");
    let negated = with_marker(&g, Marker::Negation);
    assert_eq!(negated.len(), 1);
    assert_eq!(negated[0].unit_class.local_name(), "HasPartStatementUnit");
    let r = reasoning(&g);
    assert!(r.axioms.iter().any(|(id, _)| id == "negated-relation-some"));
}

#[test]
fn negated_relation_between_individuals() {
    let g = common::processed("negated-relation.trig");
    let negated = with_marker(&g, Marker::Negation);
    assert_eq!(negated.len(), 1);
    assert_eq!(negated[0].unit_class.local_name(), "PartOfStatementUnit");
    let r = reasoning(&g);
    assert!(r.axioms.iter().any(|(id, _)| id == "negated-relation-individual"));
}

#[test]
fn cardinality_restriction_unit() {
    let g = common::processed("cardinality.trig");
    assert_eq!(with_marker(&g, Marker::CardinalityRestriction).len(), 1);
    let r = reasoning(&g);
    let ids: Vec<&str> = r.axioms.iter().map(|(id, _)| id.as_str()).collect();
    assert!(ids.contains(&"cardinality") && ids.contains(&"assertional-some"), "{ids:?}");
}

#[test]
fn disagreement_disputes_one_unit() {
    let g = common::processed("disagreement.trig");
    let disagreements = with_marker(&g, Marker::Disagreement);
    assert_eq!(disagreements.len(), 1);
    let r = reasoning(&g);
    assert_eq!(r.conflicts.disputes.len(), 1);
    let target = &r.conflicts.disputes[0].target;
    let disputed = g.partition.units.iter().find(|u| u.upri.as_str() == target).expect("target is a unit");
    assert!(disputed.is_identification());
}
