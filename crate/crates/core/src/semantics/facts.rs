use std::collections::BTreeSet;

use super::syntax::Atom;
use crate::compound::ProcessedGraph;
use crate::store::{Term, Vocab, VocabularyCatalog};
use crate::units::{IdentificationKind, Marker, PartitionResult, StatementUnit};

fn symbol(term: &Term) -> String {
    match term {
        Term::Iri(i) => i.as_str().to_string(),
        Term::Literal(l) => l.to_string(),
    }
}

/// Ground facts describing one statement unit.
///
/// Class memberships and the subject link are emitted for the unit itself.
/// Each quad appears twice: reified under the unit as `su:statement` (IRI
/// object) or `su:data-statement` (literal object), and directly as
/// `p(s, o)`. Units carrying the negation marker state the direct atom as
/// `-p(s, o)`.
pub fn unit_facts(unit: &StatementUnit, catalog: &VocabularyCatalog) -> Vec<Atom> {
    let u = unit.upri.as_str();
    let mut out = Vec::new();
    let classes: BTreeSet<&str> = unit
        .classes
        .iter()
        .map(|c| c.as_str())
        .chain(unit.markers.iter().map(|m| catalog.iri(m.class_key()).as_str()))
        .collect();
    for c in classes {
        out.push(Atom::fact(c, [u]));
    }
    out.push(Atom::fact(
        catalog.iri(Vocab::HasSemanticUnitSubject).as_str(),
        [u, unit.subject.as_str()],
    ));
    let negated = unit.markers.contains(&Marker::Negation);
    for quad in &unit.quads {
        let (s, p, o) = (quad.subject.as_str(), quad.predicate.as_str(), symbol(&quad.object));
        let reified = if quad.object.as_literal().is_some() {
            Vocab::DataStatement
        } else {
            Vocab::Statement
        };
        out.push(Atom::fact(catalog.iri(reified).as_str(), [u, s, p, o.as_str()]));
        let direct = Atom::fact(p, [s, o.as_str()]);
        out.push(if negated { direct.negate() } else { direct });
    }
    if unit.identification_kind() == Some(IdentificationKind::NamedIndividual) {
        out.push(Atom::fact(catalog.iri(Vocab::NamedIndividual).as_str(), [unit.subject.as_str()]));
    }
    out
}

/// Facts for every statement unit of a partition, sorted and deduplicated.
pub fn facts_from_units(partition: &PartitionResult, catalog: &VocabularyCatalog) -> Vec<Atom> {
    let facts: BTreeSet<Atom> = partition
        .units
        .iter()
        .flat_map(|u| unit_facts(u, catalog))
        .collect();
    facts.into_iter().collect()
}

/// Unit facts plus compound memberships: each compound's class and its
/// `su:hasAssociatedSemanticUnit` links.
pub fn facts_from_graph(graph: &ProcessedGraph, catalog: &VocabularyCatalog) -> Vec<Atom> {
    let mut facts: BTreeSet<Atom> = facts_from_units(&graph.partition, catalog).into_iter().collect();
    let associated = catalog.iri(Vocab::HasAssociatedSemanticUnit).as_str();
    for c in graph.compounds() {
        let upri = c.upri.as_str();
        facts.insert(Atom::fact(catalog.iri(c.kind.class_key()).as_str(), [upri]));
        for a in &c.associated {
            facts.insert(Atom::fact(associated, [upri, a.as_str()]));
        }
    }
    facts.into_iter().collect()
}
