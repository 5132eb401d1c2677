//! Maps every data-layer quad to exactly one statement unit.
//!
//! Matching is scoped to the graph a quad was read from, so statements that
//! arrive in separate named graphs stay separate units. Within a graph the
//! built-in identification and is-about units are carved out first, then the
//! schemas compete for the remaining quads, and whatever is left becomes an
//! untyped fallback unit per quad.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BTreeSet};

use super::classify::SubjectCategory;
use super::{
    IdentificationKind, Marker, ObjectRole, RelationKind, Slot, StatementSchema, StatementUnit,
    TripleTemplate, UnitError, UnitObject, UnitOrigin,
};
use crate::fdo::Minter;
use crate::store::{
    Layer, Quad, QuadDataset, ResourceIndex, Term, Upri, Vocab, VocabularyCatalog, DEFAULT_GRAPH,
};

#[derive(Clone, Debug, Default)]
pub struct PartitionResult {
    /// Units in minting order.
    pub units: Vec<StatementUnit>,
    /// Source quad to the unit that owns it.
    pub assignment: BTreeMap<Quad, Upri>,
    /// Units synthesized for quads no schema claimed.
    pub fallback: Vec<Upri>,
    /// Re-homed data quads plus the semantic-units layer.
    pub dataset: QuadDataset,
    /// Input graph names that were replaced by a unit identifier.
    pub renamed_graphs: BTreeMap<Upri, Upri>,
    pub warnings: Vec<String>,
    positions: BTreeMap<Upri, usize>,
}

impl PartitionResult {
    pub fn unit(&self, upri: &Upri) -> Option<&StatementUnit> {
        self.positions.get(upri).map(|&i| &self.units[i])
    }

    pub fn identification_units_of<'a>(
        &'a self,
        resource: &'a Upri,
    ) -> impl Iterator<Item = &'a StatementUnit> + 'a {
        self.units
            .iter()
            .filter(move |u| u.is_identification() && &u.subject == resource)
    }

    pub fn non_identification(&self) -> impl Iterator<Item = &StatementUnit> {
        self.units.iter().filter(|u| !u.is_identification())
    }

    pub(crate) fn from_units(
        units: Vec<StatementUnit>,
        dataset: QuadDataset,
        warnings: Vec<String>,
    ) -> Self {
        let positions = units
            .iter()
            .enumerate()
            .map(|(i, u)| (u.upri.clone(), i))
            .collect();
        let assignment = units
            .iter()
            .flat_map(|u| u.source_quads.iter().map(|q| (q.clone(), u.upri.clone())))
            .collect();
        let fallback = units
            .iter()
            .filter(|u| matches!(u.origin, UnitOrigin::Untyped(_)))
            .map(|u| u.upri.clone())
            .collect();
        PartitionResult {
            units,
            assignment,
            fallback,
            dataset,
            renamed_graphs: BTreeMap::new(),
            warnings,
            positions,
        }
    }
}

struct Draft {
    graph: Upri,
    origin: UnitOrigin,
    unit_class: Upri,
    schema_id: Upri,
    subject: Upri,
    objects: Vec<UnitObject>,
    quads: BTreeSet<Quad>,
    relation: RelationKind,
    bindings: BTreeMap<String, Term>,
    label_template: Option<String>,
}

#[derive(Clone, Debug)]
struct Candidate {
    schema: usize,
    quads: BTreeSet<Quad>,
    bindings: BTreeMap<String, Term>,
    matched: usize,
    unbound_adjuncts: usize,
}

pub fn partition(
    dataset: &QuadDataset,
    schemas: &[StatementSchema],
    catalog: &VocabularyCatalog,
    minter: &Minter,
) -> Result<PartitionResult, UnitError> {
    let index = ResourceIndex::build(dataset, catalog);
    let default_graph = Upri::new_unchecked(DEFAULT_GRAPH);
    let type_ = catalog.iri(Vocab::Type);

    let mut by_graph: BTreeMap<&Upri, Vec<&Quad>> = BTreeMap::new();
    let mut markers: BTreeMap<&Upri, BTreeSet<Marker>> = BTreeMap::new();
    for quad in dataset {
        match catalog.layer_of(quad) {
            Layer::Data => by_graph.entry(&quad.graph).or_default().push(quad),
            Layer::SemanticUnits => {
                if quad.subject == quad.graph && &quad.predicate == type_ {
                    if let Some(m) = quad
                        .object
                        .as_iri()
                        .and_then(|c| catalog.marker(c))
                        .and_then(Marker::from_vocab)
                    {
                        markers.entry(&quad.graph).or_default().insert(m);
                    }
                }
            }
        }
    }

    let mut drafts = Vec::new();
    for (&graph, quads) in &by_graph {
        let mut free: BTreeSet<&Quad> = quads.iter().copied().collect();
        identification_drafts(graph, &mut free, catalog, &mut drafts)?;
        is_about_drafts(graph, &mut free, catalog, &mut drafts);
        schema_drafts(graph, &mut free, schemas, &mut drafts)?;
        for quad in std::mem::take(&mut free) {
            drafts.push(fallback_draft(graph, quad, catalog));
        }
    }
    drafts.sort_by(|a, b| (&a.graph, &a.quads).cmp(&(&b.graph, &b.quads)));

    let upris: Vec<Upri> = drafts.iter().map(|_| minter.mint()).collect();
    let mut per_graph: BTreeMap<Upri, Vec<usize>> = BTreeMap::new();
    for (i, d) in drafts.iter().enumerate() {
        per_graph.entry(d.graph.clone()).or_default().push(i);
    }
    let mut renamed = BTreeMap::new();
    let mut warnings = Vec::new();
    let referenced: BTreeSet<&Upri> = dataset
        .data_layer(catalog)
        .flat_map(|q| std::iter::once(&q.subject).chain(q.object.as_iri()))
        .collect();
    for (graph, members) in &per_graph {
        if graph == &default_graph {
            continue;
        }
        match members.as_slice() {
            [only] => {
                renamed.insert(graph.clone(), upris[*only].clone());
            }
            _ if referenced.contains(graph) => warnings.push(format!(
                "graph {graph} is referenced but split into {} units; references kept as is",
                members.len()
            )),
            _ => {}
        }
    }
    let rename_iri = |iri: &Upri| renamed.get(iri).cloned().unwrap_or_else(|| iri.clone());
    let rename_term = |term: &Term| match term {
        Term::Iri(iri) => Term::Iri(rename_iri(iri)),
        lit => lit.clone(),
    };

    let mut units = Vec::with_capacity(drafts.len());
    let mut out: BTreeSet<Quad> = BTreeSet::new();
    for (draft, upri) in drafts.into_iter().zip(upris) {
        let category = match SubjectCategory::resolve(&index, &draft.subject) {
            Ok(c) => Some(c),
            Err(e) => {
                warnings.push(format!("unit {upri}: no subject category ({e})"));
                None
            }
        };
        let unit_markers = if draft.graph == default_graph {
            BTreeSet::new()
        } else {
            markers.get(&draft.graph).cloned().unwrap_or_default()
        };
        let mut classes = BTreeSet::from([draft.unit_class.clone()]);
        classes.insert(catalog.iri(relation_key(draft.relation)).clone());
        if let Some(c) = category {
            classes.insert(catalog.iri(c.class_key()).clone());
        }
        for m in &unit_markers {
            classes.insert(catalog.iri(m.class_key()).clone());
        }

        let subject = rename_iri(&draft.subject);
        let quads: BTreeSet<Quad> = draft
            .quads
            .iter()
            .map(|q| Quad::new(rename_iri(&q.subject), q.predicate.clone(), rename_term(&q.object), upri.clone()))
            .collect();
        out.extend(quads.iter().cloned());
        out.insert(Quad::new(
            upri.clone(),
            catalog.iri(Vocab::HasSemanticUnitSubject).clone(),
            subject.clone(),
            upri.clone(),
        ));
        for class in &classes {
            out.insert(Quad::new(upri.clone(), type_.clone(), class.clone(), upri.clone()));
        }
        units.push(StatementUnit {
            upri,
            unit_class: draft.unit_class,
            schema_id: draft.schema_id,
            classes,
            subject,
            objects: draft
                .objects
                .iter()
                .map(|o| UnitObject {
                    term: rename_term(&o.term),
                    role: o.role,
                })
                .collect(),
            quads,
            origin: draft.origin,
            relation: draft.relation,
            category,
            markers: unit_markers,
            bindings: draft
                .bindings
                .iter()
                .map(|(k, v)| (k.clone(), rename_term(v)))
                .collect(),
            label_template: draft.label_template,
            source_graph: draft.graph,
            source_quads: draft.quads,
        });
    }

    // Semantic-units quads of graphs that were not re-minted survive, with
    // references to re-minted graphs updated.
    for quad in dataset.layer(catalog, Layer::SemanticUnits) {
        if per_graph.contains_key(&quad.graph) {
            continue;
        }
        out.insert(Quad::new(
            rename_iri(&quad.subject),
            quad.predicate.clone(),
            rename_term(&quad.object),
            rename_iri(&quad.graph),
        ));
    }

    let mut result = PartitionResult::from_units(units, out.into_iter().collect(), warnings);
    result.renamed_graphs = renamed;
    Ok(result)
}

fn relation_key(relation: RelationKind) -> Vocab {
    match relation {
        RelationKind::Qualitative => Vocab::QualitativeStatementUnit,
        RelationKind::Quantitative => Vocab::QuantitativeStatementUnit,
    }
}

fn identification_drafts(
    graph: &Upri,
    free: &mut BTreeSet<&Quad>,
    catalog: &VocabularyCatalog,
    drafts: &mut Vec<Draft>,
) -> Result<(), UnitError> {
    let kind_of = |quad: &Quad| -> Option<IdentificationKind> {
        let object = quad.object.as_iri()?;
        if catalog.is(&quad.predicate, Vocab::Type) && !catalog.is_unit_class(object) {
            Some(IdentificationKind::NamedIndividual)
        } else if catalog.is(&quad.predicate, Vocab::SomeInstanceOf) {
            Some(IdentificationKind::SomeInstance)
        } else if catalog.is(&quad.predicate, Vocab::EveryInstanceOf) {
            Some(IdentificationKind::EveryInstance)
        } else {
            None
        }
    };
    let mut found: BTreeMap<Upri, (BTreeSet<IdentificationKind>, Vec<&Quad>)> = BTreeMap::new();
    for &quad in free.iter() {
        if let Some(kind) = kind_of(quad) {
            let entry = found.entry(quad.subject.clone()).or_default();
            entry.0.insert(kind);
            entry.1.push(quad);
        }
    }
    for (subject, (kinds, typing)) in found {
        if kinds.len() > 1 {
            return Err(UnitError::MixedIdentification {
                resource: subject,
                graph: graph.clone(),
            });
        }
        let kind = *kinds.iter().next().expect("non-empty");
        let mut quads: BTreeSet<Quad> = typing.iter().map(|&q| q.clone()).collect();
        let mut objects: Vec<UnitObject> = typing
            .iter()
            .map(|q| UnitObject {
                term: q.object.clone(),
                role: ObjectRole::Argument,
            })
            .collect();
        for &quad in free.iter() {
            if quad.subject != subject {
                continue;
            }
            let label = catalog.is(&quad.predicate, Vocab::Label) && quad.object.as_literal().is_some();
            let cardinality = kind == IdentificationKind::SomeInstance
                && catalog.is(&quad.predicate, Vocab::QualifiedCardinality);
            if label || cardinality {
                quads.insert(quad.clone());
                objects.push(UnitObject {
                    term: quad.object.clone(),
                    role: ObjectRole::Adjunct,
                });
            }
        }
        free.retain(|q| !quads.contains(*q));
        let class = catalog.iri(kind.class_key()).clone();
        let bindings = BTreeMap::from([
            ("s".to_string(), Term::Iri(subject.clone())),
            ("c".to_string(), typing[0].object.clone()),
        ]);
        let template = match kind {
            IdentificationKind::NamedIndividual => "{s} is an instance of {c}",
            IdentificationKind::SomeInstance => "{s} is some instance of {c}",
            IdentificationKind::EveryInstance => "{s} is every instance of {c}",
        };
        drafts.push(Draft {
            graph: graph.clone(),
            origin: UnitOrigin::Identification(kind),
            unit_class: class.clone(),
            schema_id: class,
            subject,
            objects,
            quads,
            relation: RelationKind::Qualitative,
            bindings,
            label_template: Some(template.to_string()),
        });
    }
    Ok(())
}

fn is_about_drafts(
    graph: &Upri,
    free: &mut BTreeSet<&Quad>,
    catalog: &VocabularyCatalog,
    drafts: &mut Vec<Draft>,
) {
    let class = catalog.iri(Vocab::IsAboutStatementUnit).clone();
    let claimed: Vec<&Quad> = free
        .iter()
        .copied()
        .filter(|q| catalog.is(&q.predicate, Vocab::IsAbout))
        .collect();
    for quad in claimed {
        free.remove(quad);
        drafts.push(Draft {
            graph: graph.clone(),
            origin: UnitOrigin::IsAbout,
            unit_class: class.clone(),
            schema_id: class.clone(),
            subject: quad.subject.clone(),
            objects: vec![UnitObject {
                term: quad.object.clone(),
                role: ObjectRole::Argument,
            }],
            quads: BTreeSet::from([quad.clone()]),
            relation: RelationKind::Qualitative,
            bindings: BTreeMap::from([
                ("s".to_string(), Term::Iri(quad.subject.clone())),
                ("o".to_string(), quad.object.clone()),
            ]),
            label_template: Some("{s} is about {o}".to_string()),
        });
    }
}

fn fallback_draft(graph: &Upri, quad: &Quad, catalog: &VocabularyCatalog) -> Draft {
    let class = catalog.iri(Vocab::UntypedStatementUnit).clone();
    let relation = if quad.object.is_numeric_literal() {
        RelationKind::Quantitative
    } else {
        RelationKind::Qualitative
    };
    Draft {
        graph: graph.clone(),
        origin: UnitOrigin::Untyped(quad.predicate.clone()),
        unit_class: class.clone(),
        schema_id: class,
        subject: quad.subject.clone(),
        objects: vec![UnitObject {
            term: quad.object.clone(),
            role: ObjectRole::Argument,
        }],
        quads: BTreeSet::from([quad.clone()]),
        relation,
        bindings: BTreeMap::from([
            ("s".to_string(), Term::Iri(quad.subject.clone())),
            ("p".to_string(), Term::Iri(quad.predicate.clone())),
            ("o".to_string(), quad.object.clone()),
        ]),
        label_template: Some("{s} {p} {o}".to_string()),
    }
}

fn schema_drafts(
    graph: &Upri,
    free: &mut BTreeSet<&Quad>,
    schemas: &[StatementSchema],
    drafts: &mut Vec<Draft>,
) -> Result<(), UnitError> {
    let pool: Vec<&Quad> = free.iter().copied().collect();
    let mut candidates: Vec<Candidate> = Vec::new();
    for (si, schema) in schemas.iter().enumerate() {
        let anchor = &schema.templates[schema.anchor_index];
        for &quad in &pool {
            let mut bindings = BTreeMap::new();
            if !bind(anchor, quad, &mut bindings) {
                continue;
            }
            if let Some(c) = complete(si, schema, quad, bindings, &pool) {
                if !candidates
                    .iter()
                    .any(|o| o.schema == c.schema && o.quads == c.quads)
                {
                    candidates.push(c);
                }
            }
        }
    }
    let rank = |c: &Candidate| (Reverse(c.matched), c.unbound_adjuncts, schemas[c.schema].class.clone());
    candidates.sort_by(|a, b| (rank(a), &a.quads).cmp(&(rank(b), &b.quads)));

    let mut claimed: BTreeMap<&Quad, usize> = BTreeMap::new();
    let mut accepted: Vec<&Candidate> = Vec::new();
    'next: for candidate in &candidates {
        for quad in &candidate.quads {
            if let Some(&owner) = claimed.get(quad) {
                let other = accepted[owner];
                if rank(other) == rank(candidate) {
                    return Err(UnitError::OverlapConflict {
                        first: schemas[other.schema].class.clone(),
                        second: schemas[candidate.schema].class.clone(),
                        quad: format!("{} {} {}", quad.subject, quad.predicate, quad.object),
                    });
                }
                continue 'next;
            }
        }
        for quad in &candidate.quads {
            claimed.insert(quad, accepted.len());
        }
        accepted.push(candidate);
    }

    for candidate in accepted {
        let schema = &schemas[candidate.schema];
        free.retain(|q| !candidate.quads.contains(*q));
        let subject = match candidate.bindings.get(&schema.subject) {
            Some(Term::Iri(iri)) => iri.clone(),
            _ => unreachable!("subject binding checked during matching"),
        };
        let mut objects: Vec<UnitObject> = schema
            .arguments
            .iter()
            .filter_map(|v| candidate.bindings.get(v))
            .map(|t| UnitObject {
                term: t.clone(),
                role: ObjectRole::Argument,
            })
            .collect();
        objects.extend(
            schema
                .adjuncts
                .iter()
                .filter_map(|v| candidate.bindings.get(v))
                .map(|t| UnitObject {
                    term: t.clone(),
                    role: ObjectRole::Adjunct,
                }),
        );
        let label = schema.label.clone().unwrap_or_else(|| {
            let mut text = format!("{{{}}} {}", schema.subject, schema.anchor.local_name());
            for a in &schema.arguments {
                text.push_str(&format!(" {{{a}}}"));
            }
            text
        });
        drafts.push(Draft {
            graph: graph.clone(),
            origin: UnitOrigin::Schema,
            unit_class: schema.class.clone(),
            schema_id: schema.id.clone(),
            subject,
            objects,
            quads: candidate.quads.clone(),
            relation: schema.relation,
            bindings: candidate.bindings.clone(),
            label_template: Some(label),
        });
    }
    Ok(())
}

/// Extends an anchor binding over the required templates (backtracking) and then
/// the optional ones (greedy).
fn complete(
    si: usize,
    schema: &StatementSchema,
    anchor: &Quad,
    bindings: BTreeMap<String, Term>,
    pool: &[&Quad],
) -> Option<Candidate> {
    let required: Vec<&TripleTemplate> = schema.required().skip(1).collect();
    let mut used = vec![anchor];
    let mut bindings = bindings;
    if !backtrack(schema, &required, pool, &mut used, &mut bindings) {
        return None;
    }
    let mut matched = required.len() + 1;
    for template in schema.optional() {
        for &quad in pool {
            if used.contains(&quad) {
                continue;
            }
            let mut trial = bindings.clone();
            if bind(template, quad, &mut trial) {
                bindings = trial;
                used.push(quad);
                matched += 1;
                break;
            }
        }
    }
    let unbound_adjuncts = schema
        .adjuncts
        .iter()
        .filter(|a| !bindings.contains_key(*a))
        .count();
    Some(Candidate {
        schema: si,
        quads: used.into_iter().cloned().collect(),
        bindings,
        matched,
        unbound_adjuncts,
    })
}

fn backtrack<'a>(
    schema: &StatementSchema,
    remaining: &[&TripleTemplate],
    pool: &[&'a Quad],
    used: &mut Vec<&'a Quad>,
    bindings: &mut BTreeMap<String, Term>,
) -> bool {
    let Some((template, rest)) = remaining.split_first() else {
        return well_typed(schema, bindings);
    };
    for &quad in pool {
        if used.contains(&quad) {
            continue;
        }
        let mut trial = bindings.clone();
        if !bind(template, quad, &mut trial) {
            continue;
        }
        used.push(quad);
        if backtrack(schema, rest, pool, used, &mut trial) {
            *bindings = trial;
            return true;
        }
        used.pop();
    }
    false
}

fn well_typed(schema: &StatementSchema, bindings: &BTreeMap<String, Term>) -> bool {
    if !matches!(bindings.get(&schema.subject), Some(Term::Iri(_))) {
        return false;
    }
    schema.arguments.iter().all(|arg| match bindings.get(arg) {
        None => false,
        Some(term) if schema.numeric.contains(arg) => term.is_numeric_literal(),
        Some(term) => term.as_iri().is_some(),
    })
}

fn bind(template: &TripleTemplate, quad: &Quad, bindings: &mut BTreeMap<String, Term>) -> bool {
    template.predicate == quad.predicate
        && bind_slot(&template.subject, &Term::Iri(quad.subject.clone()), bindings)
        && bind_slot(&template.object, &quad.object, bindings)
}

fn bind_slot(slot: &Slot, value: &Term, bindings: &mut BTreeMap<String, Term>) -> bool {
    match slot {
        Slot::Iri(iri) => value.as_iri() == Some(iri),
        Slot::Literal(lit) => value.as_literal() == Some(lit),
        Slot::Var(name) => match bindings.get(name) {
            Some(bound) => bound == value,
            None => {
                bindings.insert(name.clone(), value.clone());
                true
            }
        },
    }
}
