use std::collections::{BTreeMap, BTreeSet};

use chrono::Utc;

use super::{FdoError, ProvenanceRecord};
use crate::compound::CompoundUnit;
use crate::store::{Quad, QuadDataset, Upri, Vocab, VocabularyCatalog, RDF};
use crate::units::StatementUnit;

pub const NP: &str = "http://www.nanopub.org/nschema#";

/// What a nanopublication carries about one semantic unit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PublishedUnit {
    pub upri: Upri,
    pub classes: BTreeSet<Upri>,
    pub subject: Option<Upri>,
    /// Data graph, in the graph named by `upri`. Empty for compound units.
    pub data: BTreeSet<Quad>,
    pub associated: BTreeSet<Upri>,
    pub schema: Option<Upri>,
}

impl PublishedUnit {
    pub fn from_statement(unit: &StatementUnit) -> Self {
        PublishedUnit {
            upri: unit.upri.clone(),
            classes: unit.classes.clone(),
            subject: Some(unit.subject.clone()),
            data: unit.quads.clone(),
            associated: BTreeSet::new(),
            schema: Some(unit.schema_id.clone()),
        }
    }

    pub fn from_compound(unit: &CompoundUnit, catalog: &VocabularyCatalog) -> Self {
        PublishedUnit {
            upri: unit.upri.clone(),
            classes: BTreeSet::from([catalog.iri(unit.kind.class_key()).clone()]),
            subject: unit.subject.clone(),
            data: BTreeSet::new(),
            associated: unit.associated.clone(),
            schema: None,
        }
    }
}

/// The four named graphs publishing one unit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Nanopublication {
    pub upri: Upri,
    pub head: Upri,
    pub assertion: Upri,
    pub provenance: Upri,
    pub pubinfo: Upri,
    pub quads: QuadDataset,
}

impl Nanopublication {
    pub fn graph_names(&self) -> [&Upri; 4] {
        [&self.head, &self.assertion, &self.provenance, &self.pubinfo]
    }

    pub fn graph(&self, name: &Upri) -> BTreeSet<Quad> {
        self.quads.graph(name).cloned().collect()
    }
}

/// Parsed content of a nanopublication.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParsedNanopublication {
    pub nanopub: Nanopublication,
    pub unit: PublishedUnit,
    pub provenance: ProvenanceRecord,
    pub pubinfo: ProvenanceRecord,
}

fn np(local: &str) -> Upri {
    Upri::new(format!("{NP}{local}")).expect("valid IRI")
}

fn rdf_type() -> Upri {
    Upri::new(format!("{RDF}type")).expect("valid IRI")
}

/// Packages a unit: the assertion graph is the unit's data graph (empty for
/// compound units), the head graph links the other three and carries the
/// unit's classes, subject and associations.
pub fn emit_nanopublication(
    unit: &PublishedUnit,
    provenance: &ProvenanceRecord,
    pubinfo: &ProvenanceRecord,
    catalog: &VocabularyCatalog,
) -> Result<Nanopublication, FdoError> {
    if unit.data.is_empty() && unit.associated.is_empty() {
        return Err(FdoError::EmptyUnit(unit.upri.clone()));
    }
    let now = Utc::now();
    provenance.validate(now)?;
    pubinfo.validate(now)?;

    let upri = unit.upri.join("/np");
    let head = upri.join("/head");
    let prov_graph = upri.join("/provenance");
    let info_graph = upri.join("/pubinfo");
    let u = &unit.upri;
    let hq = |s: &Upri, p: Upri, o: &Upri| Quad::new(s.clone(), p, o.clone(), head.clone());

    let mut quads = vec![
        hq(&upri, rdf_type(), &np("Nanopublication")),
        hq(&upri, np("hasAssertion"), u),
        hq(&upri, np("hasProvenance"), &prov_graph),
        hq(&upri, np("hasPublicationInfo"), &info_graph),
    ];
    for c in &unit.classes {
        quads.push(hq(u, rdf_type(), c));
    }
    if let Some(s) = &unit.subject {
        quads.push(hq(u, catalog.iri(Vocab::HasSemanticUnitSubject).clone(), s));
    }
    for a in &unit.associated {
        quads.push(hq(u, catalog.iri(Vocab::HasAssociatedSemanticUnit).clone(), a));
    }
    quads.extend(unit.data.iter().map(|q| q.in_graph(u)));
    quads.extend(provenance.to_quads(u, &prov_graph, catalog));
    let mut info = pubinfo.clone();
    if info.used_schema.is_none() {
        info.used_schema = unit.schema.clone();
    }
    quads.extend(info.to_quads(&upri, &info_graph, catalog));

    Ok(Nanopublication {
        upri,
        head,
        assertion: u.clone(),
        provenance: prov_graph,
        pubinfo: info_graph,
        quads: quads.into_iter().collect(),
    })
}

/// Heads found in a dataset: `(nanopub, head graph)`.
fn heads(quads: &QuadDataset) -> Vec<(Upri, Upri)> {
    let ty = rdf_type();
    let class = np("Nanopublication");
    quads
        .iter()
        .filter(|q| q.predicate == ty && q.object.as_iri() == Some(&class))
        .map(|q| (q.subject.clone(), q.graph.clone()))
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect()
}

/// Reads back a dataset holding exactly one nanopublication.
pub fn parse_nanopublication(
    quads: &QuadDataset,
    catalog: &VocabularyCatalog,
) -> Result<ParsedNanopublication, FdoError> {
    match heads(quads).as_slice() {
        [] => Err(FdoError::NoHead),
        [(np_upri, head)] => parse_one(quads, np_upri, head, catalog),
        many => Err(FdoError::MultipleHeads(many.len())),
    }
}

/// Reads back every nanopublication of a dataset, ordered by UPRI.
pub fn parse_nanopublications(
    quads: &QuadDataset,
    catalog: &VocabularyCatalog,
) -> Result<Vec<ParsedNanopublication>, FdoError> {
    heads(quads)
        .iter()
        .map(|(np_upri, head)| parse_one(quads, np_upri, head, catalog))
        .collect()
}

fn parse_one(
    quads: &QuadDataset,
    np_upri: &Upri,
    head: &Upri,
    catalog: &VocabularyCatalog,
) -> Result<ParsedNanopublication, FdoError> {
    let head_quads: Vec<&Quad> = quads.graph(head).collect();
    let link = |local: &str| -> Result<Upri, FdoError> {
        let p = np(local);
        head_quads
            .iter()
            .find(|q| &q.subject == np_upri && q.predicate == p)
            .and_then(|q| q.object.as_iri().cloned())
            .ok_or_else(|| FdoError::MissingGraph(local.to_string()))
    };
    let assertion = link("hasAssertion")?;
    let prov_graph = link("hasProvenance")?;
    let info_graph = link("hasPublicationInfo")?;

    let names = quads.graph_names();
    for g in [&prov_graph, &info_graph] {
        if !names.contains(g) {
            return Err(FdoError::DanglingReference(g.clone()));
        }
    }

    // The unit is whatever the head describes besides the nanopublication.
    let described: BTreeSet<&Upri> = head_quads
        .iter()
        .map(|q| &q.subject)
        .filter(|s| *s != np_upri)
        .collect();
    let unit_upri = match described.into_iter().collect::<Vec<_>>().as_slice() {
        [u] => (*u).clone(),
        [] => assertion.clone(),
        _ => {
            return Err(FdoError::AssertionMismatch {
                expected: assertion.to_string(),
                found: "several described units".into(),
            })
        }
    };
    if unit_upri != assertion {
        return Err(FdoError::AssertionMismatch {
            expected: unit_upri.to_string(),
            found: assertion.to_string(),
        });
    }

    let ty = rdf_type();
    let mut by_predicate: BTreeMap<&str, BTreeSet<Upri>> = BTreeMap::new();
    for q in head_quads.iter().filter(|q| q.subject == unit_upri) {
        if let Some(o) = q.object.as_iri() {
            let key = if q.predicate == ty {
                "type"
            } else if catalog.is(&q.predicate, Vocab::HasSemanticUnitSubject) {
                "subject"
            } else if catalog.is(&q.predicate, Vocab::HasAssociatedSemanticUnit) {
                "associated"
            } else {
                continue;
            };
            by_predicate.entry(key).or_default().insert(o.clone());
        }
    }
    let data: BTreeSet<Quad> = quads.graph(&assertion).cloned().collect();
    let associated = by_predicate.remove("associated").unwrap_or_default();
    if data.is_empty() && associated.is_empty() {
        return Err(FdoError::DanglingReference(assertion));
    }
    let provenance = ProvenanceRecord::from_quads(quads.graph(&prov_graph), &unit_upri, catalog)?;
    let pubinfo = ProvenanceRecord::from_quads(quads.graph(&info_graph), np_upri, catalog)?;

    let members: BTreeSet<&Upri> = [head, &assertion, &prov_graph, &info_graph].into();
    let nanopub = Nanopublication {
        upri: np_upri.clone(),
        head: head.clone(),
        assertion: assertion.clone(),
        provenance: prov_graph.clone(),
        pubinfo: info_graph.clone(),
        quads: quads.filter(|q| members.contains(&q.graph)),
    };
    let unit = PublishedUnit {
        upri: unit_upri,
        classes: by_predicate.remove("type").unwrap_or_default(),
        subject: by_predicate.remove("subject").and_then(|s| s.into_iter().next()),
        data,
        associated,
        schema: pubinfo.used_schema.clone(),
    };
    Ok(ParsedNanopublication {
        nanopub,
        unit,
        provenance,
        pubinfo,
    })
}
