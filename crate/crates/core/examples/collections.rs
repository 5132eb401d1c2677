//! Dataset, list and set units assembled by hand from existing units and resources.

use std::collections::BTreeSet;
use std::error::Error;
use std::fmt::Write as _;

use semantic_units::compound::{make_collection_unit, CollectionKind, CompoundError};
use semantic_units::fdo::Minter;
use semantic_units::store::{parse_quads, Syntax, Upri, VocabularyCatalog};
use semantic_units::units::partition;

const DATA: &str = r#"
@prefix ex: <http://example.org/> .
@prefix rdf: <http://www.w3.org/1999/02/22-rdf-syntax-ns#> .
@prefix rdfs: <http://www.w3.org/2000/01/rdf-schema#> .
ex:g1 { ex:step1 rdf:type ex:ProtocolStep . ex:step1 rdfs:label "mix" . }
ex:g2 { ex:step2 rdf:type ex:ProtocolStep . ex:step2 rdfs:label "heat" . }
ex:g3 { ex:step3 rdf:type ex:ProtocolStep . ex:step3 rdfs:label "cool" . }
"#;

pub fn run_example() -> Result<String, Box<dyn Error>> {
    let catalog = VocabularyCatalog::default();
    let minter = Minter::new("https://example.org/unit/", Some(3))?;
    let result = partition(&parse_quads(DATA, Syntax::TriG)?, &[], &catalog, &minter)?;
    let mut out = String::new();

    // A dataset unit collects semantic units.
    let units: Vec<Upri> = result.units.iter().map(|u| u.upri.clone()).collect();
    let known: BTreeSet<Upri> = units.iter().cloned().collect();
    let dataset = make_collection_unit(CollectionKind::Dataset, &units, &known, &minter, &catalog)?;
    writeln!(out, "dataset unit with {} units", dataset.unit.associated.len())?;

    // An ordered list collects resources, one indexed membership per position.
    let ex = |s: &str| Upri::new(format!("http://example.org/{s}")).unwrap();
    let steps = [ex("step1"), ex("step2"), ex("step3")];
    let resources: BTreeSet<Upri> = steps.iter().cloned().collect();
    let list = make_collection_unit(CollectionKind::OrderedList, &steps, &resources, &minter, &catalog)?;
    for indexed in &list.indexed {
        let membership = &list.memberships[indexed.index.unwrap() as usize];
        let member = membership.arguments().next().unwrap();
        writeln!(out, "position {} holds {}", indexed.index.unwrap(), member)?;
    }

    // Sets refuse duplicates.
    let twice = [ex("step1"), ex("step1")];
    match make_collection_unit(CollectionKind::Set, &twice, &resources, &minter, &catalog) {
        Err(CompoundError::DuplicateMember(m)) => writeln!(out, "set rejects duplicate {}", m.local_name())?,
        other => writeln!(out, "unexpected: {other:?}")?,
    }
    Ok(out)
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    print!("{}", run_example()?);
    Ok(())
}
