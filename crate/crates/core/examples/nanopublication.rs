//! Publish a statement unit and a compound unit as nanopublications, write
//! them as TriG and read them back.

use std::error::Error;
use std::fmt::Write as _;

use chrono::{TimeZone, Utc};
use semantic_units::compound::ProcessedGraph;
use semantic_units::fdo::{
    emit_nanopublication, parse_nanopublications, Minter, ProvenanceRecord, PublishedUnit,
};
use semantic_units::store::{parse_quads, serialize_quads, Syntax, Upri, VocabularyCatalog};
use semantic_units::units::{compile_schema, partition};

fn fixture(name: &str) -> String {
    let path = format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(path).expect("fixture exists")
}

pub fn run_example() -> Result<String, Box<dyn Error>> {
    let catalog = VocabularyCatalog::default();
    let schemas = compile_schema(&fixture("schemas.sus"))?;
    let minter = Minter::new("https://example.org/unit/", Some(7))?;
    let dataset = parse_quads(&fixture("typed-statement.trig"), Syntax::TriG)?;
    let graph = ProcessedGraph::build(partition(&dataset, &schemas, &catalog, &minter)?, &catalog, &minter);

    let created = Utc.with_ymd_and_hms(2023, 5, 1, 12, 0, 0).unwrap();
    let mut provenance = ProvenanceRecord::new(Upri::new("https://orcid.org/0000-0000-0000-0001")?, created);
    provenance.title = Some("hand anatomy".into());
    let pubinfo = provenance.clone();

    let statement = graph.partition.non_identification().next().expect("a statement unit");
    let units = [
        PublishedUnit::from_statement(statement),
        PublishedUnit::from_compound(&graph.typed[0], &catalog),
    ];
    let mut quads = Vec::new();
    let mut out = String::new();
    for unit in &units {
        let np = emit_nanopublication(unit, &provenance, &pubinfo, &catalog)?;
        writeln!(out, "nanopub {} with {} quads", np.upri, np.quads.len())?;
        quads.extend(np.quads);
    }

    let trig = serialize_quads(&quads.into_iter().collect(), Syntax::TriG);
    let parsed = parse_nanopublications(&parse_quads(&trig, Syntax::TriG)?, &catalog)?;
    for (p, original) in parsed.iter().zip(&units) {
        writeln!(
            out,
            "read back {}: same unit={} title={:?}",
            p.unit.upri.local_name(),
            &p.unit == original,
            p.provenance.title
        )?;
    }
    Ok(out)
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    print!("{}", run_example()?);
    Ok(())
}
