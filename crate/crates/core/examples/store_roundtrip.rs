//! Read TriG, write N-Quads, read it back, and resolve what kind of thing
//! each resource is.

use std::error::Error;
use std::fmt::Write as _;

use semantic_units::store::{parse_quads, serialize_quads, ResourceIndex, Syntax, Upri, VocabularyCatalog};

const DATA: &str = r#"
@prefix ex: <http://example.org/> .
@prefix obo: <http://purl.obolibrary.org/obo/> .
@prefix rdf: <http://www.w3.org/1999/02/22-rdf-syntax-ns#> .
@prefix su: <https://example.org/semunit#> .
ex:g1 {
  ex:hand1 rdf:type obo:FMA_9712 .
  ex:someHand su:someInstanceOf obo:FMA_9712 .
  ex:hand1 obo:BFO_0000051 ex:thumb1 .
  ex:thumb1 rdf:type obo:FMA_24938 .
}
"#;

pub fn run_example() -> Result<String, Box<dyn Error>> {
    let catalog = VocabularyCatalog::default();
    let dataset = parse_quads(DATA, Syntax::TriG)?;
    let nquads = serialize_quads(&dataset, Syntax::NQuads);
    let again = parse_quads(&nquads, Syntax::NQuads)?;

    let mut out = String::new();
    writeln!(out, "{} quads, round trip equal: {}", dataset.len(), dataset == again)?;
    writeln!(out, "{}", nquads.lines().next().unwrap_or_default())?;

    let index = ResourceIndex::build(&dataset, &catalog);
    for name in ["hand1", "someHand", "thumb1"] {
        let r = Upri::new(format!("http://example.org/{name}"))?;
        writeln!(out, "{name}: {}", index.kind(&r)?)?;
    }
    let class = Upri::new("http://purl.obolibrary.org/obo/FMA_9712")?;
    writeln!(out, "FMA_9712: {}", index.kind(&class)?)?;

    // Blank nodes have no identity across graphs and are refused.
    let blank = "_:b <http://example.org/p> <http://example.org/o> .\n";
    writeln!(out, "blank node input: {}", parse_quads(blank, Syntax::NQuads).unwrap_err())?;
    Ok(out)
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    print!("{}", run_example()?);
    Ok(())
}
