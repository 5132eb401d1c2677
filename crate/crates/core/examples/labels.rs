//! Dynamic labels and the quality measurement unit of a weight measurement.

use std::error::Error;
use std::fmt::Write as _;

use semantic_units::compound::ProcessedGraph;
use semantic_units::fdo::Minter;
use semantic_units::store::{parse_quads, Syntax, VocabularyCatalog};
use semantic_units::units::{classify_unit, compile_schema, partition, render_dynamic_label};

fn fixture(name: &str) -> String {
    let path = format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(path).expect("fixture exists")
}

pub fn run_example() -> Result<String, Box<dyn Error>> {
    let catalog = VocabularyCatalog::default();
    let schemas = compile_schema(&fixture("schemas.sus"))?;
    let minter = Minter::new("https://example.org/unit/", Some(7))?;
    let dataset = parse_quads(&fixture("weight.trig"), Syntax::TriG)?;
    let result = partition(&dataset, &schemas, &catalog, &minter)?;

    let mut out = String::new();
    for unit in result.non_identification() {
        let label = render_dynamic_label(unit, &result.dataset, &catalog)?;
        let class = classify_unit(unit, &result.dataset, &catalog)?;
        writeln!(out, "[{:?}/{:?}] {}", class.relation, class.category, label.text)?;
    }

    let graph = ProcessedGraph::build(result, &catalog, &minter);
    for q in &graph.quality {
        writeln!(out, "quality measurement unit over {} units", q.associated.len())?;
    }
    Ok(out)
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    print!("{}", run_example()?);
    Ok(())
}
