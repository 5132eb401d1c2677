//! Compound units built over a partition: typed statements, items, item
//! groups and context units.

use std::error::Error;
use std::fmt::Write as _;

use semantic_units::compound::ProcessedGraph;
use semantic_units::fdo::Minter;
use semantic_units::store::{parse_quads, Syntax, VocabularyCatalog};
use semantic_units::units::{compile_schema, partition};

fn fixture(name: &str) -> String {
    let path = format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(path).expect("fixture exists")
}

fn process(name: &str) -> Result<ProcessedGraph, Box<dyn Error>> {
    let catalog = VocabularyCatalog::default();
    let schemas = compile_schema(&fixture("schemas.sus"))?;
    let minter = Minter::new("https://example.org/unit/", Some(7))?;
    let dataset = parse_quads(&fixture(name), Syntax::TriG)?;
    let p = partition(&dataset, &schemas, &catalog, &minter)?;
    Ok(ProcessedGraph::build(p, &catalog, &minter))
}

pub fn run_example() -> Result<String, Box<dyn Error>> {
    let mut out = String::new();
    for name in ["typed-statement.trig", "class-item.trig", "class-axiom-group.trig", "contexts.trig"] {
        let graph = process(name)?;
        writeln!(out, "== {name}")?;
        for (kind, n) in graph.counts() {
            writeln!(out, "  {kind}: {n}")?;
        }
    }

    let graph = process("typed-statement.trig")?;
    let typed = &graph.typed[0];
    writeln!(out, "typed unit about {} merges:", typed.subject.as_ref().unwrap().local_name())?;
    for a in &typed.associated {
        let unit = graph.statement(a).expect("statement unit");
        writeln!(out, "  {}", unit.unit_class.local_name())?;
    }
    writeln!(out, "data graph size {}", graph.data_graph(&typed.upri).len())?;
    Ok(out)
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    print!("{}", run_example()?);
    Ok(())
}
