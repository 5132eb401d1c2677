//! From statement units to OWL axioms: unit facts, background rules, stable
//! models and translation patterns.

use std::error::Error;
use std::fmt::Write as _;

use semantic_units::fdo::Minter;
use semantic_units::semantics::reason_units;
use semantic_units::store::{parse_quads, Syntax, VocabularyCatalog};
use semantic_units::units::{compile_schema, partition};

fn fixture(name: &str) -> String {
    let path = format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(path).expect("fixture exists")
}

pub fn run_example() -> Result<String, Box<dyn Error>> {
    let catalog = VocabularyCatalog::default();
    let schemas = compile_schema(&fixture("schemas.sus"))?;
    let mut out = String::new();
    // Universal statement, negated type and a cardinality restriction.
    for name in ["hand-thumb.trig", "negated-type.trig", "cardinality.trig"] {
        let minter = Minter::new("https://example.org/unit/", Some(7))?;
        let dataset = parse_quads(&fixture(name), Syntax::TriG)?;
        let result = partition(&dataset, &schemas, &catalog, &minter)?;
        let reasoning = reason_units(&result, &catalog)?;
        writeln!(out, "== {name}: {} facts", reasoning.facts.len())?;
        for (pattern, axiom) in &reasoning.axioms {
            writeln!(out, "  [{pattern}] {axiom}")?;
        }
    }
    Ok(out)
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    print!("{}", run_example()?);
    Ok(())
}
