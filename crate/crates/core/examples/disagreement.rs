//! A disagreement unit turns the unit it disputes into a negation, and the
//! conflict check reports it.

use std::error::Error;
use std::fmt::Write as _;

use semantic_units::fdo::Minter;
use semantic_units::semantics::{check_conflicts, reason_units, Atom};
use semantic_units::store::{parse_quads, Syntax, VocabularyCatalog};
use semantic_units::units::{compile_schema, partition};

fn fixture(name: &str) -> String {
    let path = format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(path).expect("fixture exists")
}

pub fn run_example() -> Result<String, Box<dyn Error>> {
    let catalog = VocabularyCatalog::default();
    let schemas = compile_schema(&fixture("schemas.sus"))?;
    let minter = Minter::new("https://example.org/unit/", Some(7))?;
    let dataset = parse_quads(&fixture("disagreement.trig"), Syntax::TriG)?;
    let result = partition(&dataset, &schemas, &catalog, &minter)?;

    let reasoning = reason_units(&result, &catalog)?;
    let mut out = String::new();
    for d in &reasoning.conflicts.disputes {
        writeln!(out, "{} disputes {}", d.disagreement, d.target)?;
    }
    for (_, axiom) in &reasoning.axioms {
        writeln!(out, "{axiom}")?;
    }

    // An atom and its classical negation side by side are reported as well.
    let p = Atom::fact("ex:edible", ["ex:apple"]);
    let report = check_conflicts([&p, &p.complement()], &catalog);
    writeln!(out, "classical conflicts: {}", report.classical.len())?;
    Ok(out)
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    print!("{}", run_example()?);
    Ok(())
}
