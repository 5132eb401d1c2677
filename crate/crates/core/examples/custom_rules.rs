//! Extend the bundled background rules and translation patterns with your own.

use std::error::Error;
use std::fmt::Write as _;

use semantic_units::fdo::Minter;
use semantic_units::semantics::{
    default_patterns, default_program, facts_from_units, parse_patterns, reason, LogicProgram,
    DEFAULT_BOUND,
};
use semantic_units::store::{parse_quads, Syntax, VocabularyCatalog};
use semantic_units::units::{compile_schema, partition};

fn fixture(name: &str) -> String {
    let path = format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(path).expect("fixture exists")
}

// A named individual with a part is a whole, unless stated otherwise.
const RULES: &str = "
@prefix ex: <http://example.org/> .
@prefix obo: <http://purl.obolibrary.org/obo/> .
ex:Whole(X) :- obo:BFO_0000051(X, Y), owl:NamedIndividual(X), not ex:NotAWhole(X).
";

const PATTERNS: &str = "
prefix ex: <http://example.org/>
pattern whole
when ex:Whole(X).
emit rdf:type(X, ex:Whole)
end
";

pub fn run_example() -> Result<String, Box<dyn Error>> {
    let catalog = VocabularyCatalog::default();
    let schemas = compile_schema(&fixture("schemas.sus"))?;
    let minter = Minter::new("https://example.org/unit/", Some(7))?;
    let dataset = parse_quads(&fixture("hand-thumb.trig"), Syntax::TriG)?;
    let result = partition(&dataset, &schemas, &catalog, &minter)?;

    let mut program = default_program();
    program.extend(LogicProgram::parse(RULES)?);
    let mut patterns = default_patterns();
    patterns.extend(parse_patterns(PATTERNS)?);

    let reasoning = reason(facts_from_units(&result, &catalog), &program, &patterns, DEFAULT_BOUND, &catalog)?;
    let mut out = String::new();
    for (_, axiom) in reasoning.axioms.iter().filter(|(id, _)| id == "whole") {
        writeln!(out, "{axiom}")?;
    }
    Ok(out)
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    print!("{}", run_example()?);
    Ok(())
}
