//! The three kinds of identification unit: a named individual, some instance
//! of a class and every instance of a class.

use std::error::Error;
use std::fmt::Write as _;

use semantic_units::fdo::Minter;
use semantic_units::store::{parse_quads, Syntax, VocabularyCatalog};
use semantic_units::units::{partition, render_dynamic_label};

fn fixture(name: &str) -> String {
    let path = format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(path).expect("fixture exists")
}

pub fn run_example() -> Result<String, Box<dyn Error>> {
    let catalog = VocabularyCatalog::default();
    let dataset = parse_quads(&fixture("identification.trig"), Syntax::TriG)?;
    let minter = Minter::new("https://example.org/unit/", Some(7))?;
    // Identification needs no schema.
    let result = partition(&dataset, &[], &catalog, &minter)?;

    let mut out = String::new();
    for unit in result.units.iter().filter(|u| u.is_identification()) {
        let label = render_dynamic_label(unit, &result.dataset, &catalog)?;
        writeln!(out, "{:?}: {}", unit.identification_kind().unwrap(), label.text)?;
    }
    Ok(out)
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    print!("{}", run_example()?);
    Ok(())
}
