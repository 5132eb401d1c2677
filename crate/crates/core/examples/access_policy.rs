//! Hide the locations of endangered animals from everyone but curators.

use std::error::Error;
use std::fmt::Write as _;

use semantic_units::compound::{CompoundUnit, ProcessedGraph};
use semantic_units::fdo::{apply_access_policy, AccessPolicy, Minter, Requester};
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
    let dataset = parse_quads(&fixture("endangered.trig"), Syntax::TriG)?;
    let graph = ProcessedGraph::build(partition(&dataset, &schemas, &catalog, &minter)?, &catalog, &minter);
    let policy = AccessPolicy::parse(&fixture("endangered.policy"))?;

    let data = graph.dataset(&catalog);
    let compounds: Vec<&CompoundUnit> = graph.compounds().collect();
    let mut out = String::new();
    for role in ["visitor", "curator"] {
        let requester = Requester::from([("role".to_string(), role.to_string())]);
        let view = apply_access_policy(&graph.partition.units, &compounds, &data, &policy, &requester, &catalog);
        let visible = view.filter_dataset(&data, &catalog);
        writeln!(out, "{role}: {} hidden, {} of {} quads visible", view.hidden.len(), visible.len(), data.len())?;
        for h in &view.hidden {
            let unit = graph.statement(h).expect("statement unit");
            writeln!(out, "  hidden {} about {}", unit.unit_class.local_name(), unit.subject.local_name())?;
        }
    }
    Ok(out)
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    print!("{}", run_example()?);
    Ok(())
}
