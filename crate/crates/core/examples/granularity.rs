//! Granularity trees from a partial-order relation, the granular item groups
//! they induce, and the is-about boundaries that separate context units.

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

pub fn run_example() -> Result<String, Box<dyn Error>> {
    let catalog = VocabularyCatalog::default();
    let schemas = compile_schema(&fixture("schemas.sus"))?;
    let minter = Minter::new("https://example.org/unit/", Some(7))?;
    let dataset = parse_quads(&fixture("contexts.trig"), Syntax::TriG)?;
    let graph = ProcessedGraph::build(partition(&dataset, &schemas, &catalog, &minter)?, &catalog, &minter);

    let mut out = String::new();
    for (unit, tree) in &graph.trees {
        writeln!(
            out,
            "tree over {} rooted at {} depth={} nodes={}",
            tree.predicate.local_name(),
            tree.root.local_name(),
            tree.depth,
            tree.nodes.len()
        )?;
        for (parent, child) in &tree.edges {
            writeln!(out, "  {} -> {}", parent.local_name(), child.local_name())?;
        }
        writeln!(out, "  subject {}", unit.subject.as_ref().map_or("-", |s| s.local_name()))?;
    }
    for group in graph.granular_item_groups() {
        writeln!(out, "granular item group with {} items", group.associated.len())?;
    }
    for b in &graph.boundaries {
        writeln!(out, "is-about boundary, degenerate={}", b.is_degenerate())?;
    }
    writeln!(out, "context units: {}", graph.contexts.len())?;
    Ok(out)
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    print!("{}", run_example()?);
    Ok(())
}
