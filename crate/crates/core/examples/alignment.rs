//! Align two independently minted copies of the same graph, then the graph
//! against a slightly edited copy.

use std::error::Error;
use std::fmt::Write as _;

use semantic_units::align::{align_graphs, Score, LEVELS};
use semantic_units::compound::ProcessedGraph;
use semantic_units::fdo::Minter;
use semantic_units::store::{parse_quads, QuadDataset, Syntax, VocabularyCatalog};
use semantic_units::units::{compile_schema, partition};

fn fixture(name: &str) -> String {
    let path = format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(path).expect("fixture exists")
}

fn process(dataset: &QuadDataset, namespace: &str, seed: u64) -> Result<ProcessedGraph, Box<dyn Error>> {
    let catalog = VocabularyCatalog::default();
    let schemas = compile_schema(&fixture("schemas.sus"))?;
    let minter = Minter::new(namespace, Some(seed))?;
    Ok(ProcessedGraph::build(partition(dataset, &schemas, &catalog, &minter)?, &catalog, &minter))
}

pub fn run_example() -> Result<String, Box<dyn Error>> {
    let dataset = parse_quads(&fixture("contexts.trig"), Syntax::TriG)?;
    let left = process(&dataset, "https://a.example.org/", 1)?;
    let right = process(&dataset, "https://b.example.org/", 2)?;
    let report = align_graphs(&left, &right);

    let mut out = String::new();
    for level in LEVELS {
        let (l, r) = report.unmatched(level);
        writeln!(out, "{level}: {} matched, unmatched {l}/{r}", report.at(level).count())?;
    }
    writeln!(out, "all scores 1: {}", report.all_perfect())?;

    // Drop the label of one resource: its identification unit now matches only in part.
    let edited = dataset.filter(|q| !(q.subject.local_name() == "headX" && q.predicate.local_name() == "label"));
    let report = align_graphs(&left, &process(&edited, "https://b.example.org/", 2)?);
    for c in report.correspondences.iter().filter(|c| c.score < Score::from_integer(1)) {
        writeln!(out, "{} {} score {}", c.level, c.left.unit().local_name(), c.score)?;
    }
    Ok(out)
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    print!("{}", run_example()?);
    Ok(())
}
