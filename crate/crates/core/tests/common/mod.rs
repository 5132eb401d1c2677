#![allow(dead_code)]

use std::collections::BTreeSet;
use std::path::PathBuf;

use semantic_units::compound::ProcessedGraph;
use semantic_units::fdo::Minter;
use semantic_units::semantics::{ground_program, stable_models, Atom, LogicProgram, DEFAULT_BOUND};
use semantic_units::store::{parse_quads, Quad, QuadDataset, Syntax, VocabularyCatalog};
use semantic_units::units::{compile_schema, partition, PartitionResult, StatementSchema};

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

pub fn read_fixture(name: &str) -> String {
    std::fs::read_to_string(fixture_path(name)).expect("fixture exists")
}

pub fn dataset(name: &str) -> QuadDataset {
    parse_quads(&read_fixture(name), Syntax::TriG).expect("fixture parses")
}

pub fn schemas() -> Vec<StatementSchema> {
    compile_schema(&read_fixture("schemas.sus")).expect("schemas compile")
}

pub fn minter() -> Minter {
    Minter::new("https://example.org/unit/", Some(7)).unwrap()
}

pub fn partitioned(name: &str) -> PartitionResult {
    let catalog = VocabularyCatalog::default();
    partition(&dataset(name), &schemas(), &catalog, &minter()).expect("partition succeeds")
}

pub fn processed(name: &str) -> ProcessedGraph {
    let catalog = VocabularyCatalog::default();
    let minter = minter();
    let p = partition(&dataset(name), &schemas(), &catalog, &minter).expect("partition succeeds");
    ProcessedGraph::build(p, &catalog, &minter)
}

/// A random dataset over `schema_count` generated schemas, plus the schema text.
///
/// Even schemas match one triple, odd ones a two-triple chain. Subjects are
/// typed so identification units appear, some triples use predicates no
/// schema claims, and quads are spread over a few source graphs.
pub fn random_dataset(seed: u64, schema_count: usize, max_triples: usize) -> (QuadDataset, String) {
    use rand::{Rng, SeedableRng};
    use semantic_units::store::{Literal, Quad, Term, Upri};

    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let ex = |s: String| Upri::new(format!("http://example.org/{s}")).unwrap();
    let rdf_type = Upri::new("http://www.w3.org/1999/02/22-rdf-syntax-ns#type").unwrap();

    let mut text = String::from("prefix ex: <http://example.org/>\n");
    for i in 0..schema_count {
        if i % 2 == 0 {
            text.push_str(&format!(
                "unit ex:S{i} anchor ex:p{i}\ntemplate ?s ex:p{i} ?o\nsubject ?s\narg ?o\nlabel \"{{s}} p{i} {{o}}\"\n\n"
            ));
        } else {
            text.push_str(&format!(
                "unit ex:S{i} anchor ex:p{i}\ntemplate ?s ex:p{i} ?m\ntemplate ?m ex:q{i} ?v\nsubject ?s\narg ?v\n\n"
            ));
        }
    }

    let entities = 20;
    let mut quads = Vec::new();
    let graph = |rng: &mut rand_chacha::ChaCha8Rng| ex(format!("g{}", rng.random_range(0..4)));
    let target = rng.random_range(1..=max_triples);
    while quads.len() < target {
        let s = ex(format!("e{}", rng.random_range(0..entities)));
        let g = graph(&mut rng);
        match rng.random_range(0..10) {
            0..=1 => {
                let class = ex(format!("C{}", rng.random_range(0..4)));
                quads.push(Quad::new(s, rdf_type.clone(), class, g));
            }
            2 => {
                let p = ex(format!("free{}", rng.random_range(0..3)));
                let o: Term = Literal::integer(rng.random_range(0..100)).into();
                quads.push(Quad::new(s, p, o, g));
            }
            _ => {
                let i = rng.random_range(0..schema_count);
                let o = ex(format!("e{}", rng.random_range(0..entities)));
                if i % 2 == 0 {
                    quads.push(Quad::new(s, ex(format!("p{i}")), o, g));
                } else {
                    let m = ex(format!("m{i}_{}", quads.len()));
                    quads.push(Quad::new(s, ex(format!("p{i}")), m.clone(), g.clone()));
                    quads.push(Quad::new(m, ex(format!("q{i}")), Literal::integer(rng.random_range(0..9)), g));
                }
            }
        }
    }
    quads.truncate(max_triples.max(1));
    (quads.into_iter().collect(), text)
}

/// Union of source quads equals the input, units are pairwise disjoint, and
/// re-homing keeps the triples.
pub fn partition_law_holds(ds: &QuadDataset, result: &PartitionResult) -> Result<(), String> {
    let mut seen: BTreeSet<&Quad> = BTreeSet::new();
    for u in &result.units {
        for q in &u.source_quads {
            if !seen.insert(q) {
                return Err(format!("{q:?} lies in two units"));
            }
        }
        let rehomed: BTreeSet<_> = u.quads.iter().map(|q| q.triple()).collect();
        let source: BTreeSet<_> = u.source_quads.iter().map(|q| q.triple()).collect();
        if rehomed != source {
            return Err(format!("unit {} changed its triples", u.upri));
        }
    }
    let input: BTreeSet<&Quad> = ds.iter().collect();
    if seen != input {
        return Err(format!("{} quads covered, {} in the input", seen.len(), input.len()));
    }
    Ok(())
}

/// A random propositional program over at most `atoms` literals.
pub fn random_program(rng: &mut impl rand::Rng, atoms: usize) -> String {
    // A quarter of the literals are classical negations, counted as atoms of their own.
    let positive = atoms - atoms / 4;
    let literal = |rng: &mut dyn rand::RngCore| {
        let i = rand::Rng::random_range(rng, 0..atoms);
        if i < positive {
            format!("a{i}")
        } else {
            format!("-a{}", i - positive)
        }
    };
    let mut text = String::new();
    for _ in 0..rng.random_range(1..=atoms + 2) {
        let head = literal(rng);
        let pos: Vec<String> = (0..rng.random_range(0..=2)).map(|_| literal(rng)).collect();
        let neg: Vec<String> = (0..rng.random_range(0..=2)).map(|_| format!("not {}", literal(rng))).collect();
        let body: Vec<String> = pos.into_iter().chain(neg).collect();
        if body.is_empty() {
            text.push_str(&format!("{head}.\n"));
        } else {
            text.push_str(&format!("{head} :- {}.\n", body.join(", ")));
        }
    }
    text
}

/// Every consistent candidate that equals the least model of its reduct.
pub fn brute_force_models(program: &LogicProgram) -> BTreeSet<BTreeSet<String>> {
    let atoms: Vec<String> = program
        .rules
        .iter()
        .flat_map(|r| std::iter::once(&r.head).chain(&r.positive).chain(&r.negative))
        .map(Atom::to_string)
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    assert!(atoms.len() <= 12, "oracle limited to 12 atoms");
    let mut models = BTreeSet::new();
    for mask in 0u32..(1 << atoms.len()) {
        let candidate: BTreeSet<String> =
            atoms.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, a)| a.clone()).collect();
        let reduct: Vec<_> = program
            .rules
            .iter()
            .filter(|r| r.negative.iter().all(|n| !candidate.contains(&n.to_string())))
            .collect();
        let mut least: BTreeSet<String> = BTreeSet::new();
        loop {
            let before = least.len();
            for r in &reduct {
                if r.positive.iter().all(|p| least.contains(&p.to_string())) {
                    least.insert(r.head.to_string());
                }
            }
            if least.len() == before {
                break;
            }
        }
        let consistent = !least.iter().any(|a| least.contains(&format!("-{a}")));
        if least == candidate && consistent {
            models.insert(candidate);
        }
    }
    models
}

pub fn solver_models(program: &LogicProgram) -> BTreeSet<BTreeSet<String>> {
    let ground = ground_program(program, &[]).expect("propositional programs are safe");
    stable_models(&ground, DEFAULT_BOUND)
        .expect("within bound")
        .into_iter()
        .map(|m| m.iter().map(Atom::to_string).collect())
        .collect()
}

