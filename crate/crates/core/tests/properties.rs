//! Randomized properties of the partition, the solver and the aligner.

mod common;

use std::collections::{BTreeMap, BTreeSet};

use proptest::prelude::*;
use semantic_units::align::{align_graphs, Level, Score, LEVELS};
use semantic_units::compound::ProcessedGraph;
use semantic_units::fdo::Minter;
use semantic_units::semantics::LogicProgram;
use semantic_units::store::{QuadDataset, VocabularyCatalog};
use semantic_units::units::{compile_schema, partition, PartitionResult};

fn run_partition(ds: &QuadDataset, schema_text: &str, seed: u64) -> PartitionResult {
    let catalog = VocabularyCatalog::default();
    let schemas = compile_schema(schema_text).expect("generated schemas compile");
    let minter = Minter::new("https://example.org/unit/", Some(seed)).unwrap();
    partition(ds, &schemas, &catalog, &minter).expect("partition succeeds")
}

fn process(ds: &QuadDataset, schema_text: &str, namespace: &str, seed: u64) -> ProcessedGraph {
    let catalog = VocabularyCatalog::default();
    let schemas = compile_schema(schema_text).expect("generated schemas compile");
    let minter = Minter::new(namespace, Some(seed)).unwrap();
    let p = partition(ds, &schemas, &catalog, &minter).expect("partition succeeds");
    ProcessedGraph::build(p, &catalog, &minter)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn partition_covers_data_layer_exactly(seed in any::<u64>(), k in 3usize..=10, n in 1usize..=500) {
        let (ds, schemas) = common::random_dataset(seed, k, n);
        let result = run_partition(&ds, &schemas, seed);
        prop_assert_eq!(common::partition_law_holds(&ds, &result), Ok(()));
    }

    #[test]
    fn seeded_partition_is_reproducible(seed in any::<u64>()) {
        let (ds, schemas) = common::random_dataset(seed, 4, 80);
        let a = run_partition(&ds, &schemas, 5);
        let b = run_partition(&ds, &schemas, 5);
        prop_assert_eq!(a.dataset, b.dataset);
    }

    #[test]
    fn renamed_copy_aligns_perfectly(seed in any::<u64>()) {
        let (ds, schemas) = common::random_dataset(seed, 4, 60);
        let a = process(&ds, &schemas, "https://a.example.org/", 1);
        let b = process(&ds, &schemas, "https://b.example.org/", 2);
        let own = align_graphs(&a, &a);
        let other = align_graphs(&a, &b);
        prop_assert!(own.all_perfect() && other.all_perfect());
        for level in LEVELS {
            prop_assert_eq!(own.at(level).count(), other.at(level).count());
            prop_assert_eq!(other.unmatched(level), (0, 0));
        }
    }

    #[test]
    fn perfect_matches_are_symmetric(s1 in any::<u64>(), s2 in any::<u64>()) {
        let (da, schemas) = common::random_dataset(s1, 4, 40);
        let (db, _) = common::random_dataset(s2, 4, 40);
        let a = process(&da, &schemas, "https://a.example.org/", 1);
        let b = process(&db, &schemas, "https://b.example.org/", 2);
        let perfect = |r: &semantic_units::align::AlignmentReport, flip: bool| {
            r.correspondences
                .iter()
                .filter(|c| c.score == Score::from_integer(1) && c.level != Level::Triple)
                .map(|c| if flip { (c.right.clone(), c.left.clone()) } else { (c.left.clone(), c.right.clone()) })
                .collect::<BTreeSet<_>>()
        };
        prop_assert_eq!(perfect(&align_graphs(&a, &b), false), perfect(&align_graphs(&b, &a), true));
    }

    #[test]
    fn statement_matches_stay_inside_item_matches(seed in any::<u64>()) {
        let (da, schemas) = common::random_dataset(seed, 4, 60);
        let (db, _) = common::random_dataset(seed.wrapping_add(1), 4, 60);
        let a = process(&da, &schemas, "https://a.example.org/", 1);
        let b = process(&db, &schemas, "https://b.example.org/", 2);
        let report = align_graphs(&a, &b);
        let items: BTreeSet<_> = report.at(Level::Item).map(|c| (c.left.unit().clone(), c.right.unit().clone())).collect();
        // Identification units can sit in several items, so any matched pair will do.
        let holders = |g: &ProcessedGraph, u| -> BTreeSet<_> {
            g.items.iter().filter(|i| g.data_graph(&i.upri).iter().any(|q| &q.graph == u)).map(|i| i.upri.clone()).collect()
        };
        for c in report.at(Level::Statement) {
            let (hl, hr) = (holders(&a, c.left.unit()), holders(&b, c.right.unit()));
            if hl.is_empty() && hr.is_empty() {
                continue;
            }
            let inside = items.iter().any(|(l, r)| hl.contains(l) && hr.contains(r));
            prop_assert!(inside, "statement match crosses the item boundary: {:?} {:?}", hl, hr);
        }
    }
}

#[test]
fn solver_matches_exhaustive_enumeration() {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2024);
    let mut with_models = BTreeMap::new();
    for _ in 0..200 {
        let n = rand::Rng::random_range(&mut rng, 1..=12);
        let text = common::random_program(&mut rng, n);
        let program = LogicProgram::parse(&text).expect("generated program parses");
        let expected = common::brute_force_models(&program);
        assert_eq!(common::solver_models(&program), expected, "program:\n{text}");
        *with_models.entry(expected.len()).or_insert(0) += 1;
    }
    // The suite exercises programs without, with one and with several models.
    assert!(with_models.keys().any(|&k| k == 0));
    assert!(with_models.keys().any(|&k| k == 1));
    assert!(with_models.keys().any(|&k| k > 1), "{with_models:?}");
}
