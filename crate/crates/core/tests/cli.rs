//! The `semunit` binary end to end.

mod common;

use std::collections::BTreeMap;
use std::path::Path;
use std::process::{Command, Output};

use common::fixture_path;

fn semunit(args: &[&str], out: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_semunit"))
        .args(args)
        .arg("--out")
        .arg(out)
        .env_remove("SEMUNIT_OUT")
        .output()
        .expect("binary runs")
}

fn fx(name: &str) -> String {
    fixture_path(name).display().to_string()
}

fn files(dir: &Path) -> BTreeMap<String, Vec<u8>> {
    let Ok(entries) = std::fs::read_dir(dir) else { return BTreeMap::new() };
    entries
        .map(|e| {
            let e = e.unwrap();
            (e.file_name().to_string_lossy().into_owned(), std::fs::read(e.path()).unwrap())
        })
        .collect()
}

fn summary(o: &Output) -> BTreeMap<String, String> {
    String::from_utf8_lossy(&o.stdout)
        .lines()
        .filter_map(|l| l.split_once('='))
        .filter(|(k, _)| *k != "artifact")
        .map(|(k, v)| (k.to_string(), v.to_string()))
        .collect()
}

#[test]
fn seeded_pipeline_is_byte_identical() {
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    let schemas = fx("schemas.sus");
    let policy = fx("endangered.policy");
    let args = ["pipeline", &fx("endangered.trig"), "--schemas", &schemas, "--policy", &policy, "--seed", "3"];
    let (ra, rb) = (semunit(&args, a.path()), semunit(&args, b.path()));
    assert_eq!(ra.status.code(), Some(0), "{}", String::from_utf8_lossy(&ra.stderr));
    assert_eq!(ra.stdout, rb.stdout);
    let (fa, fb) = (files(a.path()), files(b.path()));
    assert_eq!(fa.len(), 9);
    assert_eq!(fa, fb);
}

#[test]
fn seeded_partition_is_byte_identical() {
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    let args = ["partition", &fx("single-statement.trig"), "--seed", "1"];
    assert_eq!(semunit(&args, a.path()).status.code(), Some(0));
    assert_eq!(semunit(&args, b.path()).status.code(), Some(0));
    assert_eq!(files(a.path()), files(b.path()));
    assert!(files(a.path()).contains_key("partition.trig"));
}

#[test]
fn pipeline_equals_its_stages() {
    let whole = tempfile::tempdir().unwrap();
    let schemas = fx("schemas.sus");
    let input = fx("contexts.trig");
    let common_args = ["--schemas", schemas.as_str(), "--seed", "9"];
    let run = |cmd: &str, dir: &Path| {
        let mut args = vec![cmd, input.as_str()];
        args.extend(common_args);
        let o = semunit(&args, dir);
        assert_eq!(o.status.code(), Some(0), "{cmd}: {}", String::from_utf8_lossy(&o.stderr));
        o
    };
    let pipeline = run("pipeline", whole.path());
    let mut pieces = BTreeMap::new();
    let mut keys = BTreeMap::new();
    for cmd in ["ingest", "partition", "compound", "label", "translate", "reason", "nanopub"] {
        let dir = tempfile::tempdir().unwrap();
        let o = run(cmd, dir.path());
        keys.extend(summary(&o).into_iter().filter(|(k, _)| k != "command"));
        pieces.extend(files(dir.path()));
    }
    assert_eq!(files(whole.path()), pieces);
    let mut expected = summary(&pipeline);
    expected.remove("command");
    assert_eq!(expected, keys);
    assert_eq!(summary(&pipeline)["compound.context"], "3");
}

#[test]
fn config_file_supplies_defaults() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::copy(fixture_path("typed-statement.trig"), dir.path().join("in.trig")).unwrap();
    std::fs::copy(fixture_path("schemas.sus"), dir.path().join("s.sus")).unwrap();
    std::fs::write(
        dir.path().join("semunit.toml"),
        "inputs = [\"in.trig\"]\nschemas = \"s.sus\"\nseed = 4\nnamespace = \"https://units.example.net/\"\n",
    )
    .unwrap();
    let out = dir.path().join("out");
    let config = dir.path().join("semunit.toml");
    let o = semunit(&["partition", "--config", config.to_str().unwrap()], &out);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let trig = std::fs::read_to_string(out.join("partition.trig")).unwrap();
    assert!(trig.contains("https://units.example.net/"));

    std::fs::write(&config, "seeed = 4\n").unwrap();
    assert_eq!(semunit(&["partition", "--config", config.to_str().unwrap()], &out).status.code(), Some(1));
}

#[test]
fn output_directory_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_semunit"))
        .args(["ingest", &fx("weight.trig")])
        .env("SEMUNIT_OUT", dir.path())
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert!(dir.path().join("dataset.nq").is_file());
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out");
    let code = |args: &[&str]| semunit(args, &out).status.code();

    assert_eq!(code(&["frobnicate"]), Some(1));
    assert_eq!(code(&["ingest", "/nonexistent/x.trig"]), Some(1));
    assert_eq!(code(&["reason", &fx("weight.trig"), "--bound", "0"]), Some(1));
    assert_eq!(code(&["acl", &fx("endangered.trig")]), Some(1));

    let bad = dir.path().join("bad.trig");
    std::fs::write(&bad, "this is not trig").unwrap();
    assert_eq!(code(&["ingest", bad.to_str().unwrap()]), Some(2));

    let rules = dir.path().join("loop.lp");
    std::fs::write(
        &rules,
        "@prefix ex: <http://example.org/> .\n\
         ex:P(U) :- ex:HasPartStatementUnit(U), not ex:Q(U).\n\
         ex:Q(U) :- ex:HasPartStatementUnit(U), not ex:P(U).\n",
    )
    .unwrap();
    let schemas = fx("schemas.sus");
    let args = ["reason", &fx("class-item.trig"), "--schemas", &schemas, "--rules", rules.to_str().unwrap()];
    let mut tight = args.to_vec();
    tight.extend(["--bound", "2"]);
    assert_eq!(code(&tight), Some(3));
    // Nothing is written when a run fails.
    assert!(files(&out).is_empty());
    assert_eq!(code(&args), Some(0));
}

#[test]
fn requester_changes_what_acl_hides() {
    let dir = tempfile::tempdir().unwrap();
    let schemas = fx("schemas.sus");
    let policy = fx("endangered.policy");
    let base = ["acl", &fx("endangered.trig"), "--schemas", &schemas, "--policy", &policy, "--seed", "2"];
    let visitor = summary(&semunit(&base, dir.path()));
    let mut curator_args = base.to_vec();
    curator_args.extend(["--requester", "role=curator"]);
    let curator = summary(&semunit(&curator_args, dir.path()));
    assert_eq!(visitor["hidden_units"], "1");
    assert_eq!(curator["hidden_units"], "0");
}

#[test]
fn align_command_reports_levels() {
    let dir = tempfile::tempdir().unwrap();
    let schemas = fx("schemas.sus");
    let f = fx("contexts.trig");
    let o = semunit(&["align", &f, &f, "--schemas", &schemas, "--seed", "1"], dir.path());
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let s = summary(&o);
    assert_eq!(s["all_perfect"], "true");
    assert!(dir.path().join("alignment.txt").is_file());
}
