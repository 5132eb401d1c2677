//! Drive the command line front end from code: run the whole pipeline into a
//! temporary directory and list what it wrote.

use std::error::Error;
use std::fmt::Write as _;

fn fixture(name: &str) -> String {
    format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

pub fn run_example() -> Result<String, Box<dyn Error>> {
    let dir = tempfile::tempdir()?;
    let argv = [
        "semunit",
        "pipeline",
        &fixture("contexts.trig"),
        "--schemas",
        &fixture("schemas.sus"),
        "--seed",
        "1",
        "--out",
        dir.path().to_str().unwrap(),
    ];
    let status = semantic_units::cli::execute(argv.iter().map(|s| s.to_string()).collect());

    let mut out = String::new();
    writeln!(out, "exit status {status}")?;
    let mut names: Vec<String> = std::fs::read_dir(dir.path())?
        .map(|e| e.map(|e| e.file_name().to_string_lossy().into_owned()))
        .collect::<Result<_, _>>()?;
    names.sort();
    for name in names {
        let size = std::fs::metadata(dir.path().join(&name))?.len();
        writeln!(out, "{name} {size} bytes")?;
    }
    Ok(out)
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    print!("{}", run_example()?);
    Ok(())
}
