//! Default reasoning under the stable model semantics: a hand has a thumb
//! unless we learn otherwise.

use std::error::Error;
use std::fmt::Write as _;

use semantic_units::semantics::{
    cautious, ground_over, ground_program, stable_models, Atom, LogicProgram, DEFAULT_BOUND,
};

const THUMB: &str = "
% Prototypical: every hand has a thumb, by default.
has-part(X, thumb) :- rdf:type(X, hand), not lacks-part(X, thumb).
rdf:type(x1, hand).
";

fn holds(program: &str, atom: &str) -> Result<bool, Box<dyn Error>> {
    let program = LogicProgram::parse(program)?;
    let models = stable_models(&ground_program(&program, &[])?, DEFAULT_BOUND)?;
    Ok(cautious(&models).iter().any(|a| a.to_string() == atom))
}

pub fn run_example() -> Result<String, Box<dyn Error>> {
    let mut out = String::new();
    let goal = "has-part(x1, thumb)";
    writeln!(out, "{goal}: {}", holds(THUMB, goal)?)?;

    // New information retracts the earlier conclusion.
    let blocked = format!("{THUMB}lacks-part(x1, thumb).");
    writeln!(out, "after lacks-part: {}", holds(&blocked, goal)?)?;

    // Grounding substitutes constants for variables.
    let rule = LogicProgram::parse("p(X, Y) :- q(X), q(Y).")?;
    let universe = ["a", "b", "c"].map(String::from).into_iter().collect();
    writeln!(out, "ground instances over 3 constants: {}", ground_over(&rule, &universe)?.rules.len())?;

    // An even loop through negation has two stable models.
    let choice = LogicProgram::parse("a :- not b. b :- not a.")?;
    let models = stable_models(&ground_program(&choice, &[])?, DEFAULT_BOUND)?;
    for m in &models {
        let atoms: Vec<String> = m.iter().map(Atom::to_string).collect();
        writeln!(out, "model {{{}}}", atoms.join(", "))?;
    }
    Ok(out)
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    print!("{}", run_example()?);
    Ok(())
}
