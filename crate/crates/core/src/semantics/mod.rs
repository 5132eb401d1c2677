//! Logical reading of semantic units: unit facts, background rules solved
//! under the stable model semantics, and translation of the result to OWL.

mod conflict;
mod facts;
mod ground;
mod owl;
mod pattern;
mod solve;
mod syntax;

use std::collections::BTreeSet;

pub use conflict::{check_conflicts, ConflictReport, Dispute};
pub use facts::{facts_from_graph, facts_from_units, unit_facts};
pub use ground::{ground_over, ground_program, ground_relevant, GroundProgram};
pub use owl::{ClassExpr, OwlAxiom};
pub use pattern::{
    parse_patterns, skolem, translate_to_owl, translate_with_trace, AxiomTemplate, ClassTemplate,
    Fresh, TranslationPattern,
};
pub use solve::{cautious, stable_models, DEFAULT_BOUND};
pub use syntax::{compact, Arg, Atom, LogicProgram, Rule};

use crate::store::VocabularyCatalog;
use crate::units::PartitionResult;

pub const DEFAULT_RULES: &str = include_str!("default_rules.lp");
pub const DEFAULT_PATTERNS: &str = include_str!("default_patterns.pat");

#[derive(Debug, thiserror::Error)]
pub enum SemanticsError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("unsafe rule `{0}`: a head or negated variable is missing from the positive body")]
    UnsafeRule(String),
    #[error("{atoms} atoms would need guessing, more than the bound of {bound}")]
    BoundExceeded { atoms: usize, bound: usize },
    #[error("pattern {pattern}: {message}")]
    Pattern { pattern: String, message: String },
    #[error("pattern {pattern}: variable {var} is not bound by the guard")]
    UnboundPatternVariable { pattern: String, var: String },
    #[error("the program has no stable model")]
    NoStableModel,
}

pub fn default_program() -> LogicProgram {
    LogicProgram::parse(DEFAULT_RULES).expect("bundled rules parse")
}

pub fn default_patterns() -> Vec<TranslationPattern> {
    parse_patterns(DEFAULT_PATTERNS).expect("bundled patterns parse")
}

/// Everything the reasoning stage produces for one input.
#[derive(Clone, Debug)]
pub struct Reasoning {
    pub facts: Vec<Atom>,
    pub models: Vec<BTreeSet<Atom>>,
    /// Atoms true in every stable model.
    pub cautious: BTreeSet<Atom>,
    pub axioms: Vec<(String, OwlAxiom)>,
    pub conflicts: ConflictReport,
}

impl Reasoning {
    pub fn owl(&self) -> Vec<&OwlAxiom> {
        let set: BTreeSet<&OwlAxiom> = self.axioms.iter().map(|(_, a)| a).collect();
        set.into_iter().collect()
    }
}

/// Solves `program` over the given facts and translates the cautious
/// consequences with `patterns`.
pub fn reason(
    facts: Vec<Atom>,
    program: &LogicProgram,
    patterns: &[TranslationPattern],
    bound: usize,
    catalog: &VocabularyCatalog,
) -> Result<Reasoning, SemanticsError> {
    let ground = ground_relevant(program, &facts)?;
    let models = stable_models(&ground, bound)?;
    if models.is_empty() {
        return Err(SemanticsError::NoStableModel);
    }
    let cautious = cautious(&models);
    let axioms = translate_with_trace(&cautious, patterns)?;
    let conflicts = check_conflicts(&cautious, catalog);
    Ok(Reasoning {
        facts,
        models,
        cautious,
        axioms,
        conflicts,
    })
}

/// [`reason`] over the unit facts of a partition with the bundled rules and patterns.
pub fn reason_units(partition: &PartitionResult, catalog: &VocabularyCatalog) -> Result<Reasoning, SemanticsError> {
    reason(
        facts_from_units(partition, catalog),
        &default_program(),
        &default_patterns(),
        DEFAULT_BOUND,
        catalog,
    )
}
