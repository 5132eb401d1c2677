use std::collections::BTreeSet;

use super::ground::{Binding, FactIndex};
use super::syntax::{Arg, Atom};
use crate::store::{Vocab, VocabularyCatalog};

/// A disagreement unit stating that another unit is negated.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Dispute {
    pub disagreement: String,
    pub target: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ConflictReport {
    /// `(p, -p)` pairs present together.
    pub classical: Vec<(Atom, Atom)>,
    pub disputes: Vec<Dispute>,
}

impl ConflictReport {
    pub fn is_empty(&self) -> bool {
        self.classical.is_empty() && self.disputes.is_empty()
    }
}

/// Contradictions and disputes among a set of atoms (facts or a model).
pub fn check_conflicts<'a>(
    atoms: impl IntoIterator<Item = &'a Atom>,
    catalog: &VocabularyCatalog,
) -> ConflictReport {
    let atoms: BTreeSet<&Atom> = atoms.into_iter().collect();
    let classical = atoms
        .iter()
        .filter(|a| a.negated && atoms.contains(&a.complement()))
        .map(|neg| (neg.complement(), (*neg).clone()))
        .collect();

    let index = FactIndex::new(atoms.iter().copied());
    let iri = |v: Vocab| Arg::Const(catalog.iri(v).as_str().to_string());
    let var = |v: &str| Arg::Var(v.to_string());
    let guard = [
        Atom::new(catalog.iri(Vocab::DisagreementUnit).as_str(), vec![var("D")]),
        Atom::new(
            catalog.iri(Vocab::Statement).as_str(),
            vec![var("D"), var("T"), iri(Vocab::Type), iri(Vocab::NegationUnit)],
        ),
    ];
    let disputes: BTreeSet<Dispute> = index
        .matches(&guard, &Binding::new())
        .into_iter()
        .map(|b| Dispute {
            disagreement: b["D"].clone(),
            target: b["T"].clone(),
        })
        .collect();
    ConflictReport {
        classical,
        disputes: disputes.into_iter().collect(),
    }
}
