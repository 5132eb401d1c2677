use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use super::syntax::{Arg, Atom, LogicProgram, Rule};
use super::SemanticsError;

pub type Binding = BTreeMap<String, String>;

/// A variable-free program.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GroundProgram {
    pub rules: Vec<Rule>,
}

impl GroundProgram {
    pub fn atoms(&self) -> BTreeSet<&Atom> {
        self.rules
            .iter()
            .flat_map(|r| std::iter::once(&r.head).chain(&r.positive).chain(&r.negative))
            .collect()
    }
}

fn check_safety(program: &LogicProgram) -> Result<(), SemanticsError> {
    match program.rules.iter().find(|r| !r.is_safe()) {
        Some(rule) => Err(SemanticsError::UnsafeRule(rule.to_string())),
        None => Ok(()),
    }
}

pub(crate) fn substitute(atom: &Atom, binding: &Binding) -> Atom {
    Atom {
        negated: atom.negated,
        predicate: atom.predicate.clone(),
        args: atom
            .args
            .iter()
            .map(|a| match a {
                Arg::Var(v) => binding
                    .get(v)
                    .map_or_else(|| a.clone(), |c| Arg::Const(c.clone())),
                Arg::Const(_) => a.clone(),
            })
            .collect(),
    }
}

fn instantiate(rule: &Rule, binding: &Binding) -> Rule {
    Rule {
        head: substitute(&rule.head, binding),
        positive: rule.positive.iter().map(|a| substitute(a, binding)).collect(),
        negative: rule.negative.iter().map(|a| substitute(a, binding)).collect(),
    }
}

/// Every rule instantiated with every assignment of `universe` to its variables.
pub fn ground_over(
    program: &LogicProgram,
    universe: &BTreeSet<String>,
) -> Result<GroundProgram, SemanticsError> {
    check_safety(program)?;
    let constants: Vec<&String> = universe.iter().collect();
    let mut rules = Vec::new();
    for rule in &program.rules {
        let vars: Vec<&str> = rule.vars().into_iter().collect();
        if vars.is_empty() {
            rules.push(rule.clone());
            continue;
        }
        if constants.is_empty() {
            continue;
        }
        let mut counter = vec![0usize; vars.len()];
        loop {
            let binding: Binding = vars
                .iter()
                .zip(&counter)
                .map(|(v, &i)| (v.to_string(), constants[i].clone()))
                .collect();
            rules.push(instantiate(rule, &binding));
            // Odometer increment over the universe.
            let mut k = 0;
            while k < counter.len() {
                counter[k] += 1;
                if counter[k] < constants.len() {
                    break;
                }
                counter[k] = 0;
                k += 1;
            }
            if k == counter.len() {
                break;
            }
        }
    }
    Ok(GroundProgram { rules })
}

/// Naive grounding over the constants of the program and the facts.
pub fn ground_program(program: &LogicProgram, facts: &[Atom]) -> Result<GroundProgram, SemanticsError> {
    let mut universe = program.constants();
    universe.extend(facts.iter().flat_map(|f| f.constants().map(str::to_string)));
    ground_over(&program.with_facts(facts), &universe)
}

/// Ground atoms indexed by predicate signature.
#[derive(Clone, Debug, Default)]
pub(crate) struct FactIndex {
    by_signature: HashMap<(bool, String, usize), Vec<Atom>>,
    all: HashSet<Atom>,
}

impl FactIndex {
    pub(crate) fn new<'a>(atoms: impl IntoIterator<Item = &'a Atom>) -> FactIndex {
        let mut index = FactIndex::default();
        for a in atoms {
            index.insert(a.clone());
        }
        index
    }

    pub(crate) fn insert(&mut self, atom: Atom) -> bool {
        if !self.all.insert(atom.clone()) {
            return false;
        }
        self.by_signature
            .entry((atom.negated, atom.predicate.clone(), atom.args.len()))
            .or_default()
            .push(atom);
        true
    }

    pub(crate) fn contains(&self, atom: &Atom) -> bool {
        self.all.contains(atom)
    }

    fn candidates(&self, atom: &Atom) -> &[Atom] {
        self.by_signature
            .get(&(atom.negated, atom.predicate.clone(), atom.args.len()))
            .map_or(&[], Vec::as_slice)
    }

    /// All extensions of `binding` under which every atom of `body` is present.
    pub(crate) fn matches(&self, body: &[Atom], binding: &Binding) -> Vec<Binding> {
        let mut out = Vec::new();
        let mut remaining: Vec<&Atom> = body.iter().collect();
        self.extend(&mut remaining, binding.clone(), &mut out);
        out
    }

    fn extend(&self, remaining: &mut Vec<&Atom>, binding: Binding, out: &mut Vec<Binding>) {
        if remaining.is_empty() {
            out.push(binding);
            return;
        }
        // Most constrained atom first.
        let bound = |a: &Atom| {
            a.args
                .iter()
                .filter(|x| match x {
                    Arg::Const(_) => true,
                    Arg::Var(v) => binding.contains_key(v),
                })
                .count()
        };
        let pick = (0..remaining.len())
            .max_by_key(|&i| (bound(remaining[i]), std::cmp::Reverse(i)))
            .expect("non-empty");
        let atom = remaining.swap_remove(pick);
        for fact in self.candidates(atom) {
            if let Some(b) = unify(atom, fact, &binding) {
                self.extend(remaining, b, out);
            }
        }
        remaining.push(atom);
        let last = remaining.len() - 1;
        remaining.swap(pick, last);
    }
}

fn unify(pattern: &Atom, fact: &Atom, binding: &Binding) -> Option<Binding> {
    let mut b = binding.clone();
    for (p, f) in pattern.args.iter().zip(&fact.args) {
        let f = f.as_const()?;
        match p {
            Arg::Const(c) if c != f => return None,
            Arg::Const(_) => {}
            Arg::Var(v) => match b.get(v) {
                Some(existing) if existing != f => return None,
                Some(_) => {}
                None => {
                    b.insert(v.clone(), f.to_string());
                }
            },
        }
    }
    Some(b)
}

/// Instances whose positive bodies can all become true, found by running the
/// program forward while ignoring default negation.
pub fn ground_relevant(program: &LogicProgram, facts: &[Atom]) -> Result<GroundProgram, SemanticsError> {
    check_safety(program)?;
    let mut upper = FactIndex::new(facts);
    let mut seen: HashSet<Rule> = HashSet::new();
    let mut rules: Vec<Rule> = facts.iter().cloned().map(Rule::fact).collect();
    loop {
        let mut changed = false;
        for rule in &program.rules {
            for binding in upper.matches(&rule.positive, &Binding::new()) {
                let ground = instantiate(rule, &binding);
                if seen.insert(ground.clone()) {
                    changed |= upper.insert(ground.head.clone());
                    rules.push(ground);
                }
            }
        }
        if !changed {
            break;
        }
    }
    Ok(GroundProgram { rules })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_variables_over_three_constants() {
        let p = LogicProgram::parse("p(X, Y) :- q(X), q(Y). q(a). q(b). q(c).").unwrap();
        let g = ground_program(&p, &[]).unwrap();
        assert_eq!(g.rules.iter().filter(|r| r.head.predicate == "p").count(), 9);
    }

    #[test]
    fn thumb_rule_over_single_constant() {
        let p = LogicProgram::parse("has-part(X, thumb) :- rdf:type(X, hand), not lacks-part(X, thumb).")
            .unwrap();
        let g = ground_over(&p, &BTreeSet::from(["x1".to_string()])).unwrap();
        assert_eq!(g.rules.len(), 1);
        assert!(g.rules[0].head.is_ground());
    }

    #[test]
    fn unsafe_rule_rejected() {
        let p = LogicProgram::parse("p(X) :- not q(X).").unwrap();
        assert!(matches!(ground_program(&p, &[]), Err(SemanticsError::UnsafeRule(_))));
    }

    #[test]
    fn relevant_grounding_follows_joins() {
        let p = LogicProgram::parse("r(X, Z) :- e(X, Y), e(Y, Z).").unwrap();
        let facts = [Atom::fact("e", ["a", "b"]), Atom::fact("e", ["b", "c"])];
        let g = ground_relevant(&p, &facts).unwrap();
        let derived: Vec<_> = g.rules.iter().filter(|r| r.head.predicate == "r").collect();
        assert_eq!(derived.len(), 1);
        assert_eq!(derived[0].head, Atom::fact("r", ["a", "c"]));
    }
}
