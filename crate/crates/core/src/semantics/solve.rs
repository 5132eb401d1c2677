use std::collections::{BTreeSet, HashMap};

use super::ground::GroundProgram;
use super::syntax::Atom;
use super::SemanticsError;

pub const DEFAULT_BOUND: usize = 24;

struct Compiled {
    atoms: Vec<Atom>,
    rules: Vec<(usize, Vec<usize>, Vec<usize>)>,
}

fn compile(program: &GroundProgram) -> Compiled {
    let mut ids: HashMap<Atom, usize> = HashMap::new();
    let mut atoms = Vec::new();
    let mut id = |a: &Atom| -> usize {
        *ids.entry(a.clone()).or_insert_with(|| {
            atoms.push(a.clone());
            atoms.len() - 1
        })
    };
    let rules = program
        .rules
        .iter()
        .map(|r| {
            let h = id(&r.head);
            let p = r.positive.iter().map(&mut id).collect();
            let n = r.negative.iter().map(&mut id).collect();
            (h, p, n)
        })
        .collect();
    Compiled { atoms, rules }
}

/// Least model of the definite rules among `rules`.
fn least_model(n: usize, rules: &[(usize, &[usize])]) -> Vec<bool> {
    let mut truth = vec![false; n];
    let mut missing: Vec<usize> = rules.iter().map(|(_, body)| body.len()).collect();
    let mut watch: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut queue = Vec::new();
    for (i, (head, body)) in rules.iter().enumerate() {
        for &b in body.iter() {
            watch[b].push(i);
        }
        if body.is_empty() && !truth[*head] {
            truth[*head] = true;
            queue.push(*head);
        }
    }
    while let Some(a) = queue.pop() {
        for &r in &watch[a] {
            missing[r] -= 1;
            if missing[r] == 0 {
                let h = rules[r].0;
                if !truth[h] {
                    truth[h] = true;
                    queue.push(h);
                }
            }
        }
    }
    truth
}

/// Stable models of a ground program.
///
/// Atoms derivable without default negation are true in every model and atoms
/// not derivable even when default negation is ignored are false in every
/// model. Only the remaining atoms that occur under `not` are guessed; more
/// than `bound` of them is an error. Candidates containing both `p` and `-p`
/// are discarded. An empty result means the program is inconsistent.
pub fn stable_models(program: &GroundProgram, bound: usize) -> Result<Vec<BTreeSet<Atom>>, SemanticsError> {
    let c = compile(program);
    let n = c.atoms.len();
    let definite: Vec<(usize, &[usize])> = c
        .rules
        .iter()
        .filter(|(_, _, neg)| neg.is_empty())
        .map(|(h, p, _)| (*h, p.as_slice()))
        .collect();
    let certain = least_model(n, &definite);
    let relaxed: Vec<(usize, &[usize])> = c.rules.iter().map(|(h, p, _)| (*h, p.as_slice())).collect();
    let possible = least_model(n, &relaxed);

    let guess: Vec<usize> = c
        .rules
        .iter()
        .flat_map(|(_, _, neg)| neg.iter().copied())
        .filter(|&a| possible[a] && !certain[a])
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    if guess.len() > bound {
        return Err(SemanticsError::BoundExceeded {
            atoms: guess.len(),
            bound,
        });
    }

    let mut models = BTreeSet::new();
    for mask in 0u64..(1u64 << guess.len()) {
        let mut assumed = certain.clone();
        for (bit, &a) in guess.iter().enumerate() {
            assumed[a] = mask & (1 << bit) != 0;
        }
        let reduct: Vec<(usize, &[usize])> = c
            .rules
            .iter()
            .filter(|(_, _, neg)| neg.iter().all(|&a| !assumed[a]))
            .map(|(h, p, _)| (*h, p.as_slice()))
            .collect();
        let model = least_model(n, &reduct);
        if guess.iter().any(|&a| model[a] != assumed[a]) {
            continue;
        }
        let atoms: BTreeSet<Atom> = (0..n).filter(|&i| model[i]).map(|i| c.atoms[i].clone()).collect();
        if atoms.iter().any(|a| a.negated && atoms.contains(&a.complement())) {
            continue;
        }
        models.insert(atoms);
    }
    Ok(models.into_iter().collect())
}

/// Atoms true in every model.
pub fn cautious(models: &[BTreeSet<Atom>]) -> BTreeSet<Atom> {
    let Some((first, rest)) = models.split_first() else {
        return BTreeSet::new();
    };
    first
        .iter()
        .filter(|a| rest.iter().all(|m| m.contains(*a)))
        .cloned()
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semantics::ground::ground_program;
    use crate::semantics::syntax::LogicProgram;

    fn models(text: &str) -> Vec<BTreeSet<String>> {
        let p = LogicProgram::parse(text).unwrap();
        let g = ground_program(&p, &[]).unwrap();
        stable_models(&g, DEFAULT_BOUND)
            .unwrap()
            .into_iter()
            .map(|m| m.iter().map(ToString::to_string).collect())
            .collect()
    }

    #[test]
    fn even_loop_has_two_models() {
        let ms = models("p :- not q. q :- not p.");
        assert_eq!(ms.len(), 2);
    }

    #[test]
    fn odd_loop_has_none() {
        assert!(models("p :- not p.").is_empty());
    }

    #[test]
    fn default_applies_until_blocked() {
        let rule = "has-part(X, thumb) :- rdf:type(X, hand), not lacks-part(X, thumb). rdf:type(x1, hand).";
        let ms = models(rule);
        assert_eq!(ms.len(), 1);
        assert!(ms[0].contains("has-part(x1, thumb)"));
        let blocked = models(&format!("{rule} lacks-part(x1, thumb)."));
        assert!(!blocked[0].contains("has-part(x1, thumb)"));
    }

    #[test]
    fn classical_contradiction_is_dropped() {
        assert!(models("p. -p.").is_empty());
    }

    #[test]
    fn bound_is_enforced() {
        let p = LogicProgram::parse("a :- not b. b :- not a. c :- not d. d :- not c.").unwrap();
        let g = ground_program(&p, &[]).unwrap();
        assert!(matches!(stable_models(&g, 3), Err(SemanticsError::BoundExceeded { atoms: 4, bound: 3 })));
    }
}
