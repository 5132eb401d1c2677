//! Unit-level access control.
//!
//! ```text
//! prefix ex: <http://example.org/>
//! deny ex:LocationStatementUnit when subject ex:conservationStatus ex:Endangered and not requester role=curator
//! allow *
//! ```
//!
//! Rules are tried in order and the first match decides; no match means allow.

use std::collections::{BTreeMap, BTreeSet};

use super::FdoError;
use crate::compound::CompoundUnit;
use crate::store::{Literal, Quad, QuadDataset, Term, Upri, Vocab, VocabularyCatalog};
use crate::units::{default_prefixes, expand_iri, tokenize, StatementUnit};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Effect {
    Allow,
    Deny,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RequesterCondition {
    pub key: String,
    pub value: String,
    pub negated: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolicyRule {
    pub effect: Effect,
    /// `None` matches every unit.
    pub class: Option<Upri>,
    /// The unit's subject must carry this predicate and object somewhere in the data.
    pub subject_has: Option<(Upri, Term)>,
    pub requester: Vec<RequesterCondition>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AccessPolicy {
    pub rules: Vec<PolicyRule>,
}

pub type Requester = BTreeMap<String, String>;

impl AccessPolicy {
    pub fn parse(text: &str) -> Result<AccessPolicy, FdoError> {
        let mut prefixes = default_prefixes();
        let mut rules = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let err = |message: String| FdoError::Policy { line: i + 1, message };
            let tokens = tokenize(line).map_err(err)?;
            let Some(first) = tokens.first() else { continue };
            let tokens: Vec<&str> = tokens.iter().map(String::as_str).collect();
            match first.as_str() {
                "prefix" => match tokens.as_slice() {
                    [_, name, iri] => {
                        let iri = iri
                            .strip_prefix('<')
                            .and_then(|t| t.strip_suffix('>'))
                            .ok_or_else(|| err(format!("expected <iri>, found {iri}")))?;
                        prefixes.insert(name.trim_end_matches(':').to_string(), iri.to_string());
                    }
                    _ => return Err(err("expected `prefix name: <iri>`".into())),
                },
                "allow" | "deny" => rules.push(parse_rule(&tokens, &prefixes).map_err(err)?),
                other => return Err(err(format!("unknown directive `{other}`"))),
            }
        }
        Ok(AccessPolicy { rules })
    }

    /// The effect for one unit, given its classes and the data its subject appears in.
    pub fn decide(
        &self,
        classes: &BTreeSet<Upri>,
        subject: Option<&Upri>,
        data: &QuadDataset,
        requester: &Requester,
    ) -> Effect {
        for rule in &self.rules {
            if rule.class.as_ref().is_some_and(|c| !classes.contains(c)) {
                continue;
            }
            if let Some((p, o)) = &rule.subject_has {
                let holds = subject.is_some_and(|s| data.objects(s, p).any(|x| x == o));
                if !holds {
                    continue;
                }
            }
            let requester_ok = rule
                .requester
                .iter()
                .all(|c| (requester.get(&c.key) == Some(&c.value)) != c.negated);
            if requester_ok {
                return rule.effect;
            }
        }
        Effect::Allow
    }
}

fn parse_rule(tokens: &[&str], prefixes: &BTreeMap<String, String>) -> Result<PolicyRule, String> {
    let effect = if tokens[0] == "deny" { Effect::Deny } else { Effect::Allow };
    let class = match tokens.get(1) {
        Some(&"*") => None,
        Some(t) => Some(expand_iri(t, prefixes)?),
        None => return Err("a rule needs a unit class or `*`".into()),
    };
    let mut rule = PolicyRule {
        effect,
        class,
        subject_has: None,
        requester: Vec::new(),
    };
    let mut rest = &tokens[2..];
    while let Some((&word, tail)) = rest.split_first() {
        match word {
            "when" | "and" => rest = tail,
            "subject" => {
                let [p, o, tail @ ..] = tail else {
                    return Err("`subject` needs a predicate and an object".into());
                };
                let object = match o.strip_prefix('"') {
                    Some(s) => Term::Literal(Literal::string(s.trim_end_matches('"'))),
                    None => Term::Iri(expand_iri(o, prefixes)?),
                };
                rule.subject_has = Some((expand_iri(p, prefixes)?, object));
                rest = tail;
            }
            "not" | "requester" => {
                let negated = word == "not";
                let tail = if negated {
                    match tail.split_first() {
                        Some((&"requester", t)) => t,
                        _ => return Err("expected `requester` after `not`".into()),
                    }
                } else {
                    tail
                };
                let Some((kv, tail)) = tail.split_first() else {
                    return Err("`requester` needs key=value".into());
                };
                let (key, value) = kv
                    .split_once('=')
                    .ok_or_else(|| format!("expected key=value, found {kv}"))?;
                rule.requester.push(RequesterCondition {
                    key: key.to_string(),
                    value: value.trim_matches('"').to_string(),
                    negated,
                });
                rest = tail;
            }
            other => return Err(format!("unexpected `{other}`")),
        }
    }
    Ok(rule)
}

/// Outcome of applying a policy for one requester.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AccessView {
    pub visible: Vec<Upri>,
    pub hidden: BTreeSet<Upri>,
}

impl AccessView {
    pub fn is_visible(&self, upri: &Upri) -> bool {
        !self.hidden.contains(upri)
    }

    /// Drops every quad held in a hidden unit's graph. Compound units keep
    /// their associations to hidden units, which are marked as restricted.
    pub fn filter_dataset(&self, dataset: &QuadDataset, catalog: &VocabularyCatalog) -> QuadDataset {
        let kept = dataset.filter(|q| !self.hidden.contains(&q.graph));
        let associated = catalog.iri(Vocab::HasAssociatedSemanticUnit);
        let restricted = catalog.iri(Vocab::AccessRestricted);
        let markers: Vec<Quad> = kept
            .iter()
            .filter(|q| &q.predicate == associated)
            .filter_map(|q| {
                let target = q.object.as_iri()?;
                self.hidden.contains(target).then(|| {
                    Quad::new(
                        target.clone(),
                        restricted.clone(),
                        Literal::typed("true", Upri::new(format!("{}boolean", crate::store::XSD)).expect("valid")),
                        q.graph.clone(),
                    )
                })
            })
            .collect();
        kept.union(markers)
    }
}

/// Applies `policy` to statement and compound units for one requester.
/// Compound units are checked against their own class and subject only.
pub fn apply_access_policy(
    units: &[StatementUnit],
    compounds: &[&CompoundUnit],
    data: &QuadDataset,
    policy: &AccessPolicy,
    requester: &Requester,
    catalog: &VocabularyCatalog,
) -> AccessView {
    let mut view = AccessView::default();
    let mut decide = |upri: &Upri, classes: &BTreeSet<Upri>, subject: Option<&Upri>| {
        match policy.decide(classes, subject, data, requester) {
            Effect::Allow => view.visible.push(upri.clone()),
            Effect::Deny => {
                view.hidden.insert(upri.clone());
            }
        }
    };
    for u in units {
        decide(&u.upri, &u.classes, Some(&u.subject));
    }
    for c in compounds {
        let classes = BTreeSet::from([catalog.iri(c.kind.class_key()).clone()]);
        decide(&c.upri, &classes, c.subject.as_ref());
    }
    view
}
