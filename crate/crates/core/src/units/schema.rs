//! Statement-unit schemas and their line-oriented document format.
//!
//! ```text
//! prefix obo: <http://purl.obolibrary.org/obo/>
//! prefix ex: <http://example.org/>
//!
//! unit ex:HasPartStatementUnit anchor obo:BFO_0000051
//! template ?s obo:BFO_0000051 ?o
//! template ?s ex:atTime ?t
//! subject ?s
//! arg ?o
//! adjunct ?t
//! relation qualitative
//! label "{s} has part {o}"
//! ```
//!
//! A `unit` line opens a schema; the following lines until the next `unit` belong
//! to it. `id <iri>` optionally names the graph pattern (defaults to the unit
//! class). `arg ?v numeric` marks a numeric-literal slot. Templates mentioning an
//! adjunct variable are optional at match time.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::store::{Literal, Upri, OBO, OWL, RDF, RDFS, SU, XSD};

#[derive(Debug, thiserror::Error)]
pub enum SchemaError {
    #[error("schema line {line}: {message}")]
    Grammar { line: usize, message: String },
    #[error("schema {class}: {message}")]
    Invalid { class: Upri, message: String },
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Slot {
    Var(String),
    Iri(Upri),
    Literal(Literal),
}

impl Slot {
    pub fn var(&self) -> Option<&str> {
        match self {
            Slot::Var(v) => Some(v),
            _ => None,
        }
    }
}

impl fmt::Display for Slot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Slot::Var(v) => write!(f, "?{v}"),
            Slot::Iri(i) => write!(f, "<{i}>"),
            Slot::Literal(l) => l.fmt(f),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TripleTemplate {
    pub subject: Slot,
    pub predicate: Upri,
    pub object: Slot,
}

impl TripleTemplate {
    pub fn vars(&self) -> impl Iterator<Item = &str> {
        self.subject.var().into_iter().chain(self.object.var())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RelationKind {
    Qualitative,
    Quantitative,
}

impl fmt::Display for RelationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RelationKind::Qualitative => "qualitative",
            RelationKind::Quantitative => "quantitative",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StatementSchema {
    pub class: Upri,
    pub id: Upri,
    pub anchor: Upri,
    pub templates: Vec<TripleTemplate>,
    pub anchor_index: usize,
    pub subject: String,
    pub arguments: Vec<String>,
    pub numeric: BTreeSet<String>,
    pub adjuncts: Vec<String>,
    pub relation: RelationKind,
    pub label: Option<String>,
}

impl StatementSchema {
    /// Templates that must match, anchor first.
    pub fn required(&self) -> impl Iterator<Item = &TripleTemplate> {
        std::iter::once(&self.templates[self.anchor_index]).chain(
            self.templates
                .iter()
                .enumerate()
                .filter(|(i, t)| *i != self.anchor_index && !self.is_optional(t))
                .map(|(_, t)| t),
        )
    }

    pub fn optional(&self) -> impl Iterator<Item = &TripleTemplate> {
        self.templates.iter().filter(|t| self.is_optional(t))
    }

    pub fn is_optional(&self, template: &TripleTemplate) -> bool {
        template.vars().any(|v| self.adjuncts.iter().any(|a| a == v))
    }

    fn validate(&self) -> Result<(), SchemaError> {
        let invalid = |message: String| SchemaError::Invalid {
            class: self.class.clone(),
            message,
        };
        let vars: BTreeSet<&str> = self.templates.iter().flat_map(|t| t.vars()).collect();
        if !vars.contains(self.subject.as_str()) {
            return Err(invalid(format!("subject ?{} occurs in no template", self.subject)));
        }
        for v in self.arguments.iter().chain(&self.adjuncts) {
            if !vars.contains(v.as_str()) {
                return Err(invalid(format!("variable ?{v} occurs in no template")));
            }
        }
        if let Some(v) = self.arguments.iter().find(|v| self.adjuncts.contains(v)) {
            return Err(invalid(format!("?{v} is both argument and adjunct")));
        }
        if self.is_optional(&self.templates[self.anchor_index]) {
            return Err(invalid("the anchor template cannot mention an adjunct".into()));
        }
        if self.adjuncts.contains(&self.subject) {
            return Err(invalid("the subject cannot be an adjunct".into()));
        }
        match self.relation {
            RelationKind::Quantitative if self.numeric.is_empty() => Err(invalid(
                "a quantitative schema needs at least one numeric argument".into(),
            )),
            RelationKind::Qualitative if !self.numeric.is_empty() => Err(invalid(
                "qualitative schemas bind every argument to a resource".into(),
            )),
            _ => Ok(()),
        }
    }
}

/// Prefixes available in every schema, rule and pattern document.
pub fn default_prefixes() -> BTreeMap<String, String> {
    [
        ("rdf", RDF),
        ("rdfs", RDFS),
        ("owl", OWL),
        ("xsd", XSD),
        ("su", SU),
        ("obo", OBO),
    ]
    .into_iter()
    .map(|(p, n)| (p.to_string(), n.to_string()))
    .collect()
}

/// Splits a line into whitespace-separated tokens; double-quoted strings stay whole.
pub(crate) fn tokenize(line: &str) -> Result<Vec<String>, String> {
    let mut tokens = Vec::new();
    let mut chars = line.chars().peekable();
    while let Some(&c) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
        } else if c == '#' {
            break;
        } else if c == '"' {
            let mut token = String::from('"');
            chars.next();
            let mut closed = false;
            while let Some(c) = chars.next() {
                match c {
                    '\\' => {
                        if let Some(n) = chars.next() {
                            token.push(match n {
                                'n' => '\n',
                                't' => '\t',
                                other => other,
                            });
                        }
                    }
                    '"' => {
                        closed = true;
                        break;
                    }
                    c => token.push(c),
                }
            }
            if !closed {
                return Err("unterminated string".into());
            }
            tokens.push(token);
        } else {
            let mut token = String::new();
            while let Some(&c) = chars.peek() {
                if c.is_whitespace() {
                    break;
                }
                token.push(c);
                chars.next();
            }
            tokens.push(token);
        }
    }
    Ok(tokens)
}

pub(crate) fn expand_iri(
    token: &str,
    prefixes: &BTreeMap<String, String>,
) -> Result<Upri, String> {
    if let Some(inner) = token.strip_prefix('<').and_then(|t| t.strip_suffix('>')) {
        return Upri::new(inner).map_err(|e| e.to_string());
    }
    if token == "a" {
        return Ok(Upri::new_unchecked(format!("{RDF}type")));
    }
    match token.split_once(':') {
        Some((prefix, local)) if prefixes.contains_key(prefix) => {
            Upri::new(format!("{}{local}", prefixes[prefix])).map_err(|e| e.to_string())
        }
        _ => Err(format!("`{token}` is neither <iri> nor a known prefixed name")),
    }
}

fn parse_slot(token: &str, prefixes: &BTreeMap<String, String>) -> Result<Slot, String> {
    if let Some(var) = token.strip_prefix('?') {
        if var.is_empty() {
            return Err("empty variable name".into());
        }
        Ok(Slot::Var(var.to_string()))
    } else if let Some(s) = token.strip_prefix('"') {
        Ok(Slot::Literal(Literal::string(s)))
    } else if let Ok(n) = token.parse::<i64>() {
        Ok(Slot::Literal(Literal::integer(n)))
    } else {
        expand_iri(token, prefixes).map(Slot::Iri)
    }
}

fn parse_var(token: Option<&String>) -> Result<String, String> {
    token
        .and_then(|t| t.strip_prefix('?'))
        .filter(|v| !v.is_empty())
        .map(str::to_string)
        .ok_or_else(|| "expected a ?variable".to_string())
}

#[derive(Default)]
struct Draft {
    line: usize,
    class: Option<Upri>,
    id: Option<Upri>,
    anchor: Option<Upri>,
    templates: Vec<TripleTemplate>,
    subject: Option<String>,
    arguments: Vec<String>,
    numeric: BTreeSet<String>,
    adjuncts: Vec<String>,
    relation: Option<RelationKind>,
    label: Option<String>,
}

impl Draft {
    fn finish(self) -> Result<StatementSchema, SchemaError> {
        let class = self.class.expect("draft opened by a unit line");
        let anchor = self.anchor.expect("draft opened by a unit line");
        let invalid = |message: &str| SchemaError::Invalid {
            class: class.clone(),
            message: message.to_string(),
        };
        if self.templates.is_empty() {
            return Err(invalid("a schema needs at least one template"));
        }
        let anchor_index = self
            .templates
            .iter()
            .position(|t| t.predicate == anchor)
            .ok_or_else(|| invalid("no template uses the anchor predicate"))?;
        let subject = self
            .subject
            .or_else(|| self.templates[anchor_index].subject.var().map(str::to_string))
            .ok_or_else(|| invalid("no subject variable"))?;
        let schema = StatementSchema {
            id: self.id.unwrap_or_else(|| class.clone()),
            class,
            anchor,
            templates: self.templates,
            anchor_index,
            subject,
            arguments: self.arguments,
            numeric: self.numeric,
            adjuncts: self.adjuncts,
            relation: self.relation.unwrap_or(RelationKind::Qualitative),
            label: self.label,
        };
        schema.validate()?;
        Ok(schema)
    }
}

pub fn compile_schema(text: &str) -> Result<Vec<StatementSchema>, SchemaError> {
    let mut prefixes = default_prefixes();
    let mut schemas = Vec::new();
    let mut draft: Option<Draft> = None;

    for (n, raw) in text.lines().enumerate() {
        let line = n + 1;
        let grammar = |message: String| SchemaError::Grammar { line, message };
        let tokens = tokenize(raw).map_err(grammar)?;
        let Some(keyword) = tokens.first() else {
            continue;
        };
        let iri = |i: usize| {
            tokens
                .get(i)
                .ok_or_else(|| format!("`{keyword}` is missing an argument"))
                .and_then(|t| expand_iri(t, &prefixes))
        };
        if keyword == "prefix" {
            let (Some(name), Some(ns)) = (tokens.get(1), tokens.get(2)) else {
                return Err(grammar("expected `prefix name: <namespace>`".into()));
            };
            let ns = ns
                .strip_prefix('<')
                .and_then(|n| n.strip_suffix('>'))
                .ok_or_else(|| grammar("namespace must be written <...>".into()))?;
            prefixes.insert(name.trim_end_matches(':').to_string(), ns.to_string());
            continue;
        }
        if keyword == "unit" {
            if tokens.get(2).map(String::as_str) != Some("anchor") || tokens.len() != 4 {
                return Err(grammar("expected `unit <class> anchor <predicate>`".into()));
            }
            if let Some(done) = draft.take() {
                schemas.push(done.finish()?);
            }
            draft = Some(Draft {
                line,
                class: Some(iri(1).map_err(grammar)?),
                anchor: Some(iri(3).map_err(grammar)?),
                ..Draft::default()
            });
            continue;
        }
        let Some(current) = draft.as_mut() else {
            return Err(grammar(format!("`{keyword}` before any `unit` line")));
        };
        match keyword.as_str() {
            "id" => current.id = Some(iri(1).map_err(grammar)?),
            "template" => {
                if tokens.len() != 4 {
                    return Err(grammar("expected `template <s> <p> <o>`".into()));
                }
                let subject = parse_slot(&tokens[1], &prefixes).map_err(grammar)?;
                if matches!(subject, Slot::Literal(_)) {
                    return Err(grammar("a literal cannot be a subject".into()));
                }
                current.templates.push(TripleTemplate {
                    subject,
                    predicate: iri(2).map_err(grammar)?,
                    object: parse_slot(&tokens[3], &prefixes).map_err(grammar)?,
                });
            }
            "subject" => current.subject = Some(parse_var(tokens.get(1)).map_err(grammar)?),
            "arg" => {
                let var = parse_var(tokens.get(1)).map_err(grammar)?;
                match tokens.get(2).map(String::as_str) {
                    None => {}
                    Some("numeric") => {
                        current.numeric.insert(var.clone());
                    }
                    Some(other) => return Err(grammar(format!("unknown arg flag `{other}`"))),
                }
                current.arguments.push(var);
            }
            "adjunct" => current.adjuncts.push(parse_var(tokens.get(1)).map_err(grammar)?),
            "relation" => {
                current.relation = Some(match tokens.get(1).map(String::as_str) {
                    Some("qualitative") => RelationKind::Qualitative,
                    Some("quantitative") => RelationKind::Quantitative,
                    _ => return Err(grammar("expected qualitative or quantitative".into())),
                })
            }
            "label" => {
                let text = tokens
                    .get(1)
                    .and_then(|t| t.strip_prefix('"'))
                    .ok_or_else(|| grammar("expected a quoted label template".into()))?;
                current.label = Some(text.to_string());
            }
            other => return Err(grammar(format!("unknown keyword `{other}`"))),
        }
    }
    if let Some(done) = draft {
        let _ = done.line;
        schemas.push(done.finish()?);
    }
    Ok(schemas)
}

#[cfg(test)]
mod tests {
    use super::*;

    const HAS_PART: &str = r#"
        prefix ex: <http://example.org/>
        unit ex:HasPartStatementUnit anchor obo:BFO_0000051
        template ?s obo:BFO_0000051 ?o
        subject ?s
        arg ?o
        relation qualitative
        label "{s} has part {o}"
    "#;

    const WEIGHT: &str = r#"
        prefix ex: <http://example.org/>
        unit ex:WeightMeasurementStatementUnit anchor ex:hasValue
        template ?q ex:hasValue ?v
        template ?q ex:hasUnit ?u
        template ?q ex:measuredAt ?t
        subject ?q
        arg ?v numeric
        arg ?u
        adjunct ?t
        relation quantitative
        label "{q} measures {v} {u}"
    "#;

    #[test]
    fn has_part_compiles() {
        let schemas = compile_schema(HAS_PART).unwrap();
        assert_eq!(schemas.len(), 1);
        let s = &schemas[0];
        assert_eq!(s.templates.len(), 1);
        assert_eq!(s.relation, RelationKind::Qualitative);
        assert_eq!(s.arguments, vec!["o".to_string()]);
        assert_eq!(s.id, s.class);
    }

    #[test]
    fn weight_compiles_as_quantitative() {
        let s = &compile_schema(WEIGHT).unwrap()[0];
        assert_eq!(s.relation, RelationKind::Quantitative);
        assert!(s.numeric.contains("v"));
        assert_eq!(s.required().count(), 2);
        assert_eq!(s.optional().count(), 1);
    }

    #[test]
    fn many_schemas_in_one_file() {
        let text = format!("{HAS_PART}\n{WEIGHT}");
        assert_eq!(compile_schema(&text).unwrap().len(), 2);
    }

    #[test]
    fn quantitative_without_numeric_slot() {
        let text = WEIGHT.replace("arg ?v numeric", "arg ?v");
        let err = compile_schema(&text).unwrap_err();
        assert!(matches!(err, SchemaError::Invalid { .. }), "{err}");
    }

    #[test]
    fn grammar_errors_carry_lines() {
        let err = compile_schema("unit <http://e.org/A> anchor\n").unwrap_err();
        assert!(matches!(err, SchemaError::Grammar { line: 1, .. }));
        let err = compile_schema("template ?s <http://e.org/p> ?o").unwrap_err();
        assert!(matches!(err, SchemaError::Grammar { line: 1, .. }));
        let err = compile_schema("unit <http://e.org/A> anchor <http://e.org/p>\nfrob ?x").unwrap_err();
        assert!(matches!(err, SchemaError::Grammar { line: 2, .. }));
    }

    #[test]
    fn subject_must_occur() {
        let err = compile_schema(
            "unit <http://e.org/A> anchor <http://e.org/p>\ntemplate ?s <http://e.org/p> ?o\nsubject ?x",
        )
        .unwrap_err();
        assert!(err.to_string().contains("subject"));
    }

    #[test]
    fn tokenizer_keeps_quoted_strings() {
        let t = tokenize(r#"label "{s} travels by {a}"  # comment"#).unwrap();
        assert_eq!(t, vec!["label".to_string(), "\"{s} travels by {a}".to_string()]);
    }
}
