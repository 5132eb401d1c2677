//! Translation patterns: guarded templates that turn model atoms into OWL.
//!
//! ```text
//! pattern some-instance
//! when su:SomeInstanceIdentificationUnit(U), su:hasSemanticUnitSubject(U, Y),
//!      su:statement(U, Y, su:someInstanceOf, C), not su:NegationUnit(U).
//! fresh CX(Y) scope some
//! emit rdf:type(CX, C)
//! end
//! ```

use std::collections::{BTreeMap, BTreeSet};

use sha2::{Digest, Sha256};

use super::ground::{substitute, Binding, FactIndex};
use super::owl::{ClassExpr, OwlAxiom};
use super::syntax::{default_prefixes, is_var, Arg, Atom, Parser, Token};
use super::SemanticsError;
use crate::store::{Literal, OWL, RDF, SU, XSD};

/// A fresh individual named after the values bound to `from`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fresh {
    pub var: String,
    pub from: Vec<String>,
    pub scope: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClassTemplate {
    Term(Arg),
    SomeValuesFrom(Arg, Box<ClassTemplate>),
    AllValuesFrom(Arg, Box<ClassTemplate>),
    ComplementOf(Box<ClassTemplate>),
    IntersectionOf(Vec<ClassTemplate>),
    OneOf(Vec<Arg>),
    Cardinality(Arg, Arg, Box<ClassTemplate>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AxiomTemplate {
    ClassAssertion(Arg, ClassTemplate),
    SubClassOf(ClassTemplate, ClassTemplate),
    Property(Arg, Arg, Arg),
    Membership(Arg, Arg),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TranslationPattern {
    pub id: String,
    pub positive: Vec<Atom>,
    pub negative: Vec<Atom>,
    pub fresh: Vec<Fresh>,
    pub emits: Vec<AxiomTemplate>,
}

fn class_vars<'a>(c: &'a ClassTemplate, out: &mut Vec<&'a Arg>) {
    match c {
        ClassTemplate::Term(a) => out.push(a),
        ClassTemplate::SomeValuesFrom(p, c) | ClassTemplate::AllValuesFrom(p, c) => {
            out.push(p);
            class_vars(c, out);
        }
        ClassTemplate::ComplementOf(c) => class_vars(c, out),
        ClassTemplate::IntersectionOf(cs) => cs.iter().for_each(|c| class_vars(c, out)),
        ClassTemplate::OneOf(xs) => out.extend(xs),
        ClassTemplate::Cardinality(p, n, c) => {
            out.push(p);
            out.push(n);
            class_vars(c, out);
        }
    }
}

impl AxiomTemplate {
    fn args(&self) -> Vec<&Arg> {
        let mut out = Vec::new();
        match self {
            AxiomTemplate::ClassAssertion(x, c) => {
                out.push(x);
                class_vars(c, &mut out);
            }
            AxiomTemplate::SubClassOf(a, b) => {
                class_vars(a, &mut out);
                class_vars(b, &mut out);
            }
            AxiomTemplate::Property(p, s, o) => out.extend([p, s, o]),
            AxiomTemplate::Membership(m, c) => out.extend([m, c]),
        }
        out
    }
}

impl TranslationPattern {
    /// Every variable used outside the positive guard must be bound by it or
    /// introduced by a `fresh` line.
    pub fn validate(&self) -> Result<(), SemanticsError> {
        let guard: BTreeSet<&str> = self.positive.iter().flat_map(Atom::vars).collect();
        let unbound = |var: &str| SemanticsError::UnboundPatternVariable {
            pattern: self.id.clone(),
            var: var.to_string(),
        };
        for v in self.negative.iter().flat_map(Atom::vars) {
            if !guard.contains(v) {
                return Err(unbound(v));
            }
        }
        let mut known = guard.clone();
        for f in &self.fresh {
            if let Some(v) = f.from.iter().find(|v| !guard.contains(v.as_str())) {
                return Err(unbound(v));
            }
            known.insert(&f.var);
        }
        for arg in self.emits.iter().flat_map(AxiomTemplate::args) {
            if let Arg::Var(v) = arg {
                if !known.contains(v.as_str()) {
                    return Err(unbound(v));
                }
            }
        }
        Ok(())
    }

    fn bindings(&self, model: &FactIndex) -> Vec<Binding> {
        model
            .matches(&self.positive, &Binding::new())
            .into_iter()
            .filter(|b| self.negative.iter().all(|n| !model.contains(&substitute(n, b))))
            .map(|mut b| {
                for f in &self.fresh {
                    let values: Vec<&str> = f.from.iter().map(|v| b[v].as_str()).collect();
                    let name = skolem(&f.scope, &values);
                    b.insert(f.var.clone(), name);
                }
                b
            })
            .collect()
    }
}

/// Deterministic fresh name: `sk:<scope>:<hash>` over the bound values.
pub fn skolem(scope: &str, values: &[&str]) -> String {
    let digest = Sha256::digest(values.join("\u{1f}").as_bytes());
    let hex: String = digest.iter().take(6).map(|b| format!("{b:02x}")).collect();
    format!("sk:{scope}:{hex}")
}

/// Parses a pattern file. `#` starts a comment line; `prefix ex: <iri>`
/// declares a prefix for the patterns that follow.
pub fn parse_patterns(text: &str) -> Result<Vec<TranslationPattern>, SemanticsError> {
    let mut prefixes = default_prefixes();
    let mut patterns = Vec::new();
    let mut current: Option<TranslationPattern> = None;
    let mut when = String::new();
    let perr = |line: usize, message: String| SemanticsError::Parse { line, message };
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if !when.is_empty() {
            when.push(' ');
            when.push_str(line);
            if line.ends_with('.') {
                set_guard(current.as_mut().expect("inside a pattern"), &when, line_no, &prefixes)?;
                when.clear();
            }
            continue;
        }
        let (keyword, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        let rest = rest.trim();
        match (keyword, current.as_mut()) {
            ("prefix" | "@prefix", None) => {
                let (name, iri) = rest
                    .trim_end_matches('.')
                    .trim()
                    .split_once(char::is_whitespace)
                    .and_then(|(n, i)| Some((n.strip_suffix(':')?, i.trim().strip_prefix('<')?.strip_suffix('>')?)))
                    .ok_or_else(|| perr(line_no, format!("expected `prefix name: <iri>`, found `{rest}`")))?;
                prefixes.insert(name.to_string(), iri.to_string());
            }
            ("pattern", None) => {
                current = Some(TranslationPattern {
                    id: rest.to_string(),
                    positive: Vec::new(),
                    negative: Vec::new(),
                    fresh: Vec::new(),
                    emits: Vec::new(),
                });
            }
            ("when", Some(p)) => {
                if rest.ends_with('.') {
                    set_guard(p, rest, line_no, &prefixes)?;
                } else {
                    when = rest.to_string();
                }
            }
            ("fresh", Some(p)) => p.fresh.push(parse_fresh(rest).map_err(|m| perr(line_no, m))?),
            ("emit", Some(p)) => p.emits.push(parse_emit(rest, line_no, &prefixes)?),
            ("end", Some(_)) => {
                let p = current.take().expect("checked");
                p.validate()?;
                patterns.push(p);
            }
            _ => return Err(perr(line_no, format!("unexpected `{keyword}`"))),
        }
    }
    if current.is_some() || !when.is_empty() {
        return Err(perr(text.lines().count(), "pattern is missing `end`".into()));
    }
    Ok(patterns)
}

fn set_guard(
    p: &mut TranslationPattern,
    text: &str,
    line: usize,
    prefixes: &BTreeMap<String, String>,
) -> Result<(), SemanticsError> {
    let mut parser = Parser::new(text).map_err(|e| relocate(e, line))?;
    parser.prefixes = prefixes.clone();
    let (positive, negative) = parser.body().map_err(|e| relocate(e, line))?;
    parser.expect(Token::Dot).map_err(|e| relocate(e, line))?;
    p.positive = positive;
    p.negative = negative;
    Ok(())
}

fn relocate(e: SemanticsError, line: usize) -> SemanticsError {
    match e {
        SemanticsError::Parse { message, .. } => SemanticsError::Parse { line, message },
        other => other,
    }
}

fn parse_fresh(text: &str) -> Result<Fresh, String> {
    // CX(Y, Z) scope name
    let (call, scope) = text
        .split_once(" scope ")
        .ok_or_else(|| format!("fresh needs a scope: `{text}`"))?;
    let (var, args) = call
        .trim()
        .strip_suffix(')')
        .and_then(|c| c.split_once('('))
        .ok_or_else(|| format!("malformed fresh declaration `{text}`"))?;
    let from: Vec<String> = args
        .split(',')
        .map(|a| a.trim().to_string())
        .filter(|a| !a.is_empty())
        .collect();
    if !is_var(var.trim()) || from.iter().any(|a| !is_var(a)) {
        return Err(format!("fresh declarations take variables only: `{text}`"));
    }
    Ok(Fresh {
        var: var.trim().to_string(),
        from,
        scope: scope.trim().to_string(),
    })
}

fn parse_emit(
    text: &str,
    line: usize,
    prefixes: &BTreeMap<String, String>,
) -> Result<AxiomTemplate, SemanticsError> {
    let mut p = Parser::new(text).map_err(|e| relocate(e, line))?;
    p.prefixes = prefixes.clone();
    let axiom = axiom_template(&mut p).map_err(|e| relocate(e, line))?;
    if !p.at_end() {
        return Err(SemanticsError::Parse {
            line,
            message: format!("trailing input after axiom `{text}`"),
        });
    }
    Ok(axiom)
}

fn axiom_template(p: &mut Parser) -> Result<AxiomTemplate, SemanticsError> {
    let head = p.arg()?;
    p.expect(Token::Open)?;
    let axiom = match head.as_const() {
        Some(c) if c == format!("{RDF}type") => {
            let x = p.arg()?;
            p.expect(Token::Comma)?;
            AxiomTemplate::ClassAssertion(x, class_template(p)?)
        }
        Some(c) if c == format!("{OWL}SubClassOf") => {
            let a = class_template(p)?;
            p.expect(Token::Comma)?;
            AxiomTemplate::SubClassOf(a, class_template(p)?)
        }
        Some(c) if c == format!("{SU}member-of") => {
            let m = p.arg()?;
            p.expect(Token::Comma)?;
            AxiomTemplate::Membership(m, p.arg()?)
        }
        _ => {
            let s = p.arg()?;
            p.expect(Token::Comma)?;
            AxiomTemplate::Property(head, s, p.arg()?)
        }
    };
    p.expect(Token::Close)?;
    Ok(axiom)
}

fn class_template(p: &mut Parser) -> Result<ClassTemplate, SemanticsError> {
    let mark = p.mark();
    let name = match p.next()? {
        Token::Name(n) => p.expand(&n),
        _ => String::new(),
    };
    let constructor = name.strip_prefix(OWL).filter(|_| p.peek() == Some(&Token::Open));
    let Some(constructor) = constructor else {
        p.reset(mark);
        return Ok(ClassTemplate::Term(p.arg()?));
    };
    p.expect(Token::Open)?;
    let out = match constructor {
        "SomeValuesFrom" | "AllValuesFrom" => {
            let prop = p.arg()?;
            p.expect(Token::Comma)?;
            let filler = Box::new(class_template(p)?);
            if constructor == "SomeValuesFrom" {
                ClassTemplate::SomeValuesFrom(prop, filler)
            } else {
                ClassTemplate::AllValuesFrom(prop, filler)
            }
        }
        "complementOf" => ClassTemplate::ComplementOf(Box::new(class_template(p)?)),
        "intersectionOf" => {
            let mut parts = vec![class_template(p)?];
            while p.eat(&Token::Comma) {
                parts.push(class_template(p)?);
            }
            ClassTemplate::IntersectionOf(parts)
        }
        "oneOf" => {
            let braced = p.eat(&Token::LBrace);
            let mut xs = vec![p.arg()?];
            while p.eat(&Token::Comma) {
                xs.push(p.arg()?);
            }
            if braced {
                p.expect(Token::RBrace)?;
            }
            ClassTemplate::OneOf(xs)
        }
        "cardinality" => {
            let prop = p.arg()?;
            p.expect(Token::Comma)?;
            let n = p.arg()?;
            p.expect(Token::Comma)?;
            ClassTemplate::Cardinality(prop, n, Box::new(class_template(p)?))
        }
        other => return Err(p.error(format!("unknown class constructor owl:{other}"))),
    };
    p.expect(Token::Close)?;
    Ok(out)
}

struct Instantiate<'a> {
    pattern: &'a str,
    binding: &'a Binding,
}

impl Instantiate<'_> {
    fn value(&self, arg: &Arg) -> Result<String, SemanticsError> {
        match arg {
            Arg::Const(c) => Ok(c.clone()),
            Arg::Var(v) => self.binding.get(v).cloned().ok_or_else(|| SemanticsError::UnboundPatternVariable {
                pattern: self.pattern.to_string(),
                var: v.clone(),
            }),
        }
    }

    fn class(&self, c: &ClassTemplate) -> Result<ClassExpr, SemanticsError> {
        Ok(match c {
            ClassTemplate::Term(a) => ClassExpr::Named(self.value(a)?),
            ClassTemplate::SomeValuesFrom(p, c) => ClassExpr::SomeValuesFrom(self.value(p)?, Box::new(self.class(c)?)),
            ClassTemplate::AllValuesFrom(p, c) => ClassExpr::AllValuesFrom(self.value(p)?, Box::new(self.class(c)?)),
            ClassTemplate::ComplementOf(c) => ClassExpr::ComplementOf(Box::new(self.class(c)?)),
            ClassTemplate::IntersectionOf(cs) => {
                ClassExpr::IntersectionOf(cs.iter().map(|c| self.class(c)).collect::<Result<_, _>>()?)
            }
            ClassTemplate::OneOf(xs) => ClassExpr::OneOf(xs.iter().map(|x| self.value(x)).collect::<Result<_, _>>()?),
            ClassTemplate::Cardinality(p, n, c) => {
                let raw = self.value(n)?;
                let n = cardinality(&raw).ok_or_else(|| SemanticsError::Pattern {
                    pattern: self.pattern.to_string(),
                    message: format!("{raw} is not a non-negative integer"),
                })?;
                ClassExpr::QualifiedCardinality {
                    property: self.value(p)?,
                    n,
                    filler: Box::new(self.class(c)?),
                }
            }
        })
    }

    fn axiom(&self, t: &AxiomTemplate) -> Result<OwlAxiom, SemanticsError> {
        Ok(match t {
            AxiomTemplate::ClassAssertion(x, c) => OwlAxiom::ClassAssertion {
                class: self.class(c)?,
                individual: self.value(x)?,
            },
            AxiomTemplate::SubClassOf(a, b) => OwlAxiom::SubClassOf(self.class(a)?, self.class(b)?),
            AxiomTemplate::Membership(m, c) => OwlAxiom::CollectionMembership {
                member: self.value(m)?,
                collection: self.value(c)?,
            },
            AxiomTemplate::Property(p, s, o) => {
                let (property, subject, object) = (self.value(p)?, self.value(s)?, self.value(o)?);
                if object.starts_with('"') {
                    OwlAxiom::DataPropertyAssertion {
                        property,
                        subject,
                        value: object,
                    }
                } else {
                    OwlAxiom::ObjectPropertyAssertion {
                        property,
                        subject,
                        object,
                    }
                }
            }
        })
    }
}

/// Reads an integer literal in N-Triples form, or a bare number.
fn cardinality(raw: &str) -> Option<u64> {
    let lexical = match raw.strip_prefix('"') {
        Some(rest) => {
            let (lexical, suffix) = rest.split_once('"')?;
            let dt = suffix.strip_prefix("^^<")?.strip_suffix('>')?;
            let numeric = Literal::typed(lexical, crate::store::Upri::new(dt).ok()?).is_numeric();
            if !numeric || !dt.starts_with(XSD) {
                return None;
            }
            lexical
        }
        None => raw,
    };
    lexical.parse().ok()
}

/// Axioms produced by each pattern over a model, tagged with the pattern id.
/// Sorted and free of duplicate pairs.
pub fn translate_with_trace(
    model: &BTreeSet<Atom>,
    patterns: &[TranslationPattern],
) -> Result<Vec<(String, OwlAxiom)>, SemanticsError> {
    let index = FactIndex::new(model);
    let mut out: BTreeMap<(OwlAxiom, String), ()> = BTreeMap::new();
    for pattern in patterns {
        pattern.validate()?;
        for binding in pattern.bindings(&index) {
            let inst = Instantiate {
                pattern: &pattern.id,
                binding: &binding,
            };
            for emit in &pattern.emits {
                out.insert((inst.axiom(emit)?, pattern.id.clone()), ());
            }
        }
    }
    Ok(out.into_keys().map(|(a, id)| (id, a)).collect())
}

/// The OWL axioms a model translates to, sorted and deduplicated.
pub fn translate_to_owl(
    model: &BTreeSet<Atom>,
    patterns: &[TranslationPattern],
) -> Result<Vec<OwlAxiom>, SemanticsError> {
    let axioms: BTreeSet<OwlAxiom> = translate_with_trace(model, patterns)?
        .into_iter()
        .map(|(_, a)| a)
        .collect();
    Ok(axioms.into_iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    const DEMO: &str = "
pattern typed
when kind(U, X, C), not blocked(U).
fresh F(X) scope demo
emit rdf:type(X, C)
emit rdf:type(F, owl:complementOf(C))
end
";

    fn model(text: &str) -> BTreeSet<Atom> {
        super::super::LogicProgram::parse(text)
            .unwrap()
            .rules
            .into_iter()
            .map(|r| r.head)
            .collect()
    }

    #[test]
    fn guard_and_negation() {
        let patterns = parse_patterns(DEMO).unwrap();
        let out = translate_to_owl(&model("kind(u1, a, c). kind(u2, b, c). blocked(u2)."), &patterns).unwrap();
        assert_eq!(out.len(), 2);
        let text: Vec<String> = out.iter().map(ToString::to_string).collect();
        assert!(text.contains(&"rdf:type(a, c)".to_string()));
        assert!(text.iter().any(|t| t.starts_with("rdf:type(sk:demo:")));
    }

    #[test]
    fn skolem_names_are_stable() {
        assert_eq!(skolem("s", &["x"]), skolem("s", &["x"]));
        assert_ne!(skolem("s", &["x"]), skolem("t", &["x"]));
    }

    #[test]
    fn unbound_emit_variable_is_rejected() {
        let text = "pattern bad\nwhen p(X).\nemit rdf:type(X, Z)\nend\n";
        assert!(matches!(
            parse_patterns(text),
            Err(SemanticsError::UnboundPatternVariable { var, .. }) if var == "Z"
        ));
    }

    #[test]
    fn cardinality_reads_integer_literals() {
        assert_eq!(cardinality(&Literal::integer(3).to_string()), Some(3));
        assert_eq!(cardinality("\"x\""), None);
    }
}
