//! Datalog-with-negation text format.
//!
//! ```text
//! @prefix ex: <http://example.org/> .
//! has-part(X, thumb) :- rdf:type(X, hand), not lacks-part(X, thumb).
//! -ex:p(a, b).          % classical negation
//! ```
//!
//! Variables start with an uppercase letter, `_` or `?`. Names with a known
//! prefix expand to full IRIs; other names stay bare symbols. Quoted strings
//! and integers become literal constants in N-Triples form.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::SemanticsError;
use crate::store::{Literal, Upri, OBO, OWL, RDF, RDFS, SU, XSD};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Arg {
    Const(String),
    Var(String),
}

impl Arg {
    pub fn constant(c: impl Into<String>) -> Arg {
        Arg::Const(c.into())
    }

    pub fn as_const(&self) -> Option<&str> {
        match self {
            Arg::Const(c) => Some(c),
            Arg::Var(_) => None,
        }
    }
}

/// `p(t1, .., tn)`, optionally classically negated (`-p(..)`).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Atom {
    pub negated: bool,
    pub predicate: String,
    pub args: Vec<Arg>,
}

impl Atom {
    pub fn new(predicate: impl Into<String>, args: Vec<Arg>) -> Atom {
        Atom {
            negated: false,
            predicate: predicate.into(),
            args,
        }
    }

    /// A ground atom from constant symbols.
    pub fn fact<S: Into<String>>(predicate: impl Into<String>, args: impl IntoIterator<Item = S>) -> Atom {
        Atom::new(predicate, args.into_iter().map(|a| Arg::Const(a.into())).collect())
    }

    pub fn negate(mut self) -> Atom {
        self.negated = !self.negated;
        self
    }

    pub fn is_ground(&self) -> bool {
        self.args.iter().all(|a| matches!(a, Arg::Const(_)))
    }

    pub fn vars(&self) -> impl Iterator<Item = &str> {
        self.args.iter().filter_map(|a| match a {
            Arg::Var(v) => Some(v.as_str()),
            Arg::Const(_) => None,
        })
    }

    pub fn constants(&self) -> impl Iterator<Item = &str> {
        self.args.iter().filter_map(Arg::as_const)
    }

    /// The complementary literal under classical negation.
    pub fn complement(&self) -> Atom {
        self.clone().negate()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rule {
    pub head: Atom,
    pub positive: Vec<Atom>,
    pub negative: Vec<Atom>,
}

impl Rule {
    pub fn fact(head: Atom) -> Rule {
        Rule {
            head,
            positive: Vec::new(),
            negative: Vec::new(),
        }
    }

    /// Head and default-negated variables must all occur in the positive body.
    pub fn is_safe(&self) -> bool {
        let bound: BTreeSet<&str> = self.positive.iter().flat_map(Atom::vars).collect();
        self.head
            .vars()
            .chain(self.negative.iter().flat_map(Atom::vars))
            .all(|v| bound.contains(v))
    }

    pub fn vars(&self) -> BTreeSet<&str> {
        std::iter::once(&self.head)
            .chain(&self.positive)
            .chain(&self.negative)
            .flat_map(Atom::vars)
            .collect()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LogicProgram {
    pub rules: Vec<Rule>,
}

impl LogicProgram {
    pub fn parse(text: &str) -> Result<LogicProgram, SemanticsError> {
        let mut parser = Parser::new(text)?;
        let mut rules = Vec::new();
        while !parser.at_end() {
            if let Some(rule) = parser.statement()? {
                rules.push(rule);
            }
        }
        Ok(LogicProgram { rules })
    }

    pub fn extend(&mut self, other: LogicProgram) {
        self.rules.extend(other.rules);
    }

    pub fn with_facts(&self, facts: &[Atom]) -> LogicProgram {
        let mut rules = self.rules.clone();
        rules.extend(facts.iter().cloned().map(Rule::fact));
        LogicProgram { rules }
    }

    /// Constants mentioned anywhere in the program.
    pub fn constants(&self) -> BTreeSet<String> {
        self.rules
            .iter()
            .flat_map(|r| std::iter::once(&r.head).chain(&r.positive).chain(&r.negative))
            .flat_map(|a| a.constants().map(str::to_string))
            .collect()
    }
}

pub(crate) fn default_prefixes() -> BTreeMap<String, String> {
    [
        ("rdf", RDF),
        ("rdfs", RDFS),
        ("owl", OWL),
        ("xsd", XSD),
        ("su", SU),
        ("obo", OBO),
    ]
    .into_iter()
    .map(|(p, ns)| (p.to_string(), ns.to_string()))
    .collect()
}

/// Shortest readable form of a symbol: `prefix:local` for known namespaces,
/// `<iri>` for other IRIs, and bare symbols or literals unchanged.
pub fn compact(symbol: &str) -> String {
    if symbol.starts_with('"') {
        return symbol.to_string();
    }
    for (prefix, ns) in default_prefixes() {
        if let Some(local) = symbol.strip_prefix(ns.as_str()) {
            if !local.is_empty() && local.chars().all(is_name_char) {
                return format!("{prefix}:{local}");
            }
        }
    }
    if symbol.contains("://") || symbol.starts_with("urn:") {
        format!("<{symbol}>")
    } else {
        symbol.to_string()
    }
}

/// OWL-output rendering: like [`compact`], with integers printed bare.
pub(crate) fn render_owl(symbol: &str) -> String {
    let integer = format!("\"^^<{XSD}integer>");
    if let Some(body) = symbol.strip_prefix('"').and_then(|s| s.strip_suffix(integer.as_str())) {
        return body.to_string();
    }
    compact(symbol)
}

fn render_arg(arg: &Arg) -> String {
    match arg {
        Arg::Const(c) => compact(c),
        Arg::Var(v) => v.clone(),
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negated {
            f.write_str("-")?;
        }
        f.write_str(&compact(&self.predicate))?;
        if !self.args.is_empty() {
            let args: Vec<String> = self.args.iter().map(render_arg).collect();
            write!(f, "({})", args.join(", "))?;
        }
        Ok(())
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.head)?;
        let body: Vec<String> = self
            .positive
            .iter()
            .map(ToString::to_string)
            .chain(self.negative.iter().map(|a| format!("not {a}")))
            .collect();
        if !body.is_empty() {
            write!(f, " :- {}", body.join(", "))?;
        }
        f.write_str(".")
    }
}

impl fmt::Display for LogicProgram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for rule in &self.rules {
            writeln!(f, "{rule}")?;
        }
        Ok(())
    }
}

fn is_name_char(c: char) -> bool {
    c.is_alphanumeric() || matches!(c, '_' | '-' | '\'')
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Token {
    Name(String),
    Iri(String),
    Str(String),
    Open,
    Close,
    LBrace,
    RBrace,
    Comma,
    If,
    Dot,
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Token::Name(n) => f.write_str(n),
            Token::Iri(i) => write!(f, "<{i}>"),
            Token::Str(s) => f.write_str(s),
            Token::Open => f.write_str("("),
            Token::Close => f.write_str(")"),
            Token::LBrace => f.write_str("{"),
            Token::RBrace => f.write_str("}"),
            Token::Comma => f.write_str(","),
            Token::If => f.write_str(":-"),
            Token::Dot => f.write_str("."),
        }
    }
}

pub(crate) fn lex(text: &str) -> Result<Vec<(usize, Token)>, SemanticsError> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let mut line = 1;
    let mut i = 0;
    let err = |line, message: String| SemanticsError::Parse { line, message };
    while i < chars.len() {
        let c = chars[i];
        match c {
            '\n' => {
                line += 1;
                i += 1;
            }
            c if c.is_whitespace() => i += 1,
            '%' => {
                while i < chars.len() && chars[i] != '\n' {
                    i += 1;
                }
            }
            '(' | ')' | '{' | '}' | ',' | '.' => {
                out.push((
                    line,
                    match c {
                        '(' => Token::Open,
                        ')' => Token::Close,
                        '{' => Token::LBrace,
                        '}' => Token::RBrace,
                        ',' => Token::Comma,
                        _ => Token::Dot,
                    },
                ));
                i += 1;
            }
            ':' if chars.get(i + 1) == Some(&'-') => {
                out.push((line, Token::If));
                i += 2;
            }
            '<' => {
                let start = i + 1;
                while i < chars.len() && chars[i] != '>' {
                    i += 1;
                }
                if i == chars.len() {
                    return Err(err(line, "unterminated IRI".into()));
                }
                out.push((line, Token::Iri(chars[start..i].iter().collect())));
                i += 1;
            }
            '"' => {
                let mut lexical = String::new();
                i += 1;
                loop {
                    match chars.get(i) {
                        None => return Err(err(line, "unterminated string".into())),
                        Some('"') => break,
                        Some('\\') => {
                            match chars.get(i + 1) {
                                Some('n') => lexical.push('\n'),
                                Some('r') => lexical.push('\r'),
                                Some(&next) => lexical.push(next),
                                None => {}
                            }
                            i += 2;
                        }
                        Some(&ch) => {
                            lexical.push(ch);
                            i += 1;
                        }
                    }
                }
                i += 1;
                // Keep a datatype or language suffix with the literal.
                let mut suffix = String::new();
                if chars.get(i) == Some(&'@') || (chars.get(i) == Some(&'^') && chars.get(i + 1) == Some(&'^')) {
                    while i < chars.len() && !chars[i].is_whitespace() && !matches!(chars[i], ',' | ')' | '}') {
                        suffix.push(chars[i]);
                        i += 1;
                    }
                    if suffix.ends_with('.') {
                        suffix.pop();
                        i -= 1;
                    }
                }
                out.push((line, Token::Str(format!("{lexical}\u{0}{suffix}"))));
            }
            c if is_name_char(c) || matches!(c, '?' | '@' | ':') => {
                let start = i;
                while i < chars.len() {
                    let ch = chars[i];
                    let starts_if = ch == ':' && chars.get(i + 1) == Some(&'-');
                    if starts_if || !(is_name_char(ch) || matches!(ch, '?' | '@' | ':')) {
                        break;
                    }
                    i += 1;
                }
                out.push((line, Token::Name(chars[start..i].iter().collect())));
            }
            other => return Err(err(line, format!("unexpected character `{other}`"))),
        }
    }
    Ok(out)
}

pub(crate) struct Parser {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    pub(crate) prefixes: BTreeMap<String, String>,
}

impl Parser {
    pub(crate) fn new(text: &str) -> Result<Parser, SemanticsError> {
        Ok(Parser {
            tokens: lex(text)?,
            pos: 0,
            prefixes: default_prefixes(),
        })
    }

    pub(crate) fn mark(&self) -> usize {
        self.pos
    }

    pub(crate) fn reset(&mut self, mark: usize) {
        self.pos = mark;
    }

    pub(crate) fn at_end(&self) -> bool {
        self.pos >= self.tokens.len()
    }

    fn line(&self) -> usize {
        self.tokens
            .get(self.pos)
            .or(self.tokens.last())
            .map_or(1, |(l, _)| *l)
    }

    pub(crate) fn error(&self, message: impl Into<String>) -> SemanticsError {
        SemanticsError::Parse {
            line: self.line(),
            message: message.into(),
        }
    }

    pub(crate) fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    pub(crate) fn next(&mut self) -> Result<Token, SemanticsError> {
        let t = self
            .tokens
            .get(self.pos)
            .map(|(_, t)| t.clone())
            .ok_or_else(|| self.error("unexpected end of input"))?;
        self.pos += 1;
        Ok(t)
    }

    pub(crate) fn expect(&mut self, want: Token) -> Result<(), SemanticsError> {
        let got = self.next()?;
        if got == want {
            Ok(())
        } else {
            self.pos -= 1;
            Err(self.error(format!("expected `{want}`, found `{got}`")))
        }
    }

    pub(crate) fn eat(&mut self, want: &Token) -> bool {
        if self.peek() == Some(want) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    /// A rule, or `None` for a prefix directive.
    fn statement(&mut self) -> Result<Option<Rule>, SemanticsError> {
        if self.peek() == Some(&Token::Name("@prefix".into())) {
            self.pos += 1;
            let Token::Name(name) = self.next()? else {
                return Err(self.error("expected a prefix name"));
            };
            let Token::Iri(iri) = self.next()? else {
                return Err(self.error("expected a namespace IRI"));
            };
            self.expect(Token::Dot)?;
            self.prefixes
                .insert(name.trim_end_matches(':').to_string(), iri);
            return Ok(None);
        }
        let head = self.atom()?;
        let (positive, negative) = if self.eat(&Token::If) {
            self.body()?
        } else {
            (Vec::new(), Vec::new())
        };
        self.expect(Token::Dot)?;
        Ok(Some(Rule {
            head,
            positive,
            negative,
        }))
    }

    /// Comma-separated literals; stops before the terminating `.`.
    pub(crate) fn body(&mut self) -> Result<(Vec<Atom>, Vec<Atom>), SemanticsError> {
        let mut positive = Vec::new();
        let mut negative = Vec::new();
        loop {
            if self.eat(&Token::Name("not".into())) {
                negative.push(self.atom()?);
            } else {
                positive.push(self.atom()?);
            }
            if !self.eat(&Token::Comma) {
                break;
            }
        }
        Ok((positive, negative))
    }

    pub(crate) fn atom(&mut self) -> Result<Atom, SemanticsError> {
        let (negated, predicate) = match self.next()? {
            Token::Name(n) => match n.strip_prefix('-') {
                Some(rest) if !rest.is_empty() => (true, self.expand(rest)),
                _ => (false, self.expand(&n)),
            },
            Token::Iri(i) => (false, i),
            other => {
                self.pos -= 1;
                return Err(self.error(format!("expected an atom, found `{other}`")));
            }
        };
        let mut args = Vec::new();
        if self.eat(&Token::Open) && !self.eat(&Token::Close) {
            loop {
                args.push(self.arg()?);
                if self.eat(&Token::Close) {
                    break;
                }
                self.expect(Token::Comma)?;
            }
        }
        Ok(Atom {
            negated,
            predicate,
            args,
        })
    }

    pub(crate) fn arg(&mut self) -> Result<Arg, SemanticsError> {
        match self.next()? {
            Token::Name(n) if is_var(&n) => Ok(Arg::Var(n)),
            Token::Name(n) if n.parse::<i64>().is_ok() => {
                Ok(Arg::Const(Literal::integer(n.parse().expect("checked")).to_string()))
            }
            Token::Name(n) => Ok(Arg::Const(self.expand(&n))),
            Token::Iri(i) => Ok(Arg::Const(i)),
            Token::Str(s) => self.literal(&s).map(Arg::Const),
            other => {
                self.pos -= 1;
                Err(self.error(format!("expected a term, found `{other}`")))
            }
        }
    }

    fn literal(&self, raw: &str) -> Result<String, SemanticsError> {
        let (lexical, suffix) = raw.split_once('\u{0}').expect("lexer marks the suffix");
        let lit = if let Some(lang) = suffix.strip_prefix('@') {
            Literal::lang(lexical, lang)
        } else if let Some(dt) = suffix.strip_prefix("^^") {
            let dt = match dt.strip_prefix('<').and_then(|d| d.strip_suffix('>')) {
                Some(iri) => iri.to_string(),
                None => self.expand(dt),
            };
            Literal::typed(lexical, Upri::new(dt).map_err(|e| self.error(e.to_string()))?)
        } else {
            Literal::string(lexical)
        };
        Ok(lit.to_string())
    }

    pub(crate) fn expand(&self, name: &str) -> String {
        if let Some((prefix, local)) = name.split_once(':') {
            if let Some(ns) = self.prefixes.get(prefix) {
                return format!("{ns}{local}");
            }
        }
        name.to_string()
    }
}

pub(crate) fn is_var(name: &str) -> bool {
    name.starts_with(|c: char| c.is_uppercase() || c == '_' || c == '?')
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_the_thumb_rule() {
        let p = LogicProgram::parse(
            "has-part(X, thumb) :- rdf:type(X, hand), not lacks-part(X, thumb).",
        )
        .unwrap();
        let rule = &p.rules[0];
        assert_eq!(rule.head.predicate, "has-part");
        assert_eq!(rule.positive[0].predicate, format!("{RDF}type"));
        assert_eq!(rule.negative.len(), 1);
        assert!(rule.is_safe());
    }

    #[test]
    fn classical_negation_and_prefixes() {
        let p = LogicProgram::parse("@prefix ex: <http://example.org/> .\n-ex:p(a). q :- -ex:p(a).").unwrap();
        assert!(p.rules[0].head.negated);
        assert_eq!(p.rules[0].head.predicate, "http://example.org/p");
        assert!(p.rules[1].positive[0].negated);
    }

    #[test]
    fn unsafe_rule_is_detected() {
        let p = LogicProgram::parse("p(X) :- not q(X).").unwrap();
        assert!(!p.rules[0].is_safe());
    }

    #[test]
    fn literals_and_display_round_trip() {
        let text = "card(y, 3). label(y, \"some eye\"). typed(y, \"2\"^^xsd:decimal).";
        let p = LogicProgram::parse(text).unwrap();
        let again = LogicProgram::parse(&p.to_string()).unwrap();
        assert_eq!(p, again);
        assert_eq!(render_owl(p.rules[0].head.args[1].as_const().unwrap()), "3");
    }

    #[test]
    fn comments_are_skipped() {
        let p = LogicProgram::parse("% nothing here\np. % trailing\n").unwrap();
        assert_eq!(p.rules.len(), 1);
    }
}
