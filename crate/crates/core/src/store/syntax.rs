use std::fmt::Write as _;
use std::str::FromStr;

use oxrdf::{GraphName, NamedOrBlankNode};
use oxttl::{NQuadsParser, TriGParser};

use super::{Literal, Quad, QuadDataset, StoreError, Term, Upri, DEFAULT_GRAPH};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Syntax {
    NQuads,
    TriG,
}

impl Syntax {
    /// Guesses the syntax from a file extension, defaulting to TriG.
    pub fn from_path(path: &std::path::Path) -> Syntax {
        match path.extension().and_then(|e| e.to_str()) {
            Some("nq") | Some("nquads") => Syntax::NQuads,
            _ => Syntax::TriG,
        }
    }
}

impl FromStr for Syntax {
    type Err = StoreError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "nquads" | "n-quads" | "nq" => Ok(Syntax::NQuads),
            "trig" => Ok(Syntax::TriG),
            other => Err(StoreError::UnknownSyntax(other.to_string())),
        }
    }
}

pub fn parse_quads(text: &str, syntax: Syntax) -> Result<QuadDataset, StoreError> {
    let results: Box<dyn Iterator<Item = Result<oxrdf::Quad, oxttl::TurtleSyntaxError>>> =
        match syntax {
            Syntax::NQuads => Box::new(NQuadsParser::new().for_slice(text)),
            Syntax::TriG => Box::new(TriGParser::new().for_slice(text)),
        };
    let mut quads = Vec::new();
    for result in results {
        let quad = result.map_err(|e| {
            let start = e.location().start;
            StoreError::Syntax {
                line: start.line + 1,
                column: start.column + 1,
                message: e.message().to_string(),
            }
        })?;
        quads.push(convert(quad, text)?);
    }
    Ok(quads.into_iter().collect())
}

fn convert(quad: oxrdf::Quad, text: &str) -> Result<Quad, StoreError> {
    let subject = match quad.subject {
        NamedOrBlankNode::NamedNode(n) => Upri::new_unchecked(n.into_string()),
        NamedOrBlankNode::BlankNode(b) => return Err(blank_node(text, b.as_str())),
    };
    let object = match quad.object {
        oxrdf::Term::NamedNode(n) => Term::Iri(Upri::new_unchecked(n.into_string())),
        oxrdf::Term::BlankNode(b) => return Err(blank_node(text, b.as_str())),
        oxrdf::Term::Literal(lit) => {
            let (value, datatype, language) = lit.destruct();
            match (datatype, language) {
                (_, Some(lang)) => Term::Literal(Literal::lang(value, lang)),
                (Some(dt), None) => {
                    Term::Literal(Literal::typed(value, Upri::new_unchecked(dt.into_string())))
                }
                (None, None) => Term::Literal(Literal::string(value)),
            }
        }
        #[allow(unreachable_patterns)]
        _ => return Err(StoreError::Unsupported("quoted triple terms".into())),
    };
    let graph = match quad.graph_name {
        GraphName::NamedNode(n) => Upri::new_unchecked(n.into_string()),
        GraphName::BlankNode(b) => return Err(blank_node(text, b.as_str())),
        GraphName::DefaultGraph => Upri::new_unchecked(DEFAULT_GRAPH),
    };
    Ok(Quad {
        subject,
        predicate: Upri::new_unchecked(quad.predicate.into_string()),
        object,
        graph,
    })
}

fn blank_node(text: &str, label: &str) -> StoreError {
    let needle = format!("_:{label}");
    let position = text.find(&needle).or_else(|| text.find('[')).map(|offset| {
        let before = &text[..offset];
        let line = before.matches('\n').count() as u64 + 1;
        let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) as u64 + 1;
        (line, column)
    });
    StoreError::BlankNode {
        label: label.to_string(),
        position,
    }
}

/// Serializes in (graph, subject, predicate, object) order.
pub fn serialize_quads(dataset: &QuadDataset, syntax: Syntax) -> String {
    let mut out = String::new();
    match syntax {
        Syntax::NQuads => {
            for q in dataset {
                let _ = writeln!(
                    out,
                    "<{}> <{}> {} <{}> .",
                    q.subject, q.predicate, q.object, q.graph
                );
            }
        }
        Syntax::TriG => {
            let mut current: Option<&Upri> = None;
            for q in dataset {
                if current != Some(&q.graph) {
                    if current.is_some() {
                        out.push_str("}\n\n");
                    }
                    let _ = writeln!(out, "<{}> {{", q.graph);
                    current = Some(&q.graph);
                }
                let _ = writeln!(out, "  <{}> <{}> {} .", q.subject, q.predicate, q.object);
            }
            if current.is_some() {
                out.push_str("}\n");
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const SINGLE: &str = r#"
        @prefix ex: <http://example.org/> .
        @prefix obo: <http://purl.obolibrary.org/obo/> .
        ex:g1 { ex:LarsRightHand obo:BFO_0000051 ex:LarsRightThumb . }
    "#;

    #[test]
    fn empty_input() {
        assert!(parse_quads("", Syntax::TriG).unwrap().is_empty());
        assert!(parse_quads("", Syntax::NQuads).unwrap().is_empty());
        assert_eq!(serialize_quads(&QuadDataset::new(), Syntax::TriG), "");
    }

    #[test]
    fn single_quad() {
        let ds = parse_quads(SINGLE, Syntax::TriG).unwrap();
        assert_eq!(ds.len(), 1);
        let q = ds.iter().next().unwrap();
        assert_eq!(q.graph.as_str(), "http://example.org/g1");
        assert_eq!(q.predicate.local_name(), "BFO_0000051");
    }

    #[test]
    fn blank_nodes_rejected() {
        let err = parse_quads(
            "<http://e.org/a> <http://e.org/p> _:b0 <http://e.org/g> .\n",
            Syntax::NQuads,
        )
        .unwrap_err();
        match err {
            StoreError::BlankNode { label, position } => {
                assert_eq!(label, "b0");
                assert_eq!(position, Some((1, 35)));
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            parse_quads("<http://e.org/g> { <http://e.org/a> <http://e.org/p> [] . }", Syntax::TriG),
            Err(StoreError::BlankNode { .. })
        ));
    }

    #[test]
    fn syntax_error_position() {
        let err = parse_quads("<http://e.org/a> <http://e.org/p> .\n", Syntax::NQuads).unwrap_err();
        assert!(matches!(err, StoreError::Syntax { line: 1, .. }), "{err:?}");
    }

    #[test]
    fn default_graph_is_named() {
        let ds = parse_quads("<http://e.org/a> <http://e.org/p> \"x\" .\n", Syntax::NQuads).unwrap();
        assert_eq!(ds.iter().next().unwrap().graph.as_str(), DEFAULT_GRAPH);
        let back = parse_quads(&serialize_quads(&ds, Syntax::NQuads), Syntax::NQuads).unwrap();
        assert_eq!(back, ds);
    }

    #[test]
    fn single_statement_one_line() {
        let ds = parse_quads(SINGLE, Syntax::TriG).unwrap();
        let text = serialize_quads(&ds, Syntax::NQuads);
        assert_eq!(text.lines().count(), 1);
        assert_eq!(parse_quads(&text, Syntax::NQuads).unwrap(), ds);
        assert_eq!(
            parse_quads(&serialize_quads(&ds, Syntax::TriG), Syntax::TriG).unwrap(),
            ds
        );
    }

    #[test]
    fn literals_survive() {
        let text = r#"<http://e.org/g> { <http://e.org/a> <http://e.org/p> "line\nbreak \"q\"" , "5"^^<http://www.w3.org/2001/XMLSchema#integer> , "hand"@en . }"#;
        let ds = parse_quads(text, Syntax::TriG).unwrap();
        assert_eq!(ds.len(), 3);
        for syntax in [Syntax::NQuads, Syntax::TriG] {
            assert_eq!(parse_quads(&serialize_quads(&ds, syntax), syntax).unwrap(), ds);
        }
    }
}
