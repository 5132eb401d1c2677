use std::fmt;
use std::sync::Arc;

use super::StoreError;

pub const XSD: &str = "http://www.w3.org/2001/XMLSchema#";
pub const XSD_STRING: &str = "http://www.w3.org/2001/XMLSchema#string";
pub const RDF_LANG_STRING: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#langString";

const NUMERIC_DATATYPES: &[&str] = &[
    "integer",
    "decimal",
    "double",
    "float",
    "int",
    "long",
    "short",
    "byte",
    "nonNegativeInteger",
    "positiveInteger",
    "nonPositiveInteger",
    "negativeInteger",
    "unsignedInt",
    "unsignedLong",
    "unsignedShort",
    "unsignedByte",
];

/// A unique, persistent and resolvable identifier: an absolute IRI.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Upri(Arc<str>);

impl Upri {
    pub fn new(value: impl Into<String>) -> Result<Self, StoreError> {
        let value = value.into();
        match oxrdf::NamedNode::new(value.as_str()) {
            Ok(_) => Ok(Self(value.into())),
            Err(e) => Err(StoreError::InvalidIri {
                iri: value,
                reason: e.to_string(),
            }),
        }
    }

    /// For identifiers already known to be absolute IRIs (constants, parser output).
    pub(crate) fn new_unchecked(value: impl Into<String>) -> Self {
        Self(value.into().into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// The fragment after the last `#`, `/` or `:`.
    pub fn local_name(&self) -> &str {
        let s = self.as_str();
        match s.rfind(['#', '/', ':']) {
            Some(i) if i + 1 < s.len() => &s[i + 1..],
            _ => s,
        }
    }

    /// Appends a suffix, producing a new identifier under this one.
    pub fn join(&self, suffix: &str) -> Upri {
        Upri::new_unchecked(format!("{}{}", self.0, suffix))
    }
}

impl fmt::Display for Upri {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Upri {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}>", self.0)
    }
}

impl std::str::FromStr for Upri {
    type Err = StoreError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Upri::new(s)
    }
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Literal {
    lexical: String,
    datatype: Upri,
    language: Option<String>,
}

impl Literal {
    pub fn typed(lexical: impl Into<String>, datatype: Upri) -> Self {
        Self {
            lexical: lexical.into(),
            datatype,
            language: None,
        }
    }

    pub fn string(lexical: impl Into<String>) -> Self {
        Self::typed(lexical, Upri::new_unchecked(XSD_STRING))
    }

    pub fn lang(lexical: impl Into<String>, language: impl Into<String>) -> Self {
        Self {
            lexical: lexical.into(),
            datatype: Upri::new_unchecked(RDF_LANG_STRING),
            language: Some(language.into().to_ascii_lowercase()),
        }
    }

    pub fn integer(value: i64) -> Self {
        Self::typed(value.to_string(), Upri::new_unchecked(format!("{XSD}integer")))
    }

    pub fn date_time(value: &chrono::DateTime<chrono::Utc>) -> Self {
        Self::typed(
            value.to_rfc3339_opts(chrono::SecondsFormat::Secs, true),
            Upri::new_unchecked(format!("{XSD}dateTime")),
        )
    }

    pub fn lexical(&self) -> &str {
        &self.lexical
    }

    pub fn datatype(&self) -> &Upri {
        &self.datatype
    }

    pub fn language(&self) -> Option<&str> {
        self.language.as_deref()
    }

    pub fn is_numeric(&self) -> bool {
        self.datatype
            .as_str()
            .strip_prefix(XSD)
            .is_some_and(|local| NUMERIC_DATATYPES.contains(&local))
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("\"")?;
        for c in self.lexical.chars() {
            match c {
                '"' => f.write_str("\\\"")?,
                '\\' => f.write_str("\\\\")?,
                '\n' => f.write_str("\\n")?,
                '\r' => f.write_str("\\r")?,
                c => write!(f, "{c}")?,
            }
        }
        f.write_str("\"")?;
        if let Some(lang) = &self.language {
            write!(f, "@{lang}")
        } else if self.datatype.as_str() == XSD_STRING {
            Ok(())
        } else {
            write!(f, "^^<{}>", self.datatype)
        }
    }
}

/// Object position of a quad. There is deliberately no blank-node variant.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Term {
    Iri(Upri),
    Literal(Literal),
}

impl Term {
    pub fn as_iri(&self) -> Option<&Upri> {
        match self {
            Term::Iri(iri) => Some(iri),
            Term::Literal(_) => None,
        }
    }

    pub fn as_literal(&self) -> Option<&Literal> {
        match self {
            Term::Literal(lit) => Some(lit),
            Term::Iri(_) => None,
        }
    }

    pub fn is_numeric_literal(&self) -> bool {
        self.as_literal().is_some_and(Literal::is_numeric)
    }

    /// Lexical form for literals, the IRI string otherwise.
    pub fn text(&self) -> &str {
        match self {
            Term::Iri(iri) => iri.as_str(),
            Term::Literal(lit) => lit.lexical(),
        }
    }
}

impl From<Upri> for Term {
    fn from(iri: Upri) -> Self {
        Term::Iri(iri)
    }
}

impl From<Literal> for Term {
    fn from(lit: Literal) -> Self {
        Term::Literal(lit)
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Iri(iri) => write!(f, "<{iri}>"),
            Term::Literal(lit) => lit.fmt(f),
        }
    }
}
