use std::fmt;

use super::syntax::render_owl;

/// Class expressions over symbols (IRIs, bare names or fresh constants).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ClassExpr {
    Named(String),
    SomeValuesFrom(String, Box<ClassExpr>),
    AllValuesFrom(String, Box<ClassExpr>),
    ComplementOf(Box<ClassExpr>),
    IntersectionOf(Vec<ClassExpr>),
    OneOf(Vec<String>),
    QualifiedCardinality {
        property: String,
        n: u64,
        filler: Box<ClassExpr>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum OwlAxiom {
    ClassAssertion { class: ClassExpr, individual: String },
    ObjectPropertyAssertion { property: String, subject: String, object: String },
    DataPropertyAssertion { property: String, subject: String, value: String },
    SubClassOf(ClassExpr, ClassExpr),
    CollectionMembership { member: String, collection: String },
}

impl fmt::Display for ClassExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassExpr::Named(c) => f.write_str(&render_owl(c)),
            ClassExpr::SomeValuesFrom(p, c) => write!(f, "owl:SomeValuesFrom({}, {c})", render_owl(p)),
            ClassExpr::AllValuesFrom(p, c) => write!(f, "owl:AllValuesFrom({}, {c})", render_owl(p)),
            ClassExpr::ComplementOf(c) => write!(f, "owl:complementOf({c})"),
            ClassExpr::IntersectionOf(cs) => {
                let parts: Vec<String> = cs.iter().map(ToString::to_string).collect();
                write!(f, "owl:intersectionOf({})", parts.join(", "))
            }
            ClassExpr::OneOf(xs) => {
                let parts: Vec<String> = xs.iter().map(|x| render_owl(x)).collect();
                write!(f, "owl:oneOf({{{}}})", parts.join(", "))
            }
            ClassExpr::QualifiedCardinality { property, n, filler } => {
                write!(f, "owl:cardinality({}, {n}, {filler})", render_owl(property))
            }
        }
    }
}

impl fmt::Display for OwlAxiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OwlAxiom::ClassAssertion { class, individual } => {
                write!(f, "rdf:type({}, {class})", render_owl(individual))
            }
            OwlAxiom::ObjectPropertyAssertion { property, subject, object } => write!(
                f,
                "{}({}, {})",
                render_owl(property),
                render_owl(subject),
                render_owl(object)
            ),
            OwlAxiom::DataPropertyAssertion { property, subject, value } => write!(
                f,
                "{}({}, {})",
                render_owl(property),
                render_owl(subject),
                render_owl(value)
            ),
            OwlAxiom::SubClassOf(a, b) => write!(f, "owl:SubClassOf({a}, {b})"),
            OwlAxiom::CollectionMembership { member, collection } => {
                write!(f, "su:member-of({}, {})", render_owl(member), render_owl(collection))
            }
        }
    }
}
