//! The fixed vocabulary the semantic-units layer is written in.
//!
//! Every identifier the library emits or recognizes structurally comes from a
//! [`VocabularyCatalog`]. The defaults can be overridden from a TOML mapping
//! file:
//!
//! ```toml
//! partial_orders = ["http://purl.obolibrary.org/obo/BFO_0000051"]
//!
//! [terms]
//! isAbout = "http://purl.obolibrary.org/obo/IAO_0000136"
//! ```

use std::collections::{BTreeMap, BTreeSet};

use serde::Deserialize;

use super::{Quad, StoreError, Upri};

/// Namespace of the default catalog terms.
pub const SU: &str = "https://example.org/semunit#";
pub const RDF: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
pub const RDFS: &str = "http://www.w3.org/2000/01/rdf-schema#";
pub const OWL: &str = "http://www.w3.org/2002/07/owl#";
pub const OBO: &str = "http://purl.obolibrary.org/obo/";

macro_rules! vocabulary {
    ($($variant:ident => $key:literal = $default:expr,)*) => {
        /// Keys of the vocabulary catalog.
        #[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
        pub enum Vocab {
            $($variant,)*
        }

        impl Vocab {
            pub const ALL: &'static [Vocab] = &[$(Vocab::$variant,)*];

            pub fn key(self) -> &'static str {
                match self {
                    $(Vocab::$variant => $key,)*
                }
            }

            fn default_iri(self) -> String {
                match self {
                    $(Vocab::$variant => $default,)*
                }
            }
        }
    };
}

vocabulary! {
    HasSemanticUnitSubject => "hasSemanticUnitSubject" = format!("{SU}hasSemanticUnitSubject"),
    HasAssociatedSemanticUnit => "hasAssociatedSemanticUnit" = format!("{SU}hasAssociatedSemanticUnit"),
    HasLinkedSemanticUnit => "hasLinkedSemanticUnit" = format!("{SU}hasLinkedSemanticUnit"),
    ObjectDescribedBySemanticUnit => "objectDescribedBySemanticUnit" = format!("{SU}objectDescribedBySemanticUnit"),
    Index => "index" = format!("{SU}index"),

    Type => "type" = format!("{RDF}type"),
    Label => "label" = format!("{RDFS}label"),
    SomeInstanceOf => "someInstanceOf" = format!("{SU}someInstanceOf"),
    EveryInstanceOf => "everyInstanceOf" = format!("{SU}everyInstanceOf"),
    IsAbout => "isAbout" = format!("{OBO}IAO_0000136"),
    QualifiedCardinality => "qualifiedCardinality" = format!("{OWL}qualifiedCardinality"),
    Child => "child" = format!("{SU}child"),
    Mentions => "mentions" = format!("{OBO}IAO_0000142"),
    Description => "description" = "http://purl.org/dc/terms/description".to_string(),

    NamedIndividualIdentificationUnit => "NamedIndividualIdentificationUnit" = format!("{SU}NamedIndividualIdentificationUnit"),
    SomeInstanceIdentificationUnit => "SomeInstanceIdentificationUnit" = format!("{SU}SomeInstanceIdentificationUnit"),
    EveryInstanceIdentificationUnit => "EveryInstanceIdentificationUnit" = format!("{SU}EveryInstanceIdentificationUnit"),
    AssertionalStatementUnit => "AssertionalStatementUnit" = format!("{SU}AssertionalStatementUnit"),
    ContingentStatementUnit => "ContingentStatementUnit" = format!("{SU}ContingentStatementUnit"),
    UniversalStatementUnit => "UniversalStatementUnit" = format!("{SU}UniversalStatementUnit"),
    QualitativeStatementUnit => "QualitativeStatementUnit" = format!("{SU}QualitativeStatementUnit"),
    QuantitativeStatementUnit => "QuantitativeStatementUnit" = format!("{SU}QuantitativeStatementUnit"),
    NegationUnit => "NegationUnit" = format!("{SU}NegationUnit"),
    CardinalityRestrictionUnit => "CardinalityRestrictionUnit" = format!("{SU}CardinalityRestrictionUnit"),
    DisagreementUnit => "DisagreementUnit" = format!("{SU}DisagreementUnit"),
    IsAboutStatementUnit => "IsAboutStatementUnit" = format!("{SU}IsAboutStatementUnit"),
    UntypedStatementUnit => "UntypedStatementUnit" = format!("{SU}UntypedStatementUnit"),
    MembershipStatementUnit => "MembershipStatementUnit" = format!("{SU}MembershipStatementUnit"),

    TypedStatementUnit => "TypedStatementUnit" = format!("{SU}TypedStatementUnit"),
    QualityMeasurementUnit => "QualityMeasurementUnit" = format!("{SU}QualityMeasurementUnit"),
    InstanceItemUnit => "InstanceItemUnit" = format!("{SU}InstanceItemUnit"),
    ClassItemUnit => "ClassItemUnit" = format!("{SU}ClassItemUnit"),
    TextResourceHybridItemUnit => "TextResourceHybridItemUnit" = format!("{SU}TextResourceHybridItemUnit"),
    InstanceItemGroupUnit => "InstanceItemGroupUnit" = format!("{SU}InstanceItemGroupUnit"),
    ClassItemGroupUnit => "ClassItemGroupUnit" = format!("{SU}ClassItemGroupUnit"),
    ClassAxiomItemGroupUnit => "ClassAxiomItemGroupUnit" = format!("{SU}ClassAxiomItemGroupUnit"),
    GranularityTreeUnit => "GranularityTreeUnit" = format!("{SU}GranularityTreeUnit"),
    GranularItemGroupUnit => "GranularItemGroupUnit" = format!("{SU}GranularItemGroupUnit"),
    ContextUnit => "ContextUnit" = format!("{SU}ContextUnit"),
    DatasetUnit => "DatasetUnit" = format!("{SU}DatasetUnit"),
    OrderedListUnit => "OrderedListUnit" = format!("{SU}OrderedListUnit"),
    UnorderedListUnit => "UnorderedListUnit" = format!("{SU}UnorderedListUnit"),
    SetUnit => "SetUnit" = format!("{SU}SetUnit"),
    IndexedMembershipUnit => "IndexedMembershipUnit" = format!("{SU}IndexedMembershipUnit"),

    Collection => "Collection" = format!("{SU}Collection"),
    HasMember => "hasMember" = format!("{SU}has-member"),
    MemberOf => "memberOf" = format!("{SU}member-of"),
    NamedIndividual => "NamedIndividual" = format!("{OWL}NamedIndividual"),
    Statement => "statement" = format!("{SU}statement"),
    DataStatement => "dataStatement" = format!("{SU}data-statement"),

    Creator => "creator" = format!("{SU}creator"),
    CreatedOn => "createdOn" = format!("{SU}createdOn"),
    CreationApplication => "creationApplication" = format!("{SU}creationApplication"),
    Title => "title" = format!("{SU}title"),
    Contributor => "contributor" = format!("{SU}contributor"),
    LastUpdated => "lastUpdated" = format!("{SU}lastUpdated"),
    UsedSchema => "usedSchema" = format!("{SU}usedSchema"),
    AccessRestricted => "accessRestricted" = format!("{SU}accessRestricted"),
}

impl Vocab {
    /// Predicates whose quads always live in the semantic-units layer.
    pub const STRUCTURAL: &'static [Vocab] = &[
        Vocab::HasSemanticUnitSubject,
        Vocab::HasAssociatedSemanticUnit,
        Vocab::HasLinkedSemanticUnit,
        Vocab::ObjectDescribedBySemanticUnit,
        Vocab::Index,
    ];

    /// Unit classes that qualify a statement unit independently of its schema.
    pub const MARKERS: &'static [Vocab] = &[
        Vocab::NegationUnit,
        Vocab::CardinalityRestrictionUnit,
        Vocab::DisagreementUnit,
    ];

    fn is_unit_class(self) -> bool {
        self.key().starts_with(char::is_uppercase)
            && !matches!(self, Vocab::Collection | Vocab::NamedIndividual)
    }
}

/// Which of the two graph layers a quad belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Layer {
    Data,
    SemanticUnits,
}

#[derive(Clone, Debug)]
pub struct VocabularyCatalog {
    terms: BTreeMap<Vocab, Upri>,
    reverse: BTreeMap<Upri, Vocab>,
    partial_orders: BTreeSet<Upri>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CatalogFile {
    #[serde(default)]
    terms: BTreeMap<String, String>,
    partial_orders: Option<Vec<String>>,
}

impl Default for VocabularyCatalog {
    fn default() -> Self {
        let terms = Vocab::ALL
            .iter()
            .map(|&v| (v, Upri::new_unchecked(v.default_iri())))
            .collect();
        let partial_orders = [
            format!("{OBO}BFO_0000051"),
            format!("{OBO}RO_0002083"),
        ]
        .into_iter()
        .map(Upri::new_unchecked)
        .collect();
        Self::build(terms, partial_orders).expect("default catalog is consistent")
    }
}

impl VocabularyCatalog {
    fn build(
        terms: BTreeMap<Vocab, Upri>,
        partial_orders: BTreeSet<Upri>,
    ) -> Result<Self, StoreError> {
        let mut reverse = BTreeMap::new();
        for (&key, iri) in &terms {
            if let Some(previous) = reverse.insert(iri.clone(), key) {
                return Err(StoreError::Catalog(format!(
                    "catalog entries `{}` and `{}` share the identifier {iri}",
                    previous.key(),
                    key.key()
                )));
            }
        }
        Ok(Self {
            terms,
            reverse,
            partial_orders,
        })
    }

    /// Parses a TOML mapping file. Keys that are not mentioned keep their defaults.
    pub fn from_toml(text: &str) -> Result<Self, StoreError> {
        let file: CatalogFile =
            toml::from_str(text).map_err(|e| StoreError::Catalog(e.to_string()))?;
        let mut catalog = Self::default();
        let mut terms = catalog.terms.clone();
        for (key, iri) in file.terms {
            let vocab = Vocab::ALL
                .iter()
                .copied()
                .find(|v| v.key() == key)
                .ok_or_else(|| StoreError::Catalog(format!("unknown catalog key `{key}`")))?;
            terms.insert(vocab, Upri::new(iri)?);
        }
        if let Some(orders) = file.partial_orders {
            catalog.partial_orders = orders
                .into_iter()
                .map(Upri::new)
                .collect::<Result<_, _>>()?;
        }
        Self::build(terms, catalog.partial_orders)
    }

    pub fn iri(&self, key: Vocab) -> &Upri {
        &self.terms[&key]
    }

    pub fn is(&self, iri: &Upri, key: Vocab) -> bool {
        self.iri(key) == iri
    }

    pub fn lookup(&self, iri: &Upri) -> Option<Vocab> {
        self.reverse.get(iri).copied()
    }

    pub fn partial_orders(&self) -> &BTreeSet<Upri> {
        &self.partial_orders
    }

    pub fn is_structural(&self, predicate: &Upri) -> bool {
        self.lookup(predicate)
            .is_some_and(|v| Vocab::STRUCTURAL.contains(&v))
    }

    /// True for catalog classes of semantic units (statement and compound kinds, markers).
    pub fn is_unit_class(&self, iri: &Upri) -> bool {
        self.lookup(iri).is_some_and(Vocab::is_unit_class)
    }

    pub fn marker(&self, iri: &Upri) -> Option<Vocab> {
        self.lookup(iri).filter(|v| Vocab::MARKERS.contains(v))
    }

    /// A quad is part of the semantic-units layer iff its predicate is structural or it
    /// describes the unit that names its own graph.
    pub fn layer_of(&self, quad: &Quad) -> Layer {
        if self.is_structural(&quad.predicate) || quad.subject == quad.graph {
            Layer::SemanticUnits
        } else {
            Layer::Data
        }
    }
}
