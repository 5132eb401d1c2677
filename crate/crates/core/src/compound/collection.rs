use std::collections::{BTreeMap, BTreeSet};

use super::{CompoundError, CompoundKind, CompoundUnit, ListKind};
use crate::fdo::Minter;
use crate::store::{Quad, Term, Upri, Vocab, VocabularyCatalog};
use crate::units::{
    ObjectRole, RelationKind, StatementUnit, SubjectCategory, UnitObject, UnitOrigin,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CollectionKind {
    Dataset,
    OrderedList,
    UnorderedList,
    Set,
}

#[derive(Clone, Debug)]
pub struct CollectionBuild {
    pub unit: CompoundUnit,
    /// `list child member` statement units, one per member.
    pub memberships: Vec<StatementUnit>,
    /// Indexed membership compounds of an ordered list, by position.
    pub indexed: Vec<CompoundUnit>,
}

/// Builds a dataset, list or set unit.
///
/// Dataset members are semantic units and are associated directly. List
/// members are resources; each gets a membership statement unit, wrapped in an
/// indexed membership unit for ordered lists.
pub fn make_collection_unit(
    kind: CollectionKind,
    members: &[Upri],
    known: &BTreeSet<Upri>,
    minter: &Minter,
    catalog: &VocabularyCatalog,
) -> Result<CollectionBuild, CompoundError> {
    if let Some(m) = members.iter().find(|m| !known.contains(*m)) {
        return Err(CompoundError::UnresolvedMember(m.clone()));
    }
    if kind == CollectionKind::Set {
        let mut seen = BTreeSet::new();
        if let Some(m) = members.iter().find(|m| !seen.insert(*m)) {
            return Err(CompoundError::DuplicateMember(m.clone()));
        }
    }
    let compound_kind = match kind {
        CollectionKind::Dataset => CompoundKind::Dataset,
        CollectionKind::OrderedList => CompoundKind::List(ListKind::Ordered),
        CollectionKind::UnorderedList => CompoundKind::List(ListKind::Unordered),
        CollectionKind::Set => CompoundKind::List(ListKind::Set),
    };
    let mut unit = CompoundUnit::new(minter.mint(), compound_kind);
    let mut build = CollectionBuild {
        unit: unit.clone(),
        memberships: Vec::new(),
        indexed: Vec::new(),
    };
    if kind == CollectionKind::Dataset {
        unit.associated = members.iter().cloned().collect();
        build.unit = unit;
        return Ok(build);
    }
    unit.subject = Some(unit.upri.clone());
    for (i, member) in members.iter().enumerate() {
        let membership = membership_unit(&unit.upri, member, minter.mint(), catalog);
        if kind == CollectionKind::OrderedList {
            let mut indexed = CompoundUnit::new(minter.mint(), CompoundKind::IndexedMembership);
            indexed.subject = Some(unit.upri.clone());
            indexed.associated.insert(membership.upri.clone());
            indexed.index = Some(i as u64);
            unit.associated.insert(indexed.upri.clone());
            build.indexed.push(indexed);
        } else {
            unit.associated.insert(membership.upri.clone());
        }
        build.memberships.push(membership);
    }
    build.unit = unit;
    Ok(build)
}

fn membership_unit(list: &Upri, member: &Upri, upri: Upri, catalog: &VocabularyCatalog) -> StatementUnit {
    let child = catalog.iri(Vocab::Child).clone();
    let quad = Quad::new(list.clone(), child.clone(), member.clone(), upri.clone());
    let unit_class = catalog.iri(Vocab::MembershipStatementUnit).clone();
    let classes = [
        unit_class.clone(),
        catalog.iri(Vocab::QualitativeStatementUnit).clone(),
        catalog.iri(Vocab::AssertionalStatementUnit).clone(),
    ]
    .into();
    StatementUnit {
        upri,
        unit_class: unit_class.clone(),
        schema_id: unit_class,
        classes,
        subject: list.clone(),
        objects: vec![UnitObject {
            term: Term::Iri(member.clone()),
            role: ObjectRole::Argument,
        }],
        quads: BTreeSet::from([quad.clone()]),
        origin: UnitOrigin::Membership,
        relation: RelationKind::Qualitative,
        category: Some(SubjectCategory::Assertional),
        markers: BTreeSet::new(),
        bindings: BTreeMap::from([
            ("s".to_string(), Term::Iri(list.clone())),
            ("o".to_string(), Term::Iri(member.clone())),
        ]),
        label_template: Some("{s} has member {o}".to_string()),
        source_graph: quad.graph.clone(),
        source_quads: BTreeSet::from([quad]),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn setup() -> (Minter, VocabularyCatalog, Vec<Upri>) {
        let members = ["A", "B", "C"]
            .iter()
            .map(|m| Upri::new(format!("http://example.org/{m}")).unwrap())
            .collect();
        (
            Minter::new("urn:uuid:", Some(3)).unwrap(),
            VocabularyCatalog::default(),
            members,
        )
    }

    #[test]
    fn ordered_list_indexes_from_zero() {
        let (minter, catalog, members) = setup();
        let known = members.iter().cloned().collect();
        let build =
            make_collection_unit(CollectionKind::OrderedList, &members, &known, &minter, &catalog)
                .unwrap();
        assert_eq!(build.memberships.len(), 3);
        let indexes: Vec<u64> = build.indexed.iter().filter_map(|c| c.index).collect();
        assert_eq!(indexes, vec![0, 1, 2]);
        assert!(build.memberships.iter().all(|m| m.quads.len() == 1));
    }

    #[test]
    fn set_rejects_duplicates() {
        let (minter, catalog, members) = setup();
        let known = members.iter().cloned().collect();
        let twice = vec![members[0].clone(), members[0].clone()];
        let err = make_collection_unit(CollectionKind::Set, &twice, &known, &minter, &catalog)
            .unwrap_err();
        assert!(matches!(err, CompoundError::DuplicateMember(_)));
    }

    #[test]
    fn empty_dataset_unit() {
        let (minter, catalog, _) = setup();
        let build =
            make_collection_unit(CollectionKind::Dataset, &[], &BTreeSet::new(), &minter, &catalog)
                .unwrap();
        assert!(build.unit.associated.is_empty());
        assert!(build.unit.subject.is_none());
    }

    #[test]
    fn unknown_member_is_rejected() {
        let (minter, catalog, members) = setup();
        let err = make_collection_unit(
            CollectionKind::UnorderedList,
            &members,
            &BTreeSet::new(),
            &minter,
            &catalog,
        )
        .unwrap_err();
        assert!(matches!(err, CompoundError::UnresolvedMember(_)));
    }
}
