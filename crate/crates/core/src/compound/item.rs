use std::collections::{BTreeMap, BTreeSet};

use super::{CompoundKind, CompoundUnit, ItemKind};
use crate::fdo::Minter;
use crate::store::{Layer, ResourceIndex, ResourceKind, Upri, Vocab, VocabularyCatalog};
use crate::units::PartitionResult;

/// One item unit per subject, over its statement, typed and quality units.
///
/// Identification and is-about units are not item members, and quantitative
/// units already absorbed by a quality measurement unit stay inside it.
pub fn build_item_units(
    partition: &PartitionResult,
    typed: &[CompoundUnit],
    quality: &[CompoundUnit],
    catalog: &VocabularyCatalog,
    minter: &Minter,
) -> (Vec<CompoundUnit>, Vec<String>) {
    let absorbed: BTreeSet<&Upri> = quality
        .iter()
        .flat_map(|q| q.described_by.iter().map(|(_, m)| m))
        .collect();
    let mut members: BTreeMap<&Upri, BTreeSet<Upri>> = BTreeMap::new();
    let mut included = BTreeSet::new();
    for unit in partition.non_identification() {
        if unit.is_about() || absorbed.contains(&unit.upri) {
            continue;
        }
        included.insert(&unit.upri);
        members
            .entry(&unit.subject)
            .or_default()
            .insert(unit.upri.clone());
    }
    for t in typed {
        if let (Some(s), Some(r)) = (&t.subject, &t.reference) {
            if included.contains(r) {
                members.entry(s).or_default().insert(t.upri.clone());
            }
        }
    }
    for q in quality {
        if let Some(s) = &q.subject {
            members.entry(s).or_default().insert(q.upri.clone());
        }
    }

    let index = ResourceIndex::build(&partition.dataset, catalog);
    let mut warnings = Vec::new();
    let mut out = Vec::new();
    for (subject, associated) in members {
        let kind = if is_text_hybrid(partition, subject, catalog) {
            ItemKind::TextHybrid
        } else {
            match index.kind(subject) {
                Ok(ResourceKind::SomeInstance | ResourceKind::EveryInstance) => ItemKind::Class,
                Ok(ResourceKind::NamedIndividual | ResourceKind::SemanticUnitResource) => {
                    ItemKind::Instance
                }
                other => {
                    let why = match other {
                        Ok(k) => format!("kind {k}"),
                        Err(e) => e.to_string(),
                    };
                    warnings.push(format!("item for {subject}: {why}; treated as instance item"));
                    ItemKind::Instance
                }
            }
        };
        let mut item = CompoundUnit::new(minter.mint(), CompoundKind::Item(kind));
        item.subject = Some(subject.clone());
        item.associated = associated;
        out.push(item);
    }
    (out, warnings)
}

/// A subject with a textual description and at least one `mentions` annotation.
fn is_text_hybrid(partition: &PartitionResult, subject: &Upri, catalog: &VocabularyCatalog) -> bool {
    let data = || {
        partition
            .dataset
            .iter()
            .filter(|q| &q.subject == subject && catalog.layer_of(q) == Layer::Data)
    };
    let described = data().any(|q| {
        catalog.is(&q.predicate, Vocab::Description) && q.object.as_literal().is_some()
    });
    described
        && data().any(|q| catalog.is(&q.predicate, Vocab::Mentions) && q.object.as_iri().is_some())
}
