use std::collections::BTreeSet;

use super::{CompoundKind, CompoundUnit};
use crate::fdo::Minter;
use crate::store::{ResourceIndex, ResourceKind, StoreError, Term, VocabularyCatalog};
use crate::units::{PartitionResult, RelationKind};

/// One typed statement unit per non-identification statement unit.
///
/// Each bundles the reference unit with the identification units of the
/// resources it mentions. Resources that should have an identification unit
/// but do not are reported as warnings; classes, properties and units need none.
pub fn build_typed_statement_units(
    partition: &PartitionResult,
    catalog: &VocabularyCatalog,
    minter: &Minter,
) -> (Vec<CompoundUnit>, Vec<String>) {
    let index = ResourceIndex::build(&partition.dataset, catalog);
    let mut warnings = Vec::new();
    let mut out = Vec::new();
    for unit in partition.non_identification() {
        let mut typed = CompoundUnit::new(minter.mint(), CompoundKind::TypedStatement);
        typed.subject = Some(unit.subject.clone());
        typed.reference = Some(unit.upri.clone());
        typed.associated.insert(unit.upri.clone());
        for resource in unit.resources() {
            if catalog.lookup(resource).is_some() {
                continue;
            }
            match index.kind(resource) {
                Ok(
                    ResourceKind::OntologyClass
                    | ResourceKind::PropertyResource
                    | ResourceKind::SemanticUnitResource,
                ) => continue,
                Ok(_) | Err(StoreError::UnresolvedKind(_)) => {}
                Err(e) => {
                    warnings.push(format!("typed unit for {}: {e}", unit.upri));
                    continue;
                }
            }
            let before = typed.associated.len();
            typed
                .associated
                .extend(partition.identification_units_of(resource).map(|u| u.upri.clone()));
            if typed.associated.len() == before {
                warnings.push(format!(
                    "typed unit for {}: {resource} has no identification unit",
                    unit.upri
                ));
            }
        }
        out.push(typed);
    }
    (out, warnings)
}

/// Groups each qualitative typed unit with the quantitative typed units that
/// measure one of its argument objects.
pub fn build_quality_measurement_units(
    partition: &PartitionResult,
    typed: &[CompoundUnit],
    minter: &Minter,
) -> Vec<CompoundUnit> {
    let reference = |t: &CompoundUnit| {
        t.reference
            .as_ref()
            .and_then(|r| partition.unit(r))
            .expect("typed units reference a statement unit")
    };
    let mut out = Vec::new();
    for quality in typed {
        let r = reference(quality);
        if r.relation != RelationKind::Qualitative || r.is_about() {
            continue;
        }
        let targets: BTreeSet<_> = r.arguments().filter_map(Term::as_iri).collect();
        let measurements: Vec<&CompoundUnit> = typed
            .iter()
            .filter(|t| {
                let m = reference(t);
                m.relation == RelationKind::Quantitative && targets.contains(&m.subject)
            })
            .collect();
        if measurements.is_empty() {
            continue;
        }
        let mut unit = CompoundUnit::new(minter.mint(), CompoundKind::QualityMeasurement);
        unit.subject = Some(r.subject.clone());
        unit.associated.insert(quality.upri.clone());
        for m in measurements {
            unit.associated.insert(m.upri.clone());
            unit.described_by
                .insert((r.upri.clone(), reference(m).upri.clone()));
        }
        out.push(unit);
    }
    out
}
