use super::{StatementUnit, UnitError};
use crate::store::{QuadDataset, ResourceIndex, Term, VocabularyCatalog};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RenderedLabel {
    pub text: String,
    /// Resources that had no label and were rendered by local name.
    pub warnings: Vec<String>,
}

/// Fills `{var}` placeholders with the labels of the bound resources.
///
/// Literals render by lexical form. Resources without a label fall back to their
/// local name and add a warning.
pub fn render_dynamic_label(
    unit: &StatementUnit,
    dataset: &QuadDataset,
    catalog: &VocabularyCatalog,
) -> Result<RenderedLabel, UnitError> {
    let index = ResourceIndex::build(dataset, catalog);
    render_with(unit, &index)
}

pub(crate) fn render_with(
    unit: &StatementUnit,
    index: &ResourceIndex,
) -> Result<RenderedLabel, UnitError> {
    let template = unit.label_template.as_deref().unwrap_or("");
    let mut text = String::new();
    let mut warnings = Vec::new();
    let mut rest = template;
    while let Some(open) = rest.find('{') {
        text.push_str(&rest[..open]);
        let after = &rest[open + 1..];
        let close = after
            .find('}')
            .ok_or_else(|| UnitError::LabelTemplate(template.to_string()))?;
        let name = &after[..close];
        let term = unit
            .bindings
            .get(name)
            .ok_or_else(|| UnitError::UnboundPlaceholder {
                unit: unit.upri.clone(),
                placeholder: name.to_string(),
            })?;
        match term {
            Term::Literal(lit) => text.push_str(lit.lexical()),
            Term::Iri(iri) => match index.label(iri) {
                Some(label) => text.push_str(label),
                None => {
                    warnings.push(format!("no label for {iri}; using its local name"));
                    text.push_str(iri.local_name());
                }
            },
        }
        rest = &after[close + 1..];
    }
    text.push_str(rest);
    Ok(RenderedLabel { text, warnings })
}
