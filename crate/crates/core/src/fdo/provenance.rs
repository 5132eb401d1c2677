use std::collections::BTreeSet;

use chrono::{DateTime, Utc};

use super::FdoError;
use crate::store::{Literal, Quad, Term, Upri, Vocab, VocabularyCatalog};

/// Who made a unit, when and with what. Creator and creation date are the
/// only mandatory fields.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProvenanceRecord {
    pub creator: Upri,
    pub created_on: DateTime<Utc>,
    pub creation_application: Option<String>,
    pub title: Option<String>,
    pub contributors: BTreeSet<Upri>,
    pub last_updated: Option<DateTime<Utc>>,
    /// The schema or graph pattern the content follows.
    pub used_schema: Option<Upri>,
}

impl ProvenanceRecord {
    pub fn new(creator: Upri, created_on: DateTime<Utc>) -> Self {
        ProvenanceRecord {
            creator,
            created_on,
            creation_application: None,
            title: None,
            contributors: BTreeSet::new(),
            last_updated: None,
            used_schema: None,
        }
    }

    /// Dates must not lie after `now`, and an update cannot precede creation.
    pub fn validate(&self, now: DateTime<Utc>) -> Result<(), FdoError> {
        if self.created_on > now {
            return Err(FdoError::FutureDate("createdOn".into()));
        }
        if let Some(updated) = self.last_updated {
            if updated > now {
                return Err(FdoError::FutureDate("lastUpdated".into()));
            }
            if updated < self.created_on {
                return Err(FdoError::FutureDate("createdOn".into()));
            }
        }
        Ok(())
    }

    pub fn to_quads(&self, about: &Upri, graph: &Upri, catalog: &VocabularyCatalog) -> Vec<Quad> {
        let q = |v: Vocab, o: Term| Quad::new(about.clone(), catalog.iri(v).clone(), o, graph.clone());
        let mut out = vec![
            q(Vocab::Creator, self.creator.clone().into()),
            q(Vocab::CreatedOn, Literal::date_time(&self.created_on).into()),
        ];
        if let Some(app) = &self.creation_application {
            out.push(q(Vocab::CreationApplication, Literal::string(app).into()));
        }
        if let Some(title) = &self.title {
            out.push(q(Vocab::Title, Literal::string(title).into()));
        }
        for c in &self.contributors {
            out.push(q(Vocab::Contributor, c.clone().into()));
        }
        if let Some(updated) = &self.last_updated {
            out.push(q(Vocab::LastUpdated, Literal::date_time(updated).into()));
        }
        if let Some(schema) = &self.used_schema {
            out.push(q(Vocab::UsedSchema, schema.clone().into()));
        }
        out
    }

    /// Reads the record about `about` from the quads of one graph.
    pub fn from_quads<'a>(
        quads: impl IntoIterator<Item = &'a Quad>,
        about: &Upri,
        catalog: &VocabularyCatalog,
    ) -> Result<Self, FdoError> {
        let quads: Vec<&Quad> = quads.into_iter().filter(|q| &q.subject == about).collect();
        let values = |v: Vocab| {
            quads
                .iter()
                .filter(move |q| catalog.is(&q.predicate, v))
                .map(|q| &q.object)
        };
        let missing = |v: Vocab| FdoError::MissingField(format!("{v:?}"));
        let iri = |v: Vocab| values(v).find_map(|t| t.as_iri().cloned());
        let text = |v: Vocab| values(v).find_map(|t| t.as_literal().map(|l| l.lexical().to_string()));
        let date = |v: Vocab| -> Result<Option<DateTime<Utc>>, FdoError> {
            text(v)
                .map(|s| {
                    DateTime::parse_from_rfc3339(&s)
                        .map(|d| d.with_timezone(&Utc))
                        .map_err(|_| FdoError::MissingField(format!("{v:?} is not a date: {s}")))
                })
                .transpose()
        };
        Ok(ProvenanceRecord {
            creator: iri(Vocab::Creator).ok_or_else(|| missing(Vocab::Creator))?,
            created_on: date(Vocab::CreatedOn)?.ok_or_else(|| missing(Vocab::CreatedOn))?,
            creation_application: text(Vocab::CreationApplication),
            title: text(Vocab::Title),
            contributors: values(Vocab::Contributor).filter_map(|t| t.as_iri().cloned()).collect(),
            last_updated: date(Vocab::LastUpdated)?,
            used_schema: iri(Vocab::UsedSchema),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use chrono::TimeZone;

    #[test]
    fn round_trip_and_future_check() {
        let catalog = VocabularyCatalog::default();
        let when = Utc.with_ymd_and_hms(2023, 1, 2, 3, 4, 5).unwrap();
        let mut rec = ProvenanceRecord::new(Upri::new("https://orcid.org/0000-0001").unwrap(), when);
        rec.title = Some("a title".into());
        rec.contributors.insert(Upri::new("https://orcid.org/0000-0002").unwrap());
        let about = Upri::new("https://example.org/unit/1").unwrap();
        let quads = rec.to_quads(&about, &about.join("/prov"), &catalog);
        assert_eq!(ProvenanceRecord::from_quads(&quads, &about, &catalog).unwrap(), rec);

        assert!(rec.validate(when).is_ok());
        assert!(matches!(
            rec.validate(Utc.with_ymd_and_hms(2022, 1, 1, 0, 0, 0).unwrap()),
            Err(FdoError::FutureDate(_))
        ));
        let bare: Vec<Quad> = quads.into_iter().filter(|q| !catalog.is(&q.predicate, Vocab::Creator)).collect();
        assert!(matches!(
            ProvenanceRecord::from_quads(&bare, &about, &catalog),
            Err(FdoError::MissingField(_))
        ));
    }
}
