//! The knot corpus: records combining diagrams, declared metadata and
//! computed invariants.

mod enrich;
mod record;

pub use enrich::{close_flags, enrich_record};
pub use record::{genus_interval, Flags, KnotRecord, SatelliteOf, Volume};

use std::collections::{BTreeMap, HashSet};
use std::path::Path;

use rayon::prelude::*;
use thiserror::Error;

use crate::alexander::{connected_sum_delta, satellite_delta};
use crate::diagram::DiagramError;
use crate::laurent::LaurentPoly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CorpusError {
    #[error("cannot read corpus file {path}: {reason}")]
    Io { path: String, reason: String },
    #[error("corpus JSON: {0}")]
    Json(String),
    #[error("duplicate record name {0:?}")]
    DuplicateName(String),
    #[error("record {record:?}: {field} refers to unknown record {target:?}")]
    DanglingReference { record: String, field: &'static str, target: String },
    #[error("record {0:?} has no diagram, braid or declared delta")]
    MissingDelta(String),
    #[error("record {record:?}: invalid delta {delta}: {reason}")]
    InvalidDelta { record: String, delta: String, reason: String },
    #[error("record {record:?}: {source}")]
    Diagram { record: String, source: DiagramError },
    #[error("record {record:?}: declared {field} {declared} but computed {computed}")]
    Mismatch { record: String, field: &'static str, declared: String, computed: String },
    #[error("record {record:?}: {reason}")]
    Contradiction { record: String, reason: String },
}

/// Enriched records indexed by name.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Corpus {
    records: BTreeMap<String, KnotRecord>,
}

impl Corpus {
    /// Enriches every record (in parallel), then resolves cross-references
    /// and checks composite records against the composite formulas.
    pub fn from_records(records: Vec<KnotRecord>) -> Result<Self, CorpusError> {
        let mut seen = HashSet::new();
        for r in &records {
            if !seen.insert(r.name.as_str()) {
                return Err(CorpusError::DuplicateName(r.name.clone()));
            }
        }
        let enriched = records
            .into_par_iter()
            .map(enrich_record)
            .collect::<Result<Vec<_>, _>>()?;
        let corpus = Self { records: enriched.into_iter().map(|r| (r.name.clone(), r)).collect() };
        corpus.check_references()?;
        Ok(corpus)
    }

    pub fn from_json(text: &str) -> Result<Self, CorpusError> {
        let records: Vec<KnotRecord> =
            serde_json::from_str(text).map_err(|e| CorpusError::Json(e.to_string()))?;
        Self::from_records(records)
    }

    fn check_references(&self) -> Result<(), CorpusError> {
        for r in self.records.values() {
            let resolve = |field: &'static str, target: &str| {
                self.records.get(target).filter(|_| target != r.name).ok_or_else(|| {
                    CorpusError::DanglingReference {
                        record: r.name.clone(),
                        field,
                        target: target.to_string(),
                    }
                })
            };
            let delta = r.delta.as_ref().expect("enriched");
            let expect = |field: &'static str, expected: LaurentPoly| {
                if &expected == delta {
                    Ok(())
                } else {
                    Err(CorpusError::Mismatch {
                        record: r.name.clone(),
                        field,
                        declared: delta.to_string(),
                        computed: expected.to_string(),
                    })
                }
            };
            if let Some(parts) = &r.connected_sum_of {
                let mut product = LaurentPoly::one();
                for p in parts {
                    product = connected_sum_delta(&product, resolve("connected_sum_of", p)?.delta.as_ref().unwrap());
                }
                expect("delta (connected sum)", product)?;
            }
            if let Some(sat) = &r.satellite_of {
                let pattern = resolve("satellite_of", &sat.pattern)?;
                let companion = resolve("satellite_of", &sat.companion)?;
                expect(
                    "delta (satellite)",
                    satellite_delta(
                        pattern.delta.as_ref().unwrap(),
                        companion.delta.as_ref().unwrap(),
                        sat.winding,
                    ),
                )?;
            }
            if let Some(other) = &r.same_knot_as {
                let other = resolve("same_knot_as", other)?;
                if other.same_knot_as.is_some() {
                    return Err(CorpusError::Contradiction {
                        record: r.name.clone(),
                        reason: format!("same_knot_as target {:?} is itself an alias", other.name),
                    });
                }
                expect("delta (same knot)", other.delta.clone().unwrap())?;
                if let (Some(a), Some(b)) = (&r.jones, &other.jones) {
                    if a != b {
                        return Err(CorpusError::Mismatch {
                            record: r.name.clone(),
                            field: "jones (same knot)",
                            declared: a.to_string(),
                            computed: b.to_string(),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn get(&self, name: &str) -> Option<&KnotRecord> {
        self.records.get(name)
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.records.keys().map(String::as_str)
    }

    /// Records in name order.
    pub fn records(&self) -> impl Iterator<Item = &KnotRecord> {
        self.records.values()
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }
}

/// Reads, enriches and validates a JSON corpus file.
pub fn load_corpus(path: impl AsRef<Path>) -> Result<Corpus, CorpusError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| CorpusError::Io {
        path: path.display().to_string(),
        reason: e.to_string(),
    })?;
    Corpus::from_json(&text)
}
