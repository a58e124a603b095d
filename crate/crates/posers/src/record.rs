//! Sequence records: the carrier type for synthesized oligos and reads.

use crate::error::{Error, Result};

/// One read or synthesized oligo.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequenceRecord {
    pub id: String,
    /// Nucleotide string over {A, C, G, T, N}.
    pub seq: String,
    /// Optional quality string; must match `seq` in length when present.
    pub quality: Option<String>,
}

impl SequenceRecord {
    pub fn new(id: impl Into<String>, seq: impl Into<String>) -> Self {
        SequenceRecord { id: id.into(), seq: seq.into(), quality: None }
    }

    pub fn with_quality(
        id: impl Into<String>,
        seq: impl Into<String>,
        quality: impl Into<String>,
    ) -> Result<Self> {
        let rec = SequenceRecord { id: id.into(), seq: seq.into(), quality: Some(quality.into()) };
        rec.check()?;
        Ok(rec)
    }

    pub fn check(&self) -> Result<()> {
        if let Some(q) = &self.quality {
            if q.len() != self.seq.len() {
                return Err(Error::LengthMismatch(format!(
                    "record {:?}: quality length {} != sequence length {}",
                    self.id,
                    q.len(),
                    self.seq.len()
                )));
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.seq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seq.is_empty()
    }
}
