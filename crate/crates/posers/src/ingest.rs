//! Streaming read ingestion: FASTQ/FASTA parsing, flank-anchored extraction
//! of design regions, exact deduplication with an occurrence-rank profile,
//! and run digests for cross-run duplicate detection.
//!
//! Everything here works in a single pass with memory proportional to the
//! unique-region set, not the raw read count.

use std::collections::{hash_map::Entry, BTreeMap, BTreeSet, HashMap};
use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};

use crate::alphabet::{is_acgt, reverse_complement};
use crate::design::Design;
use crate::error::{Error, Result};
use crate::record::SequenceRecord;

// ---------------------------------------------------------------------------
// FASTQ / FASTA parsing
// ---------------------------------------------------------------------------

/// Lazy FASTQ parser: yields records in file order, validating the four-line
/// structure as it goes. Errors carry the offending line number.
pub struct FastqReader<R: BufRead> {
    input: R,
    line: u64,
    done: bool,
}

impl<R: BufRead> FastqReader<R> {
    pub fn new(input: R) -> Self {
        FastqReader { input, line: 0, done: false }
    }

    fn next_line(&mut self, buf: &mut String) -> Result<bool> {
        buf.clear();
        let n = self.input.read_line(buf)?;
        if n == 0 {
            return Ok(false);
        }
        self.line += 1;
        while buf.ends_with('\n') || buf.ends_with('\r') {
            buf.pop();
        }
        Ok(true)
    }

    fn malformed(&self, reason: impl Into<String>) -> Error {
        Error::MalformedRecord { line: self.line, reason: reason.into() }
    }

    fn read_record(&mut self) -> Result<Option<SequenceRecord>> {
        let mut header = String::new();
        loop {
            if !self.next_line(&mut header)? {
                return Ok(None);
            }
            if !header.is_empty() {
                break;
            }
        }
        if !header.starts_with('@') {
            return Err(self.malformed(format!("expected '@' header, found {header:?}")));
        }
        let id = header[1..].split_whitespace().next().unwrap_or("").to_string();

        let mut seq = String::new();
        if !self.next_line(&mut seq)? {
            return Err(self.malformed("truncated record: missing sequence line"));
        }
        let mut sep = String::new();
        if !self.next_line(&mut sep)? {
            return Err(self.malformed("truncated record: missing '+' separator"));
        }
        if !sep.starts_with('+') {
            return Err(self.malformed(format!("expected '+' separator, found {sep:?}")));
        }
        let mut quality = String::new();
        if !self.next_line(&mut quality)? {
            return Err(self.malformed("truncated record: missing quality line"));
        }
        if quality.len() != seq.len() {
            return Err(self.malformed(format!(
                "quality length {} does not match sequence length {}",
                quality.len(),
                seq.len()
            )));
        }
        Ok(Some(SequenceRecord { id, seq, quality: Some(quality) }))
    }
}

impl<R: BufRead> Iterator for FastqReader<R> {
    type Item = Result<SequenceRecord>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.done {
            return None;
        }
        match self.read_record() {
            Ok(Some(rec)) => Some(Ok(rec)),
            Ok(None) => None,
            Err(e) => {
                self.done = true;
                Some(Err(e))
            }
        }
    }
}

pub fn parse_fastq<R: BufRead>(input: R) -> FastqReader<R> {
    FastqReader::new(input)
}

/// Lazy FASTA parser; accepts multi-line sequences.
pub struct FastaReader<R: BufRead> {
    input: R,
    line: u64,
    pending_header: Option<String>,
    done: bool,
}

impl<R: BufRead> FastaReader<R> {
    pub fn new(input: R) -> Self {
        FastaReader { input, line: 0, pending_header: None, done: false }
    }

    fn read_record(&mut self) -> Result<Option<SequenceRecord>> {
        let header = match self.pending_header.take() {
            Some(h) => h,
            None => {
                let mut buf = String::new();
                loop {
                    buf.clear();
                    if self.input.read_line(&mut buf)? == 0 {
                        return Ok(None);
                    }
                    self.line += 1;
                    let trimmed = buf.trim_end_matches(['\n', '\r']);
                    if trimmed.is_empty() {
                        continue;
                    }
                    if !trimmed.starts_with('>') {
                        return Err(Error::MalformedRecord {
                            line: self.line,
                            reason: format!("expected '>' header, found {trimmed:?}"),
                        });
                    }
                    let header = trimmed.to_string();
                    buf.clear();
                    buf.push_str(&header);
                    break;
                }
                buf
            }
        };
        let id = header[1..].split_whitespace().next().unwrap_or("").to_string();
        let mut seq = String::new();
        let mut buf = String::new();
        loop {
            buf.clear();
            if self.input.read_line(&mut buf)? == 0 {
                break;
            }
            self.line += 1;
            let trimmed = buf.trim_end_matches(['\n', '\r']);
            if trimmed.starts_with('>') {
                self.pending_header = Some(trimmed.to_string());
                break;
            }
            seq.push_str(trimmed);
        }
        if seq.is_empty() {
            return Err(Error::MalformedRecord {
                line: self.line,
                reason: format!("record {id:?} has no sequence"),
            });
        }
        Ok(Some(SequenceRecord::new(id, seq)))
    }
}

impl<R: BufRead> Iterator for FastaReader<R> {
    type Item = Result<SequenceRecord>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.done {
            return None;
        }
        match self.read_record() {
            Ok(Some(rec)) => Some(Ok(rec)),
            Ok(None) => None,
            Err(e) => {
                self.done = true;
                Some(Err(e))
            }
        }
    }
}

pub fn parse_fasta<R: BufRead>(input: R) -> FastaReader<R> {
    FastaReader::new(input)
}

/// Sniffs the first byte and parses as FASTQ ('@') or FASTA ('>').
pub fn parse_auto<R: BufRead + 'static>(
    mut input: R,
) -> Result<Box<dyn Iterator<Item = Result<SequenceRecord>>>> {
    let first = loop {
        let buf = input.fill_buf()?;
        if buf.is_empty() {
            break b'@'; // empty input parses as an empty FASTQ stream
        }
        match buf[0] {
            b'\n' | b'\r' => {
                input.consume(1);
            }
            other => break other,
        }
    };
    match first {
        b'@' => Ok(Box::new(parse_fastq(input))),
        b'>' => Ok(Box::new(parse_fasta(input))),
        other => Err(Error::Parse(format!(
            "unrecognized input: first byte {:?} is neither '@' nor '>'",
            other as char
        ))),
    }
}

// ---------------------------------------------------------------------------
// Flank filtering
// ---------------------------------------------------------------------------

/// Why a read was rejected during region extraction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RejectReason {
    WrongLength,
    FlankMismatch,
    AmbiguousBase,
}

/// Outcome of extracting the design region from one read.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RegionOutcome {
    Region(String),
    Rejected(RejectReason),
}

/// Per-class rejection tally; `kept + rejections` equals the records seen.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FilterReport {
    pub kept: u64,
    pub rejected_wrong_length: u64,
    pub rejected_flank_mismatch: u64,
    pub rejected_ambiguous_base: u64,
}

impl FilterReport {
    pub fn total(&self) -> u64 {
        self.kept
            + self.rejected_wrong_length
            + self.rejected_flank_mismatch
            + self.rejected_ambiguous_base
    }

    pub fn tally(&mut self, outcome: &RegionOutcome) {
        match outcome {
            RegionOutcome::Region(_) => self.kept += 1,
            RegionOutcome::Rejected(RejectReason::WrongLength) => self.rejected_wrong_length += 1,
            RegionOutcome::Rejected(RejectReason::FlankMismatch) => {
                self.rejected_flank_mismatch += 1
            }
            RegionOutcome::Rejected(RejectReason::AmbiguousBase) => {
                self.rejected_ambiguous_base += 1
            }
        }
    }
}

fn hamming(a: &[u8], b: &[u8]) -> usize {
    a.iter().zip(b).filter(|(x, y)| x != y).count()
}

fn flanks_match(seq: &[u8], design: &Design, max_mm: usize) -> bool {
    let f5 = design.flank5.as_bytes();
    let f3 = design.flank3.as_bytes();
    let region_end = f5.len() + design.region_len;
    hamming(&seq[..f5.len()], f5) <= max_mm && hamming(&seq[region_end..], f3) <= max_mm
}

/// Extracts the design region from a read: the read must have length
/// `|flank5| + L + |flank3|`, match both flanks within `max_flank_mismatch`
/// substitutions each (directly or after reverse-complementing), and carry
/// only A/C/G/T inside the region.
pub fn extract_design_region(
    seq: &str,
    design: &Design,
    max_flank_mismatch: usize,
) -> RegionOutcome {
    if seq.len() != design.flanked_len() {
        return RegionOutcome::Rejected(RejectReason::WrongLength);
    }
    let f5_len = design.flank5.len();
    let region_range = f5_len..f5_len + design.region_len;

    let forward = seq.as_bytes();
    let region = if flanks_match(forward, design, max_flank_mismatch) {
        seq[region_range].to_string()
    } else {
        let rc = reverse_complement(seq);
        if flanks_match(rc.as_bytes(), design, max_flank_mismatch) {
            rc[region_range].to_string()
        } else {
            return RegionOutcome::Rejected(RejectReason::FlankMismatch);
        }
    };
    if !is_acgt(&region) {
        return RegionOutcome::Rejected(RejectReason::AmbiguousBase);
    }
    RegionOutcome::Region(region)
}

// ---------------------------------------------------------------------------
// Deduplication
// ---------------------------------------------------------------------------

/// Occurrence-rank profile: `histogram[1]` counts first copies (the unique
/// reads), `histogram[2]` second occurrences, and so on.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DuplicationProfile {
    pub histogram: BTreeMap<u64, u64>,
    pub unique_count: u64,
    pub total: u64,
}

impl DuplicationProfile {
    pub fn rank_fraction(&self, rank: u64) -> f64 {
        if self.total == 0 {
            return 0.0;
        }
        *self.histogram.get(&rank).unwrap_or(&0) as f64 / self.total as f64
    }
}

/// Streaming exact deduplicator.
#[derive(Debug, Default)]
pub struct Deduper {
    counts: HashMap<String, u64>,
    uniques: Vec<String>,
    histogram: BTreeMap<u64, u64>,
    total: u64,
}

impl Deduper {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, region: String) {
        self.total += 1;
        let rank = match self.counts.entry(region) {
            Entry::Occupied(mut e) => {
                *e.get_mut() += 1;
                *e.get()
            }
            Entry::Vacant(e) => {
                self.uniques.push(e.key().clone());
                e.insert(1);
                1
            }
        };
        *self.histogram.entry(rank).or_insert(0) += 1;
    }

    pub fn finish(self) -> (Vec<String>, DuplicationProfile) {
        let unique_count = self.uniques.len() as u64;
        (
            self.uniques,
            DuplicationProfile { histogram: self.histogram, unique_count, total: self.total },
        )
    }
}

/// Exact-string deduplication of a region stream, preserving first-seen
/// order among the uniques.
pub fn dedup<I, S>(regions: I) -> (Vec<String>, DuplicationProfile)
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let mut deduper = Deduper::new();
    for r in regions {
        deduper.push(r.into());
    }
    deduper.finish()
}

// ---------------------------------------------------------------------------
// Run digests
// ---------------------------------------------------------------------------

pub const DIGEST_FILE_VERSION: u32 = 1;

/// The set of unique design-region sequences observed in one sequencing run.
/// Stored sorted so digest files are canonical and diffable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunDigest {
    pub run_id: String,
    pub region_len: usize,
    pub read_count: u64,
    pub sequences: BTreeSet<String>,
}

/// Builds a digest from deduplicated regions, validating lengths.
pub fn make_run_digest<I, S>(
    run_id: impl Into<String>,
    region_len: usize,
    unique_regions: I,
    read_count: u64,
) -> Result<RunDigest>
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let mut sequences = BTreeSet::new();
    for r in unique_regions {
        let r: String = r.into();
        if r.len() != region_len {
            return Err(Error::LengthMismatch(format!(
                "digest region {:?} has length {}, expected {region_len}",
                r,
                r.len()
            )));
        }
        sequences.insert(r);
    }
    Ok(RunDigest { run_id: run_id.into(), region_len, read_count, sequences })
}

/// Exact intersection of two digests' sequence sets, sorted. Independent
/// authentic libraries intersect in the empty set with overwhelming
/// probability; amplified copies of one pool do not.
pub fn cross_run_shared(a: &RunDigest, b: &RunDigest) -> Result<Vec<String>> {
    if a.region_len != b.region_len {
        return Err(Error::LengthMismatch(format!(
            "digest region lengths differ: {} vs {}",
            a.region_len, b.region_len
        )));
    }
    Ok(a.sequences.intersection(&b.sequences).cloned().collect())
}

pub fn write_digest<W: Write>(mut out: W, digest: &RunDigest) -> Result<()> {
    writeln!(out, "POSERS-DIGEST {DIGEST_FILE_VERSION}")?;
    writeln!(out, "run_id={}", digest.run_id)?;
    writeln!(out, "region_len={}", digest.region_len)?;
    writeln!(out, "read_count={}", digest.read_count)?;
    writeln!(out, "unique_count={}", digest.sequences.len())?;
    for seq in &digest.sequences {
        writeln!(out, "{seq}")?;
    }
    Ok(())
}

pub fn read_digest<R: BufRead>(input: R) -> Result<RunDigest> {
    let mut lines = input.lines();
    let header = lines
        .next()
        .transpose()?
        .ok_or_else(|| Error::Parse("digest file is empty".into()))?;
    let version: u32 = header
        .strip_prefix("POSERS-DIGEST ")
        .and_then(|v| v.trim().parse().ok())
        .ok_or_else(|| Error::Parse(format!("bad digest header {header:?}")))?;
    if version != DIGEST_FILE_VERSION {
        return Err(Error::VersionMismatch { found: version, expected: DIGEST_FILE_VERSION });
    }

    let mut field = |name: &str| -> Result<String> {
        let line = lines
            .next()
            .transpose()?
            .ok_or_else(|| Error::Parse(format!("digest file truncated before {name}")))?;
        line.strip_prefix(&format!("{name}="))
            .map(str::to_string)
            .ok_or_else(|| Error::Parse(format!("expected {name}= line, found {line:?}")))
    };
    let run_id = field("run_id")?;
    let region_len: usize =
        field("region_len")?.parse().map_err(|e| Error::Parse(format!("region_len: {e}")))?;
    let read_count: u64 =
        field("read_count")?.parse().map_err(|e| Error::Parse(format!("read_count: {e}")))?;
    let unique_count: usize =
        field("unique_count")?.parse().map_err(|e| Error::Parse(format!("unique_count: {e}")))?;

    let mut sequences = BTreeSet::new();
    for line in lines {
        let line = line?;
        if line.is_empty() {
            continue;
        }
        if line.len() != region_len {
            return Err(Error::Parse(format!(
                "digest sequence of length {} does not match region_len {region_len}",
                line.len()
            )));
        }
        sequences.insert(line);
    }
    if sequences.len() != unique_count {
        return Err(Error::Parse(format!(
            "digest lists {} sequences but declares {unique_count}",
            sequences.len()
        )));
    }
    Ok(RunDigest { run_id, region_len, read_count, sequences })
}
