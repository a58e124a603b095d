//! The forger's toolkit, used by designers to evaluate a design's security:
//! per-position frequency analysis, distribution-based design prediction,
//! classification of prediction errors, and the desk-scale
//! combination-enumeration attack.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::alphabet::{base_index, AllowedSet, INVALID_BASE};
use crate::design::{Design, PositionRule};
use crate::error::{Error, Result};
use crate::math::{expected_proportions, proportion_deviation};

/// Per-position letter proportions of a region set, plus per-letter column
/// means. Rows are indexed by position, columns by A/C/G/T.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrequencyMatrix {
    pub region_len: usize,
    pub rows: Vec<[f64; 4]>,
    /// Column means of `rows`, one per letter.
    pub letter_means: [f64; 4],
    /// Number of regions the matrix was computed from (zero for analytic
    /// matrices).
    pub reads: u64,
}

impl FrequencyMatrix {
    fn from_rows(rows: Vec<[f64; 4]>, reads: u64) -> Result<Self> {
        let region_len = rows.len();
        if region_len == 0 {
            return Err(Error::InvalidParams("frequency matrix needs at least one position".into()));
        }
        for (i, row) in rows.iter().enumerate() {
            let sum: f64 = row.iter().sum();
            if (sum - 1.0).abs() > 1e-9 {
                return Err(Error::InvalidParams(format!(
                    "row {i} sums to {sum}, expected 1"
                )));
            }
        }
        let mut letter_means = [0.0; 4];
        for row in &rows {
            for (m, v) in letter_means.iter_mut().zip(row) {
                *m += v;
            }
        }
        for m in &mut letter_means {
            *m /= region_len as f64;
        }
        Ok(FrequencyMatrix { region_len, rows, letter_means, reads })
    }
}

/// Computes per-position letter proportions from same-length regions.
pub fn frequency_matrix<S: AsRef<str> + Sync>(regions: &[S]) -> Result<FrequencyMatrix> {
    let first = regions
        .first()
        .ok_or_else(|| Error::InvalidParams("frequency matrix needs at least one region".into()))?;
    let region_len = first.as_ref().len();

    let counts = regions
        .par_chunks(1 << 16)
        .map(|chunk| -> Result<Vec<[u64; 4]>> {
            let mut counts = vec![[0u64; 4]; region_len];
            for region in chunk {
                let bytes = region.as_ref().as_bytes();
                if bytes.len() != region_len {
                    return Err(Error::LengthMismatch(format!(
                        "regions of mixed lengths: {} vs {region_len}",
                        bytes.len()
                    )));
                }
                for (pos, b) in bytes.iter().enumerate() {
                    let idx = base_index(*b);
                    if idx == INVALID_BASE {
                        return Err(Error::InvalidNucleotide(*b as char));
                    }
                    counts[pos][idx as usize] += 1;
                }
            }
            Ok(counts)
        })
        .try_reduce(
            || vec![[0u64; 4]; region_len],
            |mut a, b| {
                for (ra, rb) in a.iter_mut().zip(b) {
                    for (ca, cb) in ra.iter_mut().zip(rb) {
                        *ca += cb;
                    }
                }
                Ok(a)
            },
        )?;

    let total = regions.len() as f64;
    let rows: Vec<[f64; 4]> =
        counts.iter().map(|row| row.map(|c| c as f64 / total)).collect();
    FrequencyMatrix::from_rows(rows, regions.len() as u64)
}

/// The infinite-sample frequency matrix of a design with equal pool mixing,
/// built directly from the expected proportions: unrestricted positions are
/// uniform, restricted positions carry the allowed/disallowed split.
pub fn expected_frequency_matrix(design: &Design) -> Result<FrequencyMatrix> {
    design.ensure_valid()?;
    let k = design.rules.len() as u32;
    if k == 0 {
        return Err(Error::InvalidParams("analytic matrix needs at least one rule".into()));
    }
    let mut rows = vec![[0.25; 4]; design.region_len];
    for rule in &design.rules {
        let (allowed, disallowed) = expected_proportions(rule.allowed.cardinality(), k)?;
        let row = &mut rows[rule.position];
        for (idx, cell) in row.iter_mut().enumerate() {
            let n = crate::alphabet::NUCLEOTIDES[idx];
            *cell = if rule.allowed.contains(n) { allowed } else { disallowed };
        }
    }
    FrequencyMatrix::from_rows(rows, 0)
}

/// Baseline the prediction thresholds against. The overall mean is exactly
/// one quarter for every valid frequency matrix and is the noise-free
/// reference; the per-letter column means compensate for a global
/// composition skew (synthesis-vendor bias) at the cost of absorbing some
/// of the design's own signal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PredictionBaseline {
    #[default]
    OverallMean,
    PerLetterMean,
}

/// The forger's inferred restrictions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PredictedDesign {
    pub region_len: usize,
    pub rules: Vec<PositionRule>,
}

impl PredictedDesign {
    /// Wraps the prediction as a full design so a library can be synthesized
    /// from it.
    pub fn to_design(&self, id: impl Into<String>, flank5: &str, flank3: &str, seed: u64) -> Design {
        Design {
            id: id.into(),
            region_len: self.region_len,
            rules: self.rules.clone(),
            flank5: flank5.to_string(),
            flank3: flank3.to_string(),
            ratios: None,
            seed,
        }
    }
}

// Exact analytic matrices put two-letter deviations exactly on the
// threshold; the slack keeps ">= threshold" true under f64 rounding.
const THRESHOLD_SLACK: f64 = 1e-12;

/// Predicts a design from a frequency matrix, assuming `assumed_k` restricted
/// positions with `assumed_i` allowed letters each. A letter is flagged at a
/// position when its proportion exceeds the baseline by at least
/// `(4 - i) / (4 * i * k)`; flagged positions become rules whose allowed set
/// is the flagged letters (at most three, by excess), and at most `assumed_k`
/// positions are kept (largest maximal excess first, ties to the lower
/// position index).
pub fn predict_design(
    fm: &FrequencyMatrix,
    assumed_k: usize,
    assumed_i: u32,
) -> Result<PredictedDesign> {
    predict_design_with_baseline(fm, assumed_k, assumed_i, PredictionBaseline::OverallMean)
}

pub fn predict_design_with_baseline(
    fm: &FrequencyMatrix,
    assumed_k: usize,
    assumed_i: u32,
    baseline: PredictionBaseline,
) -> Result<PredictedDesign> {
    if assumed_k == 0 {
        return Err(Error::InvalidParams("assumed rule count must be at least 1".into()));
    }
    if !(1..=3).contains(&assumed_i) {
        return Err(Error::InvalidParams(format!(
            "assumed allowed-letter count must be 1, 2 or 3, got {assumed_i}"
        )));
    }
    let threshold = proportion_deviation(assumed_i, assumed_k as u32);

    struct Candidate {
        position: usize,
        mask: u8,
        max_excess: f64,
    }

    let mut candidates: Vec<Candidate> = Vec::new();
    for (position, row) in fm.rows.iter().enumerate() {
        let mut flagged: Vec<(usize, f64)> = Vec::new();
        for (letter, freq) in row.iter().enumerate() {
            let base = match baseline {
                PredictionBaseline::OverallMean => 0.25,
                PredictionBaseline::PerLetterMean => fm.letter_means[letter],
            };
            let excess = freq - base;
            if excess >= threshold - THRESHOLD_SLACK {
                flagged.push((letter, excess));
            }
        }
        if flagged.is_empty() {
            continue;
        }
        if flagged.len() > 3 {
            flagged.sort_by(|a, b| b.1.partial_cmp(&a.1).unwrap().then(a.0.cmp(&b.0)));
            flagged.truncate(3);
        }
        let mask = flagged.iter().fold(0u8, |m, (letter, _)| m | (1 << letter));
        let max_excess = flagged.iter().map(|(_, e)| *e).fold(f64::NEG_INFINITY, f64::max);
        candidates.push(Candidate { position, mask, max_excess });
    }

    if candidates.len() > assumed_k {
        candidates.sort_by(|a, b| {
            b.max_excess.partial_cmp(&a.max_excess).unwrap().then(a.position.cmp(&b.position))
        });
        candidates.truncate(assumed_k);
        candidates.sort_by_key(|c| c.position);
    }

    let rules = candidates
        .into_iter()
        .map(|c| PositionRule::new(c.position, AllowedSet::from_mask(c.mask)?))
        .collect::<Result<Vec<_>>>()?;
    Ok(PredictedDesign { region_len: fm.region_len, rules })
}

/// How one predicted position relates to the truth.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PositionCall {
    /// Position and allowed set both exact.
    Correct,
    /// Unrestricted position predicted as restricted.
    FalselyFlagged,
    /// True position missed, or predicted with a disallowed letter included.
    MissedOrCorrupted,
    /// Position found but at least one allowed letter dropped.
    IncompleteLetters,
}

impl PositionCall {
    pub fn label(self) -> &'static str {
        match self {
            PositionCall::Correct => "correct",
            PositionCall::FalselyFlagged => "FNP",
            PositionCall::MissedOrCorrupted => "FPN",
            PositionCall::IncompleteLetters => "FHP",
        }
    }
}

/// Classification of a prediction against the true design. Every true rule
/// position lands in exactly one of `correct`, `fpn`, `fhp`; every predicted
/// position that is not restricted in truth lands in `fnp`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PredictionAssessment {
    pub correct: Vec<usize>,
    pub fnp: Vec<usize>,
    pub fpn: Vec<usize>,
    pub fhp: Vec<usize>,
}

impl PredictionAssessment {
    pub fn call_for(&self, position: usize) -> Option<PositionCall> {
        if self.correct.contains(&position) {
            Some(PositionCall::Correct)
        } else if self.fnp.contains(&position) {
            Some(PositionCall::FalselyFlagged)
        } else if self.fpn.contains(&position) {
            Some(PositionCall::MissedOrCorrupted)
        } else if self.fhp.contains(&position) {
            Some(PositionCall::IncompleteLetters)
        } else {
            None
        }
    }
}

/// Compares a prediction with the true design position by position.
pub fn assess_prediction(
    truth: &Design,
    predicted: &PredictedDesign,
) -> Result<PredictionAssessment> {
    if truth.region_len != predicted.region_len {
        return Err(Error::LengthMismatch(format!(
            "prediction is over {} positions, truth over {}",
            predicted.region_len, truth.region_len
        )));
    }
    let pred: BTreeMap<usize, AllowedSet> =
        predicted.rules.iter().map(|r| (r.position, r.allowed)).collect();
    let truth_map: BTreeMap<usize, AllowedSet> =
        truth.rules.iter().map(|r| (r.position, r.allowed)).collect();

    let mut assessment = PredictionAssessment {
        correct: Vec::new(),
        fnp: Vec::new(),
        fpn: Vec::new(),
        fhp: Vec::new(),
    };
    for (position, true_set) in &truth_map {
        match pred.get(position) {
            None => assessment.fpn.push(*position),
            Some(p) if p == true_set => assessment.correct.push(*position),
            Some(p) if p.is_subset_of(*true_set) => assessment.fhp.push(*position),
            Some(_) => assessment.fpn.push(*position),
        }
    }
    for position in pred.keys() {
        if !truth_map.contains_key(position) {
            assessment.fnp.push(*position);
        }
    }
    Ok(assessment)
}

/// Default ceiling on enumeration work, in tuple checks.
pub const ENUMERATION_CHECK_LIMIT: f64 = 1e9;

/// One finding of the enumeration attack: a position subset together with
/// the letter tuples never observed there.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RestrictionFinding {
    pub positions: Vec<usize>,
    /// Missing tuples, one letter per position, sorted.
    pub missing_tuples: Vec<String>,
}

/// Estimated work for [`enumerate_restrictions`], in tuple checks.
pub fn enumeration_cost(region_len: usize, regions: usize, max_k: usize) -> f64 {
    let mut total = 0.0;
    for k in 1..=max_k.min(region_len) {
        let mut comb = 1.0f64;
        for j in 0..k {
            comb = comb * (region_len - j) as f64 / (j + 1) as f64;
        }
        total += comb * (regions as f64 + 4f64.powi(k as i32));
    }
    total
}

/// Exhaustively searches all position subsets of size `<= max_k` for letter
/// tuples absent from the input. Given every authentic sequence of a design
/// this recovers the design's missing tuples exactly (plus the supersets
/// they imply); sparser inputs yield spurious candidates. Refuses when the
/// estimated work exceeds `max_checks` — the operation exists as a
/// desk-scale demonstration, not a practical attack.
pub fn enumerate_restrictions<S: AsRef<str>>(
    regions: &[S],
    max_k: usize,
    max_checks: f64,
) -> Result<Vec<RestrictionFinding>> {
    let first = regions
        .first()
        .ok_or_else(|| Error::InvalidParams("enumeration needs at least one region".into()))?;
    let region_len = first.as_ref().len();
    if max_k == 0 {
        return Err(Error::InvalidParams("max subset size must be at least 1".into()));
    }
    let estimated = enumeration_cost(region_len, regions.len(), max_k);
    if estimated > max_checks {
        return Err(Error::EnumerationGuard { estimated, limit: max_checks });
    }

    // Pre-encode every region as 2-bit letters.
    let mut encoded: Vec<Vec<u8>> = Vec::with_capacity(regions.len());
    for r in regions {
        let bytes = r.as_ref().as_bytes();
        if bytes.len() != region_len {
            return Err(Error::LengthMismatch(format!(
                "regions of mixed lengths: {} vs {region_len}",
                bytes.len()
            )));
        }
        let mut enc = Vec::with_capacity(region_len);
        for b in bytes {
            let idx = base_index(*b);
            if idx == INVALID_BASE {
                return Err(Error::InvalidNucleotide(*b as char));
            }
            enc.push(idx);
        }
        encoded.push(enc);
    }

    let mut findings = Vec::new();
    for k in 1..=max_k.min(region_len) {
        let mut subset: Vec<usize> = (0..k).collect();
        loop {
            let mut observed = vec![false; 1 << (2 * k)];
            for enc in &encoded {
                let mut idx = 0usize;
                for &pos in &subset {
                    idx = (idx << 2) | enc[pos] as usize;
                }
                observed[idx] = true;
            }
            let missing: Vec<String> = observed
                .iter()
                .enumerate()
                .filter(|(_, seen)| !**seen)
                .map(|(idx, _)| decode_tuple(idx, k))
                .collect();
            if !missing.is_empty() {
                findings.push(RestrictionFinding { positions: subset.clone(), missing_tuples: missing });
            }

            // Next lexicographic k-combination of 0..region_len.
            let mut i = k;
            loop {
                if i == 0 {
                    break;
                }
                i -= 1;
                if subset[i] != i + region_len - k {
                    subset[i] += 1;
                    for j in i + 1..k {
                        subset[j] = subset[j - 1] + 1;
                    }
                    break;
                }
                if i == 0 {
                    subset.clear();
                    break;
                }
            }
            if subset.is_empty() {
                break;
            }
        }
    }
    Ok(findings)
}

fn decode_tuple(mut idx: usize, k: usize) -> String {
    let mut letters = vec![b'A'; k];
    for i in (0..k).rev() {
        letters[i] = crate::alphabet::NUCLEOTIDES[idx & 3].to_char() as u8;
        idx >>= 2;
    }
    String::from_utf8(letters).unwrap()
}
