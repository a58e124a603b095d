//! Seedable simulation of oligo-pool synthesis: single-position pools,
//! the combined pool, fully random control libraries, and the two forgery
//! generators (amplified copies and libraries built from a predicted design).
//!
//! Every generator is a deterministic function of its inputs. Each
//! single-position pool draws from its own stream of one master seed, so
//! pools can be generated independently (or in parallel by a caller) without
//! changing the output; the final mixing shuffle uses a dedicated stream.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::alphabet::{Nucleotide, NUCLEOTIDES};
use crate::design::Design;
use crate::error::{Error, Result};
use crate::record::SequenceRecord;

/// Stream id for the order-mixing shuffle (single-position pools use their
/// rule index as stream id).
const MIX_STREAM: u64 = u64::MAX;

/// Constant quality byte written into simulated FASTQ records.
pub const SYNTH_QUALITY: u8 = b'I';

/// Per-base substitution model applied after a record is constructed.
/// Substitutions draw uniformly among the three other letters unless
/// `substitution_weights` skews the replacement distribution (a hook for
/// modelling vendor-specific composition bias).
#[derive(Debug, Clone, PartialEq)]
pub struct ErrorModel {
    pub substitution_rate: f64,
    /// Relative weights for A/C/G/T as substitution targets; the original
    /// letter's weight is ignored for each draw.
    pub substitution_weights: Option<[f64; 4]>,
}

impl ErrorModel {
    pub fn none() -> Self {
        ErrorModel { substitution_rate: 0.0, substitution_weights: None }
    }

    pub fn uniform(rate: f64) -> Result<Self> {
        let model = ErrorModel { substitution_rate: rate, substitution_weights: None };
        model.validate()?;
        Ok(model)
    }

    pub fn validate(&self) -> Result<()> {
        if !(0.0..1.0).contains(&self.substitution_rate) {
            return Err(Error::InvalidParams(format!(
                "substitution rate must lie in [0, 1), got {}",
                self.substitution_rate
            )));
        }
        if let Some(w) = &self.substitution_weights {
            if w.iter().any(|x| !(x.is_finite() && *x >= 0.0)) || w.iter().sum::<f64>() <= 0.0 {
                return Err(Error::InvalidParams("substitution weights must be non-negative and not all zero".into()));
            }
        }
        Ok(())
    }

    fn apply(&self, region: &mut [u8], rng: &mut ChaCha8Rng) {
        if self.substitution_rate == 0.0 {
            return;
        }
        for base in region.iter_mut() {
            if rng.random_bool(self.substitution_rate) {
                *base = self.substitute(*base, rng);
            }
        }
    }

    fn substitute(&self, original: u8, rng: &mut ChaCha8Rng) -> u8 {
        match &self.substitution_weights {
            None => {
                let others: Vec<u8> = NUCLEOTIDES
                    .iter()
                    .map(|n| n.to_char() as u8)
                    .filter(|b| *b != original)
                    .collect();
                others[rng.random_range(0..others.len())]
            }
            Some(weights) => {
                let candidates: Vec<(u8, f64)> = NUCLEOTIDES
                    .iter()
                    .enumerate()
                    .map(|(i, n)| (n.to_char() as u8, weights[i]))
                    .filter(|(b, w)| *b != original && *w > 0.0)
                    .collect();
                if candidates.is_empty() {
                    return original;
                }
                let total: f64 = candidates.iter().map(|(_, w)| w).sum();
                let mut pick = rng.random_range(0.0..total);
                for (b, w) in &candidates {
                    if pick < *w {
                        return *b;
                    }
                    pick -= w;
                }
                candidates.last().unwrap().0
            }
        }
    }
}

/// Configuration for combined-pool synthesis.
#[derive(Debug, Clone, PartialEq)]
pub struct SynthConfig {
    pub total_reads: usize,
    /// Per-rule mixing weights; equal when absent. Must match the design's
    /// rule count.
    pub ratios: Option<Vec<f64>>,
    pub error: ErrorModel,
    /// Whether library writers should attach the constitutive flanks; the
    /// generated records always carry the bare design region.
    pub include_flanks: bool,
    pub seed: u64,
}

impl SynthConfig {
    pub fn new(total_reads: usize, seed: u64) -> Self {
        SynthConfig {
            total_reads,
            ratios: None,
            error: ErrorModel::none(),
            include_flanks: true,
            seed,
        }
    }
}

fn pool_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

fn random_region(len: usize, rng: &mut ChaCha8Rng) -> Vec<u8> {
    (0..len).map(|_| NUCLEOTIDES[rng.random_range(0..4)].to_char() as u8).collect()
}

/// Synthesizes one single-position pool: every record is uniform random over
/// the region except at the chosen rule's position, which draws uniformly
/// from the rule's allowed letters. Errors are applied afterwards.
pub fn synth_spol(
    design: &Design,
    rule_index: usize,
    count: usize,
    seed: u64,
    error: &ErrorModel,
) -> Result<Vec<SequenceRecord>> {
    design.ensure_valid()?;
    error.validate()?;
    let rule = design
        .rules
        .get(rule_index)
        .ok_or(Error::RuleIndexOutOfRange { index: rule_index, count: design.rules.len() })?;
    let allowed: Vec<Nucleotide> = rule.allowed.members();

    let mut rng = pool_rng(seed, rule_index as u64);
    let mut records = Vec::with_capacity(count);
    for i in 0..count {
        let mut region = random_region(design.region_len, &mut rng);
        region[rule.position] = allowed[rng.random_range(0..allowed.len())].to_char() as u8;
        error.apply(&mut region, &mut rng);
        records.push(SequenceRecord::new(
            format!("s{rule_index}.{i}"),
            String::from_utf8(region).unwrap(),
        ));
    }
    Ok(records)
}

/// Apportions `total` reads over weights by largest remainder, so every
/// pool's count differs from its real-valued share by less than one read.
fn apportion(total: usize, weights: &[f64]) -> Vec<usize> {
    let sum: f64 = weights.iter().sum();
    let shares: Vec<f64> = weights.iter().map(|w| total as f64 * w / sum).collect();
    let mut counts: Vec<usize> = shares.iter().map(|s| s.floor() as usize).collect();
    let assigned: usize = counts.iter().sum();
    let mut order: Vec<usize> = (0..weights.len()).collect();
    order.sort_by(|&a, &b| {
        let fa = shares[a] - shares[a].floor();
        let fb = shares[b] - shares[b].floor();
        fb.partial_cmp(&fa).unwrap().then(a.cmp(&b))
    });
    for &i in order.iter().take(total - assigned) {
        counts[i] += 1;
    }
    counts
}

/// Synthesizes the combined pool: a weighted mixture of all single-position
/// pools, shuffled so pool membership is not recoverable from record order.
pub fn synth_cpol(design: &Design, config: &SynthConfig) -> Result<Vec<SequenceRecord>> {
    design.ensure_valid()?;
    config.error.validate()?;
    if design.rules.is_empty() {
        return Err(Error::InvalidParams("combined-pool synthesis needs at least one rule".into()));
    }
    let equal = vec![1.0; design.rules.len()];
    let weights: &[f64] = match (&config.ratios, &design.ratios) {
        (Some(r), _) | (None, Some(r)) => {
            if r.len() != design.rules.len() {
                return Err(Error::InvalidParams(format!(
                    "{} ratios given for {} rules",
                    r.len(),
                    design.rules.len()
                )));
            }
            if r.iter().any(|w| !(w.is_finite() && *w > 0.0)) {
                return Err(Error::InvalidParams("ratios must be positive".into()));
            }
            r
        }
        (None, None) => &equal,
    };

    let counts = apportion(config.total_reads, weights);
    let mut records = Vec::with_capacity(config.total_reads);
    for (rule_index, count) in counts.iter().enumerate() {
        records.extend(synth_spol(design, rule_index, *count, config.seed, &config.error)?);
    }
    let mut mix = pool_rng(config.seed, MIX_STREAM);
    records.shuffle(&mut mix);
    for (i, rec) in records.iter_mut().enumerate() {
        rec.id = format!("r{i:07}");
    }
    Ok(records)
}

/// Fully random library: i.i.d. uniform letters at every position.
pub fn synth_random(region_len: usize, count: usize, seed: u64) -> Vec<SequenceRecord> {
    let mut rng = pool_rng(seed, 0);
    (0..count)
        .map(|i| {
            let region = random_region(region_len, &mut rng);
            SequenceRecord::new(format!("r{i:07}"), String::from_utf8(region).unwrap())
        })
        .collect()
}

/// Models copying by amplification: the forger gets `source_reads` distinct
/// records from the source pool, then amplifies them up to `total` records.
/// Every template appears at least once and the remaining draws are uniform
/// with replacement, so the output never holds more than `source_reads`
/// unique sequences. When `total == source_reads` the output is exactly the
/// sampled templates in shuffled order.
pub fn forge_pcr(
    source: &[SequenceRecord],
    source_reads: usize,
    total: usize,
    seed: u64,
) -> Result<Vec<SequenceRecord>> {
    if source_reads > source.len() {
        return Err(Error::InvalidParams(format!(
            "forger pool of {source_reads} exceeds source size {}",
            source.len()
        )));
    }
    if total < source_reads {
        return Err(Error::InvalidParams(format!(
            "total {total} is smaller than the forger pool {source_reads}"
        )));
    }
    let mut rng = pool_rng(seed, 0);
    let chosen = rand::seq::index::sample(&mut rng, source.len(), source_reads);
    let templates: Vec<&SequenceRecord> = chosen.iter().map(|i| &source[i]).collect();

    let mut records: Vec<SequenceRecord> = templates.iter().map(|r| (*r).clone()).collect();
    for _ in source_reads..total {
        let pick = templates[rng.random_range(0..templates.len())];
        records.push(pick.clone());
    }
    records.shuffle(&mut rng);
    for (i, rec) in records.iter_mut().enumerate() {
        rec.id = format!("f{i:07}");
    }
    Ok(records)
}

/// Synthesizes a library from a predicted design, exactly as [`synth_cpol`]
/// but following the forger's rules. Wrongly-present rules yield restricted
/// combinations against the true design; rules with missing letters yield
/// missing diversity at that position.
pub fn forge_from_design(predicted: &Design, config: &SynthConfig) -> Result<Vec<SequenceRecord>> {
    synth_cpol(predicted, config)
}

/// Output format for library files.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LibraryFormat {
    Fasta,
    Fastq,
}

/// Writes records as FASTA or FASTQ, optionally wrapping each region in the
/// design's constitutive flanks. FASTQ quality is a constant maximal score.
/// Sequences are never line-wrapped.
pub fn write_library<W: std::io::Write>(
    mut out: W,
    records: &[SequenceRecord],
    design: &Design,
    include_flanks: bool,
    format: LibraryFormat,
) -> Result<()> {
    for rec in records {
        let seq: String = if include_flanks {
            format!("{}{}{}", design.flank5, rec.seq, design.flank3)
        } else {
            rec.seq.clone()
        };
        match format {
            LibraryFormat::Fasta => {
                writeln!(out, ">{}", rec.id)?;
                writeln!(out, "{seq}")?;
            }
            LibraryFormat::Fastq => {
                let quality = match (&rec.quality, include_flanks) {
                    (Some(q), false) => q.clone(),
                    _ => String::from_utf8(vec![SYNTH_QUALITY; seq.len()]).unwrap(),
                };
                writeln!(out, "@{}", rec.id)?;
                writeln!(out, "{seq}")?;
                writeln!(out, "+")?;
                writeln!(out, "{quality}")?;
            }
        }
    }
    Ok(())
}
