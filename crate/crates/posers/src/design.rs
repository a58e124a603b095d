//! The secret tag design: restricted positions inside a randomized region,
//! its generation procedure, validation, and the versioned design file.
//!
//! A design fixes a region length, a set of restricted positions each with an
//! allowed-nucleotide set of cardinality 1, 2 or 3, and two constitutive
//! flanking sequences. Everything about the restricted positions is secret;
//! the design file is the steganographic key.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::alphabet::{allowed_set_of, is_acgt, iupac_code_of, AllowedSet, Nucleotide};
use crate::error::{Error, Result};

/// 5' constitutive sequence used when none is supplied (80 nt).
pub const DEFAULT_FLANK_5: &str = "ATTGACCAACACTACTAACTTACATTTAACGTCATGCAATCTTCGAGAAGCAATGACAACGATGCCTTTGGTTATTTGAT";

/// 3' constitutive sequence used when none is supplied (80 nt).
pub const DEFAULT_FLANK_3: &str = "ACTGAGATAGCAATATGATAAAGATGTTATTGAACGAGTGGAATGCATAGAGACAGGAATCGTCCTTGTACTGCGTCTAA";

/// One restricted position: an index into the design region plus the set of
/// nucleotides allowed there (1, 2 or 3 letters; all four would be no
/// restriction at all).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PositionRule {
    /// 0-based index into the design region.
    pub position: usize,
    pub allowed: AllowedSet,
}

impl PositionRule {
    pub fn new(position: usize, allowed: AllowedSet) -> Result<Self> {
        if allowed.cardinality() == 4 {
            return Err(Error::NotARestriction);
        }
        Ok(PositionRule { position, allowed })
    }
}

/// Parameters of a design: region length, rule counts by cardinality, and
/// the acceptable probability of failing to detect a fully random forgery.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DesignParams {
    /// Length of the randomized design region in nucleotides.
    pub region_len: usize,
    /// Number of restricted positions allowing exactly one nucleotide.
    pub k1: usize,
    /// Number of restricted positions allowing exactly two nucleotides.
    pub k2: usize,
    /// Number of restricted positions allowing exactly three nucleotides.
    pub k3: usize,
    /// Detection-failure probability driving the required sample size.
    pub epsilon: f64,
}

impl DesignParams {
    pub fn total_rules(&self) -> usize {
        self.k1 + self.k2 + self.k3
    }

    pub fn validate(&self) -> Result<()> {
        if self.region_len == 0 {
            return Err(Error::InvalidParams("region length must be positive".into()));
        }
        if self.total_rules() > self.region_len {
            return Err(Error::InvalidParams(format!(
                "k1 + k2 + k3 = {} exceeds region length {}",
                self.total_rules(),
                self.region_len
            )));
        }
        if !(self.epsilon > 0.0 && self.epsilon < 1.0) {
            return Err(Error::InvalidParams(format!(
                "epsilon must lie strictly between 0 and 1, got {}",
                self.epsilon
            )));
        }
        Ok(())
    }
}

/// The full secret design.
#[derive(Debug, Clone, PartialEq)]
pub struct Design {
    pub id: String,
    /// Length of the randomized design region in nucleotides.
    pub region_len: usize,
    /// Restricted positions, sorted by position.
    pub rules: Vec<PositionRule>,
    /// 5' constitutive sequence (may be empty).
    pub flank5: String,
    /// 3' constitutive sequence (may be empty).
    pub flank3: String,
    /// Optional per-rule mixing weights; equal mixing when absent.
    pub ratios: Option<Vec<f64>>,
    /// Seed the design was generated from, recorded for reproducibility.
    pub seed: u64,
}

impl Design {
    /// Rule counts by cardinality: (one-letter, two-letter, three-letter).
    pub fn rule_counts(&self) -> (usize, usize, usize) {
        let mut counts = (0, 0, 0);
        for r in &self.rules {
            match r.allowed.cardinality() {
                1 => counts.0 += 1,
                2 => counts.1 += 1,
                _ => counts.2 += 1,
            }
        }
        counts
    }

    /// Total read length once flanks are attached.
    pub fn flanked_len(&self) -> usize {
        self.flank5.len() + self.region_len + self.flank3.len()
    }

    pub fn is_valid(&self) -> bool {
        validate_design(self).is_empty()
    }

    /// Errors with the joined violation list unless the design is valid.
    pub fn ensure_valid(&self) -> Result<()> {
        let violations = validate_design(self);
        if violations.is_empty() {
            Ok(())
        } else {
            let joined = violations.iter().map(Violation::to_string).collect::<Vec<_>>().join("; ");
            Err(Error::InvalidDesign(joined))
        }
    }
}

/// A single violated design invariant.
#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    DuplicatePosition(usize),
    PositionOutOfRange { position: usize, region_len: usize },
    /// A rule allowing all four nucleotides restricts nothing.
    NotARestriction { position: usize },
    FlankNotAcgt { end: char },
    RatioCountMismatch { rules: usize, ratios: usize },
    NonPositiveRatio { index: usize, value: f64 },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::DuplicatePosition(p) => write!(f, "duplicate position {p}"),
            Violation::PositionOutOfRange { position, region_len } => {
                write!(f, "position {position} outside region of length {region_len}")
            }
            Violation::NotARestriction { position } => {
                write!(f, "rule at position {position} is not a restriction")
            }
            Violation::FlankNotAcgt { end } => {
                write!(f, "{end}' flank contains characters outside A/C/G/T")
            }
            Violation::RatioCountMismatch { rules, ratios } => {
                write!(f, "{ratios} ratios given for {rules} rules")
            }
            Violation::NonPositiveRatio { index, value } => {
                write!(f, "ratio {index} is not positive ({value})")
            }
        }
    }
}

/// Checks every design invariant and returns all violations found
/// (empty means the design is well formed).
pub fn validate_design(design: &Design) -> Vec<Violation> {
    let mut violations = Vec::new();
    let mut seen = vec![false; design.region_len];
    for rule in &design.rules {
        if rule.position >= design.region_len {
            violations.push(Violation::PositionOutOfRange {
                position: rule.position,
                region_len: design.region_len,
            });
        } else if seen[rule.position] {
            violations.push(Violation::DuplicatePosition(rule.position));
        } else {
            seen[rule.position] = true;
        }
        if rule.allowed.cardinality() == 4 {
            violations.push(Violation::NotARestriction { position: rule.position });
        }
    }
    if !is_acgt(&design.flank5) {
        violations.push(Violation::FlankNotAcgt { end: '5' });
    }
    if !is_acgt(&design.flank3) {
        violations.push(Violation::FlankNotAcgt { end: '3' });
    }
    if let Some(ratios) = &design.ratios {
        if ratios.len() != design.rules.len() {
            violations.push(Violation::RatioCountMismatch {
                rules: design.rules.len(),
                ratios: ratios.len(),
            });
        }
        for (i, w) in ratios.iter().enumerate() {
            if !(w.is_finite() && *w > 0.0) {
                violations.push(Violation::NonPositiveRatio { index: i, value: *w });
            }
        }
    }
    violations
}

// Two-letter subsets as index pairs, in a fixed order so draws are stable.
const PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

/// Generates a design from parameters and a seed.
///
/// Positions are drawn without replacement in stages: first the one-letter
/// positions, then the two-letter positions from the remainder, then the
/// three-letter positions. Allowed sets are drawn uniformly among the
/// candidates of the required cardinality. The whole design is a
/// deterministic function of `(params, seed)`; the flanks are stored
/// verbatim.
pub fn generate_design(
    params: &DesignParams,
    seed: u64,
    flank5: &str,
    flank3: &str,
) -> Result<Design> {
    params.validate()?;
    if !is_acgt(flank5) || !is_acgt(flank3) {
        return Err(Error::InvalidParams("flanks must contain only A/C/G/T".into()));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut available: Vec<usize> = (0..params.region_len).collect();
    let draw_positions = |rng: &mut ChaCha8Rng, count: usize, avail: &mut Vec<usize>| {
        (0..count)
            .map(|_| {
                let i = rng.random_range(0..avail.len());
                avail.swap_remove(i)
            })
            .collect::<Vec<usize>>()
    };

    let singles = draw_positions(&mut rng, params.k1, &mut available);
    let pairs = draw_positions(&mut rng, params.k2, &mut available);
    let triples = draw_positions(&mut rng, params.k3, &mut available);

    let mut rules = Vec::with_capacity(params.total_rules());
    for position in singles {
        let n = Nucleotide::from_index(rng.random_range(0..4)).unwrap();
        rules.push(PositionRule { position, allowed: AllowedSet::singleton(n) });
    }
    for position in pairs {
        let (a, b) = PAIRS[rng.random_range(0..PAIRS.len())];
        let mask = (1u8 << a) | (1u8 << b);
        rules.push(PositionRule { position, allowed: AllowedSet::from_mask(mask)? });
    }
    for position in triples {
        let excluded = rng.random_range(0..4u8);
        rules.push(PositionRule { position, allowed: AllowedSet::from_mask(0xF ^ (1 << excluded))? });
    }
    rules.sort_by_key(|r| r.position);

    let design = Design {
        id: format!("design-{seed:016x}"),
        region_len: params.region_len,
        rules,
        flank5: flank5.to_string(),
        flank3: flank3.to_string(),
        ratios: None,
        seed,
    };
    debug_assert!(design.is_valid());
    Ok(design)
}

// ---------------------------------------------------------------------------
// Design file (versioned JSON; this file is the secret key)
// ---------------------------------------------------------------------------

pub const DESIGN_FILE_VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
struct RuleFile {
    position: usize,
    allowed: String,
}

#[derive(Serialize, Deserialize)]
struct DesignFile {
    version: u32,
    id: String,
    #[serde(rename = "L")]
    region_len: usize,
    rules: Vec<RuleFile>,
    flank5: String,
    flank3: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    ratios: Option<Vec<f64>>,
    seed: u64,
}

#[derive(Deserialize)]
struct VersionProbe {
    version: u32,
}

/// Serializes a design to its versioned file form.
pub fn encode_design(design: &Design) -> Result<Vec<u8>> {
    design.ensure_valid()?;
    let file = DesignFile {
        version: DESIGN_FILE_VERSION,
        id: design.id.clone(),
        region_len: design.region_len,
        rules: design
            .rules
            .iter()
            .map(|r| RuleFile { position: r.position, allowed: iupac_code_of(r.allowed).to_string() })
            .collect(),
        flank5: design.flank5.clone(),
        flank3: design.flank3.clone(),
        ratios: design.ratios.clone(),
        seed: design.seed,
    };
    let mut bytes = serde_json::to_vec_pretty(&file).map_err(|e| Error::Parse(e.to_string()))?;
    bytes.push(b'\n');
    Ok(bytes)
}

/// Parses a design file, checking the format version and every design
/// invariant.
pub fn decode_design(bytes: &[u8]) -> Result<Design> {
    let probe: VersionProbe = serde_json::from_slice(bytes)
        .map_err(|e| Error::Parse(format!("design file: {e}")))?;
    if probe.version != DESIGN_FILE_VERSION {
        return Err(Error::VersionMismatch { found: probe.version, expected: DESIGN_FILE_VERSION });
    }
    let file: DesignFile = serde_json::from_slice(bytes)
        .map_err(|e| Error::Parse(format!("design file: {e}")))?;
    let mut rules = Vec::with_capacity(file.rules.len());
    for r in &file.rules {
        let mut chars = r.allowed.chars();
        let code = chars
            .next()
            .ok_or_else(|| Error::Parse(format!("empty allowed code at position {}", r.position)))?;
        if chars.next().is_some() {
            return Err(Error::Parse(format!(
                "allowed code {:?} at position {} is not a single character",
                r.allowed, r.position
            )));
        }
        rules.push(PositionRule::new(r.position, allowed_set_of(code)?)?);
    }
    let design = Design {
        id: file.id,
        region_len: file.region_len,
        rules,
        flank5: file.flank5,
        flank3: file.flank3,
        ratios: file.ratios,
        seed: file.seed,
    };
    design.ensure_valid()?;
    Ok(design)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(region_len: usize, k1: usize, k2: usize, k3: usize) -> DesignParams {
        DesignParams { region_len, k1, k2, k3, epsilon: 1e-6 }
    }

    #[test]
    fn default_flanks_are_80_nt_acgt() {
        assert_eq!(DEFAULT_FLANK_5.len(), 80);
        assert_eq!(DEFAULT_FLANK_3.len(), 80);
        assert!(is_acgt(DEFAULT_FLANK_5));
        assert!(is_acgt(DEFAULT_FLANK_3));
    }

    #[test]
    fn generate_produces_requested_rule_counts() {
        let d = generate_design(&params(40, 10, 10, 0), 7, DEFAULT_FLANK_5, DEFAULT_FLANK_3).unwrap();
        assert_eq!(d.rule_counts(), (10, 10, 0));
        assert_eq!(d.rules.len(), 20);
        assert!(d.is_valid());
    }

    #[test]
    fn generate_with_no_rules() {
        let d = generate_design(&params(5, 0, 0, 0), 3, "", "").unwrap();
        assert!(d.rules.is_empty());
        assert!(d.is_valid());
    }

    #[test]
    fn generate_is_deterministic() {
        let a = generate_design(&params(40, 10, 10, 0), 42, DEFAULT_FLANK_5, DEFAULT_FLANK_3).unwrap();
        let b = generate_design(&params(40, 10, 10, 0), 42, DEFAULT_FLANK_5, DEFAULT_FLANK_3).unwrap();
        assert_eq!(a, b);
        assert_eq!(encode_design(&a).unwrap(), encode_design(&b).unwrap());
        let c = generate_design(&params(40, 10, 10, 0), 43, DEFAULT_FLANK_5, DEFAULT_FLANK_3).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn generate_fully_restricted_region() {
        let d = generate_design(&params(4, 2, 1, 1), 11, "", "").unwrap();
        assert_eq!(d.rules.len(), 4);
        let positions: Vec<usize> = d.rules.iter().map(|r| r.position).collect();
        assert_eq!(positions, vec![0, 1, 2, 3]);
        assert!(validate_design(&d).is_empty());
    }

    #[test]
    fn params_reject_too_many_rules() {
        assert!(params(4, 3, 2, 0).validate().is_err());
        assert!(params(0, 0, 0, 0).validate().is_err());
        let mut p = params(10, 1, 1, 1);
        p.epsilon = 1.0;
        assert!(p.validate().is_err());
    }

    #[test]
    fn validate_reports_duplicates_and_non_restrictions() {
        let mut d = generate_design(&params(10, 1, 1, 0), 5, "", "").unwrap();
        let first = d.rules[0];
        d.rules.push(PositionRule { position: first.position, allowed: first.allowed });
        d.rules.push(PositionRule { position: 9, allowed: AllowedSet::full() });
        let violations = validate_design(&d);
        assert!(violations.contains(&Violation::DuplicatePosition(first.position)));
        assert!(violations.contains(&Violation::NotARestriction { position: 9 }));
    }

    #[test]
    fn validate_reports_flank_and_ratio_problems() {
        let mut d = generate_design(&params(10, 2, 0, 0), 5, "ACGT", "ACGT").unwrap();
        d.flank5 = "ACXT".into();
        d.ratios = Some(vec![1.0]);
        let violations = validate_design(&d);
        assert!(violations.contains(&Violation::FlankNotAcgt { end: '5' }));
        assert!(violations.contains(&Violation::RatioCountMismatch { rules: 2, ratios: 1 }));
        d.ratios = Some(vec![1.0, -2.0]);
        let violations = validate_design(&d);
        assert!(violations.iter().any(|v| matches!(v, Violation::NonPositiveRatio { index: 1, .. })));
    }

    #[test]
    fn design_file_roundtrip() {
        let d = generate_design(&params(40, 10, 10, 0), 99, DEFAULT_FLANK_5, DEFAULT_FLANK_3).unwrap();
        let bytes = encode_design(&d).unwrap();
        let back = decode_design(&bytes).unwrap();
        assert_eq!(d, back);
    }

    #[test]
    fn design_file_rejects_truncation_and_wrong_version() {
        let d = generate_design(&params(8, 1, 1, 1), 2, "", "").unwrap();
        let bytes = encode_design(&d).unwrap();
        let truncated = &bytes[..bytes.len() / 2];
        assert!(matches!(decode_design(truncated), Err(Error::Parse(_))));

        let text = String::from_utf8(bytes).unwrap();
        let bumped = text.replace("\"version\": 1", "\"version\": 9");
        match decode_design(bumped.as_bytes()) {
            Err(Error::VersionMismatch { found: 9, expected: 1 }) => {}
            other => panic!("expected version mismatch, got {other:?}"),
        }
    }

    #[test]
    fn position_rule_rejects_full_set() {
        assert!(PositionRule::new(0, AllowedSet::full()).is_err());
    }
}
