//! The designer-side authentication engine: per-read classification, the
//! sample-combination (SC) and sample-variety (SV) tests, and the combined
//! pipeline verdict.
//!
//! A read is non-authentic exactly when it carries a disallowed letter at
//! every restricted position simultaneously; equivalently, when it is
//! consistent with none of the design's single-position pools. The SC test
//! hunts for such reads; the SV test checks, on pool-exclusive reads, that
//! every allowed letter actually occurs at every restricted position.

use std::fmt;
use std::io::BufRead;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::alphabet::{base_index, iupac_code_of, AllowedSet, INVALID_BASE};
use crate::design::Design;
use crate::error::{Error, Result};
use crate::ingest::{
    extract_design_region, parse_auto, DuplicationProfile, Deduper, FilterReport, RegionOutcome,
};
use crate::math::{adjusted_sample_size, missing_rate, required_sample_size, DEFAULT_EPSILON};

/// Classification of a single read against a design.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ReadVerdict {
    Authentic,
    NonAuthentic,
}

/// Size of the work chunks used for parallel aggregation. Counters merge
/// commutatively, so reports are bit-identical for any thread count.
const CHUNK: usize = 1 << 16;

/// Classifies one region: non-authentic iff every restricted position holds
/// a disallowed letter. A design with no rules classifies everything
/// non-authentic (the vacuous universal); such designs are rejected for
/// authentication by [`authenticate`].
pub fn classify_read(design: &Design, region: &str) -> Result<ReadVerdict> {
    let bytes = region.as_bytes();
    if bytes.len() != design.region_len {
        return Err(Error::LengthMismatch(format!(
            "region length {} does not match design region length {}",
            bytes.len(),
            design.region_len
        )));
    }
    if let Some(bad) = bytes.iter().find(|b| base_index(**b) == INVALID_BASE) {
        return Err(Error::InvalidNucleotide(*bad as char));
    }
    for rule in &design.rules {
        if rule.allowed.contains_byte(bytes[rule.position]) {
            return Ok(ReadVerdict::Authentic);
        }
    }
    Ok(ReadVerdict::NonAuthentic)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScVerdict {
    Pass,
    Fail,
    InsufficientSample,
}

impl fmt::Display for ScVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScVerdict::Pass => write!(f, "pass"),
            ScVerdict::Fail => write!(f, "fail"),
            ScVerdict::InsufficientSample => write!(f, "insufficient_sample"),
        }
    }
}

/// Outcome of the sample-combination test.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScReport {
    pub examined: u64,
    pub non_authentic: u64,
    pub empirical_rate: f64,
    pub required_n: u64,
    pub tolerance: f64,
    pub verdict: ScVerdict,
}

/// Runs the sample-combination test over (deduplicated) regions: any
/// non-authentic fraction above `tolerance` fails regardless of sample size;
/// clean samples smaller than `required_n` are insufficient rather than
/// passing. The default tolerance of zero means a single restricted
/// combination fails the sample.
pub fn sc_test<S: AsRef<str> + Sync>(
    design: &Design,
    regions: &[S],
    required_n: u64,
    tolerance: f64,
) -> Result<ScReport> {
    let non_authentic = regions
        .par_chunks(CHUNK)
        .map(|chunk| -> Result<u64> {
            let mut bad = 0u64;
            for region in chunk {
                if classify_read(design, region.as_ref())? == ReadVerdict::NonAuthentic {
                    bad += 1;
                }
            }
            Ok(bad)
        })
        .try_reduce(|| 0, |a, b| Ok(a + b))?;

    let examined = regions.len() as u64;
    let empirical_rate = if examined == 0 { 0.0 } else { non_authentic as f64 / examined as f64 };
    let verdict = if examined == 0 {
        ScVerdict::InsufficientSample
    } else if empirical_rate > tolerance {
        ScVerdict::Fail
    } else if examined < required_n {
        ScVerdict::InsufficientSample
    } else {
        ScVerdict::Pass
    };
    Ok(ScReport { examined, non_authentic, empirical_rate, required_n, tolerance, verdict })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SvStatus {
    Pass,
    Fail,
    Inconclusive,
}

impl fmt::Display for SvStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SvStatus::Pass => write!(f, "pass"),
            SvStatus::Fail => write!(f, "fail"),
            SvStatus::Inconclusive => write!(f, "inconclusive"),
        }
    }
}

/// Per-position outcome of the sample-variety test.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SvPosition {
    /// 0-based position of the rule in the design region.
    pub position: usize,
    /// Degenerate code of the rule's allowed set.
    pub allowed: char,
    /// Degenerate-code rendering of the allowed letters actually observed
    /// among exclusive reads, or '-' when none were seen.
    pub observed: char,
    pub exclusive_reads: u64,
    pub status: SvStatus,
}

/// Outcome of the sample-variety test.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SvReport {
    pub positions: Vec<SvPosition>,
    pub overall: SvStatus,
    pub min_evidence: u64,
}

#[derive(Clone)]
struct SvAccum {
    /// Observed allowed-letter mask per rule.
    masks: Vec<u8>,
    /// Exclusive-read count per rule.
    counts: Vec<u64>,
}

impl SvAccum {
    fn new(rules: usize) -> Self {
        SvAccum { masks: vec![0; rules], counts: vec![0; rules] }
    }

    fn merge(mut self, other: SvAccum) -> SvAccum {
        for (m, o) in self.masks.iter_mut().zip(other.masks) {
            *m |= o;
        }
        for (c, o) in self.counts.iter_mut().zip(other.counts) {
            *c += o;
        }
        self
    }
}

/// Runs the sample-variety test: for each rule, collects the pool-exclusive
/// reads (reads satisfying that rule and violating every other rule) and
/// checks that all of the rule's allowed letters occur among them. A
/// position fails only when it has at least `min_evidence` reads per allowed
/// letter and still misses a letter; positions without enough evidence are
/// inconclusive.
pub fn sv_test<S: AsRef<str> + Sync>(
    design: &Design,
    regions: &[S],
    min_evidence: u64,
) -> Result<SvReport> {
    design.ensure_valid()?;
    let rules = design.rules.len();

    let accum = regions
        .par_chunks(CHUNK)
        .map(|chunk| -> Result<SvAccum> {
            let mut acc = SvAccum::new(rules);
            for region in chunk {
                let bytes = region.as_ref().as_bytes();
                if bytes.len() != design.region_len {
                    return Err(Error::LengthMismatch(format!(
                        "region length {} does not match design region length {}",
                        bytes.len(),
                        design.region_len
                    )));
                }
                let mut satisfied = 0usize;
                let mut which = 0usize;
                for (j, rule) in design.rules.iter().enumerate() {
                    if rule.allowed.contains_byte(bytes[rule.position]) {
                        satisfied += 1;
                        if satisfied > 1 {
                            break;
                        }
                        which = j;
                    }
                }
                if satisfied == 1 {
                    let rule = &design.rules[which];
                    let idx = base_index(bytes[rule.position]);
                    acc.counts[which] += 1;
                    acc.masks[which] |= 1 << idx;
                }
            }
            Ok(acc)
        })
        .try_reduce(|| SvAccum::new(rules), |a, b| Ok(a.merge(b)))?;

    let mut positions = Vec::with_capacity(rules);
    for (j, rule) in design.rules.iter().enumerate() {
        let allowed_mask = rule.allowed.mask();
        let observed_mask = accum.masks[j] & allowed_mask;
        let count = accum.counts[j];
        let status = if observed_mask == allowed_mask && count > 0 {
            SvStatus::Pass
        } else if count >= min_evidence * u64::from(rule.allowed.cardinality()) && count > 0 {
            SvStatus::Fail
        } else {
            SvStatus::Inconclusive
        };
        positions.push(SvPosition {
            position: rule.position,
            allowed: iupac_code_of(rule.allowed),
            observed: match observed_mask {
                0 => '-',
                m => iupac_code_of(AllowedSet::from_mask(m).unwrap()),
            },
            exclusive_reads: count,
            status,
        });
    }
    let overall = if positions.iter().any(|p| p.status == SvStatus::Fail) {
        SvStatus::Fail
    } else if !positions.is_empty() && positions.iter().all(|p| p.status == SvStatus::Pass) {
        SvStatus::Pass
    } else {
        SvStatus::Inconclusive
    };
    Ok(SvReport { positions, overall, min_evidence })
}

/// Cross-run duplicate findings against previously registered runs.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossRunFindings {
    /// (product id, run id, shared sequence count) for every prior run that
    /// shares design-region sequences with this one.
    pub shared_with: Vec<(String, String, u64)>,
}

impl CrossRunFindings {
    pub fn any_shared(&self) -> bool {
        self.shared_with.iter().any(|(_, _, n)| *n > 0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AuthVerdict {
    Authentic,
    Forged,
    Inconclusive,
}

impl fmt::Display for AuthVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AuthVerdict::Authentic => write!(f, "authentic"),
            AuthVerdict::Forged => write!(f, "forged"),
            AuthVerdict::Inconclusive => write!(f, "inconclusive"),
        }
    }
}

/// Combined outcome of the full authentication pipeline.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AuthReport {
    pub filter: FilterReport,
    pub duplication: DuplicationProfile,
    pub sc: ScReport,
    pub sv: SvReport,
    pub cross_run: Option<CrossRunFindings>,
    pub verdict: AuthVerdict,
}

/// Options for [`authenticate`].
#[derive(Debug, Clone, PartialEq)]
pub struct AuthOptions {
    /// Unique reads required for a pass; defaults to the hardened sample
    /// size derived from the design and `epsilon`.
    pub required_n: Option<u64>,
    /// Non-authentic fraction tolerated by the SC test.
    pub tolerance: f64,
    /// Per-flank substitution tolerance during region extraction.
    pub max_flank_mismatch: usize,
    /// Evidence factor for SV failures.
    pub min_evidence: u64,
    /// Detection-failure probability used when `required_n` is derived.
    pub epsilon: f64,
}

impl Default for AuthOptions {
    fn default() -> Self {
        AuthOptions {
            required_n: None,
            tolerance: 0.0,
            max_flank_mismatch: 2,
            min_evidence: 1,
            epsilon: DEFAULT_EPSILON,
        }
    }
}

/// An authentication run: the report plus the unique regions it was based
/// on (the material for a run digest).
#[derive(Debug, Clone)]
pub struct AuthRun {
    pub report: AuthReport,
    pub unique_regions: Vec<String>,
}

/// Computes the default required sample size for a design: the hardened
/// value, robust against forgeries with one wrongly-present rule.
pub fn default_required_n(design: &Design, epsilon: f64) -> Result<u64> {
    let (k1, k2, k3) = design.rule_counts();
    let p = missing_rate(k1 as u32, k2 as u32, k3 as u32);
    let n = required_sample_size(p, epsilon)?;
    Ok(adjusted_sample_size(n, design.rules.len() as u32))
}

/// Runs the full pipeline over a raw read stream: flank filtering, exact
/// deduplication, the SC and SV tests, and the combined verdict. Designs
/// without restricted positions are rejected (every read would be
/// non-authentic by vacuity, which is meaningless for a tag).
pub fn authenticate<R: BufRead + 'static>(
    design: &Design,
    reads: R,
    options: &AuthOptions,
) -> Result<AuthRun> {
    design.ensure_valid()?;
    if design.rules.is_empty() {
        return Err(Error::InvalidParams(
            "authentication requires a design with at least one restricted position".into(),
        ));
    }
    let required_n = match options.required_n {
        Some(n) => n,
        None => default_required_n(design, options.epsilon)?,
    };

    let mut filter = FilterReport::default();
    let mut deduper = Deduper::new();
    for record in parse_auto(reads)? {
        let record = record?;
        let outcome = extract_design_region(&record.seq, design, options.max_flank_mismatch);
        filter.tally(&outcome);
        if let RegionOutcome::Region(region) = outcome {
            deduper.push(region);
        }
    }
    let (unique_regions, duplication) = deduper.finish();

    let sc = sc_test(design, &unique_regions, required_n, options.tolerance)?;
    let sv = sv_test(design, &unique_regions, options.min_evidence)?;

    let verdict = combined_verdict(&sc, &sv, None);
    let report = AuthReport { filter, duplication, sc, sv, cross_run: None, verdict };
    Ok(AuthRun { report, unique_regions })
}

/// The verdict rule: forged on any SC/SV failure or cross-run sharing,
/// inconclusive while the sample is too small, authentic otherwise.
pub fn combined_verdict(
    sc: &ScReport,
    sv: &SvReport,
    cross_run: Option<&CrossRunFindings>,
) -> AuthVerdict {
    if sc.verdict == ScVerdict::Fail
        || sv.overall == SvStatus::Fail
        || cross_run.is_some_and(CrossRunFindings::any_shared)
    {
        AuthVerdict::Forged
    } else if sc.verdict == ScVerdict::InsufficientSample {
        AuthVerdict::Inconclusive
    } else {
        AuthVerdict::Authentic
    }
}

/// Attaches cross-run findings to a report and recomputes the verdict.
pub fn apply_cross_run(report: &mut AuthReport, findings: CrossRunFindings) {
    report.verdict = combined_verdict(&report.sc, &report.sv, Some(&findings));
    report.cross_run = Some(findings);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::AllowedSet;
    use crate::design::{generate_design, DesignParams, PositionRule};
    use crate::synth::{synth_cpol, write_library, LibraryFormat, SynthConfig};
    use std::io::Cursor;

    fn small_design() -> Design {
        Design {
            id: "t".into(),
            region_len: 4,
            rules: vec![
                PositionRule::new(1, AllowedSet::from_mask(0b0001).unwrap()).unwrap(),
                PositionRule::new(2, AllowedSet::from_mask(0b0110).unwrap()).unwrap(),
            ],
            flank5: String::new(),
            flank3: String::new(),
            ratios: None,
            seed: 0,
        }
    }

    #[test]
    fn classify_examples() {
        let d = small_design();
        assert_eq!(classify_read(&d, "TCAG").unwrap(), ReadVerdict::NonAuthentic);
        assert_eq!(classify_read(&d, "TACG").unwrap(), ReadVerdict::Authentic);
        assert!(matches!(classify_read(&d, "TAC"), Err(Error::LengthMismatch(_))));
        assert!(matches!(classify_read(&d, "TANG"), Err(Error::InvalidNucleotide('N'))));
    }

    #[test]
    fn classify_exhaustive_against_brute_force() {
        // All 256 length-4 strings; exactly 3 * 2 * 4^2 = 96 are
        // non-authentic for rules 1:{A}, 2:{C,G}.
        let d = small_design();
        let letters = *b"ACGT";
        let mut non_auth = 0;
        for a in letters {
            for b in letters {
                for c in letters {
                    for e in letters {
                        let s = String::from_utf8(vec![a, b, c, e]).unwrap();
                        let brute = (b != b'A') && (c != b'C' && c != b'G');
                        let got = classify_read(&d, &s).unwrap() == ReadVerdict::NonAuthentic;
                        assert_eq!(got, brute, "{s}");
                        non_auth += u32::from(got);
                    }
                }
            }
        }
        assert_eq!(non_auth, 96);
    }

    #[test]
    fn classify_zero_rules_is_vacuously_non_authentic() {
        let mut d = small_design();
        d.rules.clear();
        assert_eq!(classify_read(&d, "ACGT").unwrap(), ReadVerdict::NonAuthentic);
    }

    #[test]
    fn sc_verdict_ordering() {
        let d = small_design();
        // Fail beats insufficient sample: forbidden combinations are a
        // smoking gun even in small samples.
        let bad = vec!["TCAG".to_string()];
        let report = sc_test(&d, &bad, 100, 0.0).unwrap();
        assert_eq!(report.verdict, ScVerdict::Fail);
        assert_eq!(report.non_authentic, 1);

        let good = vec!["TACG".to_string(); 5];
        let report = sc_test(&d, &good, 100, 0.0).unwrap();
        assert_eq!(report.verdict, ScVerdict::InsufficientSample);

        let report = sc_test(&d, &good, 5, 0.0).unwrap();
        assert_eq!(report.verdict, ScVerdict::Pass);

        let empty: Vec<String> = vec![];
        let report = sc_test(&d, &empty, 0, 0.0).unwrap();
        assert_eq!(report.verdict, ScVerdict::InsufficientSample);
    }

    #[test]
    fn sc_tolerance_and_monotonicity() {
        let d = small_design();
        let mut regions = vec!["TCAG".to_string()];
        regions.extend(std::iter::repeat_n("TACG".to_string(), 99));
        let strict = sc_test(&d, &regions, 10, 0.0).unwrap();
        assert_eq!(strict.verdict, ScVerdict::Fail);
        let lenient = sc_test(&d, &regions, 10, 0.02).unwrap();
        assert_eq!(lenient.verdict, ScVerdict::Pass);

        // Adding authentic reads never flips pass to fail at tolerance 0.
        let mut clean = vec!["TACG".to_string(); 10];
        let before = sc_test(&d, &clean, 5, 0.0).unwrap().verdict;
        clean.extend(std::iter::repeat_n("AAAA".to_string(), 1000));
        let after = sc_test(&d, &clean, 5, 0.0).unwrap().verdict;
        assert_eq!(before, ScVerdict::Pass);
        assert_eq!(after, ScVerdict::Pass);
    }

    #[test]
    fn sv_exclusive_reads_and_statuses() {
        let d = small_design();
        // "TAAG": satisfies rule 0 (A at 1), violates rule 1 (A at 2)
        //   -> exclusive for rule 0.
        // "TTCG": violates rule 0, satisfies rule 1 with C -> exclusive for 1.
        // "TACG": satisfies both -> exclusive for neither.
        let regions =
            vec!["TAAG".to_string(), "TTCG".to_string(), "TTGG".to_string(), "TACG".to_string()];
        let report = sv_test(&d, &regions, 1).unwrap();
        assert_eq!(report.positions[0].exclusive_reads, 1);
        assert_eq!(report.positions[0].observed, 'A');
        assert_eq!(report.positions[0].status, SvStatus::Pass);
        assert_eq!(report.positions[1].exclusive_reads, 2);
        assert_eq!(report.positions[1].observed, 'S');
        assert_eq!(report.positions[1].status, SvStatus::Pass);
        assert_eq!(report.overall, SvStatus::Pass);
    }

    #[test]
    fn sv_fail_on_missing_letter_with_evidence() {
        let d = small_design();
        // Rule 1 allows C or G; feed exclusive reads showing only C.
        let regions = vec!["TTCG".to_string(), "TCCG".to_string(), "TGCG".to_string()];
        let report = sv_test(&d, &regions, 1).unwrap();
        assert_eq!(report.positions[1].exclusive_reads, 3);
        assert_eq!(report.positions[1].observed, 'C');
        assert_eq!(report.positions[1].status, SvStatus::Fail);
        assert_eq!(report.overall, SvStatus::Fail);

        // The same evidence below the threshold is inconclusive.
        let report = sv_test(&d, &regions, 2).unwrap();
        assert_eq!(report.positions[1].status, SvStatus::Inconclusive);
        assert_eq!(report.overall, SvStatus::Inconclusive);
    }

    #[test]
    fn sv_empty_input_is_inconclusive() {
        let d = small_design();
        let empty: Vec<String> = vec![];
        let report = sv_test(&d, &empty, 1).unwrap();
        assert!(report.positions.iter().all(|p| p.status == SvStatus::Inconclusive));
        assert_eq!(report.overall, SvStatus::Inconclusive);
    }

    #[test]
    fn sv_never_fails_when_all_letters_present() {
        // Soundness: a position whose exclusive reads contain all allowed
        // letters cannot fail regardless of the evidence threshold.
        let d = small_design();
        let regions = vec!["TTCG".to_string(), "TTGG".to_string()];
        for min_evidence in [1, 2, 10] {
            let report = sv_test(&d, &regions, min_evidence).unwrap();
            assert_ne!(report.positions[1].status, SvStatus::Fail);
        }
    }

    #[test]
    fn exclusive_reads_satisfy_their_rule_and_violate_others() {
        let d = generate_design(
            &DesignParams { region_len: 10, k1: 1, k2: 2, k3: 0, epsilon: 1e-6 },
            77,
            "",
            "",
        )
        .unwrap();
        let reads = synth_cpol(&d, &SynthConfig::new(20_000, 3)).unwrap();
        let regions: Vec<String> = reads.into_iter().map(|r| r.seq).collect();
        // Re-verify the accumulation by direct counting.
        let report = sv_test(&d, &regions, 1).unwrap();
        let mut counts = vec![0u64; d.rules.len()];
        for region in &regions {
            let sat: Vec<usize> = d
                .rules
                .iter()
                .enumerate()
                .filter(|(_, r)| r.allowed.contains_byte(region.as_bytes()[r.position]))
                .map(|(j, _)| j)
                .collect();
            if sat.len() == 1 {
                counts[sat[0]] += 1;
            }
        }
        for (j, pos) in report.positions.iter().enumerate() {
            assert_eq!(pos.exclusive_reads, counts[j]);
        }
    }

    #[test]
    fn authenticate_small_flow() {
        let d = generate_design(
            &DesignParams { region_len: 10, k1: 1, k2: 1, k3: 0, epsilon: 1e-6 },
            5,
            "ACGTACGT",
            "TTGGCCAA",
        )
        .unwrap();
        let reads = synth_cpol(&d, &SynthConfig::new(5_000, 11)).unwrap();
        let mut buf = Vec::new();
        write_library(&mut buf, &reads, &d, true, LibraryFormat::Fastq).unwrap();

        let opts = AuthOptions { required_n: Some(1_000), ..AuthOptions::default() };
        let run = authenticate(&d, Cursor::new(buf), &opts).unwrap();
        assert_eq!(run.report.verdict, AuthVerdict::Authentic);
        assert_eq!(run.report.sc.non_authentic, 0);
        assert_eq!(run.report.filter.kept, 5_000);
        assert_eq!(run.unique_regions.len() as u64, run.report.duplication.unique_count);

        // Too few reads for the required sample: inconclusive.
        let reads = synth_cpol(&d, &SynthConfig::new(100, 12)).unwrap();
        let mut buf = Vec::new();
        write_library(&mut buf, &reads, &d, true, LibraryFormat::Fastq).unwrap();
        let run = authenticate(&d, Cursor::new(buf), &opts).unwrap();
        assert_eq!(run.report.verdict, AuthVerdict::Inconclusive);
    }

    #[test]
    fn authenticate_rejects_rule_free_design() {
        let d = generate_design(
            &DesignParams { region_len: 10, k1: 0, k2: 0, k3: 0, epsilon: 1e-6 },
            5,
            "",
            "",
        )
        .unwrap();
        let res = authenticate(&d, Cursor::new(Vec::new()), &AuthOptions::default());
        assert!(matches!(res, Err(Error::InvalidParams(_))));
    }

    #[test]
    fn cross_run_findings_flip_verdict() {
        let d = small_design();
        let regions = vec!["TACG".to_string(); 10];
        let sc = sc_test(&d, &regions, 5, 0.0).unwrap();
        let sv = sv_test(&d, &regions, 1).unwrap();
        let mut report = AuthReport {
            filter: FilterReport::default(),
            duplication: DuplicationProfile::default(),
            verdict: combined_verdict(&sc, &sv, None),
            sc,
            sv,
            cross_run: None,
        };
        assert_eq!(report.verdict, AuthVerdict::Authentic);
        apply_cross_run(
            &mut report,
            CrossRunFindings {
                shared_with: vec![("p1".into(), "run1".into(), 12)],
            },
        );
        assert_eq!(report.verdict, AuthVerdict::Forged);
    }
}
