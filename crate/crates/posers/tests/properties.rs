//! Generative property tests for the crate's structural invariants.

use proptest::prelude::*;

use posers::alphabet::{allowed_set_of, iupac_code_of, AllowedSet, Nucleotide, NUCLEOTIDES};
use posers::attack::{assess_prediction, PredictedDesign};
use posers::design::{
    decode_design, encode_design, generate_design, validate_design, Design, DesignParams,
    PositionRule,
};
use posers::ingest::{dedup, extract_design_region, parse_fastq, FilterReport, RegionOutcome};
use posers::record::SequenceRecord;
use posers::synth::{write_library, LibraryFormat};

fn acgt_string(len: std::ops::Range<usize>) -> impl Strategy<Value = String> {
    prop::collection::vec(0usize..4, len)
        .prop_map(|v| v.into_iter().map(|i| NUCLEOTIDES[i].to_char()).collect())
}

fn arb_params() -> impl Strategy<Value = DesignParams> {
    (1usize..=12).prop_flat_map(|region_len| {
        (0..=region_len).prop_flat_map(move |k1| {
            (0..=region_len - k1).prop_flat_map(move |k2| {
                (0..=region_len - k1 - k2).prop_map(move |k3| DesignParams {
                    region_len,
                    k1,
                    k2,
                    k3,
                    epsilon: 1e-6,
                })
            })
        })
    })
}

fn arb_design() -> impl Strategy<Value = Design> {
    (arb_params(), any::<u64>(), acgt_string(0..10), acgt_string(0..10), any::<bool>()).prop_map(
        |(params, seed, flank5, flank3, with_ratios)| {
            let mut design = generate_design(&params, seed, &flank5, &flank3).unwrap();
            if with_ratios && !design.rules.is_empty() {
                design.ratios =
                    Some((1..=design.rules.len()).map(|i| i as f64 * 0.5).collect());
            }
            design
        },
    )
}

proptest! {
    #[test]
    fn iupac_bijection(mask in 1u8..=15) {
        let set = AllowedSet::from_mask(mask).unwrap();
        prop_assert_eq!(allowed_set_of(iupac_code_of(set)).unwrap(), set);
    }

    #[test]
    fn generated_designs_obey_rule_count_law(params in arb_params(), seed in any::<u64>()) {
        let design = generate_design(&params, seed, "", "").unwrap();
        prop_assert_eq!(design.rule_counts(), (params.k1, params.k2, params.k3));
        prop_assert!(validate_design(&design).is_empty());
        // Positions strictly increasing (sorted, distinct, in range).
        for pair in design.rules.windows(2) {
            prop_assert!(pair[0].position < pair[1].position);
        }
        if let Some(last) = design.rules.last() {
            prop_assert!(last.position < design.region_len);
        }
    }

    #[test]
    fn generation_is_deterministic(params in arb_params(), seed in any::<u64>()) {
        let a = generate_design(&params, seed, "AC", "GT").unwrap();
        let b = generate_design(&params, seed, "AC", "GT").unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn design_file_roundtrip_identity(design in arb_design()) {
        let encoded = encode_design(&design).unwrap();
        let decoded = decode_design(&encoded).unwrap();
        prop_assert_eq!(design, decoded);
    }

    #[test]
    fn fastq_writer_parser_roundtrip(
        records in prop::collection::vec(
            ("[A-Za-z0-9_.-]{1,12}", acgt_string(1..40)),
            0..20,
        )
    ) {
        let records: Vec<SequenceRecord> = records
            .into_iter()
            .map(|(id, seq)| SequenceRecord::new(id, seq))
            .collect();
        // A flankless wrapper design: write_library needs one for flanks.
        let design = Design {
            id: "rt".into(),
            region_len: 1,
            rules: vec![],
            flank5: String::new(),
            flank3: String::new(),
            ratios: None,
            seed: 0,
        };
        let mut buf = Vec::new();
        write_library(&mut buf, &records, &design, false, LibraryFormat::Fastq).unwrap();
        let parsed: Vec<SequenceRecord> =
            parse_fastq(std::io::Cursor::new(buf)).collect::<posers::Result<_>>().unwrap();
        prop_assert_eq!(parsed.len(), records.len());
        for (orig, back) in records.iter().zip(&parsed) {
            prop_assert_eq!(&orig.id, &back.id);
            prop_assert_eq!(&orig.seq, &back.seq);
        }
    }

    #[test]
    fn filter_report_conservation_under_fuzz(
        seqs in prop::collection::vec("[ACGTN]{0,30}", 0..40),
        design_seed in any::<u64>(),
    ) {
        let params = DesignParams { region_len: 8, k1: 1, k2: 1, k3: 0, epsilon: 1e-6 };
        let design = generate_design(&params, design_seed, "ACGTAC", "TTGGCC").unwrap();
        let mut report = FilterReport::default();
        let mut kept = 0u64;
        for seq in &seqs {
            let outcome = extract_design_region(seq, &design, 2);
            if matches!(outcome, RegionOutcome::Region(_)) {
                kept += 1;
            }
            report.tally(&outcome);
        }
        prop_assert_eq!(report.total(), seqs.len() as u64);
        prop_assert_eq!(report.kept, kept);
    }

    #[test]
    fn extracted_regions_have_design_length_and_alphabet(
        seqs in prop::collection::vec("[ACGTN]{20,20}", 0..40),
    ) {
        let params = DesignParams { region_len: 8, k1: 1, k2: 1, k3: 0, epsilon: 1e-6 };
        let design = generate_design(&params, 5, "ACGTAC", "TTGGCC").unwrap();
        for seq in &seqs {
            if let RegionOutcome::Region(region) = extract_design_region(seq, &design, 2) {
                prop_assert_eq!(region.len(), design.region_len);
                prop_assert!(region.bytes().all(|b| matches!(b, b'A' | b'C' | b'G' | b'T')));
            }
        }
    }

    #[test]
    fn dedup_conserves_and_is_idempotent(
        regions in prop::collection::vec("[ACGT]{1,6}", 0..60),
    ) {
        let total = regions.len() as u64;
        let (uniques, profile) = dedup(regions);
        prop_assert_eq!(profile.total, total);
        prop_assert_eq!(profile.histogram.values().sum::<u64>(), total);
        prop_assert_eq!(profile.histogram.get(&1).copied().unwrap_or(0), profile.unique_count);

        let (again, profile2) = dedup(uniques.clone());
        prop_assert_eq!(again, uniques);
        prop_assert!(profile2.histogram.len() <= 1);
    }

    #[test]
    fn assessment_partitions_true_positions(
        truth_seed in any::<u64>(),
        pred_seed in any::<u64>(),
        region_len in 4usize..=10,
    ) {
        let k_total = region_len / 2;
        let truth = generate_design(
            &DesignParams {
                region_len,
                k1: k_total / 3,
                k2: k_total / 3,
                k3: k_total - 2 * (k_total / 3),
                epsilon: 1e-6,
            },
            truth_seed,
            "",
            "",
        ).unwrap();
        // An unrelated random design serves as the "prediction".
        let other = generate_design(
            &DesignParams {
                region_len,
                k1: k_total - 2 * (k_total / 3),
                k2: k_total / 3,
                k3: k_total / 3,
            epsilon: 1e-6,
            },
            pred_seed,
            "",
            "",
        ).unwrap();
        let predicted = PredictedDesign { region_len, rules: other.rules.clone() };
        let a = assess_prediction(&truth, &predicted).unwrap();

        // Every true position lands in exactly one of correct/fpn/fhp.
        prop_assert_eq!(
            a.correct.len() + a.fpn.len() + a.fhp.len(),
            truth.rules.len()
        );
        for rule in &truth.rules {
            let buckets = [&a.correct, &a.fpn, &a.fhp];
            let hits: usize = buckets.iter().map(|b| b.contains(&rule.position) as usize).sum();
            prop_assert_eq!(hits, 1);
            prop_assert!(!a.fnp.contains(&rule.position));
        }
        // Falsely-flagged positions are exactly the predicted-only ones.
        for pos in &a.fnp {
            prop_assert!(truth.rules.iter().all(|r| r.position != *pos));
            prop_assert!(predicted.rules.iter().any(|r| r.position == *pos));
        }
    }

    #[test]
    fn position_rules_reject_full_sets(n in 0usize..4) {
        let singleton = AllowedSet::singleton(Nucleotide::from_index(n).unwrap());
        prop_assert!(PositionRule::new(0, singleton).is_ok());
        prop_assert!(PositionRule::new(0, AllowedSet::full()).is_err());
    }
}
