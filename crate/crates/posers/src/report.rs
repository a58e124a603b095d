//! Line-oriented key=value rendering of reports, with a stable key set so
//! scripts and CI can parse output without a structured-data library.
//! Positions render 1-based here; everything internal stays 0-based.

use std::fmt::Write as _;

use crate::attack::{PredictedDesign, PredictionAssessment, RestrictionFinding};
use crate::auth::{AuthReport, ScReport, SvReport};
use crate::ingest::{DuplicationProfile, FilterReport};
use crate::math::DesignStats;

/// Types that render as key=value lines under a key prefix.
pub trait KvReport {
    fn kv_lines(&self, prefix: &str, out: &mut String);

    fn to_kv(&self) -> String {
        let mut out = String::new();
        self.kv_lines("", &mut out);
        out
    }
}

fn key(prefix: &str, name: &str) -> String {
    if prefix.is_empty() {
        name.to_string()
    } else {
        format!("{prefix}.{name}")
    }
}

impl KvReport for DesignStats {
    fn kv_lines(&self, prefix: &str, out: &mut String) {
        let _ = writeln!(out, "{}={:e}", key(prefix, "missing_rate"), self.missing_rate);
        let _ = writeln!(out, "{}={}", key(prefix, "forbidden_tuples"), self.forbidden_tuples);
        let _ = writeln!(out, "{}={}", key(prefix, "required_n"), self.required_n);
        let _ = writeln!(out, "{}={}", key(prefix, "adjusted_n"), self.adjusted_n);
        let _ = writeln!(out, "{}={}", key(prefix, "capacity"), self.capacity);
        let _ = writeln!(out, "{}={:e}", key(prefix, "max_sequences"), self.max_sequences);
    }
}

impl KvReport for FilterReport {
    fn kv_lines(&self, prefix: &str, out: &mut String) {
        let _ = writeln!(out, "{}={}", key(prefix, "total"), self.total());
        let _ = writeln!(out, "{}={}", key(prefix, "kept"), self.kept);
        let _ = writeln!(out, "{}={}", key(prefix, "rejected_wrong_length"), self.rejected_wrong_length);
        let _ = writeln!(
            out,
            "{}={}",
            key(prefix, "rejected_flank_mismatch"),
            self.rejected_flank_mismatch
        );
        let _ = writeln!(
            out,
            "{}={}",
            key(prefix, "rejected_ambiguous_base"),
            self.rejected_ambiguous_base
        );
    }
}

impl KvReport for DuplicationProfile {
    fn kv_lines(&self, prefix: &str, out: &mut String) {
        let _ = writeln!(out, "{}={}", key(prefix, "total"), self.total);
        let _ = writeln!(out, "{}={}", key(prefix, "unique"), self.unique_count);
        for (rank, count) in &self.histogram {
            let _ = writeln!(out, "{}={}", key(prefix, &format!("rank.{rank}")), count);
        }
    }
}

impl KvReport for ScReport {
    fn kv_lines(&self, prefix: &str, out: &mut String) {
        let _ = writeln!(out, "{}={}", key(prefix, "examined"), self.examined);
        let _ = writeln!(out, "{}={}", key(prefix, "non_authentic"), self.non_authentic);
        let _ = writeln!(out, "{}={:e}", key(prefix, "rate"), self.empirical_rate);
        let _ = writeln!(out, "{}={}", key(prefix, "required_n"), self.required_n);
        let _ = writeln!(out, "{}={}", key(prefix, "verdict"), self.verdict);
    }
}

impl KvReport for SvReport {
    fn kv_lines(&self, prefix: &str, out: &mut String) {
        let _ = writeln!(out, "{}={}", key(prefix, "overall"), self.overall);
        for pos in &self.positions {
            let k = key(prefix, &format!("pos.{}", pos.position + 1));
            let _ = writeln!(
                out,
                "{k}.allowed={} {k}.observed={} {k}.exclusive={} {k}.status={}",
                pos.allowed, pos.observed, pos.exclusive_reads, pos.status
            );
        }
    }
}

impl KvReport for AuthReport {
    fn kv_lines(&self, prefix: &str, out: &mut String) {
        self.filter.kv_lines(&key(prefix, "filter"), out);
        self.duplication.kv_lines(&key(prefix, "dup"), out);
        self.sc.kv_lines(&key(prefix, "sc"), out);
        self.sv.kv_lines(&key(prefix, "sv"), out);
        if let Some(cross) = &self.cross_run {
            let _ = writeln!(
                out,
                "{}={}",
                key(prefix, "cross_run.shared_runs"),
                cross.shared_with.len()
            );
            for (product, run, count) in &cross.shared_with {
                let _ = writeln!(
                    out,
                    "{}={count}",
                    key(prefix, &format!("cross_run.shared.{product}.{run}"))
                );
            }
        }
        let _ = writeln!(out, "{}={}", key(prefix, "verdict"), self.verdict);
    }
}

impl KvReport for PredictedDesign {
    fn kv_lines(&self, prefix: &str, out: &mut String) {
        let _ = writeln!(out, "{}={}", key(prefix, "rules"), self.rules.len());
        for rule in &self.rules {
            let _ = writeln!(
                out,
                "{}={}",
                key(prefix, &format!("rule.{}", rule.position + 1)),
                crate::alphabet::iupac_code_of(rule.allowed)
            );
        }
    }
}

impl KvReport for PredictionAssessment {
    fn kv_lines(&self, prefix: &str, out: &mut String) {
        let _ = writeln!(out, "{}={}", key(prefix, "correct"), self.correct.len());
        let _ = writeln!(out, "{}={}", key(prefix, "fnp"), self.fnp.len());
        let _ = writeln!(out, "{}={}", key(prefix, "fpn"), self.fpn.len());
        let _ = writeln!(out, "{}={}", key(prefix, "fhp"), self.fhp.len());
        let mut calls: Vec<(usize, &str)> = Vec::new();
        calls.extend(self.correct.iter().map(|p| (*p, "correct")));
        calls.extend(self.fnp.iter().map(|p| (*p, "FNP")));
        calls.extend(self.fpn.iter().map(|p| (*p, "FPN")));
        calls.extend(self.fhp.iter().map(|p| (*p, "FHP")));
        calls.sort_by_key(|(p, _)| *p);
        for (pos, label) in calls {
            let _ = writeln!(out, "{}={label}", key(prefix, &format!("pos.{}", pos + 1)));
        }
    }
}

impl KvReport for [RestrictionFinding] {
    fn kv_lines(&self, prefix: &str, out: &mut String) {
        let _ = writeln!(out, "{}={}", key(prefix, "findings"), self.len());
        for (i, finding) in self.iter().enumerate() {
            let positions: Vec<String> =
                finding.positions.iter().map(|p| (p + 1).to_string()).collect();
            let _ = writeln!(
                out,
                "{}={}",
                key(prefix, &format!("finding.{i}.positions")),
                positions.join(",")
            );
            let _ = writeln!(
                out,
                "{}={}",
                key(prefix, &format!("finding.{i}.missing")),
                finding.missing_tuples.join(",")
            );
        }
    }
}
