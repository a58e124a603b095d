//! Shared setup for the benchmark suite.

use posers::design::{generate_design, Design, DesignParams, DEFAULT_FLANK_3, DEFAULT_FLANK_5};
use posers::synth::{synth_cpol, synth_random, SynthConfig};

/// The reference-scale design: 40-nt region, ten one-letter and ten
/// two-letter restrictions.
pub fn reference_design() -> Design {
    generate_design(
        &DesignParams { region_len: 40, k1: 10, k2: 10, k3: 0, epsilon: 1e-6 },
        0x1057,
        DEFAULT_FLANK_5,
        DEFAULT_FLANK_3,
    )
    .unwrap()
}

pub fn random_regions(count: usize) -> Vec<String> {
    synth_random(40, count, 1).into_iter().map(|r| r.seq).collect()
}

pub fn cpol_regions(design: &Design, count: usize) -> Vec<String> {
    synth_cpol(design, &SynthConfig::new(count, 2))
        .unwrap()
        .into_iter()
        .map(|r| r.seq)
        .collect()
}
