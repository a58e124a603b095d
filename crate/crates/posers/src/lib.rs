//! Toolkit for steganographic DNA tag libraries: secret restricted-position
//! designs, their security numbers, simulated oligo-pool synthesis and
//! forgeries, streaming read ingestion, and the authentication tests that
//! tell genuine libraries from copies and reconstructions.
//!
//! A design hides `k` restricted positions inside an otherwise uniformly
//! random region. Per-position nucleotide restrictions exclude certain
//! letter combinations from every genuine library; authentication hunts for
//! those combinations (they only occur in forgeries) and verifies that the
//! full allowed diversity is present. The [`attack`] module implements the
//! forger's side so a design's resistance can be measured before deployment.
//!
//! ```
//! use posers::design::{generate_design, DesignParams, DEFAULT_FLANK_3, DEFAULT_FLANK_5};
//! use posers::math::design_stats;
//!
//! let params = DesignParams { region_len: 40, k1: 10, k2: 10, k3: 0, epsilon: 1e-6 };
//! let design = generate_design(&params, 42, DEFAULT_FLANK_5, DEFAULT_FLANK_3).unwrap();
//! assert_eq!(design.rules.len(), 20);
//!
//! let stats = design_stats(10, 10, 0, 1e-6).unwrap();
//! assert!(stats.missing_rate < 1e-4);
//! ```

pub mod alphabet;
pub mod attack;
pub mod auth;
pub mod design;
pub mod error;
pub mod fixtures;
pub mod ingest;
pub mod math;
pub mod record;
pub mod report;
pub mod synth;

pub use alphabet::{allowed_set_of, iupac_code_of, AllowedSet, Nucleotide};
pub use design::{
    decode_design, encode_design, generate_design, validate_design, Design, DesignParams,
    PositionRule,
};
pub use error::{Error, Result};
pub use math::{design_stats, DesignStats};
pub use record::SequenceRecord;
pub use report::KvReport;
