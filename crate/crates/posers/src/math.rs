//! Closed-form security quantities of a design: the missing rate, required
//! and hardened sample sizes, expected per-position letter proportions,
//! product capacity, and the coupon-collector production bound.
//!
//! All sample-size outputs round up (more reads than the real-valued bound)
//! and the capacity rounds down (fewer products) so every rounding errs on
//! the conservative side.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default detection-failure probability used when a caller does not supply
/// one.
pub const DEFAULT_EPSILON: f64 = 1e-6;

/// Largest harmonic-number argument summed term by term; larger arguments use
/// the asymptotic expansion (relative error of the expansion is below 1e-12
/// well before this point).
pub const HARMONIC_EXACT_LIMIT: u64 = 10_000_000;

const EULER_MASCHERONI: f64 = 0.577_215_664_901_532_9;

// Largest k1+k2+k3 for which 3^k1 * 2^k2 and 4^k both fit u128.
const EXACT_RATE_LIMIT: u32 = 63;

/// Probability that a uniformly random region is non-authentic, i.e. carries
/// a disallowed letter at every restricted position:
/// `(3/4)^k1 * (1/2)^k2 * (1/4)^k3`.
///
/// Computed from exact integer counts while they fit, in log space beyond.
pub fn missing_rate(k1: u32, k2: u32, k3: u32) -> f64 {
    let k = k1 + k2 + k3;
    if k == 0 {
        return 1.0;
    }
    if k <= EXACT_RATE_LIMIT {
        let num = 3u128.pow(k1) * 2u128.pow(k2);
        let den = 1u128 << (2 * k);
        num as f64 / den as f64
    } else {
        let ln_p = f64::from(k1) * (3f64 / 4.0).ln()
            + f64::from(k2) * 0.5f64.ln()
            + f64::from(k3) * 0.25f64.ln();
        ln_p.exp()
    }
}

/// Number of disallowed-everywhere tuples over the restricted positions:
/// `3^k1 * 2^k2` (each three-letter rule excludes exactly one letter, so k3
/// contributes a factor of one).
pub fn forbidden_tuple_count(k1: u32, k2: u32, k3: u32) -> Result<u128> {
    let _ = k3;
    let pow3 = 3u128
        .checked_pow(k1)
        .ok_or_else(|| Error::Overflow(format!("3^{k1} exceeds 128 bits")))?;
    pow3.checked_mul(
        2u128
            .checked_pow(k2)
            .ok_or_else(|| Error::Overflow(format!("2^{k2} exceeds 128 bits")))?,
    )
    .ok_or_else(|| Error::Overflow(format!("3^{k1} * 2^{k2} exceeds 128 bits")))
}

/// Number of reads that must be examined so that a fully random library
/// escapes detection with probability at most `epsilon`:
/// `ceil(ln(epsilon) / ln(1 - p))`.
pub fn required_sample_size(p: f64, epsilon: f64) -> Result<u64> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::Domain(format!("missing rate must lie strictly in (0, 1), got {p}")));
    }
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::Domain(format!("epsilon must lie strictly in (0, 1), got {epsilon}")));
    }
    let n = (epsilon.ln() / (-p).ln_1p()).ceil();
    if !n.is_finite() || n > u64::MAX as f64 {
        return Err(Error::Overflow(format!("required sample size {n:e} exceeds u64")));
    }
    Ok((n as u64).max(1))
}

/// Sample size hardened against a single wrongly-present rule in a forged
/// library: `ceil(n * 3k / 2)`. Under one such error the forged library's
/// non-authentic rate can drop as low as `2p / 3k`, hence the factor.
pub fn adjusted_sample_size(n: u64, k: u32) -> u64 {
    let m = n as u128 * 3 * k as u128;
    (m.div_ceil(2)) as u64
}

/// Expected proportion of an allowed and of a disallowed letter at a
/// restricted position with `i` allowed letters, in a library mixing `k`
/// single-position pools equally:
/// allowed `(1 - 1/k)/4 + 1/(i*k)`, disallowed `(1 - 1/k)/4`.
pub fn expected_proportions(i: u32, k: u32) -> Result<(f64, f64)> {
    if !(1..=3).contains(&i) {
        return Err(Error::Domain(format!("allowed-letter count must be 1, 2 or 3, got {i}")));
    }
    if k == 0 {
        return Err(Error::Domain("rule count must be at least 1".into()));
    }
    let disallowed = (1.0 - 1.0 / f64::from(k)) / 4.0;
    let allowed = disallowed + 1.0 / (f64::from(i) * f64::from(k));
    Ok((allowed, disallowed))
}

/// How far an allowed letter's expected proportion sits above the 25% mean:
/// `(4 - i) / (4 * i * k)`.
pub fn proportion_deviation(i: u32, k: u32) -> f64 {
    f64::from(4 - i) / (4.0 * f64::from(i) * f64::from(k))
}

/// Number of products one design can tag before the sequences applied per
/// product would let an all-knowing observer map out the missing tuples:
/// `floor((1 - p) * 4^k / n)`.
pub fn product_capacity(p: f64, k: u32, n: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::Domain("sample size must be at least 1".into()));
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Domain(format!("missing rate must lie in [0, 1], got {p}")));
    }
    let capacity = ((1.0 - p) * pow4(k) / n as f64).floor();
    if capacity > u64::MAX as f64 {
        return Err(Error::Overflow(format!("capacity {capacity:e} exceeds u64")));
    }
    Ok(capacity as u64)
}

/// Expected number of sequences that can be produced before all but a
/// `p` fraction of the `4^k` restricted-position combinations have appeared
/// (coupon-collector bound): `4^k * (harm(4^k) - harm(round(p * 4^k)))`.
pub fn max_total_sequences(p: f64, k: u32) -> Result<f64> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::Domain(format!("missing rate must lie strictly in (0, 1), got {p}")));
    }
    if k == 0 {
        return Err(Error::Domain("rule count must be at least 1".into()));
    }
    let total = pow4(k);
    let missing = (p * total).round();
    if missing < 1.0 {
        return Err(Error::Domain(format!(
            "p * 4^k rounds to {missing}; the bound needs at least one missing combination"
        )));
    }
    // ln(4^k) computed from k directly so large k loses no precision.
    let h_total = harmonic_with_ln(total, 2.0 * f64::from(k) * std::f64::consts::LN_2);
    let h_missing = harmonic_with_ln(missing, missing.ln());
    Ok(total * (h_total - h_missing))
}

fn pow4(k: u32) -> f64 {
    2f64.powi(2 * k as i32)
}

fn harmonic_with_ln(x: f64, ln_x: f64) -> f64 {
    if x <= HARMONIC_EXACT_LIMIT as f64 {
        harmonic_exact(x.round() as u64)
    } else {
        harmonic_asymptotic_from_ln(x, ln_x)
    }
}

/// The harmonic number `H(n) = sum_{i=1..n} 1/i`, switching from the exact
/// sum to the asymptotic expansion at [`HARMONIC_EXACT_LIMIT`].
pub fn harmonic(n: u64) -> f64 {
    if n <= HARMONIC_EXACT_LIMIT {
        harmonic_exact(n)
    } else {
        harmonic_asymptotic(n as f64)
    }
}

/// Exact term-by-term harmonic sum with compensated (Kahan) accumulation.
pub fn harmonic_exact(n: u64) -> f64 {
    let mut sum = 0.0f64;
    let mut carry = 0.0f64;
    for i in 1..=n {
        let y = 1.0 / i as f64 - carry;
        let t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
    sum
}

/// Asymptotic expansion `ln x + gamma + 1/(2x) - 1/(12x^2)`; relative error
/// below 1e-12 for x >= ~2000 and far below at the crossover.
pub fn harmonic_asymptotic(x: f64) -> f64 {
    harmonic_asymptotic_from_ln(x, x.ln())
}

fn harmonic_asymptotic_from_ln(x: f64, ln_x: f64) -> f64 {
    ln_x + EULER_MASCHERONI + 1.0 / (2.0 * x) - 1.0 / (12.0 * x * x)
}

/// Every closed-form quantity for one parameter set.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DesignStats {
    /// Probability that a uniformly random region is non-authentic.
    pub missing_rate: f64,
    /// Exact count of disallowed-everywhere tuples.
    pub forbidden_tuples: u128,
    /// Reads to examine against a fully random forgery.
    pub required_n: u64,
    /// Reads to examine against a forgery with one wrongly-present rule.
    pub adjusted_n: u64,
    /// Products one design can tag.
    pub capacity: u64,
    /// Coupon-collector bound on total producible sequences.
    pub max_sequences: f64,
}

/// Computes all stats for rule counts `(k1, k2, k3)` and a detection-failure
/// probability. Requires at least one rule.
pub fn design_stats(k1: u32, k2: u32, k3: u32, epsilon: f64) -> Result<DesignStats> {
    let k = k1 + k2 + k3;
    if k == 0 {
        return Err(Error::Domain(
            "stats are undefined for a design without restricted positions".into(),
        ));
    }
    let p = missing_rate(k1, k2, k3);
    let required_n = required_sample_size(p, epsilon)?;
    Ok(DesignStats {
        missing_rate: p,
        forbidden_tuples: forbidden_tuple_count(k1, k2, k3)?,
        required_n,
        adjusted_n: adjusted_sample_size(required_n, k),
        capacity: product_capacity(p, k, required_n)?,
        max_sequences: max_total_sequences(p, k)?,
    })
}
