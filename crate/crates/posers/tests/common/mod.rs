//! Independent oracles used by the integration suites. Everything here is
//! implemented without touching the code paths it checks.

#![allow(dead_code)]

use std::collections::HashSet;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use posers::design::Design;

// ---------------------------------------------------------------------------
// Binomial interval oracle (log-gamma based, no shared code with the crate)
// ---------------------------------------------------------------------------

const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEF: [f64; 9] = [
    0.999_999_999_999_81,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

pub fn ln_gamma(x: f64) -> f64 {
    if x < 0.5 {
        let pi = std::f64::consts::PI;
        pi.ln() - (pi * x).sin().ln() - ln_gamma(1.0 - x)
    } else {
        let x = x - 1.0;
        let mut acc = LANCZOS_COEF[0];
        let t = x + LANCZOS_G + 0.5;
        for (i, c) in LANCZOS_COEF.iter().enumerate().skip(1) {
            acc += c / (x + i as f64);
        }
        0.5 * (2.0 * std::f64::consts::PI).ln() + (x + 0.5) * t.ln() - t + acc.ln()
    }
}

fn ln_binomial_pmf(n: u64, k: u64, p: f64) -> f64 {
    let n_f = n as f64;
    let k_f = k as f64;
    let ln_choose = ln_gamma(n_f + 1.0) - ln_gamma(k_f + 1.0) - ln_gamma(n_f - k_f + 1.0);
    ln_choose + k_f * p.ln() + (n_f - k_f) * (-p).ln_1p()
}

/// Equal-tailed central interval of Binomial(n, p): the returned `(lo, hi)`
/// satisfies `P(X < lo) <= alpha/2` and `P(X > hi) <= alpha/2`.
pub fn binomial_central_interval(n: u64, p: f64, alpha: f64) -> (u64, u64) {
    let tail = alpha / 2.0;
    let mut cdf = 0.0f64;
    let mut lo = 0u64;
    let mut lo_set = false;
    for k in 0..=n {
        let prev = cdf;
        cdf += ln_binomial_pmf(n, k, p).exp();
        if !lo_set && prev <= tail && cdf > tail {
            lo = k;
            lo_set = true;
        }
        if cdf >= 1.0 - tail {
            return (lo, k);
        }
    }
    (lo, n)
}

// ---------------------------------------------------------------------------
// Exact rational harmonic numbers
// ---------------------------------------------------------------------------

/// Exact harmonic number H(n) as a rational, built over the running
/// lcm(1..=i) so every step costs one small-word multiply and divide.
pub fn harmonic_rational(n: u64) -> BigRational {
    let mut num = BigUint::zero();
    let mut den = BigUint::one();
    for i in 1..=n {
        let rem = (&den % i).to_u64().expect("remainder of a u64 modulus fits u64");
        let factor = i / gcd_u64(rem, i);
        if factor > 1 {
            num *= factor;
            den *= factor;
        }
        num += &den / i;
    }
    BigRational::new(num.into(), den.into())
}

fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

// ---------------------------------------------------------------------------
// Brute-force classification of small designs
// ---------------------------------------------------------------------------

/// All `4^len` strings over A/C/G/T, lexicographically.
pub fn all_strings(len: usize) -> Vec<String> {
    let letters = *b"ACGT";
    let total = 4usize.pow(len as u32);
    let mut out = Vec::with_capacity(total);
    for mut idx in 0..total {
        let mut s = vec![b'A'; len];
        for pos in (0..len).rev() {
            s[pos] = letters[idx & 3];
            idx >>= 2;
        }
        out.push(String::from_utf8(s).unwrap());
    }
    out
}

/// The design's disallowed-everywhere tuples, as projections over its rule
/// positions (sorted by position), built by direct cartesian product.
pub fn forbidden_projections(design: &Design) -> HashSet<String> {
    let mut rules = design.rules.clone();
    rules.sort_by_key(|r| r.position);
    let mut tuples: Vec<String> = vec![String::new()];
    for rule in &rules {
        let excluded = rule.allowed.excluded();
        let mut next = Vec::with_capacity(tuples.len() * excluded.len());
        for prefix in &tuples {
            for letter in &excluded {
                let mut t = prefix.clone();
                t.push(letter.to_char());
                next.push(t);
            }
        }
        tuples = next;
    }
    tuples.into_iter().collect()
}

/// Membership-based reference classifier: non-authentic iff the read's
/// projection over the rule positions is one of the forbidden tuples.
pub fn brute_force_non_authentic(design: &Design, forbidden: &HashSet<String>, region: &str) -> bool {
    let mut rules = design.rules.clone();
    rules.sort_by_key(|r| r.position);
    let projection: String =
        rules.iter().map(|r| region.as_bytes()[r.position] as char).collect();
    forbidden.contains(&projection)
}

#[cfg(test)]
mod self_checks {
    use super::*;

    #[test]
    fn lgamma_matches_factorials() {
        for n in 1..15u64 {
            let exact: f64 = (1..=n).map(|i| (i as f64).ln()).sum();
            assert!((ln_gamma(n as f64 + 1.0) - exact).abs() < 1e-10, "n={n}");
        }
    }

    #[test]
    fn harmonic_rational_small_values() {
        assert_eq!(harmonic_rational(1), BigRational::new(1.into(), 1.into()));
        assert_eq!(harmonic_rational(4), BigRational::new(25.into(), 12.into()));
        assert_eq!(
            harmonic_rational(16),
            BigRational::new(2_436_559.into(), 720_720.into())
        );
    }

    #[test]
    fn binomial_interval_sane() {
        let (lo, hi) = binomial_central_interval(1000, 0.5, 0.001);
        assert!(lo < 500 && hi > 500);
        assert!(lo > 430 && hi < 570);
    }
}
