//! Batch construction-and-verification runs: exhaustively over every labeled
//! tournament on `n` vertices, or over random samples for sizes where
//! exhaustion is out of reach. Each tournament is modeled by the default
//! builder and the result checked against the brute-force oracle.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::construct::{construct_model, ConstructionPlan};
use crate::error::{Error, Result};
use crate::tournament::Tournament;
use crate::verify::verify_model;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Outcome of a batch run.
#[derive(Debug, Clone, Serialize)]
pub struct SweepReport {
    /// Vertex count.
    pub n: usize,
    /// Tournaments attempted.
    pub total: u64,
    /// Tournaments whose model passed oracle verification.
    pub verified: u64,
    /// Edge bitmasks (lower-triangle encoding) of the failures, capped at 32.
    pub failures: Vec<u64>,
}

impl SweepReport {
    pub fn all_passed(&self) -> bool {
        self.verified == self.total && self.failures.is_empty()
    }
}

const MAX_RECORDED_FAILURES: usize = 32;

fn check_one(n: usize, bits: u64) -> bool {
    let t = Tournament::from_bits(n, bits);
    match construct_model(&t, &ConstructionPlan::default()) {
        Ok(p) => verify_model(&p, &t).map(|r| r.matches).unwrap_or(false),
        Err(_) => false,
    }
}

fn summarize(n: usize, results: Vec<(u64, bool)>) -> SweepReport {
    let total = results.len() as u64;
    let verified = results.iter().filter(|&&(_, ok)| ok).count() as u64;
    let failures = results
        .iter()
        .filter(|&&(_, ok)| !ok)
        .take(MAX_RECORDED_FAILURES)
        .map(|&(bits, _)| bits)
        .collect();
    SweepReport {
        n,
        total,
        verified,
        failures,
    }
}

/// Models and verifies every one of the `2^(n(n-1)/2)` labeled tournaments.
pub fn exhaustive_sweep(n: usize) -> Result<SweepReport> {
    if n == 0 || n > 6 {
        return Err(Error::InvalidInput(format!(
            "exhaustive sweep supports 1..=6 vertices, got {n}"
        )));
    }
    let pairs = n * (n - 1) / 2;
    let all: Vec<u64> = (0..1u64 << pairs).collect();
    #[cfg(feature = "parallel")]
    let results: Vec<(u64, bool)> = all.par_iter().map(|&b| (b, check_one(n, b))).collect();
    #[cfg(not(feature = "parallel"))]
    let results: Vec<(u64, bool)> = all.iter().map(|&b| (b, check_one(n, b))).collect();
    Ok(summarize(n, results))
}

/// Models and verifies `count` tournaments drawn uniformly at random.
pub fn random_sweep(n: usize, count: u64, seed: u64) -> Result<SweepReport> {
    if n == 0 || n * (n - 1) / 2 > 64 {
        return Err(Error::InvalidInput(format!(
            "random sweep supports up to 11 vertices, got {n}"
        )));
    }
    let pairs = n * (n - 1) / 2;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let samples: Vec<u64> = (0..count)
        .map(|_| {
            if pairs == 64 {
                rng.gen()
            } else {
                rng.gen_range(0..1u64 << pairs)
            }
        })
        .collect();
    #[cfg(feature = "parallel")]
    let results: Vec<(u64, bool)> = samples.par_iter().map(|&b| (b, check_one(n, b))).collect();
    #[cfg(not(feature = "parallel"))]
    let results: Vec<(u64, bool)> = samples.iter().map(|&b| (b, check_one(n, b))).collect();
    Ok(summarize(n, results))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exhaustive_small() {
        for n in 1..=3usize {
            let rep = exhaustive_sweep(n).unwrap();
            assert_eq!(rep.total, 1 << (n * (n - 1) / 2));
            assert!(rep.all_passed(), "failures at n={n}: {:?}", rep.failures);
        }
        assert!(exhaustive_sweep(0).is_err());
        assert!(exhaustive_sweep(7).is_err());
    }

    #[test]
    fn random_reproducible() {
        let a = random_sweep(5, 20, 42).unwrap();
        let b = random_sweep(5, 20, 42).unwrap();
        assert!(a.all_passed());
        assert_eq!(a.total, b.total);
        assert!(random_sweep(20, 1, 0).is_err());
    }
}
