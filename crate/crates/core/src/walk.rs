//! Seeded Monte Carlo simulation of discrete random walks, measuring
//! empirical first return times against the exact prediction `2m/d_i`.
//!
//! Reproducibility is bit-exact and independent of execution order:
//! trial `i` derives its own RNG from the `i`-th output of SplitMix64
//! seeded at the run seed (expanded to a 32-byte ChaCha8 key by four
//! further SplitMix64 outputs), and neighbor choices use rejection
//! sampling on raw 64-bit draws rather than any library distribution.
//! Aggregation happens in integer sums, so parallel trial order cannot
//! perturb the reported mean or standard error.

use std::collections::BTreeMap;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rational::{decimal_string, fraction_pair, Rational, REPORT_SIG_DIGITS};

/// Default per-walk step cap. Return times have finite mean but heavy
/// tails; a truncated walk invalidates the estimate instead of biasing it.
pub const DEFAULT_MAX_STEPS: u64 = 100_000_000;

const SPLITMIX_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

fn splitmix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

// The trial RNG: ChaCha8 keyed from the trial's SplitMix64 stream.
fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let sub = splitmix64(seed.wrapping_add(trial.wrapping_add(1).wrapping_mul(SPLITMIX_GAMMA)));
    let mut key = [0u8; 32];
    for (i, chunk) in key.chunks_exact_mut(8).enumerate() {
        let word = splitmix64(sub.wrapping_add((i as u64 + 1).wrapping_mul(SPLITMIX_GAMMA)));
        chunk.copy_from_slice(&word.to_le_bytes());
    }
    ChaCha8Rng::from_seed(key)
}

// Unbiased draw in [0, bound) by rejection on the top of the range.
pub(crate) fn draw_below(rng: &mut impl RngCore, bound: u64) -> u64 {
    debug_assert!(bound > 0);
    let zone = u64::MAX - u64::MAX % bound;
    loop {
        let r = rng.next_u64();
        if r < zone {
            return r % bound;
        }
    }
}

/// Outcome of a single first-return-time sample.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FrtSample {
    /// Steps until the walker first re-entered its start vertex.
    Returned(u64),
    /// The walk exceeded `max_steps` without returning.
    Truncated,
}

fn check_walk(g: &Graph, start: usize) -> Result<()> {
    if g.n() < 2 {
        return Err(Error::TooSmall { n: g.n(), min: 2 });
    }
    if start >= g.n() {
        return Err(Error::BadStart { start, n: g.n() });
    }
    if !g.is_connected() {
        return Err(Error::NotConnected);
    }
    Ok(())
}

fn walk_once(g: &Graph, start: usize, rng: &mut ChaCha8Rng, max_steps: u64) -> FrtSample {
    let mut position = start;
    let mut steps = 0u64;
    while steps < max_steps {
        let nbrs = g.neighbors(position);
        position = nbrs[draw_below(rng, nbrs.len() as u64) as usize];
        steps += 1;
        if position == start {
            return FrtSample::Returned(steps);
        }
    }
    FrtSample::Truncated
}

/// One seeded first-return-time sample: walk from `start`, stepping to a
/// uniformly random neighbor, until the first return. Deterministic for
/// a fixed seed.
pub fn sample_frt(g: &Graph, start: usize, seed: u64, max_steps: u64) -> Result<FrtSample> {
    check_walk(g, start)?;
    if max_steps == 0 {
        return Ok(FrtSample::Truncated);
    }
    Ok(walk_once(g, start, &mut trial_rng(seed, 0), max_steps))
}

/// Empirical return-time statistics for one start vertex.
#[derive(Clone, Debug, PartialEq)]
pub struct WalkStats {
    pub start: usize,
    /// Completed (non-truncated) samples contributing to the mean.
    pub samples: u64,
    pub mean_frt: f64,
    /// Sample standard deviation divided by sqrt(samples).
    pub std_error: f64,
    /// Kac prediction `2m / d_start`.
    pub predicted: Rational,
    /// Truncated walks; any nonzero count invalidates the estimate.
    pub max_steps_hit: u64,
    pub seed: u64,
}

impl WalkStats {
    /// JSON rendering with the prediction as `[num, den]` plus a decimal
    /// column.
    pub fn to_json(&self) -> serde_json::Value {
        let (num, den) = fraction_pair(&self.predicted).expect("prediction fits in i64");
        serde_json::json!({
            "start": self.start,
            "samples": self.samples,
            "mean_frt": self.mean_frt,
            "std_error": self.std_error,
            "predicted": [num, den],
            "predicted_decimal": decimal_string(&self.predicted, REPORT_SIG_DIGITS),
            "max_steps_hit": self.max_steps_hit,
            "seed": self.seed,
        })
    }
}

/// Runs `trials` independent seeded walks from `start` with the default
/// step cap and aggregates mean and standard error.
pub fn estimate_mfrt(g: &Graph, start: usize, trials: u64, seed: u64) -> Result<WalkStats> {
    estimate_mfrt_with(g, start, trials, seed, DEFAULT_MAX_STEPS)
}

/// [`estimate_mfrt`] with an explicit per-walk step cap.
pub fn estimate_mfrt_with(
    g: &Graph,
    start: usize,
    trials: u64,
    seed: u64,
    max_steps: u64,
) -> Result<WalkStats> {
    if trials == 0 {
        return Err(Error::TooSmall { n: 0, min: 1 });
    }
    check_walk(g, start)?;
    // Integer accumulation keeps the result independent of trial order.
    let (sum, sum_sq, truncated) = (0..trials)
        .into_par_iter()
        .map(|trial| {
            match walk_once(g, start, &mut trial_rng(seed, trial), max_steps) {
                FrtSample::Returned(steps) => (steps as u128, (steps as u128).pow(2), 0u64),
                FrtSample::Truncated => (0, 0, 1),
            }
        })
        .reduce(
            || (0u128, 0u128, 0u64),
            |a, b| (a.0 + b.0, a.1 + b.1, a.2 + b.2),
        );
    let samples = trials - truncated;
    let (mean, std_error) = moments(sum, sum_sq, samples);
    let predicted = Rational::new((2 * g.m()).into(), g.degree(start).into());
    Ok(WalkStats {
        start,
        samples,
        mean_frt: mean,
        std_error,
        predicted,
        max_steps_hit: truncated,
        seed,
    })
}

fn moments(sum: u128, sum_sq: u128, samples: u64) -> (f64, f64) {
    if samples == 0 {
        return (f64::NAN, f64::NAN);
    }
    let n = samples as f64;
    let mean = sum as f64 / n;
    if samples == 1 {
        return (mean, 0.0);
    }
    // Sample variance from exact integer sums: (sum_sq - sum^2/n) / (n-1).
    let variance = (sum_sq as f64 - (sum as f64) * (sum as f64) / n) / (n - 1.0);
    (mean, (variance.max(0.0) / n).sqrt())
}

/// Distribution of first return times over `trials` seeded walks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrtHistogram {
    /// Return time -> frequency; truncated walks are binned separately.
    pub counts: BTreeMap<u64, u64>,
    pub truncated: u64,
    pub trials: u64,
}

impl FrtHistogram {
    pub fn mean(&self) -> f64 {
        let samples: u64 = self.counts.values().sum();
        if samples == 0 {
            return f64::NAN;
        }
        let total: u128 = self
            .counts
            .iter()
            .map(|(&steps, &count)| steps as u128 * count as u128)
            .sum();
        total as f64 / samples as f64
    }
}

/// Histogram of [`sample_frt`] outcomes; uses the identical per-trial
/// sub-seeding as [`estimate_mfrt`], so the means agree on equal seeds.
pub fn frt_histogram(
    g: &Graph,
    start: usize,
    trials: u64,
    seed: u64,
    max_steps: u64,
) -> Result<FrtHistogram> {
    if trials == 0 {
        return Err(Error::TooSmall { n: 0, min: 1 });
    }
    check_walk(g, start)?;
    let (counts, truncated) = (0..trials)
        .into_par_iter()
        .fold(
            || (BTreeMap::new(), 0u64),
            |(mut map, trunc), trial| {
                match walk_once(g, start, &mut trial_rng(seed, trial), max_steps) {
                    FrtSample::Returned(steps) => {
                        *map.entry(steps).or_insert(0u64) += 1;
                        (map, trunc)
                    }
                    FrtSample::Truncated => (map, trunc + 1),
                }
            },
        )
        .reduce(
            || (BTreeMap::new(), 0u64),
            |(mut a, ta), (b, tb)| {
                for (k, v) in b {
                    *a.entry(k).or_insert(0) += v;
                }
                (a, ta + tb)
            },
        );
    Ok(FrtHistogram {
        counts,
        truncated,
        trials,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;
    use crate::trees::{build_path, build_star};

    fn k2() -> Graph {
        Graph::from_edge_list(2, &[(0, 1)]).unwrap()
    }

    fn triangle() -> Graph {
        Graph::from_edge_list(3, &[(0, 1), (1, 2), (0, 2)]).unwrap()
    }

    #[test]
    fn k2_always_returns_in_two_steps() {
        for seed in 0..50 {
            assert_eq!(
                sample_frt(&k2(), 0, seed, 1000).unwrap(),
                FrtSample::Returned(2)
            );
        }
        let stats = estimate_mfrt(&k2(), 0, 100, 7).unwrap();
        assert_eq!(stats.mean_frt, 2.0);
        assert_eq!(stats.std_error, 0.0);
        assert_eq!(stats.predicted, int(2));
        assert_eq!(stats.max_steps_hit, 0);
    }

    #[test]
    fn star_center_returns_are_even() {
        let star = build_star(5).unwrap();
        for seed in 0..100 {
            match sample_frt(&star, 0, seed, 10_000).unwrap() {
                FrtSample::Returned(steps) => {
                    assert!(steps >= 2 && steps % 2 == 0);
                }
                FrtSample::Truncated => panic!("walk should return"),
            }
        }
    }

    #[test]
    fn determinism_bit_for_bit() {
        let p4 = build_path(4).unwrap();
        let a = estimate_mfrt(&p4, 1, 10_000, 42).unwrap();
        let b = estimate_mfrt(&p4, 1, 10_000, 42).unwrap();
        assert_eq!(a, b);
        let c = estimate_mfrt(&p4, 1, 10_000, 43).unwrap();
        assert_ne!(a.mean_frt, c.mean_frt);
    }

    #[test]
    fn triangle_mean_matches_kac_prediction() {
        let stats = estimate_mfrt(&triangle(), 0, 200_000, 1).unwrap();
        assert_eq!(stats.predicted, int(3));
        assert!(stats.max_steps_hit == 0);
        assert!((stats.mean_frt - 3.0).abs() <= 5.0 * stats.std_error);
    }

    #[test]
    fn histogram_consistent_with_estimate() {
        let star = build_star(5).unwrap();
        let trials = 50_000;
        let hist = frt_histogram(&star, 1, trials, 9, DEFAULT_MAX_STEPS).unwrap();
        let est = estimate_mfrt(&star, 1, trials, 9).unwrap();
        assert_eq!(hist.counts.values().sum::<u64>(), trials);
        assert_eq!(hist.truncated, 0);
        assert!((hist.mean() - est.mean_frt).abs() < 1e-12);
        // Bipartite parity: no odd return times.
        assert!(hist.counts.keys().all(|&s| s % 2 == 0));
    }

    #[test]
    fn triangle_frt_two_has_probability_half() {
        // First step anywhere, second step returns with probability 1/2.
        let trials = 200_000u64;
        let hist = frt_histogram(&triangle(), 0, trials, 3, DEFAULT_MAX_STEPS).unwrap();
        let p2 = hist.counts[&2] as f64 / trials as f64;
        assert!((p2 - 0.5).abs() < 0.01, "P(FRT = 2) = {p2}");
    }

    #[test]
    fn truncation_is_reported_not_hidden() {
        let star = build_star(6).unwrap();
        let stats = estimate_mfrt_with(&star, 1, 1000, 5, 1).unwrap();
        // One step can never return to a leaf.
        assert_eq!(stats.max_steps_hit, 1000);
        assert_eq!(stats.samples, 0);
        assert!(stats.mean_frt.is_nan());
    }

    #[test]
    fn rejects_bad_inputs() {
        assert_eq!(
            sample_frt(&k2(), 5, 0, 10),
            Err(Error::BadStart { start: 5, n: 2 })
        );
        let split = Graph::from_edge_list(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(sample_frt(&split, 0, 0, 10), Err(Error::NotConnected));
        let single = Graph::from_edge_list(1, &[]).unwrap();
        assert_eq!(
            sample_frt(&single, 0, 0, 10),
            Err(Error::TooSmall { n: 1, min: 2 })
        );
    }

    #[test]
    fn walk_stats_json_fields() {
        let stats = estimate_mfrt(&k2(), 0, 10, 3).unwrap();
        let v = stats.to_json();
        assert_eq!(v["predicted"], serde_json::json!([2, 1]));
        assert_eq!(v["samples"], 10);
        assert_eq!(v["seed"], 3);
        assert_eq!(v["max_steps_hit"], 0);
    }
}
