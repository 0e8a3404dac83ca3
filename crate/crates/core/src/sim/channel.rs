//! BSC sampling, per-pattern verdict evaluation and WER reports.

use std::collections::BTreeMap;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2::BitVector;
use crate::lp::LpDecoder;
use crate::rng;
use crate::scalar::Rational;
use crate::stats::{wilson, Interval, Z95};
use crate::tanner::TannerGraph;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChannelConfig {
    pub epsilon: f64,
    pub trials: u64,
    pub master_seed: u64,
}

impl ChannelConfig {
    pub fn new(epsilon: f64, trials: u64, master_seed: u64) -> Result<Self> {
        check_epsilon(epsilon)?;
        if trials == 0 {
            return Err(Error::domain("need at least one trial"));
        }
        Ok(ChannelConfig { epsilon, trials, master_seed })
    }

    /// Seed of trial `t`.
    pub fn trial_seed(&self, t: u64) -> u64 {
        rng::split_seed(self.master_seed, t)
    }

    /// Error vectors of every trial, in trial order.
    pub fn patterns(&self, n: usize) -> Vec<BitVector> {
        (0..self.trials).map(|t| sample_unchecked(n, self.epsilon, self.trial_seed(t))).collect()
    }
}

pub(crate) fn check_epsilon(epsilon: f64) -> Result<()> {
    if !(0.0..0.5).contains(&epsilon) {
        return Err(Error::domain(format!("crossover probability {epsilon} outside [0, 1/2)")));
    }
    Ok(())
}

fn sample_unchecked(n: usize, epsilon: f64, seed: u64) -> BitVector {
    let mut r = rng::stream(seed, 0);
    BitVector::from_bools(&(0..n).map(|_| r.gen_bool(epsilon)).collect::<Vec<_>>())
}

/// I.i.d. Bernoulli(ε) error vector.
pub fn bsc_sample(n: usize, epsilon: f64, seed: u64) -> Result<BitVector> {
    check_epsilon(epsilon)?;
    Ok(sample_unchecked(n, epsilon, seed))
}

/// `(-1)^y` as exact LLRs.
pub fn sign_llr(y: &BitVector) -> Vec<Rational> {
    y.signs().into_iter().map(Rational::from).collect()
}

/// Evaluates `verdict` once per distinct pattern (in parallel) and returns
/// the results in the order of `patterns`.
pub(crate) fn evaluate<F>(patterns: &[BitVector], verdict: F) -> Result<Vec<bool>>
where
    F: Fn(&BitVector) -> Result<bool> + Sync,
{
    let mut index: BTreeMap<&BitVector, usize> = BTreeMap::new();
    for p in patterns {
        let next = index.len();
        index.entry(p).or_insert(next);
    }
    let mut unique: Vec<(&BitVector, usize)> = index.iter().map(|(p, &k)| (*p, k)).collect();
    unique.sort_by_key(|&(_, k)| k);
    let results: Vec<bool> = unique.par_iter().map(|(p, _)| verdict(p)).collect::<Result<_>>()?;
    Ok(patterns.iter().map(|p| results[index[p]]).collect())
}

/// LP success of `(-1)^y` for each pattern.
pub fn lp_successes(decoder: &LpDecoder<Rational>, patterns: &[BitVector]) -> Result<Vec<bool>> {
    evaluate(patterns, |y| Ok(decoder.decode(&sign_llr(y))?.is_success()))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialReport {
    pub graph_id: String,
    pub variant: String,
    pub epsilon: f64,
    pub trials: u64,
    pub failures: u64,
    pub wer: f64,
    pub ci: Interval,
    pub master_seed: u64,
}

pub const WER_CSV_HEADER: &str = "graph_id,variant,epsilon,trials,failures,wer,ci_lo,ci_hi";

impl TrialReport {
    pub fn new(graph_id: &str, variant: &str, cfg: &ChannelConfig, failures: u64) -> Self {
        TrialReport {
            graph_id: graph_id.to_string(),
            variant: variant.to_string(),
            epsilon: cfg.epsilon,
            trials: cfg.trials,
            failures,
            wer: failures as f64 / cfg.trials as f64,
            ci: wilson(failures, cfg.trials, Z95),
            master_seed: cfg.master_seed,
        }
    }

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{}",
            self.graph_id, self.variant, self.epsilon, self.trials, self.failures, self.wer, self.ci.lo, self.ci.hi
        )
    }
}

/// LP word-error rate on the BSC under the all-zeros codeword.
pub fn wer_estimate(g: &TannerGraph, graph_id: &str, cfg: &ChannelConfig) -> Result<TrialReport> {
    let decoder = LpDecoder::new(g)?;
    let ok = lp_successes(&decoder, &cfg.patterns(g.n()))?;
    let failures = ok.iter().filter(|&&s| !s).count() as u64;
    Ok(TrialReport::new(graph_id, "base", cfg, failures))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_crossover_gives_zero_vector() {
        for seed in 0..10 {
            assert!(bsc_sample(20, 0.0, seed).unwrap().is_zero());
        }
        assert!(bsc_sample(4, 0.5, 0).is_err());
        assert_eq!(bsc_sample(50, 0.2, 3).unwrap(), bsc_sample(50, 0.2, 3).unwrap());
    }

    #[test]
    fn evaluate_memoizes_in_order() {
        let a = BitVector::parse("101").unwrap();
        let b = BitVector::parse("000").unwrap();
        let calls = std::sync::atomic::AtomicUsize::new(0);
        let out = evaluate(&[a.clone(), b.clone(), a.clone()], |p| {
            calls.fetch_add(1, std::sync::atomic::Ordering::SeqCst);
            Ok(p.is_zero())
        })
        .unwrap();
        assert_eq!(out, vec![false, true, false]);
        assert_eq!(calls.into_inner(), 2);
    }

    #[test]
    fn report_csv_shape() {
        let cfg = ChannelConfig::new(0.1, 10, 1).unwrap();
        let r = TrialReport::new("g", "base", &cfg, 3);
        assert_eq!(r.csv_row().split(',').count(), WER_CSV_HEADER.split(',').count());
        assert!(r.ci.contains(r.wer));
    }
}
