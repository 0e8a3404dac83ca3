//! Monte-Carlo checks trading crossover probability against LP excess and
//! deficiency.
//!
//! Both experiments compare a frequency at `ε` with one at
//! `ε′ = ε + (1 - ε)δ` and test the predicted inequality up to three
//! standard errors of the combined estimate.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::channel::{check_epsilon, evaluate, lp_successes, ChannelConfig};
use crate::error::{Error, Result};
use crate::lp::LpDecoder;
use crate::rng::split_seed;
use crate::scalar::{Rational, Scalar};
use crate::stats::proportion_sigma;
use crate::tanner::TannerGraph;
use crate::witness::{find_dual_witness, shifted_llr};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ShiftReport {
    pub epsilon: f64,
    pub epsilon_prime: f64,
    pub delta: Rational,
    pub trials: u64,
    /// Events counted at `ε`.
    pub events_at_epsilon: u64,
    /// Events counted at `ε′`.
    pub events_at_epsilon_prime: u64,
    pub lhs: f64,
    pub rhs: f64,
    pub slack: f64,
    pub holds: bool,
}

fn prepare(epsilon: f64, delta: &Rational, trials: u64, seed: u64) -> Result<(f64, ChannelConfig, ChannelConfig)> {
    check_epsilon(epsilon)?;
    let d = delta.to_f64();
    if !(d > 0.0 && d < 1.0) {
        return Err(Error::domain("delta must lie strictly between 0 and 1"));
    }
    let eps_prime = epsilon + (1.0 - epsilon) * d;
    check_epsilon(eps_prime)?;
    let here = ChannelConfig::new(epsilon, trials, split_seed(seed, 0))?;
    let there = ChannelConfig::new(eps_prime, trials, split_seed(seed, 1))?;
    Ok((d, here, there))
}

fn has_witness(g: &Arc<TannerGraph>, y: &crate::gf2::BitVector, shift: &Rational) -> Result<bool> {
    Ok(find_dual_witness(g, &shifted_llr(y, shift))?.is_some())
}

/// Frequency of a dual witness for `(-1)^x - δ/2` at `ε` against the plain
/// LP failure rate `q` at `ε′`; predicts `freq >= 1 - 2q/δ`.
pub fn excess_experiment(g: &Arc<TannerGraph>, epsilon: f64, delta: &Rational, trials: u64, seed: u64) -> Result<ShiftReport> {
    let (d, here, there) = prepare(epsilon, delta, trials, seed)?;
    let shift = -(delta / Rational::from(2));
    let witnesses = evaluate(&here.patterns(g.n()), |x| has_witness(g, x, &shift))?;
    let found = witnesses.iter().filter(|&&w| w).count() as u64;
    let decoder = LpDecoder::new(g)?;
    let failures = lp_successes(&decoder, &there.patterns(g.n()))?.iter().filter(|&&s| !s).count() as u64;
    let n = trials as f64;
    let (freq, q) = (found as f64 / n, failures as f64 / n);
    let rhs = 1.0 - 2.0 * q / d;
    let slack = 3.0 * (proportion_sigma(found, trials).powi(2) + (2.0 / d * proportion_sigma(failures, trials)).powi(2)).sqrt();
    Ok(ShiftReport {
        epsilon,
        epsilon_prime: there.epsilon,
        delta: delta.clone(),
        trials,
        events_at_epsilon: found,
        events_at_epsilon_prime: failures,
        lhs: freq,
        rhs,
        slack,
        holds: freq + slack >= rhs,
    })
}

/// Plain LP failure rate at `ε` against `q`, the frequency at `ε′` of no
/// dual witness for `(-1)^y + δ/2`; predicts `fail <= 2q/δ`.
pub fn deficiency_experiment(g: &Arc<TannerGraph>, epsilon: f64, delta: &Rational, trials: u64, seed: u64) -> Result<ShiftReport> {
    let (d, here, there) = prepare(epsilon, delta, trials, seed)?;
    let decoder = LpDecoder::new(g)?;
    let failures = lp_successes(&decoder, &here.patterns(g.n()))?.iter().filter(|&&s| !s).count() as u64;
    let shift = delta / Rational::from(2);
    let witnesses = evaluate(&there.patterns(g.n()), |y| has_witness(g, y, &shift))?;
    let missing = witnesses.iter().filter(|&&w| !w).count() as u64;
    let n = trials as f64;
    let (fail, q) = (failures as f64 / n, missing as f64 / n);
    let rhs = 2.0 * q / d;
    let slack = 3.0 * (proportion_sigma(failures, trials).powi(2) + (2.0 / d * proportion_sigma(missing, trials)).powi(2)).sqrt();
    Ok(ShiftReport {
        epsilon,
        epsilon_prime: there.epsilon,
        delta: delta.clone(),
        trials,
        events_at_epsilon: failures,
        events_at_epsilon_prime: missing,
        lhs: fail,
        rhs,
        slack,
        holds: fail <= rhs + slack,
    })
}
