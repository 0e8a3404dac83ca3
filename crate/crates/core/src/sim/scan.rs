//! Paired threshold scans over a graph and its redundant augmentations.

use serde::{Deserialize, Serialize};

use super::channel::{lp_successes, ChannelConfig, TrialReport};
use crate::error::{Error, Result};
use crate::lp::LpDecoder;
use crate::scalar::Rational;
use crate::tanner::{all_redundant, augment, enumerate_dual_low_weight, TannerGraph};

/// The base graph, its weight-`k` augmentations in increasing `k`, and the
/// all-redundant-checks graph. Each polytope contains the next, so decoding
/// success can only be gained along the list.
pub fn build_variants(g: &TannerGraph, ks: &[usize]) -> Result<Vec<(String, TannerGraph)>> {
    let mut ks = ks.to_vec();
    ks.sort_unstable();
    ks.dedup();
    let mut out = vec![("base".to_string(), g.clone())];
    for k in ks {
        out.push((format!("k{k}"), augment(&enumerate_dual_low_weight(g, k, None)?)?));
    }
    out.push(("full".to_string(), all_redundant(g)?));
    Ok(out)
}

/// Finite-length pseudo-threshold: WER curve on a grid and the crossing of
/// fixed WER levels by linear interpolation between grid points.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThresholdEstimate {
    pub graph_id: String,
    pub variant: String,
    pub grid: Vec<f64>,
    pub wer: Vec<f64>,
    /// Crossing of WER 0.5, if bracketed by the grid.
    pub crossing_half: Option<f64>,
    /// Crossing of WER 0.1, if bracketed by the grid.
    pub crossing_tenth: Option<f64>,
}

/// First `ε` at which the interpolated curve reaches `target`; never
/// extrapolates beyond the grid.
pub fn interpolate_crossing(grid: &[f64], wer: &[f64], target: f64) -> Option<f64> {
    if wer.first().is_some_and(|&w| w >= target) {
        return (wer[0] == target).then_some(grid[0]);
    }
    for i in 1..grid.len() {
        if wer[i] >= target {
            let t = (target - wer[i - 1]) / (wer[i] - wer[i - 1]);
            return Some(grid[i - 1] + t * (grid[i] - grid[i - 1]));
        }
    }
    None
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanResult {
    pub reports: Vec<TrialReport>,
    pub estimates: Vec<ThresholdEstimate>,
    /// Trials where a later variant failed although an earlier one decoded.
    pub dominance_violations: u64,
}

/// WER of every variant at every grid point. All variants see the same
/// error vectors, so their verdicts are compared trial by trial.
pub fn threshold_scan(
    variants: &[(String, TannerGraph)],
    graph_id: &str,
    grid: &[f64],
    trials: u64,
    seed: u64,
) -> Result<ScanResult> {
    if grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::domain("epsilon grid must be strictly increasing"));
    }
    let n = variants.first().map(|(_, g)| g.n()).ok_or_else(|| Error::domain("no graph variants"))?;
    let decoders: Vec<LpDecoder<Rational>> = variants.iter().map(|(_, g)| LpDecoder::new(g)).collect::<Result<_>>()?;
    let mut reports = Vec::new();
    let mut curves = vec![Vec::new(); variants.len()];
    let mut dominance_violations = 0;
    for &eps in grid {
        let cfg = ChannelConfig::new(eps, trials, seed)?;
        let patterns = cfg.patterns(n);
        let verdicts: Vec<Vec<bool>> = decoders.iter().map(|d| lp_successes(d, &patterns)).collect::<Result<_>>()?;
        for t in 0..patterns.len() {
            for v in 1..verdicts.len() {
                if verdicts[v - 1][t] && !verdicts[v][t] {
                    dominance_violations += 1;
                }
            }
        }
        for (v, ok) in verdicts.iter().enumerate() {
            let failures = ok.iter().filter(|&&s| !s).count() as u64;
            let r = TrialReport::new(graph_id, &variants[v].0, &cfg, failures);
            curves[v].push(r.wer);
            reports.push(r);
        }
    }
    let estimates = variants
        .iter()
        .zip(curves)
        .map(|((label, _), wer)| ThresholdEstimate {
            graph_id: graph_id.to_string(),
            variant: label.clone(),
            grid: grid.to_vec(),
            crossing_half: interpolate_crossing(grid, &wer, 0.5),
            crossing_tenth: interpolate_crossing(grid, &wer, 0.1),
            wer,
        })
        .collect();
    Ok(ScanResult { reports, estimates, dominance_violations })
}
