//! LP decoding with a few flipped "help" bits.

use serde::{Deserialize, Serialize};

use super::channel::{evaluate, sign_llr, ChannelConfig, TrialReport};
use crate::caps;
use crate::combinatorics::for_each_combination;
use crate::error::Result;
use crate::gf2::BitVector;
use crate::lp::LpDecoder;
use crate::scalar::Rational;
use crate::tanner::TannerGraph;

fn help_patterns(n: usize, b: usize) -> u128 {
    (0..=b.min(n)).fold(0u128, |acc, w| acc.saturating_add(caps::binomial(n, w)))
}

fn search(decoder: &LpDecoder<Rational>, y: &BitVector, b: usize) -> Result<Option<BitVector>> {
    let n = y.len();
    for w in 0..=b.min(n) {
        let mut found = None;
        let mut err = None;
        for_each_combination(n, w, |c| {
            let z = BitVector::from_indices(n, c).expect("in range");
            match decoder.decode(&sign_llr(&y.xor(&z))) {
                Ok(v) if v.is_success() => {
                    found = Some(z);
                    false
                }
                Ok(_) => true,
                Err(e) => {
                    err = Some(e);
                    false
                }
            }
        });
        if let Some(e) = err {
            return Err(e);
        }
        if found.is_some() {
            return Ok(found);
        }
    }
    Ok(None)
}

/// Smallest-weight (then lexicographically first) `z` with `|z| <= b` such
/// that LP decoding succeeds on `(-1)^{y+z}`.
pub fn decode_with_help(g: &TannerGraph, y: &BitVector, b: usize) -> Result<Option<BitVector>> {
    caps::check("help-bit patterns", help_patterns(g.n(), b), caps::HELP_PATTERNS)?;
    search(&LpDecoder::new(g)?, y, b)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HelpReport {
    pub plain: TrialReport,
    pub helped: TrialReport,
    pub help_bits: usize,
}

/// Plain and helped WER on the same error vectors.
pub fn help_experiment(g: &TannerGraph, graph_id: &str, cfg: &ChannelConfig, b: usize) -> Result<HelpReport> {
    caps::check("help-bit patterns", help_patterns(g.n(), b), caps::HELP_PATTERNS)?;
    let decoder = LpDecoder::new(g)?;
    let patterns = cfg.patterns(g.n());
    let plain = evaluate(&patterns, |y| Ok(decoder.decode(&sign_llr(y))?.is_success()))?;
    let helped = evaluate(&patterns, |y| Ok(search(&decoder, y, b)?.is_some()))?;
    let fails = |v: &[bool]| v.iter().filter(|&&s| !s).count() as u64;
    Ok(HelpReport {
        plain: TrialReport::new(graph_id, "base", cfg, fails(&plain)),
        helped: TrialReport::new(graph_id, &format!("help{b}"), cfg, fails(&helped)),
        help_bits: b,
    })
}
