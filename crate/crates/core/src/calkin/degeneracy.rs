//! Monte-Carlo frequency of degenerate row sums in random check matrices.

use rayon::prelude::*;
use serde::Serialize;

use super::krawtchouk::nondegeneracy_bound;
use crate::caps;
use crate::error::{Error, Result};
use crate::rng::split_seed;
use crate::stats::{wilson, Interval, Z95};
use crate::tanner::{is_nondegenerate, sample_check_regular, Nondegeneracy};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DegeneracyEstimate {
    pub n: usize,
    pub m: usize,
    pub d: usize,
    pub s: usize,
    pub k: usize,
    pub trials: u64,
    pub violations: u64,
    pub freq: f64,
    pub ci: Interval,
    pub log2_bound: f64,
}

pub const DEGENERACY_CSV_HEADER: &str = "n,m,d,s,k,trials,violations,freq,ci_lo,ci_hi,log2_bound";

impl DegeneracyEstimate {
    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{},{}",
            self.n, self.m, self.d, self.s, self.k, self.trials, self.violations, self.freq, self.ci.lo, self.ci.hi, self.log2_bound
        )
    }
}

/// Samples `trials` matrices with `m` random weight-`d` rows and counts those
/// having a sum of at least `s` rows with weight at most `k`. Each trial is
/// checked exhaustively over all row subsets.
pub fn empirical_degeneracy(n: usize, m: usize, d: usize, s: usize, k: usize, trials: u64, seed: u64) -> Result<DegeneracyEstimate> {
    caps::check("nondegeneracy row subsets (2^m)", caps::pow2(m), caps::NONDEGENERACY_SUBSETS)?;
    if m >= 64 {
        return Err(Error::domain("exhaustive subset search needs m < 64"));
    }
    if s == 0 || s > m {
        return Err(Error::domain("need 1 <= s <= m"));
    }
    let log2_bound = nondegeneracy_bound(n, m, d, s, k)?;
    let outcomes: Vec<bool> = (0..trials)
        .into_par_iter()
        .map(|t| -> Result<bool> {
            let g = sample_check_regular(n, m, d, split_seed(seed, t))?;
            Ok(matches!(is_nondegenerate(&g, s, k, m, 0), Nondegeneracy::Violated { .. }))
        })
        .collect::<Result<_>>()?;
    let violations = outcomes.iter().filter(|&&v| v).count() as u64;
    Ok(DegeneracyEstimate {
        n,
        m,
        d,
        s,
        k,
        trials,
        violations,
        freq: if trials == 0 { 0.0 } else { violations as f64 / trials as f64 },
        ci: wilson(violations, trials, Z95),
        log2_bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_ones_rows_always_degenerate() {
        let e = empirical_degeneracy(6, 4, 6, 2, 0, 20, 1).unwrap();
        assert_eq!(e.violations, 20);
        assert_eq!(e.freq, 1.0);
    }

    #[test]
    fn deterministic_under_seed() {
        let a = empirical_degeneracy(12, 8, 3, 2, 2, 40, 9).unwrap();
        let b = empirical_degeneracy(12, 8, 3, 2, 2, 40, 9).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.csv_row().split(',').count(), DEGENERACY_CSV_HEADER.split(',').count());
    }
}
