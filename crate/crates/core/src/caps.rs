//! Work caps for the exhaustive enumerations.
//!
//! Each cap bounds the number of items an enumeration would visit. Setting
//! `LP_LAB_WORK_CAP=<count>` replaces every default with that count; results
//! may then be slow.

use crate::error::{Error, Result};

pub const ENV_VAR: &str = "LP_LAB_WORK_CAP";

/// Span enumeration: 2^m with m <= 22.
pub const DUAL_SPAN: u128 = 1 << 22;
/// Cyclic-subset minimization: 2^m with m <= 20.
pub const DELTA_SUBSETS: u128 = 1 << 20;
/// Nondegeneracy subsets: 2^m with m <= 24.
pub const NONDEGENERACY_SUBSETS: u128 = 1 << 24;
/// Expansion: sum of C(n, s) for s <= max_set.
pub const EXPANSION_SETS: u128 = 10_000_000;
/// Hyperflow sink assignments.
pub const SINK_ASSIGNMENTS: u128 = 1_000_000;
/// Help-bit patterns.
pub const HELP_PATTERNS: u128 = 1_000_000;
/// Maximum-likelihood codeword walk: 2^n with n <= 24.
pub const ML_CODEWORDS: u128 = 1 << 24;
/// Odd-subset cuts per check: 2^(d-1) with d <= 14.
pub const CUTS_PER_CHECK: u128 = 1 << 13;
/// Rows of one fundamental polytope (box rows plus all cuts). The simplex
/// tableau is dense, so memory grows with the square of this.
pub const POLYTOPE_ROWS: u128 = 1 << 12;
/// Vertex enumeration: dimension n <= 14 and at most 200 inequalities.
pub const VERTEX_DIMENSION: u128 = 14;
pub const VERTEX_INEQUALITIES: u128 = 200;

fn env_override() -> Option<u128> {
    std::env::var(ENV_VAR).ok().and_then(|v| v.trim().parse().ok())
}

/// Effective cap: the environment override if set, else `default`.
pub fn effective(default: u128) -> u128 {
    env_override().unwrap_or(default)
}

/// Fails with a capacity error naming the cap when `needed` exceeds it.
pub fn check(what: &'static str, needed: u128, default: u128) -> Result<()> {
    let cap = effective(default);
    if needed > cap {
        Err(Error::Capacity { what, needed, cap })
    } else {
        Ok(())
    }
}

/// 2^bits saturating at u128::MAX.
pub fn pow2(bits: usize) -> u128 {
    if bits >= 128 {
        u128::MAX
    } else {
        1u128 << bits
    }
}

/// Binomial coefficient saturating at u128::MAX.
pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = match acc.checked_mul((n - i) as u128) {
            Some(v) => v / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}
