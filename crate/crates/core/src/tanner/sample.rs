//! Random Tanner-graph ensembles.

use rand::seq::index::sample;
use rand::seq::SliceRandom;

use super::TannerGraph;
use crate::error::{Error, Result};
use crate::gf2::BitVector;
use crate::rng;

/// `m` independent rows, each uniform among the weight-`d` words of length
/// `n`. Row `r` is drawn from stream `r` of `seed`.
pub fn sample_check_regular(n: usize, m: usize, d: usize, seed: u64) -> Result<TannerGraph> {
    if d == 0 || d > n {
        return Err(Error::domain(format!("check degree {d} must lie in 1..={n}")));
    }
    let rows = (0..m)
        .map(|r| {
            let mut rng = rng::stream(seed, r as u64);
            let idx = sample(&mut rng, n, d).into_vec();
            BitVector::from_indices(n, &idx)
        })
        .collect::<Result<Vec<_>>>()?;
    TannerGraph::from_rows(n, rows)
}

const MAX_MATCHING_ATTEMPTS: usize = 10_000;

/// Configuration model: every variable gets `d_v` sockets, every check
/// `n * d_v / m`, and sockets are matched by a uniform shuffle. Matchings
/// that put a variable twice on one check are redrawn.
pub fn sample_variable_regular(n: usize, m: usize, d_v: usize, seed: u64) -> Result<TannerGraph> {
    if m == 0 || d_v == 0 || d_v > m || !(n * d_v).is_multiple_of(m) {
        return Err(Error::domain(format!(
            "no simple graph with {n} variables of degree {d_v} and {m} equal-degree checks"
        )));
    }
    let d_c = n * d_v / m;
    if d_c > n {
        return Err(Error::domain(format!("check degree {d_c} exceeds {n} variables")));
    }
    let mut rng = rng::stream(seed, 0);
    let mut sockets: Vec<usize> = (0..n).flat_map(|i| std::iter::repeat_n(i, d_v)).collect();
    'attempt: for _ in 0..MAX_MATCHING_ATTEMPTS {
        sockets.shuffle(&mut rng);
        let mut lists = Vec::with_capacity(m);
        for chunk in sockets.chunks(d_c) {
            let mut list = chunk.to_vec();
            list.sort_unstable();
            if list.windows(2).any(|w| w[0] == w[1]) {
                continue 'attempt;
            }
            lists.push(list);
        }
        return TannerGraph::from_check_lists(n, &lists);
    }
    Err(Error::Numeric(format!("no simple matching found in {MAX_MATCHING_ATTEMPTS} attempts")))
}
