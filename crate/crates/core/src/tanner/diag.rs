//! Structural diagnostics: girth, cyclic sums, nondegeneracy and expansion.

use std::collections::VecDeque;

use rand::seq::index::sample;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::TannerGraph;
use crate::caps;
use crate::combinatorics::for_each_combination;
use crate::gf2::BitVector;
use crate::rng;
use crate::scalar::Rational;

/// A length or weight that may be infinite (empty minimization).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Extended {
    Finite(usize),
    Infinite,
}

impl Extended {
    pub fn finite(self) -> Option<usize> {
        match self {
            Extended::Finite(v) => Some(v),
            Extended::Infinite => None,
        }
    }
}

impl std::fmt::Display for Extended {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Extended::Finite(v) => write!(f, "{v}"),
            Extended::Infinite => f.write_str("inf"),
        }
    }
}

/// Length of the shortest cycle; `Infinite` iff the graph is a forest.
pub fn girth(g: &TannerGraph) -> Extended {
    let (n, m) = (g.n(), g.m());
    let total = n + m;
    let neighbors = |v: usize| -> &[usize] {
        if v < n {
            g.var_checks(v)
        } else {
            g.check_vars(v - n)
        }
    };
    let offset = |v: usize, u: usize| if v < n { u + n } else { u };
    let mut best = usize::MAX;
    let mut dist = vec![usize::MAX; total];
    let mut parent = vec![usize::MAX; total];
    let mut queue = VecDeque::new();
    for src in 0..total {
        dist.iter_mut().for_each(|d| *d = usize::MAX);
        dist[src] = 0;
        parent[src] = usize::MAX;
        queue.clear();
        queue.push_back(src);
        while let Some(u) = queue.pop_front() {
            if 2 * dist[u] + 1 >= best {
                break;
            }
            for &raw in neighbors(u) {
                let v = offset(u, raw);
                if dist[v] == usize::MAX {
                    dist[v] = dist[u] + 1;
                    parent[v] = u;
                    queue.push_back(v);
                } else if parent[u] != v {
                    best = best.min(dist[u] + dist[v] + 1);
                }
            }
        }
    }
    if best == usize::MAX {
        Extended::Infinite
    } else {
        Extended::Finite(best)
    }
}

/// Scratch buffers for repeated cyclic-subset tests on one graph.
pub(crate) struct CycleScratch {
    var_deg: Vec<u32>,
    check_deg: Vec<u32>,
    alive_check: Vec<bool>,
    stack: Vec<usize>,
}

impl CycleScratch {
    pub(crate) fn new(g: &TannerGraph) -> Self {
        CycleScratch {
            var_deg: vec![0; g.n()],
            check_deg: vec![0; g.m()],
            alive_check: vec![false; g.m()],
            stack: Vec::new(),
        }
    }

    /// Leaf-strips the subgraph induced on the checks in `subset`; a
    /// nonempty 2-core remains iff it contains a cycle.
    pub(crate) fn is_cyclic(&mut self, g: &TannerGraph, subset: &[usize]) -> bool {
        for &j in subset {
            self.alive_check[j] = true;
            self.check_deg[j] = g.check_vars(j).len() as u32;
            for &i in g.check_vars(j) {
                self.var_deg[i] += 1;
            }
        }
        // Stack entries: checks as j, variables as m + i.
        let m = g.m();
        self.stack.clear();
        for &j in subset {
            if self.check_deg[j] <= 1 {
                self.stack.push(j);
            }
            for &i in g.check_vars(j) {
                if self.var_deg[i] == 1 {
                    self.stack.push(m + i);
                }
            }
        }
        let mut removed_checks = 0;
        while let Some(x) = self.stack.pop() {
            if x < m {
                let j = x;
                if !self.alive_check[j] {
                    continue;
                }
                self.alive_check[j] = false;
                removed_checks += 1;
                for &i in g.check_vars(j) {
                    if self.var_deg[i] > 0 {
                        self.var_deg[i] -= 1;
                        if self.var_deg[i] == 1 {
                            self.stack.push(m + i);
                        }
                    }
                }
            } else {
                let i = x - m;
                if self.var_deg[i] != 1 {
                    continue;
                }
                self.var_deg[i] = 0;
                // Find its one live check and detach.
                if let Some(&j) = g.var_checks(i).iter().find(|&&j| self.alive_check[j]) {
                    self.check_deg[j] -= 1;
                    if self.check_deg[j] <= 1 {
                        self.stack.push(j);
                    }
                }
            }
        }
        let cyclic = removed_checks < subset.len();
        for &j in subset {
            self.alive_check[j] = false;
            for &i in g.check_vars(j) {
                self.var_deg[i] = 0;
            }
        }
        cyclic
    }
}

/// Whether the checks `subset` induce a subgraph containing a cycle.
pub fn is_cyclic_subset(g: &TannerGraph, subset: &[usize]) -> bool {
    CycleScratch::new(g).is_cyclic(g, subset)
}

/// Result of the minimum cyclic-sum search.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CyclicSum {
    /// Exact minimum over all cyclic subsets, with a minimizing subset.
    Exact { delta: Extended, subset: Option<Vec<usize>> },
    /// Only subsets up to `max_size` checks were searched; the true value is
    /// at most `delta`.
    Unknown { delta: Extended, subset: Option<Vec<usize>>, max_size: usize },
}

impl CyclicSum {
    pub fn delta(&self) -> Extended {
        match self {
            CyclicSum::Exact { delta, .. } | CyclicSum::Unknown { delta, .. } => *delta,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, CyclicSum::Exact { .. })
    }
}

/// Minimum weight of the sum of a cyclic subset of checks.
///
/// Exhaustive when `m <= subset_cap`; otherwise searches every subset of at
/// most as many checks as the work cap allows and reports an upper bound.
pub fn delta_min_cyclic_sum(g: &TannerGraph, subset_cap: usize) -> CyclicSum {
    let m = g.m();
    let mut scratch = CycleScratch::new(g);
    let mut best: Option<(usize, Vec<usize>)> = None;
    let consider = |best: &mut Option<(usize, Vec<usize>)>, subset: &[usize], weight: usize, scratch: &mut CycleScratch| {
        if best.as_ref().is_some_and(|(w, _)| weight >= *w) {
            return;
        }
        if subset.len() >= 2 && scratch.is_cyclic(g, subset) {
            *best = Some((weight, subset.to_vec()));
        }
    };
    let exhaustive = m <= subset_cap && caps::pow2(m) <= caps::effective(caps::DELTA_SUBSETS.max(caps::pow2(subset_cap)));
    let max_size = if exhaustive {
        m
    } else {
        let cap = caps::effective(caps::DELTA_SUBSETS);
        let mut total = 0u128;
        let mut s = 0;
        while s < m {
            total = total.saturating_add(caps::binomial(m, s + 1));
            if total > cap {
                break;
            }
            s += 1;
        }
        s
    };
    if exhaustive {
        // Gray-code walk keeps the running sum; the subset list is rebuilt
        // only when the weight could improve.
        let mut acc = BitVector::zeros(g.n());
        let mut members = vec![false; m];
        let mut subset = Vec::with_capacity(m);
        for step in 1u64..(1u64 << m) {
            let bit = step.trailing_zeros() as usize;
            acc.xor_assign(g.check(bit));
            members[bit] = !members[bit];
            let w = acc.weight();
            if best.as_ref().is_some_and(|(bw, _)| w >= *bw) {
                continue;
            }
            subset.clear();
            subset.extend((0..m).filter(|&j| members[j]));
            consider(&mut best, &subset, w, &mut scratch);
        }
    } else {
        for size in 2..=max_size {
            for_each_combination(m, size, |c| {
                let mut acc = BitVector::zeros(g.n());
                for &j in c {
                    acc.xor_assign(g.check(j));
                }
                consider(&mut best, c, acc.weight(), &mut scratch);
                true
            });
        }
    }
    let (delta, subset) = match best {
        Some((w, s)) => (Extended::Finite(w), Some(s)),
        None => (Extended::Infinite, None),
    };
    if exhaustive {
        CyclicSum::Exact { delta, subset }
    } else {
        CyclicSum::Unknown { delta, subset, max_size }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Nondegeneracy {
    Holds,
    /// A set of at least `s` rows whose sum has weight at most `k`.
    Violated { rows: Vec<usize>, weight: usize },
    /// Too many rows for exhaustive search and random search found nothing.
    Unknown { samples: u64 },
}

const RANDOM_SEARCH_SAMPLES: u64 = 200_000;

/// Tests `(s, k)`-nondegeneracy: every sum of at least `s` rows has weight
/// greater than `k`. Exhaustive for `m <= subset_cap`.
pub fn is_nondegenerate(g: &TannerGraph, s: usize, k: usize, subset_cap: usize, seed: u64) -> Nondegeneracy {
    let m = g.m();
    let s = s.max(1);
    if s > m {
        return Nondegeneracy::Holds;
    }
    if m <= subset_cap && m < 64 && caps::pow2(m) <= caps::effective(caps::NONDEGENERACY_SUBSETS.max(caps::pow2(subset_cap))) {
        let mut acc = BitVector::zeros(g.n());
        let mut mask = 0u64;
        for step in 1u64..(1u64 << m) {
            let bit = step.trailing_zeros() as usize;
            acc.xor_assign(g.check(bit));
            mask ^= 1 << bit;
            if mask.count_ones() as usize >= s {
                let w = acc.weight();
                if w <= k {
                    let rows = (0..m).filter(|&j| mask >> j & 1 == 1).collect();
                    return Nondegeneracy::Violated { rows, weight: w };
                }
            }
        }
        return Nondegeneracy::Holds;
    }
    let mut r = rng::stream(seed, 0);
    for _ in 0..RANDOM_SEARCH_SAMPLES {
        let size = r.gen_range(s..=m);
        let mut rows: Vec<usize> = sample(&mut r, m, size).into_vec();
        rows.sort_unstable();
        let mut acc = BitVector::zeros(g.n());
        for &j in &rows {
            acc.xor_assign(g.check(j));
        }
        let w = acc.weight();
        if w <= k {
            return Nondegeneracy::Violated { rows, weight: w };
        }
    }
    Nondegeneracy::Unknown { samples: RANDOM_SEARCH_SAMPLES }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Expansion {
    Certified,
    /// A variable set `S` with `|N(S)| < kappa |S|`.
    Violated { set: Vec<usize>, neighbors: usize },
    /// The exhaustive search would exceed the work cap; a random search of
    /// `samples` sets found no violation.
    Unknown { samples: u64 },
}

/// Checks `|N(S)| >= kappa |S|` for every variable set with `1 <= |S| <= max_set`.
pub fn check_expansion(g: &TannerGraph, max_set: usize, kappa: &Rational, seed: u64) -> Expansion {
    let n = g.n();
    let max_set = max_set.min(n);
    let neigh: Vec<BitVector> = (0..n)
        .map(|i| BitVector::from_indices(g.m(), g.var_checks(i)).expect("valid check indices"))
        .collect();
    let violates = |set: &[usize]| -> Option<usize> {
        let mut acc = BitVector::zeros(g.m());
        for &i in set {
            acc.or_assign(&neigh[i]);
        }
        let count = acc.weight();
        (Rational::from(count) < kappa * Rational::from(set.len())).then_some(count)
    };
    let total: u128 = (1..=max_set).map(|s| caps::binomial(n, s)).fold(0, u128::saturating_add);
    if total <= caps::effective(caps::EXPANSION_SETS) {
        let mut found = None;
        for size in 1..=max_set {
            let complete = for_each_combination(n, size, |c| {
                if let Some(count) = violates(c) {
                    found = Some((c.to_vec(), count));
                    return false;
                }
                true
            });
            if !complete {
                break;
            }
        }
        return match found {
            Some((set, neighbors)) => Expansion::Violated { set, neighbors },
            None => Expansion::Certified,
        };
    }
    let mut r = rng::stream(seed, 1);
    for _ in 0..RANDOM_SEARCH_SAMPLES {
        let size = r.gen_range(1..=max_set);
        let mut set = sample(&mut r, n, size).into_vec();
        set.sort_unstable();
        if let Some(neighbors) = violates(&set) {
            return Expansion::Violated { set, neighbors };
        }
    }
    Expansion::Unknown { samples: RANDOM_SEARCH_SAMPLES }
}
