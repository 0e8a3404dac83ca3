//! Tanner graphs: the bipartite variable/check structure of a parity-check
//! matrix, with diagnostics, random ensembles, redundant-check augmentation
//! and file I/O.

mod diag;
mod io;
mod redundant;
mod sample;

pub use diag::{
    check_expansion, delta_min_cyclic_sum, girth, is_cyclic_subset, is_nondegenerate, CyclicSum,
    Expansion, Extended, Nondegeneracy,
};
pub use io::{emit_alist, emit_json, parse_alist, parse_json, GraphJson};
pub use redundant::{all_redundant, augment, enumerate_dual_low_weight, RedundantCheckSet};
pub use sample::{sample_check_regular, sample_variable_regular};

use crate::error::{Error, Result};
use crate::gf2::BitVector;

/// Bipartite graph between `n` variables and an ordered list of checks.
///
/// Duplicate checks are allowed. Every check has degree at least one.
#[derive(Clone)]
pub struct TannerGraph {
    n: usize,
    checks: Vec<BitVector>,
    check_vars: Vec<Vec<usize>>,
    var_checks: Vec<Vec<usize>>,
    // Offset of each check's first edge in the check-major edge order.
    edge_offset: Vec<usize>,
    max_check_degree: usize,
    min_check_degree: usize,
}

impl PartialEq for TannerGraph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.checks == other.checks
    }
}

impl Eq for TannerGraph {}

impl std::fmt::Debug for TannerGraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("TannerGraph")
            .field("n", &self.n)
            .field("checks", &self.checks.iter().map(|c| c.to_string()).collect::<Vec<_>>())
            .finish()
    }
}

impl TannerGraph {
    /// Builds a graph from biadjacency rows of length `n`.
    pub fn from_rows(n: usize, checks: Vec<BitVector>) -> Result<Self> {
        for (j, c) in checks.iter().enumerate() {
            if c.len() != n {
                return Err(Error::structural(format!("check {j} has length {}, expected {n}", c.len())));
            }
            if c.is_zero() {
                return Err(Error::structural(format!("check {j} has degree 0")));
            }
        }
        let check_vars: Vec<Vec<usize>> = checks.iter().map(|c| c.support()).collect();
        let mut var_checks = vec![Vec::new(); n];
        for (j, vars) in check_vars.iter().enumerate() {
            for &i in vars {
                var_checks[i].push(j);
            }
        }
        let mut edge_offset = Vec::with_capacity(checks.len() + 1);
        let mut acc = 0;
        for vars in &check_vars {
            edge_offset.push(acc);
            acc += vars.len();
        }
        edge_offset.push(acc);
        let max_check_degree = check_vars.iter().map(Vec::len).max().unwrap_or(0);
        let min_check_degree = check_vars.iter().map(Vec::len).min().unwrap_or(0);
        Ok(TannerGraph { n, checks, check_vars, var_checks, edge_offset, max_check_degree, min_check_degree })
    }

    /// Builds a graph from per-check variable lists (0-based).
    pub fn from_check_lists(n: usize, lists: &[Vec<usize>]) -> Result<Self> {
        let rows = lists
            .iter()
            .map(|l| BitVector::from_indices(n, l))
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(n, rows)
    }

    /// Number of variable nodes.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of check nodes.
    pub fn m(&self) -> usize {
        self.checks.len()
    }

    pub fn checks(&self) -> &[BitVector] {
        &self.checks
    }

    pub fn check(&self, j: usize) -> &BitVector {
        &self.checks[j]
    }

    /// N(j), increasing.
    pub fn check_vars(&self, j: usize) -> &[usize] {
        &self.check_vars[j]
    }

    /// N(i), increasing.
    pub fn var_checks(&self, i: usize) -> &[usize] {
        &self.var_checks[i]
    }

    pub fn max_check_degree(&self) -> usize {
        self.max_check_degree
    }

    pub fn min_check_degree(&self) -> usize {
        self.min_check_degree
    }

    pub fn max_var_degree(&self) -> usize {
        self.var_checks.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn num_edges(&self) -> usize {
        *self.edge_offset.last().unwrap_or(&0)
    }

    /// Edges `(i, j)` in check-major order; position `e` of this iterator is
    /// the edge index used by weightings.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.check_vars.iter().enumerate().flat_map(|(j, vars)| vars.iter().map(move |&i| (i, j)))
    }

    /// Index of edge `(i, j)`, if it exists.
    pub fn edge_index(&self, i: usize, j: usize) -> Option<usize> {
        let vars = self.check_vars.get(j)?;
        vars.binary_search(&i).ok().map(|p| self.edge_offset[j] + p)
    }

    /// Edge indices of check `j`, aligned with `check_vars(j)`.
    pub fn check_edges(&self, j: usize) -> std::ops::Range<usize> {
        self.edge_offset[j]..self.edge_offset[j + 1]
    }

    /// Index of the first check equal to `word`.
    pub fn find_check(&self, word: &BitVector) -> Option<usize> {
        self.checks.iter().position(|c| c == word)
    }

    /// Variables within graph distance 2t of `set` (t check hops).
    pub fn var_neighborhood(&self, set: &[usize], t: usize) -> Vec<usize> {
        let mut seen = vec![false; self.n];
        let mut frontier: Vec<usize> = Vec::new();
        for &i in set {
            if !seen[i] {
                seen[i] = true;
                frontier.push(i);
            }
        }
        let mut check_seen = vec![false; self.m()];
        for _ in 0..t {
            let mut next = Vec::new();
            for &i in &frontier {
                for &j in &self.var_checks[i] {
                    if check_seen[j] {
                        continue;
                    }
                    check_seen[j] = true;
                    for &v in &self.check_vars[j] {
                        if !seen[v] {
                            seen[v] = true;
                            next.push(v);
                        }
                    }
                }
            }
            frontier = next;
        }
        (0..self.n).filter(|&i| seen[i]).collect()
    }

    /// Checks adjacent to any variable of `set`, increasing.
    pub fn check_neighborhood(&self, set: &[usize]) -> Vec<usize> {
        let mut hit = vec![false; self.m()];
        for &i in set {
            for &j in &self.var_checks[i] {
                hit[j] = true;
            }
        }
        (0..self.m()).filter(|&j| hit[j]).collect()
    }

    /// Graph with the checks selected by `keep`, in order.
    pub fn subgraph_checks(&self, keep: impl IntoIterator<Item = usize>) -> Result<Self> {
        Self::from_rows(self.n, keep.into_iter().map(|j| self.checks[j].clone()).collect())
    }

    /// True iff `x` satisfies every check.
    pub fn is_codeword(&self, x: &BitVector) -> bool {
        self.checks.iter().all(|c| !c.dot(x))
    }
}
