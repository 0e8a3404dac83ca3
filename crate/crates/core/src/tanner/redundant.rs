//! Low-weight dual codewords and the redundant-check graphs built from them.

use std::collections::BTreeSet;

use serde::Serialize;

use super::TannerGraph;
use crate::caps;
use crate::error::{Error, Result};
use crate::gf2::{for_each_span_element, row_basis, BitVector};

/// Every nonzero dual word of weight at most `k`, sorted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RedundantCheckSet {
    #[serde(skip)]
    pub base: TannerGraph,
    pub k: usize,
    pub dual_words: Vec<BitVector>,
}

/// Enumerates the row span of `g` and keeps the words of weight in `1..=k`.
///
/// The span is walked over a reduced basis. The default cap allows 22
/// checks; `budget` replaces that count.
pub fn enumerate_dual_low_weight(g: &TannerGraph, k: usize, budget: Option<usize>) -> Result<RedundantCheckSet> {
    if k == 0 {
        return Err(Error::domain("weight bound k must be at least 1"));
    }
    let default = budget.map(caps::pow2).unwrap_or(caps::DUAL_SPAN);
    caps::check("dual span enumeration (2^m)", caps::pow2(g.m()), default)?;
    let basis = row_basis(g.checks())?;
    let mut words = BTreeSet::new();
    for_each_span_element(&basis, g.n(), |v| {
        if v.weight() <= k {
            words.insert(v.clone());
        }
    });
    Ok(RedundantCheckSet { base: g.clone(), k, dual_words: words.into_iter().collect() })
}

/// The graph with the base checks (in order) followed by every listed dual
/// word that is not already a base check.
pub fn augment(set: &RedundantCheckSet) -> Result<TannerGraph> {
    let base = &set.base;
    let existing: BTreeSet<&BitVector> = base.checks().iter().collect();
    let mut rows = base.checks().to_vec();
    rows.extend(set.dual_words.iter().filter(|w| !existing.contains(w)).cloned());
    TannerGraph::from_rows(base.n(), rows)
}

/// The all-redundant-checks graph: base checks plus every nonzero dual word.
pub fn all_redundant(g: &TannerGraph) -> Result<TannerGraph> {
    augment(&enumerate_dual_low_weight(g, g.n().max(1), None)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn words(set: &RedundantCheckSet) -> Vec<String> {
        set.dual_words.iter().map(|w| w.to_string()).collect()
    }

    fn from_strs(rows: &[&str]) -> TannerGraph {
        let rows: Vec<BitVector> = rows.iter().map(|r| BitVector::parse(r).unwrap()).collect();
        TannerGraph::from_rows(rows[0].len(), rows).unwrap()
    }

    #[test]
    fn disjoint_triples() {
        let g = from_strs(&["111000", "000111"]);
        let set = enumerate_dual_low_weight(&g, 3, None).unwrap();
        assert_eq!(words(&set), ["000111", "111000"]);
    }

    #[test]
    fn chain_of_pairs() {
        let g = from_strs(&["1100", "0110", "0011"]);
        let set = enumerate_dual_low_weight(&g, 2, None).unwrap();
        // The span is the even-weight code of length 4; all six of its
        // weight-2 words qualify, not only the rows and their total sum.
        assert_eq!(words(&set), ["0011", "0101", "0110", "1001", "1010", "1100"]);
        let aug = augment(&set).unwrap();
        assert_eq!(aug.m(), 6);
        assert_eq!(aug.check(3).to_string(), "0101");
    }

    #[test]
    fn full_span_without_filter() {
        let g = from_strs(&["1100", "0110", "0011", "1001"]);
        let set = enumerate_dual_low_weight(&g, 4, None).unwrap();
        assert_eq!(set.dual_words.len(), 7);
        assert_eq!(all_redundant(&g).unwrap().m(), 7);
    }

    #[test]
    fn budget_is_enforced() {
        let g = from_strs(&["1100", "0110", "0011"]);
        if std::env::var(caps::ENV_VAR).is_err() {
            assert!(matches!(enumerate_dual_low_weight(&g, 2, Some(2)), Err(Error::Capacity { .. })));
        }
        assert!(enumerate_dual_low_weight(&g, 0, None).is_err());
    }
}
