//! BSC pseudoweight and the top-coordinate strength ratio of pseudocodewords.

use num_traits::Zero;

use super::vertices::Pseudocodeword;
use crate::error::{Error, Result};
use crate::scalar::Rational;
use crate::tanner::Extended;

fn sorted_desc(v: &Pseudocodeword) -> Vec<Rational> {
    let mut c = v.coords.clone();
    c.sort_by(|a, b| b.cmp(a));
    c
}

/// `2a*`, where `a*` is the largest `a` such that the `a` largest
/// coordinates of every nonzero vertex sum to less than half its total.
/// `Infinite` when there is no nonzero vertex.
pub fn bsc_pseudoweight(vertices: &[Pseudocodeword]) -> Extended {
    let mut a_star = usize::MAX;
    for v in vertices.iter().filter(|v| !v.is_zero()) {
        let half = v.total() / Rational::from(2);
        let mut acc = Rational::zero();
        let mut a = 0;
        for c in sorted_desc(v) {
            acc += c;
            if acc >= half {
                break;
            }
            a += 1;
        }
        a_star = a_star.min(a);
    }
    if a_star == usize::MAX {
        Extended::Infinite
    } else {
        Extended::Finite(2 * a_star)
    }
}

/// Largest share of a nonzero vertex's total carried by its `count`
/// largest coordinates; zero when every vertex is zero.
pub fn strength_ratio(vertices: &[Pseudocodeword], count: usize) -> Result<Rational> {
    if count == 0 {
        return Err(Error::domain("coordinate count must be at least 1"));
    }
    let mut best = Rational::zero();
    for v in vertices.iter().filter(|v| !v.is_zero()) {
        let top: Rational = sorted_desc(v).into_iter().take(count).sum();
        let ratio = top / v.total();
        if ratio > best {
            best = ratio;
        }
    }
    Ok(best)
}
