//! Exact vertex enumeration by the double-description method.
//!
//! The walk starts from the unit cube, whose vertices and tight sets are
//! known, and intersects one inequality at a time. Adjacency between two
//! vertices is decided combinatorially: their common tight set must have at
//! least `n - 1` rows and no third vertex may be tight on all of it.

use std::collections::HashSet;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::polytope::{dot, Polytope};
use crate::caps;
use crate::error::{Error, Result};
use crate::gf2::BitVector;
use crate::scalar::Rational;

/// A vertex of a fundamental polytope.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Pseudocodeword {
    pub coords: Vec<Rational>,
}

impl Pseudocodeword {
    pub fn is_integral(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero() || c.is_one())
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    /// The 0/1 word, if integral.
    pub fn to_word(&self) -> Option<BitVector> {
        self.is_integral().then(|| BitVector::from_bools(&self.coords.iter().map(|c| c.is_one()).collect::<Vec<_>>()))
    }

    pub fn from_word(x: &BitVector) -> Self {
        Pseudocodeword { coords: (0..x.len()).map(|i| Rational::from(x.get(i) as i64)).collect() }
    }

    pub fn total(&self) -> Rational {
        self.coords.iter().cloned().sum()
    }
}

#[derive(Clone)]
struct Tight(Vec<u64>);

impl Tight {
    fn new(rows: usize) -> Self {
        Tight(vec![0; rows.div_ceil(64)])
    }
    fn set(&mut self, k: usize) {
        self.0[k / 64] |= 1 << (k % 64);
    }
    fn and(&self, o: &Tight) -> Tight {
        Tight(self.0.iter().zip(&o.0).map(|(a, b)| a & b).collect())
    }
    fn count(&self) -> u32 {
        self.0.iter().map(|w| w.count_ones()).sum()
    }
    fn subset_of(&self, o: &Tight) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| a & !b == 0)
    }
}

struct Vertex {
    x: Vec<Rational>,
    tight: Tight,
}

/// All vertices of `p`, sorted lexicographically. The polytope must start
/// with the unit-box rows, as built by `Polytope::unit_box`.
pub fn enumerate_vertices(p: &Polytope<Rational>) -> Result<Vec<Pseudocodeword>> {
    let n = p.n;
    caps::check("vertex enumeration dimension", n as u128, caps::VERTEX_DIMENSION)?;
    caps::check("vertex enumeration inequalities", p.len() as u128, caps::VERTEX_INEQUALITIES)?;
    let cube = Polytope::<Rational>::unit_box(n);
    if p.inequalities.len() < 2 * n || p.inequalities[..2 * n] != cube.inequalities[..] {
        return Err(Error::structural("polytope does not start with the unit-box rows"));
    }
    let rows = p.len();
    let mut verts: Vec<Vertex> = (0u64..(1u64 << n))
        .map(|mask| {
            let mut tight = Tight::new(rows);
            let x = (0..n)
                .map(|i| {
                    let bit = mask >> i & 1 == 1;
                    tight.set(2 * i + bit as usize);
                    Rational::from(bit as i64)
                })
                .collect();
            Vertex { x, tight }
        })
        .collect();

    for k in 2 * n..rows {
        let row = &p.inequalities[k];
        let slack: Vec<Rational> = verts.iter().map(|v| &row.rhs - &dot(&row.coeffs, &v.x)).collect();
        let plus: Vec<usize> = (0..verts.len()).filter(|&a| slack[a] > Rational::zero()).collect();
        let minus: Vec<usize> = (0..verts.len()).filter(|&a| slack[a] < Rational::zero()).collect();
        if minus.is_empty() {
            for (v, s) in verts.iter_mut().zip(&slack) {
                if s.is_zero() {
                    v.tight.set(k);
                }
            }
            continue;
        }
        let mut fresh = Vec::new();
        for &a in &plus {
            for &b in &minus {
                let common = verts[a].tight.and(&verts[b].tight);
                if (common.count() as usize) + 1 < n {
                    continue;
                }
                let blocked = verts
                    .iter()
                    .enumerate()
                    .any(|(c, v)| c != a && c != b && common.subset_of(&v.tight));
                if blocked {
                    continue;
                }
                let (sa, sb) = (&slack[a], &slack[b]);
                let denom = sa - sb;
                let x: Vec<Rational> = verts[a]
                    .x
                    .iter()
                    .zip(&verts[b].x)
                    .map(|(xa, xb)| (sa * xb - sb * xa) / &denom)
                    .collect();
                let mut tight = common;
                tight.set(k);
                fresh.push(Vertex { x, tight });
            }
        }
        let mut kept: Vec<Vertex> = Vec::with_capacity(verts.len() + fresh.len());
        for (mut v, s) in verts.into_iter().zip(slack) {
            if s.is_zero() {
                v.tight.set(k);
                kept.push(v);
            } else if s > Rational::zero() {
                kept.push(v);
            }
        }
        kept.extend(fresh);
        verts = kept;
    }
    let mut seen = HashSet::new();
    let mut out: Vec<Pseudocodeword> = verts
        .into_iter()
        .map(|v| Pseudocodeword { coords: v.x })
        .filter(|v| seen.insert(v.clone()))
        .collect();
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lp::polytope::build_fundamental_polytope;
    use crate::tanner::TannerGraph;

    fn words(v: &[Pseudocodeword]) -> Vec<String> {
        v.iter().map(|p| p.to_word().expect("integral").to_string()).collect()
    }

    #[test]
    fn single_parity_check() {
        let g = TannerGraph::from_check_lists(3, &[vec![0, 1, 2]]).unwrap();
        let v = enumerate_vertices(&build_fundamental_polytope(&g).unwrap()).unwrap();
        assert_eq!(words(&v), ["000", "011", "101", "110"]);
    }

    #[test]
    fn degree_two_check() {
        let g = TannerGraph::from_check_lists(2, &[vec![0, 1]]).unwrap();
        let v = enumerate_vertices(&build_fundamental_polytope(&g).unwrap()).unwrap();
        assert_eq!(words(&v), ["00", "11"]);
    }

    #[test]
    fn cycle_code_has_fractional_vertex() {
        // Three degree-3 checks pairwise sharing one variable form a cycle;
        // the polytope is known to have fractional vertices here.
        let g = TannerGraph::from_check_lists(6, &[vec![0, 1, 3], vec![1, 2, 4], vec![0, 2, 5]]).unwrap();
        let p = build_fundamental_polytope(&g).unwrap();
        let v = enumerate_vertices(&p).unwrap();
        assert!(v.iter().all(|x| p.contains(&x.coords)));
        assert!(v.iter().any(|x| !x.is_integral()));
        let integral = v.iter().filter(|x| x.is_integral()).count();
        assert_eq!(integral, 1 << (6 - 3));
    }
}
