#![allow(dead_code)]

use lp_lab::rng;
use lp_lab::{BitVector, Rational, TannerGraph};
use rand::seq::index::sample;
use rand::Rng;

/// Random graph with `n` in `lo_n..=hi_n`, up to `max_m` checks of degree
/// 2..=max_d. Seeded per instance.
pub fn random_graph(seed: u64, lo_n: usize, hi_n: usize, max_m: usize, max_d: usize) -> TannerGraph {
    let mut r = rng::stream(seed, 0);
    let n = r.gen_range(lo_n..=hi_n);
    let m = r.gen_range(1..=max_m);
    let lists: Vec<Vec<usize>> = (0..m)
        .map(|_| {
            let d = r.gen_range(2..=max_d.min(n));
            let mut v = sample(&mut r, n, d).into_vec();
            v.sort();
            v
        })
        .collect();
    TannerGraph::from_check_lists(n, &lists).unwrap()
}

pub fn random_signs(seed: u64, n: usize) -> Vec<Rational> {
    let mut r = rng::stream(seed, 1);
    (0..n).map(|_| Rational::from(if r.gen_bool(0.3) { -1 } else { 1 })).collect()
}

pub fn random_word(seed: u64, n: usize, p: f64) -> BitVector {
    let mut r = rng::stream(seed, 2);
    BitVector::from_bools(&(0..n).map(|_| r.gen_bool(p)).collect::<Vec<_>>())
}

pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(p, q)
}

/// Random Tanner forest: each check joins variables from distinct
/// components, so the bipartite graph stays acyclic.
pub fn random_forest(seed: u64, lo_n: usize, hi_n: usize, max_m: usize, max_d: usize) -> TannerGraph {
    let mut r = rng::stream(seed, 3);
    let n = r.gen_range(lo_n..=hi_n);
    let mut comp: Vec<usize> = (0..n).collect();
    let find = |comp: &mut Vec<usize>, mut a: usize| {
        while comp[a] != a {
            comp[a] = comp[comp[a]];
            a = comp[a];
        }
        a
    };
    let mut lists = Vec::new();
    for _ in 0..r.gen_range(1..=max_m) {
        let d = r.gen_range(2..=max_d.min(n));
        let mut order: Vec<usize> = sample(&mut r, n, n).into_vec();
        let mut picked: Vec<usize> = Vec::new();
        let mut roots: Vec<usize> = Vec::new();
        for i in order.drain(..) {
            let root = find(&mut comp, i);
            if !roots.contains(&root) {
                roots.push(root);
                picked.push(i);
                if picked.len() == d {
                    break;
                }
            }
        }
        if picked.len() < 2 {
            break;
        }
        for &root in &roots[1..] {
            comp[root] = roots[0];
        }
        picked.sort();
        lists.push(picked);
    }
    if lists.is_empty() {
        lists.push(vec![0, 1]);
    }
    TannerGraph::from_check_lists(n, &lists).unwrap()
}

/// Codewords by walking all 2^n words.
pub fn codewords_brute(g: &TannerGraph) -> std::collections::BTreeSet<Vec<Rational>> {
    let n = g.n();
    (0u64..1 << n)
        .filter(|&mask| g.checks().iter().all(|c| c.ones_iter().filter(|&i| mask >> i & 1 == 1).count() % 2 == 0))
        .map(|mask| (0..n).map(|i| Rational::from((mask >> i & 1) as i64)).collect())
        .collect()
}

/// `g` plus the sum of every acyclic subset of at least two checks.
pub fn with_acyclic_sums(g: &TannerGraph) -> TannerGraph {
    let m = g.m();
    let mut rows = g.checks().to_vec();
    for mask in 1u32..1 << m {
        if mask.count_ones() < 2 {
            continue;
        }
        let subset: Vec<usize> = (0..m).filter(|&j| mask >> j & 1 == 1).collect();
        if lp_lab::tanner::is_cyclic_subset(g, &subset) {
            continue;
        }
        let mut s = BitVector::zeros(g.n());
        for &j in &subset {
            s.xor_assign(g.check(j));
        }
        if !s.is_zero() && !rows.contains(&s) {
            rows.push(s);
        }
    }
    TannerGraph::from_rows(g.n(), rows).unwrap()
}

/// Vertices as basic feasible solutions: every choice of `n` rows with a
/// unique intersection point that satisfies all rows.
pub fn vertices_brute(p: &lp_lab::ExactPolytope) -> std::collections::BTreeSet<Vec<Rational>> {
    use num_traits::Zero;
    let n = p.n;
    let rows = &p.inequalities;
    let mut out = std::collections::BTreeSet::new();
    lp_lab::combinatorics::for_each_combination(rows.len(), n, |pick| {
        let mut a: Vec<Vec<Rational>> = pick
            .iter()
            .map(|&k| {
                let mut r = rows[k].coeffs.clone();
                r.push(rows[k].rhs.clone());
                r
            })
            .collect();
        for col in 0..n {
            let Some(piv) = (col..n).find(|&r| !a[r][col].is_zero()) else { return true };
            a.swap(col, piv);
            let inv = Rational::from(1) / a[col][col].clone();
            for c in col..=n {
                a[col][c] = &a[col][c] * &inv;
            }
            for r in 0..n {
                if r != col && !a[r][col].is_zero() {
                    let f = a[r][col].clone();
                    for c in col..=n {
                        let t = &f * &a[col][c];
                        a[r][c] -= t;
                    }
                }
            }
        }
        let x: Vec<Rational> = a.iter().map(|r| r[n].clone()).collect();
        if p.contains(&x) {
            out.insert(x);
        }
        true
    });
    out
}
