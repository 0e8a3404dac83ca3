mod common;

use std::collections::BTreeSet;

use common::{codewords_brute, random_forest, random_graph, random_signs, vertices_brute, with_acyclic_sums};
use lp_lab::gf2::rank_gf2;
use lp_lab::lp::*;
use lp_lab::tanner::{emit_alist, emit_json, girth, parse_alist, parse_json, Extended};
use lp_lab::{Rational, Scalar, TannerGraph};

fn vertex_set(g: &TannerGraph) -> BTreeSet<Vec<Rational>> {
    let p = build_fundamental_polytope::<Rational>(g).unwrap();
    enumerate_vertices(&p).unwrap().into_iter().map(|v| v.coords).collect()
}

#[test]
fn double_description_matches_basic_solutions() {
    for seed in 0..40u64 {
        let g = random_graph(seed, 3, 5, 3, 4);
        let p = build_fundamental_polytope::<Rational>(&g).unwrap();
        let dd: BTreeSet<_> = enumerate_vertices(&p).unwrap().into_iter().map(|v| v.coords).collect();
        assert_eq!(dd, vertices_brute(&p), "seed {seed}");
    }
}

#[test]
fn forests_have_integral_polytopes() {
    for seed in 0..30u64 {
        let g = random_forest(seed, 4, 10, 5, 4);
        assert_eq!(girth(&g), Extended::Infinite);
        assert_eq!(vertex_set(&g), codewords_brute(&g), "seed {seed}");
    }
}

#[test]
fn acyclic_sums_leave_vertices_alone() {
    let mut cyclic = 0;
    for seed in 0..40u64 {
        let g = random_graph(seed, 4, 7, 4, 3);
        let aug = with_acyclic_sums(&g);
        if girth(&g) != Extended::Infinite {
            cyclic += 1;
        }
        assert_eq!(vertex_set(&g), vertex_set(&aug), "seed {seed}");
    }
    assert!(cyclic > 10);
}

#[test]
fn forest_lp_matches_ml_uniqueness() {
    for seed in 0..60u64 {
        let g = random_forest(seed, 4, 9, 5, 4);
        let gamma = random_signs(seed, g.n());
        let lp = lp_decode(&g, &gamma).unwrap().is_success();
        let ml = ml_decode(&g, &gamma).unwrap().is_unique_zero();
        assert_eq!(lp, ml, "seed {seed}");
    }
}

#[test]
fn lp_success_implies_ml_success() {
    for seed in 0..80u64 {
        let g = random_graph(seed, 4, 9, 5, 4);
        let gamma = random_signs(seed, g.n());
        if lp_decode(&g, &gamma).unwrap().is_success() {
            assert!(ml_decode(&g, &gamma).unwrap().is_unique_zero(), "seed {seed}");
        }
    }
}

#[test]
fn float_and_exact_decoders_agree_on_signs() {
    for seed in 0..80u64 {
        let g = random_graph(seed, 4, 10, 6, 4);
        let gamma = random_signs(seed, g.n());
        let gf: Vec<f64> = gamma.iter().map(<Rational as Scalar>::to_f64).collect();
        let exact = lp_decode(&g, &gamma).unwrap();
        let float = lp_decode(&g, &gf).unwrap();
        assert_eq!(exact.is_success(), float.is_success(), "seed {seed}");
        if let LpVerdict::Failure { certificate, .. } = exact {
            assert!(build_fundamental_polytope::<Rational>(&g).unwrap().contains(&certificate));
        }
    }
}

#[test]
fn vertex_costs_bound_the_lp() {
    for seed in 0..25u64 {
        let g = random_graph(seed, 4, 7, 4, 4);
        let gamma = random_signs(seed, g.n());
        let p = build_fundamental_polytope::<Rational>(&g).unwrap();
        let best = vertices_brute(&p)
            .into_iter()
            .map(|v| v.iter().zip(&gamma).map(|(a, b)| a * b).sum::<Rational>())
            .min()
            .unwrap();
        let (cost, _) = p.minimize(&gamma).unwrap();
        assert_eq!(cost, best, "seed {seed}");
    }
}

fn rank_by_masks(g: &TannerGraph) -> usize {
    let mut rows: Vec<u64> = g.checks().iter().map(|c| c.ones_iter().fold(0u64, |a, i| a | 1 << i)).collect();
    let mut rank = 0;
    for bit in 0..g.n() {
        let Some(p) = (rank..rows.len()).find(|&r| rows[r] >> bit & 1 == 1) else { continue };
        rows.swap(rank, p);
        for r in 0..rows.len() {
            if r != rank && rows[r] >> bit & 1 == 1 {
                rows[r] ^= rows[rank];
            }
        }
        rank += 1;
    }
    rank
}

fn girth_by_bfs(g: &TannerGraph) -> Option<usize> {
    let (n, m) = (g.n(), g.m());
    let adj: Vec<Vec<usize>> = (0..n + m)
        .map(|v| if v < n { g.var_checks(v).iter().map(|j| n + j).collect() } else { g.check_vars(v - n).to_vec() })
        .collect();
    let mut best: Option<usize> = None;
    for root in 0..n + m {
        let mut dist = vec![usize::MAX; n + m];
        let mut parent = vec![usize::MAX; n + m];
        dist[root] = 0;
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                if dist[v] == usize::MAX {
                    dist[v] = dist[u] + 1;
                    parent[v] = u;
                    queue.push_back(v);
                } else if parent[u] != v {
                    let len = dist[u] + dist[v] + 1;
                    best = Some(best.map_or(len, |b| b.min(len)));
                }
            }
        }
    }
    best
}

#[test]
fn rank_and_girth_agree_with_oracles() {
    for seed in 0..200u64 {
        let g = random_graph(seed, 3, 12, 8, 5);
        assert_eq!(rank_gf2(g.checks()).unwrap(), rank_by_masks(&g));
        assert_eq!(girth(&g).finite(), girth_by_bfs(&g), "seed {seed}");
    }
}

#[test]
fn formats_round_trip() {
    for seed in 0..20u64 {
        let g = random_graph(seed, 3, 12, 8, 5);
        assert_eq!(parse_alist(&emit_alist(&g)).unwrap(), g);
        assert_eq!(parse_json(&emit_json(&g)).unwrap(), g);
    }
}
