//! One PASS/FAIL line per acceptance criterion. Runs without the libtest
//! harness so the lines always reach stdout; exits non-zero on any FAIL.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;
use std::time::{Duration, Instant};

use common::{codewords_brute, random_forest, random_graph, random_signs, with_acyclic_sums};
use lp_lab::calkin::{beta_d, eigenvalues, nondegeneracy_bound, verify_decomposition};
use lp_lab::lp::{build_fundamental_polytope, enumerate_vertices, lp_decode, LpDecoder};
use lp_lab::sim::{build_variants, deficiency_experiment, excess_experiment, threshold_scan};
use lp_lab::tanner::{all_redundant, girth, sample_variable_regular, Extended};
use lp_lab::witness::*;
use lp_lab::{rng, BitVector, Rational, TannerGraph};
use rand::seq::index::sample;

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn c1_thresholds() -> Outcome {
    let mut parts = Vec::new();
    for (d, want) in [(3u32, 0.8895), (4, 0.967), (5, 0.989)] {
        let t = Instant::now();
        let (_, beta) = beta_d(d, 1e-12f64).map_err(|e| e.to_string())?;
        let took = t.elapsed();
        ensure((beta - want).abs() <= 1e-3, || format!("beta_{d} = {beta:.6}, expected {want} +- 0.001"))?;
        ensure(took < Duration::from_secs(1), || format!("beta_{d} took {took:?}"))?;
        parts.push(format!("beta_{d}={beta:.4}"));
    }
    Ok(parts.join(" "))
}

fn c2_eigen() -> Outcome {
    let t = Instant::now();
    let mut worst = 0.0f64;
    let mut cases = 0;
    for d in [3usize, 4, 5] {
        for n in d..=12 {
            let r = verify_decomposition(n, d).map_err(|e| e.to_string())?;
            ensure(r.reconstruction < 1e-9 && r.inverse < 1e-9, || format!("n {n} d {d}: {r:?}"))?;
            worst = worst.max(r.reconstruction).max(r.inverse);
            let lam = eigenvalues(n, d).map_err(|e| e.to_string())?;
            let sign = Rational::from(if d % 2 == 0 { 1 } else { -1 });
            for i in 0..=n {
                ensure(lam[i] == &sign * &lam[n - i], || format!("n {n} d {d}: symmetry fails at i = {i}"))?;
            }
            cases += 1;
        }
    }
    let took = t.elapsed();
    ensure(took < Duration::from_secs(10), || format!("took {took:?}"))?;
    Ok(format!("{cases} (n,d) pairs, max residual {worst:.2e}, {took:.2?}"))
}

fn c3_equivalence() -> Outcome {
    let t = Instant::now();
    let mut successes = 0;
    for seed in 0..1000u64 {
        let g = Arc::new(random_graph(seed, 3, 10, 6, 4));
        let gamma = random_signs(seed, g.n());
        let lp = lp_decode(&g, &gamma).map_err(|e| e.to_string())?.is_success();
        let dual = find_dual_witness(&g, &gamma).map_err(|e| e.to_string())?.is_some();
        let flow = find_hyperflow(&g, &gamma, false).map_err(|e| e.to_string())?.is_some();
        let acyclic = find_hyperflow(&g, &gamma, true).map_err(|e| e.to_string())?.is_some();
        ensure(lp == dual && lp == flow && lp == acyclic, || {
            format!("seed {seed}: lp {lp} dual {dual} hyperflow {flow} acyclic {acyclic}")
        })?;
        successes += lp as usize;
    }
    let took = t.elapsed();
    ensure(took < Duration::from_secs(300), || format!("took {took:?}"))?;
    Ok(format!("1000 instances, {successes} LP successes, 0 disagreements, {took:.1?}"))
}

fn vertex_coords(g: &TannerGraph) -> Result<std::collections::BTreeSet<Vec<Rational>>, String> {
    let p = build_fundamental_polytope::<Rational>(g).map_err(|e| e.to_string())?;
    Ok(enumerate_vertices(&p).map_err(|e| e.to_string())?.into_iter().map(|v| v.coords).collect())
}

fn c4_trees_and_augmentation() -> Outcome {
    let t = Instant::now();
    let mut max_n = 0;
    for seed in 0..100u64 {
        let g = random_forest(seed, 6, 14, 7, 4);
        ensure(girth(&g) == Extended::Infinite, || format!("forest {seed} has a cycle"))?;
        max_n = max_n.max(g.n());
        ensure(vertex_coords(&g)? == codewords_brute(&g), || format!("forest {seed}: vertices differ from codewords"))?;
    }
    let mut cyclic = 0;
    let mut added = 0;
    let mut seed = 0u64;
    while cyclic < 100 {
        seed += 1;
        let g = random_graph(10_000 + seed, 4, 7, 4, 3);
        if girth(&g) == Extended::Infinite {
            continue;
        }
        let aug = with_acyclic_sums(&g);
        added += aug.m() - g.m();
        ensure(vertex_coords(&g)? == vertex_coords(&aug)?, || format!("cyclic graph {seed}: augmentation moved a vertex"))?;
        cyclic += 1;
    }
    let took = t.elapsed();
    ensure(took < Duration::from_secs(300), || format!("took {took:?}"))?;
    Ok(format!("100 forests (n <= {max_n}) integral; 100 cyclic graphs, {added} acyclic sums added, vertex sets equal; {took:.1?}"))
}

fn c5_high_density() -> Outcome {
    let mut checked = 0u64;
    for seed in 0..40u64 {
        let g = random_graph(20_000 + seed, 4, 10, 6, 4);
        let n = g.n();
        let dmin = g.min_check_degree();
        let dec = LpDecoder::<Rational>::new(&g).map_err(|e| e.to_string())?;
        for mask in 0u32..1 << n {
            let y = BitVector::from_bools(&(0..n).map(|i| mask >> i & 1 == 1).collect::<Vec<_>>());
            if y.weight() * dmin < n {
                continue;
            }
            let gamma: Vec<Rational> = y.signs().into_iter().map(Rational::from).collect();
            ensure(!dec.decode(&gamma).map_err(|e| e.to_string())?.is_success(), || format!("graph {seed}: {y} decoded"))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} patterns over 40 graphs, all failures"))
}

fn c6_switch_and_primitivize() -> Outcome {
    // Variables a b c i g i' x.
    let (a, b, c, i, g, ip, x) = (0, 1, 2, 3, 4, 5, 6);
    let word = |v: &[usize]| BitVector::from_indices(7, v).unwrap();
    let r = Rational::new;
    let three_checks = |pj: Rational, pe: Rational, pjp: Rational| {
        let mut d = HyperflowWdg::empty(7);
        d.insert(word(&[a, b, c, i]), i, pj).unwrap();
        d.insert(word(&[i, x]), i, pe).unwrap();
        d.insert(word(&[c, i, g, ip]), ip, pjp).unwrap();
        d
    };
    let weight = |d: &HyperflowWdg, w: &BitVector| d.checks().find(|(c, _, _)| *c == w).map(|(_, s, p)| (s, p.clone()));
    let gamma = |gi: i64| -> Vec<Rational> { [1, 1, 2, gi, 1, 1, 1].iter().map(|&v| Rational::from(v)).collect() };

    let mut one = three_checks(r(9, 10), r(7, 10), r(1, 2));
    let ev = one.switch(&word(&[a, b, c, i]), i, &word(&[c, i, g, ip])).map_err(|e| e.to_string())?;
    ensure(ev.p == r(1, 2), || format!("in-check case: P = {}", ev.p))?;
    ensure(weight(&one, &word(&[a, b, c, i])) == Some((i, r(2, 5))), || "in-check case: j is not 0.4".into())?;
    ensure(weight(&one, &word(&[c, i, g, ip])).is_none(), || "in-check case: j' survived".into())?;
    ensure(weight(&one, &word(&[a, b, g, ip])) == Some((ip, r(1, 2))), || "in-check case: new check wrong".into())?;
    ensure(one.is_hyperflow_for(&gamma(-1)), || "in-check case: not a hyperflow after switch".into())?;

    let mut two = three_checks(r(1, 2), r(3, 10), r(9, 10));
    let ev = two.switch(&word(&[a, b, c, i]), i, &word(&[c, i, g, ip])).map_err(|e| e.to_string())?;
    ensure(ev.p == r(1, 2), || format!("out-check case: P = {}", ev.p))?;
    ensure(weight(&two, &word(&[a, b, c, i])).is_none(), || "out-check case: j survived".into())?;
    ensure(weight(&two, &word(&[c, i, g, ip])) == Some((ip, r(2, 5))), || "out-check case: j' is not 0.4".into())?;
    ensure(weight(&two, &word(&[a, b, g, ip])) == Some((ip, r(1, 2))), || "out-check case: new check wrong".into())?;
    ensure(two.is_hyperflow_for(&gamma(1)), || "out-check case: not a hyperflow after switch".into())?;

    ensure(cfg!(debug_assertions), || "per-switch assertions are compiled out".into())?;
    let mut exercised = 0;
    let mut switches = 0;
    for seed in 0..200u64 {
        let base = random_graph(30_000 + seed, 4, 6, 3, 4);
        let full = Arc::new(all_redundant(&base).map_err(|e| e.to_string())?);
        if sink_assignment_count(&full) > 1_000_000 {
            continue;
        }
        let gamma = random_signs(30_000 + seed, full.n());
        if !lp_decode(&full, &gamma).map_err(|e| e.to_string())?.is_success() {
            continue;
        }
        let (_, w) = find_hyperflow(&full, &gamma, true)
            .map_err(|e| e.to_string())?
            .ok_or_else(|| format!("seed {seed}: LP success but no acyclic hyperflow"))?;
        let out = HyperflowWdg::from_weighting(&w).and_then(|d| d.primitivize(&gamma)).map_err(|e| e.to_string())?;
        let pw = out.wdg.to_weighting(&full).map_err(|e| e.to_string())?;
        ensure(out.verified, || format!("seed {seed}: not verified"))?;
        ensure(is_primitive(&full, &gamma, &pw).unwrap_or(false), || format!("seed {seed}: not primitive"))?;
        ensure(verify_hyperflow(&full, &gamma, &pw).unwrap_or(false), || format!("seed {seed}: not a hyperflow"))?;
        ensure(!pw.has_directed_cycle(), || format!("seed {seed}: cyclic"))?;
        switches += out.trace.len();
        exercised += 1;
    }
    ensure(exercised >= 20, || format!("only {exercised} instances exercised"))?;
    Ok(format!("both switch cases reproduced (P = 1/2, 2/5 remainders); {exercised} closures primitivized, {switches} switches"))
}

fn c7_shifts() -> Outcome {
    let t = Instant::now();
    let graphs = [(8usize, 6usize, 1u64), (12, 9, 1), (12, 9, 2)];
    let settings = [(0.02, Rational::new(1, 10)), (0.05, Rational::new(1, 5)), (0.08, Rational::new(3, 10))];
    let mut worst_margin = f64::INFINITY;
    for (n, m, s) in graphs {
        let g = Arc::new(sample_variable_regular(n, m, 3, s).map_err(|e| e.to_string())?);
        for (eps, delta) in &settings {
            let seed = rng::split_seed(7, (n * 100 + s as usize) as u64);
            let e = excess_experiment(&g, *eps, delta, 10_000, seed).map_err(|e| e.to_string())?;
            ensure(e.holds, || format!("excess n {n} seed {s} eps {eps} delta {delta}: {e:?}"))?;
            let d = deficiency_experiment(&g, *eps, delta, 10_000, seed).map_err(|e| e.to_string())?;
            ensure(d.holds, || format!("deficiency n {n} seed {s} eps {eps} delta {delta}: {d:?}"))?;
            worst_margin = worst_margin.min(e.lhs - e.rhs + e.slack).min(d.rhs - d.lhs + d.slack);
        }
    }
    let took = t.elapsed();
    ensure(took < Duration::from_secs(900), || format!("took {took:?}"))?;
    Ok(format!("18 experiments x 10^4 trials hold, smallest margin {worst_margin:.4}, {took:.0?}"))
}

fn c8_dominance() -> Outcome {
    let mut trials = 0u64;
    for seed in 0..6u64 {
        let g = random_graph(40_000 + seed, 6, 9, 5, 4);
        let variants = build_variants(&g, &[2, 3, 4]).map_err(|e| e.to_string())?;
        let grid = [0.05, 0.1, 0.15, 0.2, 0.3];
        let r = threshold_scan(&variants, "acc", &grid, 200, seed).map_err(|e| e.to_string())?;
        ensure(r.dominance_violations == 0, || format!("graph {seed}: {} violations", r.dominance_violations))?;
        trials += 200 * grid.len() as u64;
    }
    Ok(format!("{trials} paired trials across base/k2/k3/k4/full, 0 violations"))
}

/// Exact probability, over `m` uniform weight-3 rows, that some sum of at
/// least `g` rows has weight at most `k`. Rows are exchangeable under
/// coordinate permutations, so the first row is fixed.
fn exact_degeneracy(n: usize, m: usize, g: usize, k: usize) -> f64 {
    let rows: Vec<u64> = {
        let mut v = Vec::new();
        lp_lab::combinatorics::for_each_combination(n, 3, |c| {
            v.push(c.iter().fold(0u64, |a, &i| a | 1 << i));
            true
        });
        v
    };
    let mut pick = vec![0usize; m];
    let (mut bad, mut total) = (0u64, 0u64);
    loop {
        let chosen: Vec<u64> = pick.iter().map(|&p| rows[p]).collect();
        let hit = (1u64..1 << m).any(|mask| {
            mask.count_ones() as usize >= g
                && (0..m).filter(|j| mask >> j & 1 == 1).fold(0u64, |a, j| a ^ chosen[j]).count_ones() as usize <= k
        });
        bad += hit as u64;
        total += 1;
        let mut j = 1;
        while j < m {
            pick[j] += 1;
            if pick[j] < rows.len() {
                break;
            }
            pick[j] = 0;
            j += 1;
        }
        if j >= m {
            break;
        }
    }
    bad as f64 / total as f64
}

fn sampled_degeneracy(n: usize, m: usize, g: usize, k: usize, samples: u64, seed: u64) -> f64 {
    let mut hits = 0;
    for s in 0..samples {
        let mut r = rng::stream(seed, s);
        let rows: Vec<u64> = (0..m).map(|_| sample(&mut r, n, 3).iter().fold(0u64, |a, i| a | 1 << i)).collect();
        hits += (1u64..1 << m).any(|mask| {
            mask.count_ones() as usize >= g
                && (0..m).filter(|j| mask >> j & 1 == 1).fold(0u64, |a, j| a ^ rows[j]).count_ones() as usize <= k
        }) as u64;
    }
    hits as f64 / samples as f64
}

fn c9_bound() -> Outcome {
    let mut cases = 0;
    let mut tightest = f64::INFINITY;
    let gk = [(2usize, 0usize), (2, 1), (2, 2), (3, 1), (3, 3), (4, 2)];
    for n in [6usize, 8, 10, 12] {
        for m in 2..=4usize {
            for &(g, k) in &gk {
                if g > m {
                    continue;
                }
                let p = exact_degeneracy(n, m, g, k);
                let bound = nondegeneracy_bound(n, m, 3, g, k).map_err(|e| e.to_string())?.exp2();
                ensure(p <= bound, || format!("exact n {n} m {m} g {g} k {k}: {p} > {bound}"))?;
                tightest = tightest.min(bound - p);
                cases += 1;
            }
        }
        for m in 5..=10usize {
            for &(g, k) in &gk {
                let p = sampled_degeneracy(n, m, g, k, 400, (n * 100 + m) as u64);
                let bound = nondegeneracy_bound(n, m, 3, g, k).map_err(|e| e.to_string())?.exp2();
                ensure(p <= bound, || format!("sampled n {n} m {m} g {g} k {k}: {p} > {bound}"))?;
                tightest = tightest.min(bound - p);
                cases += 1;
            }
        }
    }
    Ok(format!("{cases} (n,m,g,k) cases, bound never exceeded, smallest gap {tightest:.3e}"))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("1 calkin thresholds", c1_thresholds),
        ("2 krawtchouk eigendecomposition", c2_eigen),
        ("3 LP / dual witness / hyperflow equivalence", c3_equivalence),
        ("4 tree exactness and acyclic augmentation", c4_trees_and_augmentation),
        ("5 high-density failure", c5_high_density),
        ("6 switch arithmetic and primitivization", c6_switch_and_primitivize),
        ("7 excess and deficiency inequalities", c7_shifts),
        ("8 polytope-nesting dominance", c8_dominance),
        ("9 nondegeneracy bound vs enumeration", c9_bound),
    ];
    let only: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = 0;
    for (name, run) in criteria {
        if !only.is_empty() && !only.iter().any(|o| name.starts_with(o.as_str())) {
            continue;
        }
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        match outcome {
            Ok(detail) => println!("PASS criterion {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {name}: {why}");
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
