//! Subcommand implementations.

use std::sync::Arc;

use clap::Parser;
use lp_lab::calkin::{beta_d, empirical_degeneracy, nondegeneracy_bound, verify_decomposition, DEGENERACY_CSV_HEADER};
use lp_lab::gf2::rank_gf2;
use lp_lab::lp::{bsc_pseudoweight, build_fundamental_polytope, enumerate_vertices, lp_decode, ml_decode, strength_ratio};
use lp_lab::sim::{
    build_variants, deficiency_experiment, excess_experiment, help_experiment, threshold_scan, wer_estimate, ChannelConfig,
    ShiftReport, TrialReport, WER_CSV_HEADER,
};
use lp_lab::tanner::{
    all_redundant, augment, check_expansion, delta_min_cyclic_sum, emit_alist, emit_json as graph_json, enumerate_dual_low_weight,
    girth,
    is_nondegenerate, sample_check_regular, sample_variable_regular,
};
use lp_lab::witness::{
    find_dual_witness, find_hyperflow, find_narrow_dual_witness, is_primitive, verify_dual_witness, verify_hyperflow, EdgeWeighting,
    HyperflowWdg, WeightingJson,
};
use lp_lab::{BitVector, Rational, Scalar, TannerGraph};
use serde_json::{json, Value};

use crate::io::{llrs, parse_list, read_file, read_manifest, recordable_argv, usage, CliError, CliResult, Context};
use crate::{CalkinCommand, Cli, Command, Ensemble, Format, SimCommand, WitnessCommand, WitnessKind};

pub fn run(cli: Cli) -> CliResult<()> {
    let (cli, argv, expected_sha) = match &cli.replay {
        Some(path) => {
            let (m, argv) = read_manifest(path)?;
            let mut again = Cli::try_parse_from(std::iter::once("lp-lab".to_string()).chain(argv.iter().cloned()))?;
            if again.replay.is_some() {
                return usage("a manifest may not itself request a replay");
            }
            again.out = cli.out.clone();
            again.manifest = cli.manifest.clone();
            again.jobs = cli.jobs;
            (again, argv, m.graph_sha256)
        }
        None => (cli, recordable_argv(&std::env::args().skip(1).collect::<Vec<_>>()), None),
    };
    if let Some(jobs) = cli.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs.max(1))
            .build_global()
            .map_err(|e| CliError::Usage(format!("cannot set up {jobs} workers: {e}")))?;
    }
    let mut ctx = Context::new(cli.seed, cli.format, cli.out.clone(), cli.manifest.clone(), argv);
    ctx.expected_sha = expected_sha;
    let Some(command) = cli.command else {
        return usage("no subcommand given (see --help)");
    };
    match command {
        Command::Gen(a) => {
            let g = match a.ensemble {
                Ensemble::CheckRegular => sample_check_regular(a.n, a.m, a.d, ctx.seed)?,
                Ensemble::VariableRegular => sample_variable_regular(a.n, a.m, a.d, ctx.seed)?,
            };
            emit_graph(&ctx, "gen", &g)
        }
        Command::Augment(a) => {
            let g = ctx.load_graph(&a.graph.graph)?;
            let out = match a.k {
                Some(k) => augment(&enumerate_dual_low_weight(&g, k, a.budget)?)?,
                None if a.budget.is_some() => augment(&enumerate_dual_low_weight(&g, g.n().max(1), a.budget)?)?,
                None => all_redundant(&g)?,
            };
            emit_graph(&ctx, "augment", &out)
        }
        Command::Diag(a) => {
            ctx.format(&[Format::Json])?;
            let g = ctx.load_graph(&a.graph.graph)?;
            let mut report = json!({
                "n": g.n(),
                "m": g.m(),
                "rank": rank_gf2(g.checks())?,
                "girth": girth(&g),
                "min_cyclic_sum": delta_min_cyclic_sum(&g, a.subset_cap),
            });
            if let (Some(s), Some(k)) = (a.s, a.k) {
                report["nondegeneracy"] = json!({ "s": s, "k": k, "result": is_nondegenerate(&g, s, k, a.subset_cap, ctx.seed) });
            }
            if let (Some(max_set), Some(kappa)) = (a.max_set, a.kappa.as_deref()) {
                let kappa: Rational = kappa.parse().map_err(|e| CliError::Usage(format!("bad kappa: {e}")))?;
                report["expansion"] =
                    json!({ "max_set": max_set, "kappa": kappa, "result": check_expansion(&g, max_set, &kappa, ctx.seed) });
            }
            emit_json(&ctx, "diag", &report)
        }
        Command::Decode(a) => {
            ctx.format(&[Format::Json])?;
            let g = ctx.load_graph(&a.graph.graph)?;
            let gamma = llrs(a.llr.gamma.as_deref(), a.llr.word.as_deref(), g.n())?;
            let mut report = if a.float {
                let gf: Vec<f64> = gamma.iter().map(<Rational as Scalar>::to_f64).collect();
                json!({ "lp": lp_decode(&g, &gf)?, "arithmetic": "f64" })
            } else {
                json!({ "lp": lp_decode(&g, &gamma)?, "arithmetic": "exact" })
            };
            if a.ml {
                report["ml"] = serde_json::to_value(ml_decode(&g, &gamma)?)?;
            }
            emit_json(&ctx, "decode", &report)
        }
        Command::Witness(w) => witness(&ctx, w),
        Command::Vertices(a) => {
            ctx.format(&[Format::Json])?;
            let g = ctx.load_graph(&a.graph.graph)?;
            let verts = enumerate_vertices(&build_fundamental_polytope::<Rational>(&g)?)?;
            let mut report = json!({
                "count": verts.len(),
                "fractional": verts.iter().filter(|v| !v.is_integral()).count(),
                "bsc_pseudoweight": bsc_pseudoweight(&verts),
                "vertices": verts.iter().map(|v| &v.coords).collect::<Vec<_>>(),
            });
            if let Some(c) = a.alpha_count {
                report["strength_ratio"] = json!({ "alpha_count": c, "ratio": strength_ratio(&verts, c)? });
            }
            emit_json(&ctx, "vertices", &report)
        }
        Command::Calkin(c) => calkin(&ctx, c),
        Command::Sim(s) => sim(&ctx, s),
    }
}

fn emit_graph(ctx: &Context, what: &str, g: &TannerGraph) -> CliResult<()> {
    let text = match ctx.format(&[Format::Alist, Format::Json])? {
        Format::Json => graph_json(g),
        _ => emit_alist(g),
    };
    ctx.emit(what, &text)
}

fn emit_json(ctx: &Context, what: &str, v: &Value) -> CliResult<()> {
    ctx.emit(what, &serde_json::to_string_pretty(v)?)
}

fn witness(ctx: &Context, cmd: WitnessCommand) -> CliResult<()> {
    ctx.format(&[Format::Json])?;
    match cmd {
        WitnessCommand::Find { graph, llr, kind } => {
            let g = Arc::new(ctx.load_graph(&graph.graph)?);
            let gamma = llrs(llr.gamma.as_deref(), llr.word.as_deref(), g.n())?;
            let found: Option<(EdgeWeighting, Value)> = match kind {
                WitnessKind::Dual => find_dual_witness(&g, &gamma)?.map(|w| (w.weighting, json!({ "slack": w.slack }))),
                WitnessKind::Hyperflow | WitnessKind::Acyclic => find_hyperflow(&g, &gamma, kind == WitnessKind::Acyclic)?
                    .map(|(sa, w)| (w, json!({ "sinks": sa.sinks }))),
                WitnessKind::Narrow => {
                    let Some(word) = llr.word.as_deref() else {
                        return usage("narrow witnesses are defined for a received word; use --word");
                    };
                    find_narrow_dual_witness(&g, &BitVector::parse(word)?)?.map(|w| (w.weighting, json!({ "slack": w.slack })))
                }
            };
            let report = match found {
                Some((w, extra)) => {
                    let mut v = serde_json::to_value(w.to_json(&gamma))?;
                    v["found"] = json!(true);
                    v["kind"] = json!(format!("{kind:?}").to_lowercase());
                    if let Value::Object(extra) = extra {
                        for (k, x) in extra {
                            v[k] = x;
                        }
                    }
                    v
                }
                None => json!({ "found": false, "kind": format!("{kind:?}").to_lowercase() }),
            };
            emit_json(ctx, "witness find", &report)
        }
        WitnessCommand::Verify { graph, witness } => {
            let g = Arc::new(ctx.load_graph(&graph.graph)?);
            let (w, gamma) = load_weighting(&g, &witness)?;
            let violations = verify_dual_witness(&g, &gamma, &w)?;
            let report = json!({
                "dual_witness": violations.is_empty(),
                "violations": violations,
                "hyperflow": verify_hyperflow(&g, &gamma, &w)?,
                "primitive": is_primitive(&g, &gamma, &w)?,
                "acyclic": !w.has_directed_cycle(),
            });
            emit_json(ctx, "witness verify", &report)
        }
        WitnessCommand::Primitivize { graph, gamma, word, witness, trace } => {
            let base = ctx.load_graph(&graph.graph)?;
            let (g, w, gamma) = match witness {
                Some(path) => {
                    let g = Arc::new(base);
                    let (w, gamma) = load_weighting(&g, &path)?;
                    (g, w, gamma)
                }
                None => {
                    let g = Arc::new(all_redundant(&base)?);
                    let gamma = llrs(gamma.as_deref(), word.as_deref(), g.n())?;
                    match find_hyperflow(&g, &gamma, true)? {
                        Some((_, w)) => (g, w, gamma),
                        None => {
                            let report = json!({ "found": false, "reason": "no acyclic hyperflow on the redundant closure" });
                            return emit_json(ctx, "witness primitivize", &report);
                        }
                    }
                }
            };
            let out = HyperflowWdg::from_weighting(&w)?.primitivize(&gamma)?;
            let checks: Vec<Value> =
                out.wdg.checks().map(|(c, sink, p)| json!({ "check": c.to_string(), "sink": sink, "p": p })).collect();
            let mut report = json!({
                "found": true,
                "verified": out.verified,
                "switches": out.trace.len(),
                "checks": checks,
                "weighting": out.wdg.to_weighting(&g)?.to_json(&gamma),
            });
            if trace {
                report["trace"] = serde_json::to_value(&out.trace)?;
            }
            emit_json(ctx, "witness primitivize", &report)
        }
    }
}

fn load_weighting(g: &Arc<TannerGraph>, path: &std::path::Path) -> CliResult<(EdgeWeighting, Vec<Rational>)> {
    let json: WeightingJson = serde_json::from_str(&read_file(path)?)?;
    if json.gamma.len() != g.n() {
        return usage(format!("witness LLRs have length {}, graph has {} variables", json.gamma.len(), g.n()));
    }
    Ok((EdgeWeighting::from_json(g.clone(), &json)?, json.gamma))
}

fn calkin(ctx: &Context, cmd: CalkinCommand) -> CliResult<()> {
    match cmd {
        CalkinCommand::Beta { d, tol } => {
            let (alpha, beta) = beta_d(d, tol)?;
            match ctx.format(&[Format::Text, Format::Json])? {
                Format::Json => emit_json(ctx, "calkin beta", &json!({ "d": d, "alpha": alpha, "beta": beta, "tol": tol })),
                _ => ctx.emit("calkin beta", &format!("d={d} alpha={alpha:.10} beta={beta:.10} tol={tol:e}")),
            }
        }
        CalkinCommand::Eigen { n, d } => {
            ctx.format(&[Format::Json])?;
            let r = verify_decomposition(n, d)?;
            emit_json(ctx, "calkin eigen", &json!({ "n": n, "d": d, "residuals": r }))
        }
        CalkinCommand::Bound { n, m, d, g, k } => {
            let log2 = nondegeneracy_bound(n, m, d, g, k)?;
            match ctx.format(&[Format::Text, Format::Json])? {
                Format::Json => emit_json(ctx, "calkin bound", &json!({ "n": n, "m": m, "d": d, "g": g, "k": k, "log2_bound": log2 })),
                _ => ctx.emit("calkin bound", &format!("log2_bound={log2:.9}")),
            }
        }
        CalkinCommand::Degeneracy { n, m, d, s, k, trials } => {
            let e = empirical_degeneracy(n, m, d, s, k, trials, ctx.seed)?;
            match ctx.format(&[Format::Csv, Format::Json])? {
                Format::Json => emit_json(ctx, "calkin degeneracy", &serde_json::to_value(&e)?),
                _ => ctx.emit("calkin degeneracy", &format!("{DEGENERACY_CSV_HEADER}\n{}", e.csv_row())),
            }
        }
    }
}

fn csv(rows: &[&TrialReport]) -> String {
    let mut out = String::from(WER_CSV_HEADER);
    for r in rows {
        out.push('\n');
        out.push_str(&r.csv_row());
    }
    out
}

fn parse_delta(text: &str) -> CliResult<Rational> {
    text.parse().map_err(|e| CliError::Usage(format!("bad delta `{text}`: {e}")))
}

fn emit_shift(ctx: &Context, what: &str, r: &ShiftReport) -> CliResult<()> {
    ctx.format(&[Format::Json])?;
    emit_json(ctx, what, &serde_json::to_value(r)?)
}

fn sim(ctx: &Context, cmd: SimCommand) -> CliResult<()> {
    match cmd {
        SimCommand::Wer { run, epsilon } => {
            let g = ctx.load_graph(&run.graph.graph)?;
            let r = wer_estimate(&g, &ctx.graph_id(), &ChannelConfig::new(epsilon, run.trials, ctx.seed)?)?;
            match ctx.format(&[Format::Csv, Format::Json])? {
                Format::Json => emit_json(ctx, "sim wer", &serde_json::to_value(&r)?),
                _ => ctx.emit("sim wer", &csv(&[&r])),
            }
        }
        SimCommand::Scan { run, grid, ks } => {
            let g = ctx.load_graph(&run.graph.graph)?;
            let grid: Vec<f64> = parse_list(&grid, "crossover probability")?;
            let ks: Vec<usize> = parse_list(&ks, "weight bound")?;
            if grid.is_empty() {
                return usage("empty --grid");
            }
            let variants = build_variants(&g, &ks)?;
            let r = threshold_scan(&variants, &ctx.graph_id(), &grid, run.trials, ctx.seed)?;
            for e in &r.estimates {
                let show = |x: Option<f64>| x.map_or("none".to_string(), |v| format!("{v:.4}"));
                eprintln!(
                    "{}: WER 0.5 crossing {}, WER 0.1 crossing {} (grid interpolation)",
                    e.variant,
                    show(e.crossing_half),
                    show(e.crossing_tenth)
                );
            }
            eprintln!("dominance violations: {}", r.dominance_violations);
            match ctx.format(&[Format::Csv, Format::Json])? {
                Format::Json => emit_json(ctx, "sim scan", &serde_json::to_value(&r)?),
                _ => ctx.emit("sim scan", &csv(&r.reports.iter().collect::<Vec<_>>())),
            }
        }
        SimCommand::Help { run, epsilon, b } => {
            let g = ctx.load_graph(&run.graph.graph)?;
            let r = help_experiment(&g, &ctx.graph_id(), &ChannelConfig::new(epsilon, run.trials, ctx.seed)?, b)?;
            match ctx.format(&[Format::Csv, Format::Json])? {
                Format::Json => emit_json(ctx, "sim help", &serde_json::to_value(&r)?),
                _ => ctx.emit("sim help", &csv(&[&r.plain, &r.helped])),
            }
        }
        SimCommand::Excess { run, epsilon, delta } => {
            let g = Arc::new(ctx.load_graph(&run.graph.graph)?);
            let r = excess_experiment(&g, epsilon, &parse_delta(&delta)?, run.trials, ctx.seed)?;
            emit_shift(ctx, "sim excess", &r)
        }
        SimCommand::Deficiency { run, epsilon, delta } => {
            let g = Arc::new(ctx.load_graph(&run.graph.graph)?);
            let r = deficiency_experiment(&g, epsilon, &parse_delta(&delta)?, run.trials, ctx.seed)?;
            emit_shift(ctx, "sim deficiency", &r)
        }
    }
}
