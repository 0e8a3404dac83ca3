//! Edge weightings, their directed-graph view, and the witness checks.

use std::sync::Arc;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2::BitVector;
use crate::scalar::Rational;
use crate::tanner::TannerGraph;

/// Signed weights on the edges of a Tanner graph, indexed by the graph's
/// check-major edge order. Missing weights are zero.
#[derive(Debug, Clone, PartialEq)]
pub struct EdgeWeighting {
    graph: Arc<TannerGraph>,
    w: Vec<Rational>,
}

impl EdgeWeighting {
    pub fn zero(graph: Arc<TannerGraph>) -> Self {
        let e = graph.num_edges();
        EdgeWeighting { graph, w: vec![Rational::zero(); e] }
    }

    pub fn from_edge_values(graph: Arc<TannerGraph>, w: Vec<Rational>) -> Result<Self> {
        if w.len() != graph.num_edges() {
            return Err(Error::structural(format!("{} weights for {} edges", w.len(), graph.num_edges())));
        }
        Ok(EdgeWeighting { graph, w })
    }

    pub fn graph(&self) -> &Arc<TannerGraph> {
        &self.graph
    }

    pub fn values(&self) -> &[Rational] {
        &self.w
    }

    /// Weight of edge `(i, j)`; zero if the edge does not exist.
    pub fn get(&self, i: usize, j: usize) -> Rational {
        self.graph.edge_index(i, j).map(|e| self.w[e].clone()).unwrap_or_default()
    }

    pub fn set(&mut self, i: usize, j: usize, value: Rational) -> Result<()> {
        let e = self
            .graph
            .edge_index(i, j)
            .ok_or_else(|| Error::structural(format!("no edge between variable {i} and check {j}")))?;
        self.w[e] = value;
        Ok(())
    }

    /// `F_i(w) = Σ_j w(i, j)`.
    pub fn flow(&self, i: usize) -> Rational {
        self.graph.var_checks(i).iter().map(|&j| self.get(i, j)).sum()
    }

    pub fn flows(&self) -> Vec<Rational> {
        let mut f = vec![Rational::zero(); self.graph.n()];
        for (e, (i, _)) in self.graph.edges().enumerate() {
            if !self.w[e].is_zero() {
                f[i] += &self.w[e];
            }
        }
        f
    }

    /// Check `j` carries a nonzero weight.
    pub fn is_active(&self, j: usize) -> bool {
        self.graph.check_edges(j).any(|e| !self.w[e].is_zero())
    }

    pub fn scaled(&self, factor: &Rational) -> Self {
        EdgeWeighting { graph: self.graph.clone(), w: self.w.iter().map(|v| v * factor).collect() }
    }

    /// Directed view: positive weights orient variable → check, negative
    /// weights check → variable.
    pub fn wdg(&self) -> Wdg {
        let n = self.graph.n();
        let mut wdg = Wdg {
            inflow: vec![Rational::zero(); n],
            outflow: vec![Rational::zero(); n],
            in_checks: vec![Vec::new(); n],
            out_checks: vec![Vec::new(); n],
        };
        for (e, (i, j)) in self.graph.edges().enumerate() {
            let v = &self.w[e];
            if v.is_positive() {
                wdg.outflow[i] += v;
                wdg.out_checks[i].push(j);
            } else if v.is_negative() {
                wdg.inflow[i] -= v;
                wdg.in_checks[i].push(j);
            }
        }
        debug_assert!((0..n).all(|i| self.flow(i) == &wdg.outflow[i] - &wdg.inflow[i]));
        wdg
    }

    /// True iff the directed view has a directed cycle.
    pub fn has_directed_cycle(&self) -> bool {
        let g = &self.graph;
        let (n, m) = (g.n(), g.m());
        // Nodes: variables 0..n, checks n..n+m.
        let mut succ: Vec<Vec<usize>> = vec![Vec::new(); n + m];
        for (e, (i, j)) in g.edges().enumerate() {
            if self.w[e].is_positive() {
                succ[i].push(n + j);
            } else if self.w[e].is_negative() {
                succ[n + j].push(i);
            }
        }
        has_cycle(&succ)
    }

    /// JSON form: `{"edges": [[i, j, "p/q"], ...], "gamma": [...]}`, listing
    /// nonzero edges only.
    pub fn to_json(&self, gamma: &[Rational]) -> WeightingJson {
        WeightingJson {
            edges: self
                .graph
                .edges()
                .zip(&self.w)
                .filter(|(_, v)| !v.is_zero())
                .map(|((i, j), v)| (i, j, v.clone()))
                .collect(),
            gamma: gamma.to_vec(),
        }
    }

    pub fn from_json(graph: Arc<TannerGraph>, json: &WeightingJson) -> Result<Self> {
        let mut w = EdgeWeighting::zero(graph);
        for (i, j, v) in &json.edges {
            w.set(*i, *j, v.clone())?;
        }
        Ok(w)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeightingJson {
    pub edges: Vec<(usize, usize, Rational)>,
    pub gamma: Vec<Rational>,
}

/// Kahn's algorithm on an adjacency list.
pub(crate) fn has_cycle(succ: &[Vec<usize>]) -> bool {
    let mut indeg = vec![0usize; succ.len()];
    for list in succ {
        for &v in list {
            indeg[v] += 1;
        }
    }
    let mut stack: Vec<usize> = (0..succ.len()).filter(|&v| indeg[v] == 0).collect();
    let mut seen = 0;
    while let Some(u) = stack.pop() {
        seen += 1;
        for &v in &succ[u] {
            indeg[v] -= 1;
            if indeg[v] == 0 {
                stack.push(v);
            }
        }
    }
    seen < succ.len()
}

/// Per-variable flows of the directed view. `F_i = outflow_i - inflow_i`.
#[derive(Debug, Clone, PartialEq)]
pub struct Wdg {
    pub inflow: Vec<Rational>,
    pub outflow: Vec<Rational>,
    /// `In(i)`: checks with an edge into `i`.
    pub in_checks: Vec<Vec<usize>>,
    /// `Out(i)`: checks with an edge out of `i`.
    pub out_checks: Vec<Vec<usize>>,
}

/// A violated witness inequality.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Violation {
    /// `F_i(w) < γ_i` fails.
    Variable { var: usize, flow: Rational, gamma: Rational },
    /// `w(i, j) + w(i', j) >= 0` fails.
    Pair { check: usize, vars: (usize, usize), sum: Rational },
}

fn check_len(g: &TannerGraph, gamma: &[Rational]) -> Result<()> {
    if gamma.len() != g.n() {
        return Err(Error::structural(format!("LLR vector has length {}, expected {}", gamma.len(), g.n())));
    }
    Ok(())
}

fn same_graph(g: &TannerGraph, w: &EdgeWeighting) -> Result<()> {
    if !std::ptr::eq(g, w.graph.as_ref()) && *g != *w.graph {
        return Err(Error::structural("weighting belongs to a different graph"));
    }
    Ok(())
}

fn pair_violations(w: &EdgeWeighting, out: &mut Vec<Violation>) {
    let g = &w.graph;
    for j in 0..g.m() {
        let vars = g.check_vars(j);
        let edges: Vec<usize> = g.check_edges(j).collect();
        for a in 0..vars.len() {
            for b in a + 1..vars.len() {
                let sum = &w.w[edges[a]] + &w.w[edges[b]];
                if sum.is_negative() {
                    out.push(Violation::Pair { check: j, vars: (vars[a], vars[b]), sum });
                }
            }
        }
    }
}

/// Every violated dual-witness inequality; empty iff `w` is a dual witness
/// for `γ`.
pub fn verify_dual_witness(g: &TannerGraph, gamma: &[Rational], w: &EdgeWeighting) -> Result<Vec<Violation>> {
    check_len(g, gamma)?;
    same_graph(g, w)?;
    let mut out = Vec::new();
    for (i, (f, gi)) in w.flows().into_iter().zip(gamma).enumerate() {
        if f >= *gi {
            out.push(Violation::Variable { var: i, flow: f, gamma: gi.clone() });
        }
    }
    pair_violations(w, &mut out);
    Ok(out)
}

/// Each active check has exactly one negative edge `-P_j` and all others `+P_j`.
pub(crate) fn has_hyperflow_pattern(w: &EdgeWeighting) -> bool {
    let g = &w.graph;
    (0..g.m()).all(|j| {
        let vals: Vec<&Rational> = g.check_edges(j).map(|e| &w.w[e]).collect();
        if vals.iter().all(|v| v.is_zero()) {
            return true;
        }
        let neg: Vec<&&Rational> = vals.iter().filter(|v| v.is_negative()).collect();
        if neg.len() != 1 {
            return false;
        }
        let p = -(*neg[0]).clone();
        vals.iter().all(|v| v.is_negative() || **v == p)
    })
}

/// `w` is a dual witness for `γ` of hyperflow form.
pub fn verify_hyperflow(g: &TannerGraph, gamma: &[Rational], w: &EdgeWeighting) -> Result<bool> {
    Ok(has_hyperflow_pattern(w) && verify_dual_witness(g, gamma, w)?.is_empty())
}

/// Hyperflow where every variable with `γ_i <= 0` has no outflow and every
/// variable with `γ_i > 0` has no inflow.
pub fn is_primitive(g: &TannerGraph, gamma: &[Rational], w: &EdgeWeighting) -> Result<bool> {
    if !verify_hyperflow(g, gamma, w)? {
        return Ok(false);
    }
    let wdg = w.wdg();
    let primitive = (0..g.n()).all(|i| {
        if gamma[i].is_positive() {
            wdg.inflow[i].is_zero()
        } else {
            wdg.outflow[i].is_zero()
        }
    });
    if primitive {
        debug_assert!(!w.has_directed_cycle(), "primitive hyperflow with a directed cycle");
    }
    Ok(primitive)
}

/// Edgewise sum.
pub fn superpose(w1: &EdgeWeighting, w2: &EdgeWeighting) -> Result<EdgeWeighting> {
    same_graph(&w1.graph, w2)?;
    let w: Vec<Rational> = w1.w.iter().zip(&w2.w).map(|(a, b)| a + b).collect();
    let out = EdgeWeighting { graph: w1.graph.clone(), w };
    if cfg!(debug_assertions) {
        let mut before = Vec::new();
        pair_violations(w1, &mut before);
        pair_violations(w2, &mut before);
        if before.is_empty() {
            let mut after = Vec::new();
            pair_violations(&out, &mut after);
            debug_assert!(after.is_empty(), "superposition broke a pair inequality");
        }
    }
    Ok(out)
}

/// `γ_i = -1` where `y_i = 1`, else `β`.
pub fn asymmetric_llr(y: &BitVector, beta: &Rational) -> Result<Vec<Rational>> {
    if !beta.is_positive() {
        return Err(Error::domain("beta must be positive"));
    }
    Ok((0..y.len()).map(|i| if y.get(i) { Rational::from(-1) } else { beta.clone() }).collect())
}

/// `(-1)^{y_i} + shift`.
pub fn shifted_llr(y: &BitVector, shift: &Rational) -> Vec<Rational> {
    (0..y.len()).map(|i| Rational::from(if y.get(i) { -1 } else { 1 }) + shift).collect()
}

/// Pair inequalities hold, `F_i < 1` everywhere, and at most `b` error
/// positions have `F_i >= -1`.
pub fn verify_weak_dual_witness(g: &TannerGraph, y: &BitVector, w: &EdgeWeighting, b: usize) -> Result<bool> {
    same_graph(g, w)?;
    if y.len() != g.n() {
        return Err(Error::structural("error vector length differs from the graph"));
    }
    let mut pairs = Vec::new();
    pair_violations(w, &mut pairs);
    if !pairs.is_empty() {
        return Ok(false);
    }
    let one = Rational::from(1);
    let minus_one = Rational::from(-1);
    let flows = w.flows();
    if flows.iter().any(|f| *f >= one) {
        return Ok(false);
    }
    let weak = (0..g.n()).filter(|&i| y.get(i) && flows[i] >= minus_one).count();
    Ok(weak <= b)
}
