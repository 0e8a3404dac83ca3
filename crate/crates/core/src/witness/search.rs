//! LP searches for dual witnesses, narrow witnesses and hyperflows.
//!
//! Strict inequalities become a slack to maximize: a witness exists iff the
//! optimal slack `s` in `F_i(w) <= γ_i - s` is positive. Weights live in the
//! box `[-B, B]` with `B = Σ|γ_i| + 1`.

use std::sync::Arc;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::weighting::{has_cycle, EdgeWeighting};
use crate::caps;
use crate::error::{Error, Result};
use crate::gf2::BitVector;
use crate::lp::{LinearProgram, LpOutcome};
use crate::scalar::Rational;
use crate::tanner::TannerGraph;

/// A witness with the slack it attains.
#[derive(Debug, Clone, PartialEq)]
pub struct DualWitness {
    pub weighting: EdgeWeighting,
    pub slack: Rational,
}

/// How a check enters a witness LP.
#[derive(Debug, Clone, PartialEq, Eq)]
enum Mode {
    /// General weights subject to the pair inequalities.
    Free,
    /// All edges zero.
    Off,
    /// Hyperflow pattern with the given sink and a magnitude variable.
    Sink(usize),
}

fn weight_box(gamma: &[Rational]) -> Rational {
    gamma.iter().map(|g| g.abs()).sum::<Rational>() + Rational::from(1)
}

/// Solves the slack LP for the given per-check modes. Returns the weighting
/// and the optimal slack when it is positive.
fn solve_modes(g: &Arc<TannerGraph>, gamma: &[Rational], modes: &[Mode]) -> Result<Option<DualWitness>> {
    let n = g.n();
    let b = weight_box(gamma);
    let two_b = &b + &b;
    // Column layout: one per edge of a free check, one per sink check, then s.
    let mut edge_col = vec![usize::MAX; g.num_edges()];
    let mut sink_col = vec![usize::MAX; g.m()];
    let mut cols = 0;
    for (j, mode) in modes.iter().enumerate() {
        match mode {
            Mode::Free => {
                for e in g.check_edges(j) {
                    edge_col[e] = cols;
                    cols += 1;
                }
            }
            Mode::Sink(_) => {
                sink_col[j] = cols;
                cols += 1;
            }
            Mode::Off => {}
        }
    }
    let s_col = cols;
    cols += 1;
    let mut objective = vec![Rational::zero(); cols];
    objective[s_col] = Rational::from(1);
    let mut lp = LinearProgram::new(cols, objective);
    let one = Rational::from(1);
    let minus_one = Rational::from(-1);

    let mut var_terms: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); n];
    let mut var_shift = vec![Rational::zero(); n];
    for (j, mode) in modes.iter().enumerate() {
        match mode {
            Mode::Free => {
                for (e, &i) in g.check_edges(j).zip(g.check_vars(j)) {
                    var_terms[i].push((edge_col[e], one.clone()));
                    var_shift[i] += &b;
                }
            }
            Mode::Sink(sink) => {
                for &i in g.check_vars(j) {
                    let c = if i == *sink { minus_one.clone() } else { one.clone() };
                    var_terms[i].push((sink_col[j], c));
                }
            }
            Mode::Off => {}
        }
    }
    for i in 0..n {
        let mut terms = std::mem::take(&mut var_terms[i]);
        terms.push((s_col, one.clone()));
        lp.add_sparse_row(&terms, &gamma[i] + &var_shift[i]);
    }
    let neg_two_b = -two_b.clone();
    for (j, mode) in modes.iter().enumerate() {
        match mode {
            Mode::Free => {
                let edges: Vec<usize> = g.check_edges(j).collect();
                for a in 0..edges.len() {
                    lp.add_sparse_row(&[(edge_col[edges[a]], one.clone())], two_b.clone());
                    for c in a + 1..edges.len() {
                        lp.add_sparse_row(
                            &[(edge_col[edges[a]], minus_one.clone()), (edge_col[edges[c]], minus_one.clone())],
                            neg_two_b.clone(),
                        );
                    }
                }
            }
            Mode::Sink(_) => lp.add_sparse_row(&[(sink_col[j], one.clone())], b.clone()),
            Mode::Off => {}
        }
    }
    let (slack, x) = match lp.maximize() {
        LpOutcome::Optimal { value, x } => (value, x),
        LpOutcome::Infeasible => return Ok(None),
        LpOutcome::Unbounded => return Err(Error::Numeric("witness LP unbounded despite the weight box".into())),
    };
    if !slack.is_positive() {
        return Ok(None);
    }
    let mut w = vec![Rational::zero(); g.num_edges()];
    for (j, mode) in modes.iter().enumerate() {
        match mode {
            Mode::Free => {
                for e in g.check_edges(j) {
                    w[e] = &x[edge_col[e]] - &b;
                }
            }
            Mode::Sink(sink) => {
                let p = &x[sink_col[j]];
                for (e, &i) in g.check_edges(j).zip(g.check_vars(j)) {
                    w[e] = if i == *sink { -p.clone() } else { p.clone() };
                }
            }
            Mode::Off => {}
        }
    }
    Ok(Some(DualWitness { weighting: EdgeWeighting::from_edge_values(g.clone(), w)?, slack }))
}

fn check_len(g: &TannerGraph, gamma: &[Rational]) -> Result<()> {
    if gamma.len() != g.n() {
        return Err(Error::structural(format!("LLR vector has length {}, expected {}", gamma.len(), g.n())));
    }
    Ok(())
}

/// A dual witness for `γ`, if one exists.
pub fn find_dual_witness(g: &Arc<TannerGraph>, gamma: &[Rational]) -> Result<Option<DualWitness>> {
    check_len(g, gamma)?;
    solve_modes(g, gamma, &vec![Mode::Free; g.m()])
}

/// A dual witness using only the checks flagged in `active`.
pub(crate) fn find_dual_witness_on(g: &Arc<TannerGraph>, gamma: &[Rational], active: &[bool]) -> Result<Option<DualWitness>> {
    check_len(g, gamma)?;
    let modes: Vec<Mode> = active.iter().map(|&a| if a { Mode::Free } else { Mode::Off }).collect();
    solve_modes(g, gamma, &modes)
}

/// A dual witness for `(-1)^y` whose nonzero edges all touch checks
/// adjacent to the support of `y`.
pub fn find_narrow_dual_witness(g: &Arc<TannerGraph>, y: &BitVector) -> Result<Option<DualWitness>> {
    if y.len() != g.n() {
        return Err(Error::structural("error vector length differs from the graph"));
    }
    let gamma: Vec<Rational> = y.signs().into_iter().map(Rational::from).collect();
    let support = y.support();
    let mut modes = vec![Mode::Off; g.m()];
    for j in g.check_neighborhood(&support) {
        modes[j] = Mode::Free;
    }
    solve_modes(g, &gamma, &modes)
}

/// Per-check sink choice and magnitude; `None` marks an inert check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SinkAssignment {
    pub sinks: Vec<Option<(usize, Rational)>>,
}

impl SinkAssignment {
    pub fn to_weighting(&self, g: &Arc<TannerGraph>) -> Result<EdgeWeighting> {
        let mut w = EdgeWeighting::zero(g.clone());
        for (j, s) in self.sinks.iter().enumerate() {
            if let Some((sink, p)) = s {
                for &i in g.check_vars(j) {
                    w.set(i, j, if i == *sink { -p.clone() } else { p.clone() })?;
                }
            }
        }
        Ok(w)
    }
}

/// Work bound for the sink-assignment search: `Π_j (d_j + 1)`.
pub fn sink_assignment_count(g: &TannerGraph) -> u128 {
    (0..g.m()).fold(1u128, |acc, j| acc.saturating_mul(g.check_vars(j).len() as u128 + 1))
}

struct HyperflowSearch<'a> {
    g: &'a Arc<TannerGraph>,
    gamma: &'a [Rational],
    acyclic: bool,
    modes: Vec<Mode>,
}

impl HyperflowSearch<'_> {
    /// The fixed sink checks already form a directed cycle.
    fn pattern_has_cycle(&self) -> bool {
        let (n, m) = (self.g.n(), self.g.m());
        let mut succ = vec![Vec::new(); n + m];
        for (j, mode) in self.modes.iter().enumerate() {
            if let Mode::Sink(sink) = mode {
                for &i in self.g.check_vars(j) {
                    if i == *sink {
                        succ[n + j].push(i);
                    } else {
                        succ[i].push(n + j);
                    }
                }
            }
        }
        has_cycle(&succ)
    }

    /// Some variable with `γ_i <= 0` has every check decided and is the sink
    /// of none; its flow would be nonnegative.
    fn starved_error(&self, decided: usize) -> bool {
        (0..self.g.n()).any(|i| {
            !self.gamma[i].is_positive()
                && self.g.var_checks(i).iter().all(|&j| j < decided)
                && !self.g.var_checks(i).iter().any(|&j| self.modes[j] == Mode::Sink(i))
        })
    }

    fn dfs(&mut self, t: usize) -> Result<Option<DualWitness>> {
        let relaxed = solve_modes(self.g, self.gamma, &self.modes)?;
        if relaxed.is_none() || t == self.g.m() {
            return Ok(relaxed);
        }
        let mut choices = vec![Mode::Off];
        choices.extend(self.g.check_vars(t).iter().map(|&i| Mode::Sink(i)));
        for choice in choices {
            self.modes[t] = choice;
            if self.starved_error(t + 1) || (self.acyclic && self.pattern_has_cycle()) {
                continue;
            }
            if let Some(found) = self.dfs(t + 1)? {
                return Ok(Some(found));
            }
        }
        self.modes[t] = Mode::Free;
        Ok(None)
    }
}

/// A hyperflow for `γ`, optionally with an acyclic directed view.
///
/// Sink assignments are searched depth-first, check 0 first, each check
/// trying inert then each of its variables as sink in increasing order; the
/// first feasible assignment in that order is returned. Subtrees are cut when
/// the LP with the undecided checks relaxed to general dual-witness weights
/// has no positive slack, which no completion can beat.
pub fn find_hyperflow(
    g: &Arc<TannerGraph>,
    gamma: &[Rational],
    require_acyclic: bool,
) -> Result<Option<(SinkAssignment, EdgeWeighting)>> {
    check_len(g, gamma)?;
    caps::check("hyperflow sink assignments", sink_assignment_count(g), caps::SINK_ASSIGNMENTS)?;
    let mut search = HyperflowSearch { g, gamma, acyclic: require_acyclic, modes: vec![Mode::Free; g.m()] };
    let Some(found) = search.dfs(0)? else {
        return Ok(None);
    };
    let sinks = search
        .modes
        .iter()
        .enumerate()
        .map(|(j, mode)| match mode {
            Mode::Sink(s) => {
                let e = g.edge_index(*s, j).expect("sink lies on its check");
                let p = -found.weighting.values()[e].clone();
                (!p.is_zero()).then_some((*s, p))
            }
            _ => None,
        })
        .collect();
    Ok(Some((SinkAssignment { sinks }, found.weighting)))
}
