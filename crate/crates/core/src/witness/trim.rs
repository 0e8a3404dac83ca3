//! Trimming high-degree checks from a primitive hyperflow, patching the
//! damage, and layered superposition of narrow witnesses.

use std::sync::Arc;

use num_traits::{Signed, Zero};
use serde::Serialize;

use super::search::{find_dual_witness_on, find_narrow_dual_witness};
use super::weighting::{asymmetric_llr, is_primitive, shifted_llr, superpose, EdgeWeighting};
use crate::error::{Error, Result};
use crate::gf2::BitVector;
use crate::scalar::Rational;
use crate::tanner::TannerGraph;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TrimReport {
    pub removed_checks: usize,
    /// `F_i <= 0` on the risky set.
    pub risky_nonpositive: bool,
    /// `F_i < (-1)^{x_i} - δ/8` off the risky set.
    pub safe_margin: bool,
    /// `|U| <= 8n / (δ(k-1))`.
    pub size_bound: bool,
    pub size_limit: Rational,
}

impl TrimReport {
    pub fn holds(&self) -> bool {
        self.risky_nonpositive && self.safe_margin && self.size_bound
    }
}

#[derive(Debug, Clone)]
pub struct Trimmed {
    pub weighting: EdgeWeighting,
    pub risky: Vec<usize>,
    pub report: TrimReport,
}

/// Zeroes every check of degree above `k` in `w`, a primitive hyperflow for
/// `(-1)^x - δ/4`, and collects the error variables that lost at least `δ/8`
/// of inflow.
pub fn trim_high_degree(w: &EdgeWeighting, x: &BitVector, k: usize, delta: &Rational) -> Result<Trimmed> {
    let g = w.graph().clone();
    if x.len() != g.n() {
        return Err(Error::structural("error vector length differs from the graph"));
    }
    if k < 2 {
        return Err(Error::domain("degree bound k must be at least 2"));
    }
    if !delta.is_positive() {
        return Err(Error::domain("delta must be positive"));
    }
    let gamma = shifted_llr(x, &(-delta / Rational::from(4)));
    if !is_primitive(&g, &gamma, w)? {
        return Err(Error::structural("trim requires a primitive hyperflow for the shifted LLRs"));
    }
    let mut values = w.values().to_vec();
    let mut lost_inflow = vec![Rational::zero(); g.n()];
    let mut removed = 0;
    for j in 0..g.m() {
        if g.check_vars(j).len() <= k {
            continue;
        }
        if w.is_active(j) {
            removed += 1;
        }
        for (e, &i) in g.check_edges(j).zip(g.check_vars(j)) {
            if values[e].is_negative() {
                lost_inflow[i] -= &values[e];
            }
            values[e] = Rational::zero();
        }
    }
    let trimmed = EdgeWeighting::from_edge_values(g.clone(), values)?;
    let eighth = delta / Rational::from(8);
    let risky: Vec<usize> = (0..g.n()).filter(|&i| x.get(i) && lost_inflow[i] >= eighth).collect();

    let flows = trimmed.flows();
    let mut in_u = vec![false; g.n()];
    for &i in &risky {
        in_u[i] = true;
    }
    let risky_nonpositive = risky.iter().all(|&i| !flows[i].is_positive());
    let safe_margin = (0..g.n())
        .filter(|&i| !in_u[i])
        .all(|i| flows[i] < Rational::from(if x.get(i) { -1 } else { 1 }) - &eighth);
    let size_limit = Rational::from(8 * g.n() as i64) / (delta * Rational::from(k as i64 - 1));
    let size_bound = Rational::from(risky.len() as i64) <= size_limit;
    let report = TrimReport { removed_checks: removed, risky_nonpositive, safe_margin, size_bound, size_limit };
    debug_assert!(report.holds(), "trim inequalities failed on a primitive input: {report:?}");
    Ok(Trimmed { weighting: trimmed, risky, report })
}

/// Repairs a trimmed weighting with a witness for `asymmetric_llr(1_U, δ/8)`
/// on the checks of degree at most `k`. The sum is a dual witness for
/// `(-1)^x` whenever that witness exists.
pub fn patch(trimmed: &Trimmed, k: usize, delta: &Rational) -> Result<Option<EdgeWeighting>> {
    let g = trimmed.weighting.graph();
    let u = BitVector::from_indices(g.n(), &trimmed.risky)?;
    let gamma = asymmetric_llr(&u, &(delta / Rational::from(8)))?;
    let active: Vec<bool> = (0..g.m()).map(|j| g.check_vars(j).len() <= k).collect();
    match find_dual_witness_on(g, &gamma, &active)? {
        Some(fix) => Ok(Some(superpose(&trimmed.weighting, &fix.weighting)?)),
        None => Ok(None),
    }
}

/// Sum of narrow witnesses for the layers `U^t = N_var(U; t)`, `t < B`.
///
/// The sum has flow below `-B` on `U`, below `t + 1 - B` on `U^t ∖ U^{t-1}`
/// and zero beyond `U^B`; these are asserted.
pub fn cascade_superpose(g: &Arc<TannerGraph>, u: &[usize], b: usize) -> Result<Option<EdgeWeighting>> {
    if b == 0 {
        return Err(Error::domain("cascade depth must be at least 1"));
    }
    if u.iter().any(|&i| i >= g.n()) {
        return Err(Error::structural("variable index out of range"));
    }
    let mut total = EdgeWeighting::zero(g.clone());
    for t in 0..b {
        let layer = g.var_neighborhood(u, t);
        let y = BitVector::from_indices(g.n(), &layer)?;
        match find_narrow_dual_witness(g, &y)? {
            Some(w) => total = superpose(&total, &w.weighting)?,
            None => return Ok(None),
        }
    }

    // Layer index of each variable: 0 on U, t on U^t ∖ U^{t-1}, None past U^B.
    let mut level: Vec<Option<usize>> = vec![None; g.n()];
    for t in (0..=b).rev() {
        for i in g.var_neighborhood(u, t) {
            level[i] = Some(t);
        }
    }
    let growth = {
        let r = (g.max_var_degree() * g.max_check_degree().saturating_sub(1)) as u128;
        move |t: usize| -> u128 {
            let geo = if r <= 1 { t as u128 + 1 } else { (r.saturating_pow(t as u32 + 1) - 1) / (r - 1) };
            geo.saturating_mul(u.len() as u128)
        }
    };
    for t in 0..=b {
        assert!(g.var_neighborhood(u, t).len() as u128 <= growth(t), "neighborhood exceeds the counting bound");
    }
    let bb = b as i64;
    for (i, f) in total.flows().into_iter().enumerate() {
        match level[i] {
            Some(0) => assert!(f < Rational::from(-bb), "cascade flow {f} at {i} not below -{b}"),
            Some(t) => assert!(f < Rational::from(t as i64 + 1 - bb), "cascade flow {f} at {i} in layer {t}"),
            None => assert!(f.is_zero(), "cascade flow {f} at {i} outside the last layer"),
        }
    }
    Ok(Some(total))
}
