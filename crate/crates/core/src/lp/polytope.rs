//! Inequality description of the fundamental polytope.

use serde::{Deserialize, Serialize};

use super::simplex::{LinearProgram, LpOutcome};
use crate::caps;
use crate::error::Result;
use crate::scalar::Scalar;
use crate::tanner::TannerGraph;

/// `coeffs · x <= rhs`
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Inequality<F> {
    pub coeffs: Vec<F>,
    pub rhs: F,
}

/// Polytope `{x : a·x <= b for every row}` in `n` dimensions. The first `2n`
/// rows are the box: `-x_i <= 0` then `x_i <= 1`, for each `i` in turn.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Polytope<F> {
    pub n: usize,
    pub inequalities: Vec<Inequality<F>>,
}

impl<F: Scalar> Polytope<F> {
    /// The unit cube.
    pub fn unit_box(n: usize) -> Self {
        let mut inequalities = Vec::with_capacity(2 * n);
        for i in 0..n {
            let mut lo = vec![F::zero(); n];
            lo[i] = -F::one();
            inequalities.push(Inequality { coeffs: lo, rhs: F::zero() });
            let mut hi = vec![F::zero(); n];
            hi[i] = F::one();
            inequalities.push(Inequality { coeffs: hi, rhs: F::one() });
        }
        Polytope { n, inequalities }
    }

    pub fn len(&self) -> usize {
        self.inequalities.len()
    }

    pub fn is_empty(&self) -> bool {
        self.inequalities.is_empty()
    }

    /// Exact (or tolerance-aware, for floats) membership.
    pub fn contains(&self, x: &[F]) -> bool {
        x.len() == self.n && self.inequalities.iter().all(|row| !(row.rhs.clone() - dot(&row.coeffs, x)).is_negative_tol())
    }

    /// Rows other than the `-x_i <= 0` box rows, which the simplex enforces
    /// through its sign constraints.
    fn lp_rows(&self) -> impl Iterator<Item = &Inequality<F>> {
        self.inequalities.iter().filter(|row| {
            let mut neg = 0;
            let mut other = false;
            for c in &row.coeffs {
                if c.is_negative_tol() {
                    neg += 1;
                } else if !c.is_zero_tol() {
                    other = true;
                }
            }
            !(neg == 1 && !other && row.rhs.is_zero_tol())
        })
    }

    /// Linear program over this polytope with the given objective.
    pub fn program(&self, objective: Vec<F>) -> LinearProgram<F> {
        let mut lp = LinearProgram::new(self.n, objective);
        for row in self.lp_rows() {
            lp.add_row(row.coeffs.clone(), row.rhs.clone());
        }
        lp
    }

    /// `min c·x` over the polytope: optimum value and an optimal vertex.
    pub fn minimize(&self, c: &[F]) -> Option<(F, Vec<F>)> {
        match self.program(c.to_vec()).minimize() {
            LpOutcome::Optimal { value, x } => Some((value, x)),
            _ => None,
        }
    }
}

pub(crate) fn dot<F: Scalar>(a: &[F], x: &[F]) -> F {
    let mut acc = F::zero();
    for (c, v) in a.iter().zip(x) {
        if !c.is_zero_tol() && !v.is_zero_tol() {
            acc = acc + c.clone() * v.clone();
        }
    }
    acc
}

/// Box rows plus, for every check `j` and odd `S ⊆ N(j)`, the cut
/// `Σ_{S} x_i - Σ_{N(j)∖S} x_i <= |S| - 1`. Subsets follow the binary order
/// of their masks over `N(j)` (lowest variable = lowest bit).
pub fn build_fundamental_polytope<F: Scalar>(g: &TannerGraph) -> Result<Polytope<F>> {
    let d = g.max_check_degree();
    caps::check("odd-subset cuts per check (2^(d-1))", caps::pow2(d.saturating_sub(1)), caps::CUTS_PER_CHECK)?;
    let n = g.n();
    let rows = (0..g.m()).fold(2 * n as u128, |acc, j| acc.saturating_add(caps::pow2(g.check_vars(j).len().saturating_sub(1))));
    caps::check("fundamental polytope rows", rows, caps::POLYTOPE_ROWS)?;
    let mut p = Polytope::unit_box(n);
    for j in 0..g.m() {
        let vars = g.check_vars(j);
        let dj = vars.len();
        for mask in 1u64..(1u64 << dj) {
            let size = mask.count_ones() as i64;
            if size % 2 == 0 {
                continue;
            }
            let mut coeffs = vec![F::zero(); n];
            for (b, &i) in vars.iter().enumerate() {
                coeffs[i] = if mask >> b & 1 == 1 { F::one() } else { -F::one() };
            }
            p.inequalities.push(Inequality { coeffs, rhs: F::from_i64(size - 1) });
        }
    }
    Ok(p)
}
