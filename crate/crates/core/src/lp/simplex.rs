//! Dense two-phase primal simplex with Bland's rule.
//!
//! Problems have the form `max c·x` subject to `A x <= b`, `x >= 0`, with
//! arbitrary-sign `b`. Rows with negative right-hand side get an artificial
//! variable and are cleared in phase one.

use std::cmp::Ordering;

use crate::scalar::Scalar;

/// `max c·x  s.t.  rows[k].0 · x <= rows[k].1,  x >= 0`.
#[derive(Debug, Clone)]
pub struct LinearProgram<F> {
    pub num_vars: usize,
    pub rows: Vec<(Vec<F>, F)>,
    pub objective: Vec<F>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome<F> {
    Optimal { value: F, x: Vec<F> },
    Infeasible,
    Unbounded,
}

impl<F> LpOutcome<F> {
    pub fn optimal(self) -> Option<(F, Vec<F>)> {
        match self {
            LpOutcome::Optimal { value, x } => Some((value, x)),
            _ => None,
        }
    }
}

impl<F: Scalar> LinearProgram<F> {
    pub fn new(num_vars: usize, objective: Vec<F>) -> Self {
        assert_eq!(objective.len(), num_vars, "objective length");
        LinearProgram { num_vars, rows: Vec::new(), objective }
    }

    pub fn add_row(&mut self, coeffs: Vec<F>, rhs: F) {
        assert_eq!(coeffs.len(), self.num_vars, "row length");
        self.rows.push((coeffs, rhs));
    }

    /// Adds `coeff_k * x_{idx_k}` summed `<= rhs` from a sparse list.
    pub fn add_sparse_row(&mut self, terms: &[(usize, F)], rhs: F) {
        let mut coeffs = vec![F::zero(); self.num_vars];
        for (i, c) in terms {
            coeffs[*i] = coeffs[*i].clone() + c.clone();
        }
        self.rows.push((coeffs, rhs));
    }

    pub fn maximize(&self) -> LpOutcome<F> {
        Tableau::build(self).solve(&self.objective)
    }

    pub fn minimize(&self) -> LpOutcome<F> {
        let neg: Vec<F> = self.objective.iter().map(|c| -c.clone()).collect();
        match Tableau::build(self).solve(&neg) {
            LpOutcome::Optimal { value, x } => LpOutcome::Optimal { value: -value, x },
            other => other,
        }
    }
}

struct Tableau<F> {
    // m constraint rows followed by the objective row; each row holds
    // `cols` coefficients then the right-hand side.
    t: Vec<Vec<F>>,
    basis: Vec<usize>,
    num_vars: usize,
    cols: usize,
    first_artificial: usize,
}

impl<F: Scalar> Tableau<F> {
    fn build(lp: &LinearProgram<F>) -> Self {
        let m = lp.rows.len();
        let n = lp.num_vars;
        let num_art = lp.rows.iter().filter(|(_, b)| b.is_negative_tol()).count();
        let first_artificial = n + m;
        let cols = n + m + num_art;
        let mut t = Vec::with_capacity(m + 1);
        let mut basis = Vec::with_capacity(m);
        let mut next_art = first_artificial;
        for (k, (a, b)) in lp.rows.iter().enumerate() {
            let mut row = vec![F::zero(); cols + 1];
            let flip = b.is_negative_tol();
            for (i, v) in a.iter().enumerate() {
                row[i] = if flip { -v.clone() } else { v.clone() };
            }
            row[n + k] = if flip { -F::one() } else { F::one() };
            row[cols] = if flip { -b.clone() } else { b.clone() };
            if flip {
                row[next_art] = F::one();
                basis.push(next_art);
                next_art += 1;
            } else {
                basis.push(n + k);
            }
            t.push(row);
        }
        t.push(vec![F::zero(); cols + 1]);
        Tableau { t, basis, num_vars: n, cols, first_artificial }
    }

    fn m(&self) -> usize {
        self.basis.len()
    }

    /// Loads reduced costs for `cost` (indexed by column) into the objective row.
    fn load_objective(&mut self, cost: &[F]) {
        let m = self.m();
        let mut obj = vec![F::zero(); self.cols + 1];
        for (j, c) in cost.iter().enumerate() {
            obj[j] = c.clone();
        }
        for r in 0..m {
            let cb = self.basis[r];
            if cb < cost.len() && !cost[cb].is_zero_tol() {
                let c = cost[cb].clone();
                for (o, v) in obj.iter_mut().zip(&self.t[r]) {
                    if !v.is_zero_tol() {
                        o.sub_mul_assign(&c, v);
                    }
                }
            }
        }
        self.t[m] = obj;
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.t[r][c].clone();
        for v in self.t[r].iter_mut() {
            if !v.is_zero_tol() {
                v.div_assign_ref(&p);
            }
        }
        let nz: Vec<usize> = (0..=self.cols).filter(|&j| !self.t[r][j].is_zero_tol()).collect();
        let pivot_row = std::mem::take(&mut self.t[r]);
        for (i, row) in self.t.iter_mut().enumerate() {
            if i == r || row[c].is_zero_tol() {
                continue;
            }
            let f = row[c].clone();
            for &j in &nz {
                row[j].sub_mul_assign(&f, &pivot_row[j]);
            }
            // Guard against float drift on the pivot column.
            row[c] = F::zero();
        }
        self.t[r] = pivot_row;
        self.basis[r] = c;
    }

    /// Runs Bland's rule over entering columns `< limit`. Returns false if
    /// the objective is unbounded.
    fn optimize(&mut self, limit: usize) -> bool {
        let m = self.m();
        loop {
            let Some(c) = (0..limit).find(|&j| self.t[m][j].is_positive_tol()) else {
                return true;
            };
            let mut best: Option<(usize, F)> = None;
            for r in 0..m {
                let a = &self.t[r][c];
                if !a.is_positive_tol() {
                    continue;
                }
                let mut ratio = self.t[r][self.cols].clone();
                ratio.div_assign_ref(a);
                let better = match &best {
                    None => true,
                    Some((br, bv)) => match (ratio.clone() - bv.clone()).sign() {
                        Ordering::Less => true,
                        Ordering::Equal => self.basis[r] < self.basis[*br],
                        Ordering::Greater => false,
                    },
                };
                if better {
                    best = Some((r, ratio));
                }
            }
            match best {
                None => return false,
                Some((r, _)) => self.pivot(r, c),
            }
        }
    }

    fn solve(mut self, objective: &[F]) -> LpOutcome<F> {
        let m = self.m();
        if self.first_artificial < self.cols {
            let mut phase1 = vec![F::zero(); self.cols];
            for c in phase1.iter_mut().skip(self.first_artificial) {
                *c = -F::one();
            }
            self.load_objective(&phase1);
            self.optimize(self.cols);
            // Objective row rhs holds minus the phase-one value.
            if self.t[m][self.cols].is_positive_tol() {
                return LpOutcome::Infeasible;
            }
            // Drive remaining (zero-valued) artificials out of the basis.
            for r in 0..m {
                if self.basis[r] >= self.first_artificial {
                    if let Some(c) = (0..self.first_artificial).find(|&j| !self.t[r][j].is_zero_tol()) {
                        self.pivot(r, c);
                    }
                }
            }
        }
        self.load_objective(objective);
        // A redundant row may keep an artificial basic at zero; it stays
        // there harmlessly since artificial columns never re-enter.
        if !self.optimize(self.first_artificial) {
            return LpOutcome::Unbounded;
        }
        let mut x = vec![F::zero(); self.num_vars];
        for r in 0..m {
            if self.basis[r] < self.num_vars {
                x[self.basis[r]] = self.t[r][self.cols].clone();
            }
        }
        let value = -self.t[m][self.cols].clone();
        LpOutcome::Optimal { value, x }
    }
}
