//! LP and ML decoders under the all-zeros-codeword convention.

use serde::{Deserialize, Serialize};

use super::polytope::{build_fundamental_polytope, Polytope};
use super::simplex::LpOutcome;
use crate::caps;
use crate::error::{Error, Result};
use crate::gf2::{nullspace_basis, BitVector};
use crate::scalar::Scalar;
use crate::tanner::TannerGraph;

/// Why zero was not the unique LP optimum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FailureKind {
    /// Some point of the polytope has negative cost.
    NegativeCost,
    /// The optimum is zero but a nonzero point attains it.
    NonUniqueZero,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status")]
pub enum LpVerdict<F> {
    Success,
    Failure { kind: FailureKind, cost: F, certificate: Vec<F> },
}

impl<F> LpVerdict<F> {
    pub fn is_success(&self) -> bool {
        matches!(self, LpVerdict::Success)
    }
}

/// LP decoder bound to one graph; the polytope is built once.
#[derive(Debug, Clone)]
pub struct LpDecoder<F> {
    polytope: Polytope<F>,
}

impl<F: Scalar> LpDecoder<F> {
    pub fn new(g: &TannerGraph) -> Result<Self> {
        Ok(LpDecoder { polytope: build_fundamental_polytope(g)? })
    }

    pub fn polytope(&self) -> &Polytope<F> {
        &self.polytope
    }

    /// Success iff 0 is the unique minimizer of `<x, γ>` over the polytope.
    ///
    /// Stage one minimizes the cost. If the minimum is zero, stage two
    /// maximizes `Σ x_i` over the zero-cost face; a positive optimum there
    /// exhibits a second minimizer.
    pub fn decode(&self, gamma: &[F]) -> Result<LpVerdict<F>> {
        let n = self.polytope.n;
        if gamma.len() != n {
            return Err(Error::structural(format!("LLR vector has length {}, expected {n}", gamma.len())));
        }
        let (cost, x) = self
            .polytope
            .minimize(gamma)
            .ok_or_else(|| Error::Numeric("stage-one LP over the fundamental polytope did not solve".into()))?;
        if cost.is_negative_tol() {
            return Ok(LpVerdict::Failure { kind: FailureKind::NegativeCost, cost, certificate: x });
        }
        let mut lp = self.polytope.program(vec![F::one(); n]);
        lp.add_row(gamma.to_vec(), F::zero());
        match lp.maximize() {
            LpOutcome::Optimal { value, x } if value.is_positive_tol() => {
                Ok(LpVerdict::Failure { kind: FailureKind::NonUniqueZero, cost: F::zero(), certificate: x })
            }
            LpOutcome::Optimal { .. } => Ok(LpVerdict::Success),
            _ => Err(Error::Numeric("stage-two LP over the optimal face did not solve".into())),
        }
    }
}

/// One-shot LP decode.
pub fn lp_decode<F: Scalar>(g: &TannerGraph, gamma: &[F]) -> Result<LpVerdict<F>> {
    LpDecoder::new(g)?.decode(gamma)
}

/// All minimum-cost codewords.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MlOutcome<F> {
    pub cost: F,
    pub minimizers: Vec<BitVector>,
}

impl<F> MlOutcome<F> {
    pub fn unique(&self) -> Option<&BitVector> {
        match self.minimizers.as_slice() {
            [x] => Some(x),
            _ => None,
        }
    }

    /// True iff the zero word is the only minimizer.
    pub fn is_unique_zero(&self) -> bool {
        self.unique().is_some_and(BitVector::is_zero)
    }
}

/// Brute-force ML decoding over the code, walking its nullspace basis.
pub fn ml_decode<F: Scalar>(g: &TannerGraph, gamma: &[F]) -> Result<MlOutcome<F>> {
    let n = g.n();
    if gamma.len() != n {
        return Err(Error::structural(format!("LLR vector has length {}, expected {n}", gamma.len())));
    }
    caps::check("maximum-likelihood block length (2^n)", caps::pow2(n), caps::ML_CODEWORDS)?;
    let basis = nullspace_basis(g.checks(), n)?;
    let mut best = MlOutcome { cost: F::zero(), minimizers: vec![BitVector::zeros(n)] };
    let r = basis.len();
    let mut acc = BitVector::zeros(n);
    let mut cost = F::zero();
    for step in 1u64..(1u64 << r) {
        let bit = step.trailing_zeros() as usize;
        for i in basis[bit].ones_iter() {
            if acc.get(i) {
                cost = cost - gamma[i].clone();
            } else {
                cost = cost + gamma[i].clone();
            }
        }
        acc.xor_assign(&basis[bit]);
        match (cost.clone() - best.cost.clone()).sign() {
            std::cmp::Ordering::Less => {
                best.cost = cost.clone();
                best.minimizers = vec![acc.clone()];
            }
            std::cmp::Ordering::Equal => best.minimizers.push(acc.clone()),
            std::cmp::Ordering::Greater => {}
        }
    }
    best.minimizers.sort();
    Ok(best)
}
