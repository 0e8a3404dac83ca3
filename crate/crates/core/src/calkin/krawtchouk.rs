//! The weight walk of sums of random `d`-subsets and its Krawtchouk
//! eigenbasis.
//!
//! Adding a uniformly random weight-`d` word to a word of weight `q` yields
//! weight `p` with probability
//! `a_pq = C(q, (q+d-p)/2) C(n-q, (d-q+p)/2) / C(n, d)` when `q + d - p` is
//! even. The matrix `A = (a_pq)` has eigenvectors `e_i` with components
//! `e_ij = Σ_s (-1)^s C(i,s) C(n-i, j-s)` and eigenvalues
//! `λ_i = e_i(d) / C(n, d)`; moreover `U² = 2^n I` for `U[j][i] = e_ij`.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::{Rational, Scalar};

pub(crate) fn binom(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for t in 0..k {
        acc *= BigUint::from(n - t);
        acc /= BigUint::from(t + 1);
    }
    acc
}

/// `log2` of a nonnegative big integer, accurate for any size.
pub(crate) fn log2_big(x: &BigUint) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = x.bits();
    if bits <= 1000 {
        return x.to_f64().expect("finite").log2();
    }
    let shift = bits - 64;
    (x >> shift).to_f64().expect("finite").log2() + shift as f64
}

/// Krawtchouk value `Σ_s (-1)^s C(i,s) C(n-i, j-s)`.
pub(crate) fn krawtchouk(n: usize, i: usize, j: usize) -> BigInt {
    let mut acc = BigInt::zero();
    for s in 0..=i.min(j) {
        let term = BigInt::from(binom(i, s) * binom(n - i, j - s));
        if s % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

fn check_nd(n: usize, d: usize) -> Result<()> {
    if d == 0 || d > n {
        return Err(Error::domain("need 1 <= d <= n"));
    }
    Ok(())
}

/// Column-stochastic transition matrix of the weight walk.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MarkovChain {
    pub n: usize,
    pub d: usize,
    /// `a[p][q]`: probability of moving from weight `q` to weight `p`.
    pub a: Vec<Vec<f64>>,
    exact: Vec<Vec<Rational>>,
}

impl MarkovChain {
    pub fn exact(&self) -> &[Vec<Rational>] {
        &self.exact
    }

    /// Distribution of the weight after `t` steps from weight 0: column 0
    /// of `A^t`.
    pub fn distribution_after(&self, t: usize) -> Vec<f64> {
        let mut v = vec![0.0; self.n + 1];
        v[0] = 1.0;
        for _ in 0..t {
            v = (0..=self.n).map(|p| (0..=self.n).map(|q| self.a[p][q] * v[q]).sum()).collect();
        }
        v
    }
}

pub fn transition_matrix(n: usize, d: usize) -> Result<MarkovChain> {
    check_nd(n, d)?;
    let total = BigInt::from(binom(n, d));
    let mut exact = vec![vec![Rational::zero(); n + 1]; n + 1];
    for (p, row) in exact.iter_mut().enumerate() {
        for (q, cell) in row.iter_mut().enumerate() {
            if p > q + d || !(q + d - p).is_multiple_of(2) {
                continue;
            }
            let down = (q + d - p) / 2;
            if down > d {
                continue;
            }
            let up = d - down;
            let num = binom(q, down) * binom(n - q, up);
            if !num.is_zero() {
                *cell = Rational::from_big(BigRational::new(BigInt::from(num), total.clone()));
            }
        }
    }
    let a = exact.iter().map(|r| r.iter().map(<Rational as Scalar>::to_f64).collect()).collect();
    Ok(MarkovChain { n, d, a, exact })
}

/// Eigenvalues and eigenvectors of the weight walk.
#[derive(Debug, Clone, PartialEq)]
pub struct Krawtchouk {
    pub n: usize,
    pub d: usize,
    pub lambda: Vec<Rational>,
    /// `u[j][i] = e_ij`; column `i` is the eigenvector for `λ_i`.
    pub u: Vec<Vec<BigInt>>,
}

impl Krawtchouk {
    pub fn lambda_f64(&self) -> Vec<f64> {
        self.lambda.iter().map(<Rational as Scalar>::to_f64).collect()
    }

    /// `a_p^{(t)} = 2^{-n} Σ_i e_ip λ_i^t e_0i`, exactly.
    pub fn walk_probability(&self, p: usize, t: usize) -> Rational {
        let mut acc = BigRational::zero();
        for i in 0..=self.n {
            let lam = self.lambda[i].to_big();
            let term = BigRational::from_integer(&self.u[p][i] * &self.u[i][0]) * num_traits::pow(lam, t);
            acc += term;
        }
        Rational::from_big(acc / BigRational::from_integer(BigInt::one() << self.n))
    }
}

/// `λ_0..λ_n` alone.
pub fn eigenvalues(n: usize, d: usize) -> Result<Vec<Rational>> {
    check_nd(n, d)?;
    let total = BigInt::from(binom(n, d));
    Ok((0..=n).map(|i| Rational::from_big(BigRational::new(krawtchouk(n, i, d), total.clone()))).collect())
}

pub fn eigen_krawtchouk(n: usize, d: usize) -> Result<Krawtchouk> {
    let lambda = eigenvalues(n, d)?;
    let u = (0..=n).map(|j| (0..=n).map(|i| krawtchouk(n, i, j)).collect()).collect();
    Ok(Krawtchouk { n, d, lambda, u })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Residuals {
    /// `max |A - U Λ (2^{-n} U)|`
    pub reconstruction: f64,
    /// `max |U (2^{-n} U) - I|`
    pub inverse: f64,
}

/// Max-norm residuals of the eigendecomposition, in floating point.
pub fn verify_decomposition(n: usize, d: usize) -> Result<Residuals> {
    if n > 12 {
        return Err(Error::domain("decomposition check limited to n <= 12"));
    }
    let chain = transition_matrix(n, d)?;
    let k = eigen_krawtchouk(n, d)?;
    let lam = k.lambda_f64();
    let u: Vec<Vec<f64>> = k.u.iter().map(|r| r.iter().map(|x| x.to_f64().expect("small")).collect()).collect();
    let scale = (2.0f64).powi(-(n as i32));
    let mut reconstruction = 0.0f64;
    let mut inverse = 0.0f64;
    for p in 0..=n {
        for q in 0..=n {
            let mut a = 0.0;
            let mut id = 0.0;
            for i in 0..=n {
                a += u[p][i] * lam[i] * u[i][q] * scale;
                id += u[p][i] * u[i][q] * scale;
            }
            reconstruction = reconstruction.max((a - chain.a[p][q]).abs());
            inverse = inverse.max((id - if p == q { 1.0 } else { 0.0 }).abs());
        }
    }
    Ok(Residuals { reconstruction, inverse })
}

/// `log2` of `2 (n+1)^k Σ_i 2^{-n} C(n,i) Σ_{t=g}^{m} C(m,t) |λ_i|^t`, an
/// upper bound on the probability that some sum of at least `g` of `m`
/// random weight-`d` rows has weight at most `k`.
pub fn nondegeneracy_bound(n: usize, m: usize, d: usize, g: usize, k: usize) -> Result<f64> {
    if g > m {
        return Err(Error::domain("need g <= m"));
    }
    let lambda = eigenvalues(n, d)?;
    let log_binom_m: Vec<f64> = (0..=m).map(|t| log2_big(&binom(m, t))).collect();
    let mut terms = Vec::new();
    for i in 0..=n {
        let lam = lambda[i].to_big().abs();
        let log_lam = if lam.is_zero() {
            f64::NEG_INFINITY
        } else {
            log2_big(&lam.numer().to_biguint().expect("nonneg")) - log2_big(&lam.denom().to_biguint().expect("pos"))
        };
        let base = log2_big(&binom(n, i)) - n as f64;
        for t in g..=m {
            let power = if t == 0 { 0.0 } else { t as f64 * log_lam };
            if power == f64::NEG_INFINITY {
                continue;
            }
            terms.push(base + log_binom_m[t] + power);
        }
    }
    let peak = terms.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    if peak == f64::NEG_INFINITY {
        return Ok(f64::NEG_INFINITY);
    }
    let sum: f64 = terms.iter().map(|x| (x - peak).exp2()).sum();
    Ok(1.0 + k as f64 * ((n + 1) as f64).log2() + peak + sum.log2())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binom(5, 2), BigUint::from(10u32));
        assert_eq!(binom(3, 5), BigUint::zero());
        assert!((log2_big(&binom(2000, 1000)) - 1994.5).abs() < 1.0);
    }

    #[test]
    fn first_column_is_deterministic() {
        let c = transition_matrix(7, 3).unwrap();
        for p in 0..=7 {
            assert_eq!(c.a[p][0], if p == 3 { 1.0 } else { 0.0 });
        }
    }

    #[test]
    fn columns_sum_to_one_exactly() {
        for n in 3..10 {
            for d in 1..=n {
                let c = transition_matrix(n, d).unwrap();
                for q in 0..=n {
                    let s: Rational = (0..=n).map(|p| c.exact()[p][q].clone()).sum();
                    assert_eq!(s, Rational::from(1), "n {n} d {d} q {q}");
                }
            }
        }
    }

    #[test]
    fn eigenvalue_endpoints() {
        for n in 3..10 {
            for d in 1..=n {
                let k = eigen_krawtchouk(n, d).unwrap();
                assert_eq!(k.lambda[0], Rational::from(1));
                assert_eq!(k.lambda[n], Rational::from(if d % 2 == 0 { 1 } else { -1 }));
                for j in 0..=n {
                    assert_eq!(k.u[j][0], BigInt::from(binom(n, j)));
                }
            }
        }
    }

    #[test]
    fn small_decomposition() {
        let r = verify_decomposition(4, 3).unwrap();
        assert!(r.reconstruction < 1e-9 && r.inverse < 1e-9);
    }

    #[test]
    fn bound_shrinks_with_g() {
        let a = nondegeneracy_bound(20, 14, 3, 2, 1).unwrap();
        let b = nondegeneracy_bound(20, 14, 3, 6, 1).unwrap();
        assert!(a.is_finite() && b.is_finite());
        assert!(b <= a);
    }
}
