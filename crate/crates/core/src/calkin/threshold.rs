//! The threshold function `f_d` and its double root `(α_d, β_d)`.

use num_traits::{Float, FloatConst};

use crate::error::{Error, Result};

fn c<T: Float>(x: f64) -> T {
    T::from(x).expect("float constant")
}

/// Binary entropy in bits.
pub fn binary_entropy<T: Float>(a: T) -> T {
    if a <= T::zero() || a >= T::one() {
        return T::zero();
    }
    -(a * a.log2() + (T::one() - a) * (T::one() - a).log2())
}

fn check_alpha<T: Float>(alpha: T) -> Result<()> {
    if !(alpha > T::zero() && alpha < T::one()) {
        return Err(Error::domain("alpha must lie strictly between 0 and 1"));
    }
    Ok(())
}

/// `f_d(α, β) = -1 + H(α) + β log2(1 + (1 - 2α)^d)`.
pub fn f_d<T: Float>(alpha: T, beta: T, d: u32) -> Result<T> {
    check_alpha(alpha)?;
    let x = T::one() - c::<T>(2.0) * alpha;
    Ok(-T::one() + binary_entropy(alpha) + beta * (T::one() + x.powi(d as i32)).log2())
}

/// `∂f_d/∂α` at `(α, β)`.
pub fn df_d<T: Float + FloatConst>(alpha: T, beta: T, d: u32) -> Result<T> {
    check_alpha(alpha)?;
    let x = T::one() - c::<T>(2.0) * alpha;
    let dh = ((T::one() - alpha) / alpha).log2();
    let dd = T::from(d).expect("degree");
    Ok(dh - beta * c::<T>(2.0) * dd * x.powi(d as i32 - 1) / ((T::one() + x.powi(d as i32)) * T::LN_2()))
}

/// `β` solving `f_d(α, β) = 0` for fixed `α`.
fn beta_of<T: Float>(alpha: T, d: u32) -> T {
    let x = T::one() - c::<T>(2.0) * alpha;
    (T::one() - binary_entropy(alpha)) / (T::one() + x.powi(d as i32)).log2()
}

fn stationarity<T: Float + FloatConst>(alpha: T, d: u32) -> T {
    df_d(alpha, beta_of(alpha, d), d).expect("alpha inside (0, 1/2)")
}

/// `(α_d, β_d)`: the point in `0 < α < 1/2` where `f_d` and `∂f_d/∂α`
/// vanish together. `β` is eliminated through `f_d = 0` and the remaining
/// equation in `α` is bisected to `tol`.
pub fn beta_d<T: Float + FloatConst>(d: u32, tol: T) -> Result<(T, T)> {
    if d < 3 {
        return Err(Error::domain("check degree must be at least 3"));
    }
    if !(tol > T::zero()) {
        return Err(Error::domain("tolerance must be positive"));
    }
    // Coarse geometric scan from 1e-12 up to 1/2 for the first sign change,
    // then bisection. α_d shrinks quickly with d, so a linear grid misses it.
    const GRID: usize = 2000;
    const FLOOR: f64 = 1e-12;
    let at = |k: usize| c::<T>(0.5 * (2.0 * FLOOR).powf((GRID - k) as f64 / GRID as f64));
    let mut bracket = None;
    let mut prev = stationarity(at(1), d);
    for k in 2..GRID {
        let cur = stationarity(at(k), d);
        if prev > T::zero() && cur <= T::zero() {
            bracket = Some((at(k - 1), at(k)));
            break;
        }
        prev = cur;
    }
    let (mut lo, mut hi) =
        bracket.ok_or_else(|| Error::Numeric(format!("no sign change of the stationarity condition for d = {d}")))?;
    for _ in 0..200 {
        if hi - lo <= tol {
            break;
        }
        let mid = (lo + hi) / c::<T>(2.0);
        if mid <= lo || mid >= hi {
            break;
        }
        if stationarity(mid, d) > T::zero() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let alpha = (lo + hi) / c::<T>(2.0);
    Ok((alpha, beta_of(alpha, d)))
}
