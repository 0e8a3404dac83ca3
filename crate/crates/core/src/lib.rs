//! Exact LP decoding of LDPC codes over the fundamental polytope, with dual
//! witnesses, hyperflows, redundant checks, Calkin-threshold numerics and a
//! seeded Monte-Carlo harness for the binary symmetric channel.

pub mod calkin;
pub mod caps;
pub mod combinatorics;
pub mod error;
pub mod gf2;
pub mod lp;
pub mod rng;
pub mod scalar;
pub mod sim;
pub mod stats;
pub mod tanner;
pub mod witness;

pub use error::{Error, Result};
pub use gf2::BitVector;
pub use scalar::{Rational, Scalar};
pub use tanner::TannerGraph;

/// Exact LLR vector.
pub type LlrVector = Vec<Rational>;
/// Fundamental polytope over exact rationals.
pub type ExactPolytope = lp::Polytope<Rational>;
/// Fundamental polytope over `f64`, for quick experiments.
pub type FloatPolytope = lp::Polytope<f64>;
/// Exact LP decoder.
pub type ExactDecoder = lp::LpDecoder<Rational>;
/// `f64` LP decoder.
pub type FloatDecoder = lp::LpDecoder<f64>;
