//! Linear programming over the fundamental polytope: constraint generation,
//! an exact simplex, LP and ML decoding, vertex enumeration and
//! pseudoweights.

mod decode;
mod polytope;
mod pseudoweight;
pub mod simplex;
mod vertices;

pub use decode::{lp_decode, ml_decode, FailureKind, LpDecoder, LpVerdict, MlOutcome};
pub use polytope::{build_fundamental_polytope, Inequality, Polytope};
pub use pseudoweight::{bsc_pseudoweight, strength_ratio};
pub use simplex::{LinearProgram, LpOutcome};
pub use vertices::{enumerate_vertices, Pseudocodeword};
