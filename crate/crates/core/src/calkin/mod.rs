//! Calkin-threshold numerics: the double root `(α_d, β_d)`, the weight walk
//! of random row sums with its Krawtchouk eigenbasis, the resulting bound on
//! degenerate sums, and a Monte-Carlo check of that bound.

mod degeneracy;
mod krawtchouk;
mod threshold;

pub use degeneracy::{empirical_degeneracy, DegeneracyEstimate, DEGENERACY_CSV_HEADER};
pub use krawtchouk::{
    eigen_krawtchouk, eigenvalues, nondegeneracy_bound, transition_matrix, verify_decomposition, Krawtchouk, MarkovChain, Residuals,
};
pub use threshold::{beta_d, binary_entropy, df_d, f_d};
