//! Exact linear algebra over Gaussian rationals and rational functions.

mod matrix;
mod poly;
mod scalar;
mod subspace;

pub use matrix::{bareiss_rank, Domain, Matrix};
pub use poly::{Monomial, Poly, RatFn};
pub use scalar::{Cq, Field};
pub use subspace::Subspace;
