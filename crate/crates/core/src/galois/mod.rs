//! Finite fields `F_q` and dense linear algebra over them.

mod field;
mod matrix;
mod subspace;

pub(crate) use field::prime_factors;
pub use field::{Field, Scalar};
pub use matrix::{dot, solve_linear, Echelon, LinearSolution, Mat};
pub use subspace::{gaussian_binomial, ProjectivePoints, Subspaces};
