//! Polynomials over finite fields: univariate arithmetic and factoring,
//! sparse homogeneous forms, and symbolic determinants.

mod factor;
mod form;
pub use factor::PrimaryDecomposition;
pub(crate) mod mpoly;
mod parse;
mod unipoly;

pub use parse::Parsed;

pub use form::{form_sqrt, HomForm};
pub use unipoly::{
    enumerate_monic_irreducibles, enumerate_monic_irreducibles_capped, necklace_count, UniPoly,
};
pub(crate) use unipoly::{first_monic_irreducible, monic_from_index};
