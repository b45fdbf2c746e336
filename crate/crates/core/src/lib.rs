//! Exact computations behind the isoclinism census of semi-extraspecial
//! `p`-groups with derived subgroup of order `p^2`.
//!
//! Everything works at the level of commutator bimaps: a class-2 group of
//! exponent `p` is represented by its alternating pencil of structure
//! matrices, and group-theoretic questions become linear algebra and
//! polynomial arithmetic over finite fields.
//!
//! * [`galois`]: prime and extension fields, dense matrices, subspaces.
//! * [`polyring`]: univariate polynomials, factoring, homogeneous forms.
//! * [`moebius`]: the semilinear substitution action on binary forms.
//! * [`pencils`]: alternating pencils, Pfaffians, centroids, ses tests.
//! * [`constructions`]: Heisenberg pencils over local algebras and friends.
//! * [`census`]: closed-form class counts and the brute-force enumerator.

pub mod census;
pub mod constructions;
pub mod error;
pub mod galois;
pub mod limits;
pub mod moebius;
pub mod pencils;
pub mod polyring;

pub use error::{Error, Result};
pub use galois::{Field, Mat, Scalar};
pub use limits::Limits;
pub use moebius::{FormIdeal, SemiLin2};
pub use pencils::{AltPencil, RectBimap};

pub use polyring::{HomForm, UniPoly};
