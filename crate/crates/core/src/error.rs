use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("invalid field modulus: {0}")]
    InvalidModulus(String),
    #[error("field order {order} exceeds the configured cap {cap}")]
    FieldTooLarge { order: u64, cap: u64 },
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("value {value} is not a canonical residue for this field")]
    InvalidScalar { value: u64 },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is singular")]
    Singular,
    #[error("polynomial is constant")]
    ConstantPolynomial,
    #[error("polynomial is zero")]
    ZeroPolynomial,
    #[error("form has {0} variables, expected 2")]
    NotBivariate(usize),
    #[error("form is not homogeneous: {0}")]
    NotHomogeneous(String),
    #[error("discriminant is not a perfect square")]
    NotPerfectSquare,
    #[error("{what}: {size} exceeds the enumeration cap {cap}")]
    BoundExceeded { what: String, size: u128, cap: u128 },
    #[error("{p} is not congruent to 2 mod 3")]
    WrongResidue { p: u64 },
    #[error("matrix is not alternating: {0}")]
    NotAlternating(String),
    #[error("pencil is not fully nondegenerate")]
    DegeneratePencil,
    #[error("centroid is not a field")]
    CentroidNotField,
    #[error("pencils disagree on codomain dimension or field")]
    MixedCodomain,
    #[error("polynomial is not irreducible")]
    NotIrreducible,
    #[error("subspace is not proper")]
    NotProper,
    #[error("degree {0} is not supported by the closed forms")]
    UnsupportedDegree(u32),
    #[error("order exponent {0} is not supported")]
    UnsupportedOrder(u32),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(
        "closed form {closed} disagrees with brute force {brute} (p = {p}, exponent {exponent})"
    )]
    Disagreement {
        p: u64,
        exponent: u32,
        closed: u64,
        brute: u64,
    },
}
