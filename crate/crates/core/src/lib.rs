//! Exact-arithmetic toolkit for deciding when a toric Kcsc orbifold admits a
//! constant-scalar-curvature desingularization of its quotient singularities,
//! and for computing every coefficient the gluing construction needs.
//!
//! The pipeline mirrors the geometry: parse a simplicial fan, classify each
//! maximal cone's quotient singularity ([`fan`]), build the anticanonical
//! moment polytope and its barycenter ([`polytope`]), solve the balancing
//! conditions for positive weights ([`balancing`]), and evaluate the
//! mode-wise spectral data and closed-form tuning coefficients of the
//! construction ([`spectral`], [`tuning`]). Everything is exact: integers
//! are arbitrary precision, scalars are rationals, and quantities involving
//! powers of pi or fractional powers of the gluing parameter stay symbolic
//! until presentation.
//!
//! The linear algebra underneath ([`matrix`], [`snf`], [`simplex`]) is
//! generic over the scalar type through `num-traits`; the concrete aliases
//! below pin the exact instantiations used throughout.

pub mod balancing;
pub mod error;
pub mod exact;
pub mod fan;
pub mod matrix;
pub mod polytope;
pub mod rat;
pub mod report;
pub mod simplex;
pub mod snf;
pub mod spectral;
pub mod tuning;

/// Arbitrary-precision integer scalar.
pub type Int = num_bigint::BigInt;
/// Exact rational scalar (always kept in lowest terms, positive denominator).
pub type Rat = num_rational::BigRational;
/// Dense matrix of arbitrary-precision integers.
pub type IntMatrix = matrix::Matrix<Int>;
/// Dense matrix of exact rationals.
pub type RatMatrix = matrix::Matrix<Rat>;
/// Vector of exact rationals.
pub type RatVector = Vec<Rat>;

pub use error::Error;
