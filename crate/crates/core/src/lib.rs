//! Projective point sets `P_{n,m}` over `Z_m`, the incidence matrix `A` of
//! orthogonality modulo `m`, its Gram matrix `B = A·Aᵀ`, and exact
//! verification of the closed-form spectrum of `B`.
//!
//! All arithmetic is exact. Matrix routines are generic over [`Scalar`]
//! (`i64`, `i128`, [`BigInt`]); the aliases below name the instantiations
//! used throughout.

pub mod count;
pub mod error;
pub mod export;
pub mod matrix;
pub mod modular;
pub mod projective;
pub mod rank;
pub mod scalar;
pub mod spectrum;

pub use num_bigint::{BigInt, BigUint};

pub use error::{Error, Result};
pub use matrix::{Matrix, Permutation};
pub use modular::{factorize, Modulus, PrimePower, Valuation};
pub use projective::{theta, KPartition, Point, PointOrder, ProjectiveSpace, DEFAULT_GUARDRAIL};
pub use scalar::Scalar;
pub use spectrum::{SpectrumTable, VerificationReport};

/// Arbitrary-precision matrix; the type every verification runs on.
pub type ExactMatrix = Matrix<BigInt>;
/// Machine-word matrix for small inputs such as `A`.
pub type SmallMatrix = Matrix<i64>;
/// Arbitrary-precision vector, e.g. an eigenvector.
pub type ExactVector = Vec<BigInt>;
