//! Exact finite computations on the cube complexes `X_n` acted on by the
//! Houghton groups: eventual injections, cubical regions, integral
//! homology, and the blanket cover used to bound BNSR-invariants.
//!
//! Matrix and character types are generic over the integer scalar; the
//! aliases below fix the usual choices.

pub mod complex;
pub mod error;
pub mod harness;
pub mod houghton;
pub mod morse;
pub mod scalar;
pub mod topology;

pub use error::{Error, Result};
pub use scalar::Scalar;

use num_bigint::BigInt;

/// Matrices over machine integers; reductions report `Error::Overflow`.
pub type MachineMatrix = topology::IntegerMatrix<i64>;
pub type WideMatrix = topology::IntegerMatrix<i128>;
/// Matrices over arbitrary-precision integers.
pub type BigMatrix = topology::IntegerMatrix<BigInt>;
pub type MachineSmithForm = topology::SmithForm<i64>;
pub type BigSmithForm = topology::SmithForm<BigInt>;
pub type MachineCharacter = houghton::Character<i64>;
pub type BigCharacter = houghton::Character<BigInt>;
