//! Exact scalar arithmetic plus the linear-algebra and polynomial kernel
//! used by every higher layer.
//!
//! Everything here is field-generic over [`Field`]: the rationals (backed by
//! arbitrary-precision integers) or a prime field of small order. Nothing
//! divides by an integer constant, so prime fields with `p <= n` are handled
//! correctly.

mod intfactor;
mod matrix;
mod poly;
mod scalar;
mod subspace;

pub use matrix::{Matrix, Rref};
pub use poly::{Polynomial, RootSplit};
pub use scalar::{parse_scalar, Field, Scalar, MAX_PRIME};
pub use subspace::Subspace;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MathError {
    #[error("field mismatch: expected {expected}, found {found}")]
    FieldMismatch { expected: Field, found: Field },
    #[error("ragged matrix: row {row} has {found} entries, expected {expected}")]
    Ragged {
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("matrix is {rows}x{cols}, expected a square matrix")]
    NotSquare { rows: usize, cols: usize },
    #[error("division by the zero polynomial")]
    ZeroDivisor,
    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("modulus {0} exceeds the supported prime-field range")]
    ModulusTooLarge(u32),
    #[error("matrix is singular")]
    Singular,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
}
