//! Error type shared by every module in the crate.

use thiserror::Error;

/// Crate-wide error enumeration.
///
/// Constructors validate their inputs eagerly, so errors surface at the
/// boundary of each operation rather than deep inside the arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// The requested dimension is outside the domain of the construction.
    #[error("invalid dimension d = {d}: {reason}")]
    InvalidDimension { d: u64, reason: &'static str },

    /// Two operands live over different dimensions.
    #[error("dimension mismatch: d = {left} vs d = {right}")]
    DimensionMismatch { left: u64, right: u64 },

    /// An index parameter fell outside its admissible range.
    #[error("index {name} = {value} out of range 0..{bound}")]
    IndexOutOfRange {
        name: &'static str,
        value: i64,
        bound: u64,
    },

    /// The r = 0 basis of the state construction maps to non-unitary
    /// operators, so no unitary basis exists for that index.
    #[error("r = 0 yields a non-unitary operator family; see the counterexample API")]
    NotUnitaryFamily,

    /// A basis was asked to be verified against itself.
    #[error("verification requires two distinct bases")]
    SameBasis,

    /// An operator expected to be unitary failed the exact U†U = 𝕀 check.
    #[error("operator is not unitary")]
    NotUnitary,

    /// The requested family is degenerate (e.g. the identity word a = b = 0,
    /// whose powers never leave the span of 𝕀).
    #[error("degenerate family: {reason}")]
    DegenerateFamily { reason: &'static str },

    /// Two scalars carry different parities of the symbolic √d factor, so
    /// their sum leaves the representable set.  Zero is parity-neutral.
    #[error("cannot add scalars with √d powers {left} and {right} of different parity")]
    RadicalParityMismatch { left: u32, right: u32 },

    /// A structurally invalid object was handed to a constructor or decoder.
    #[error("malformed input: {reason}")]
    Malformed { reason: &'static str },
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
