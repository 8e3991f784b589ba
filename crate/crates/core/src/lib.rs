//! Exact construction and verification of mutually unbiased bases of
//! unitary operators over the cyclic-shift subspace of M(d, ℂ), together
//! with the Choi-vector bridge to mutually unbiased families of maximally
//! entangled states.
//!
//! All core arithmetic is exact: scalars live in the cyclotomic field
//! ℚ(e^{2πi/d}) extended by a symbolic 1/√d, with arbitrary-precision
//! rational coefficients.  Floating point appears only in the one-way
//! numerical bridge [`cyclo::CycloScalar::to_complex`].
//!
//! Module layout mirrors the mathematical layering:
//!
//! * [`cyclo`] — the exact scalar field;
//! * [`hilbert`] — kets of H_d, the mutually unbiased state bases, and the
//!   convolution monoid on H_d;
//! * [`matspace`] — the d-dimensional operator subspace spanned by powers
//!   of the cyclic shift, its dense form, and the coefficient isomorphism;
//! * [`muub`] — the maximal family of mutually unbiased unitary bases with
//!   exact verification reports and the r = 0 counterexample;
//! * [`entangle`] — generalized Pauli words, Choi vectors, Bell states,
//!   maximally entangled state bases, and partial-trace audits.

pub mod cyclo;
pub mod hilbert;
pub mod matspace;
pub mod muub;
pub mod entangle;
pub mod error;

pub use error::{Error, Result};
