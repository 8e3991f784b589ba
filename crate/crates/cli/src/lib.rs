//! Command-line front end for the exact unbiased-basis toolkit.
//!
//! Six subcommands cover the full pipeline: `mub` and `muub` emit the
//! mutually unbiased state and unitary-operator bases, `verify` builds
//! the whole family and checks every pairwise trace overlap exactly,
//! `bell` and `mes` emit the maximally entangled images, and `selftest`
//! replays the library's defining identities as named suites.
//!
//! Output is a versioned JSON envelope by default, with CSV tables
//! (exact mode only) and human-readable text as alternatives. All stdout
//! is byte-deterministic for a fixed invocation; timings and diagnostics
//! go to stderr.

pub mod args;
pub mod commands;
pub mod error;
pub mod oracle;
pub mod output;
pub mod selftest;
pub mod sweep;

pub use error::CliError;
