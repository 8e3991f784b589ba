//! Command-line argument definitions.
//!
//! One global option block (arithmetic mode, output format, destination,
//! and sweep controls) is shared by six subcommands: the two basis
//! generators, the family verifier, the two entangled-state generators,
//! and the self-test harness.

use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;

/// Construct and verify mutually unbiased bases of unitary operators
/// over the cyclic-shift subspace, and their maximally entangled images.
#[derive(Debug, Parser)]
#[command(name = "muub-kit", version, about)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,

    #[command(subcommand)]
    pub command: Command,
}

/// Options shared by every subcommand.
#[derive(Debug, Args)]
pub struct GlobalOpts {
    /// Arithmetic backend: exact cyclotomic rationals, or the
    /// independent floating-point implementation.
    #[arg(long, global = true, value_enum, default_value_t = Mode::Exact)]
    pub mode: Mode,

    /// Output format written to stdout (or to --out).
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Write the report to this file instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,

    /// Seed for the deterministic random sweeps in `selftest`.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Number of random samples per sweep suite in `selftest`.
    #[arg(long, global = true, default_value_t = 200)]
    pub samples: u32,
}

/// Arithmetic backend.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    /// Exact arithmetic in ℚ(ω, 1/√d).
    Exact,
    /// Independent f64 implementation (useful as a cross-check).
    Float,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Exact => "exact",
            Mode::Float => "float",
        }
    }
}

/// Output format.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    /// A single JSON document wrapped in a tool/version envelope.
    Json,
    /// Comma-separated tables; exact mode only.
    Csv,
    /// Human-readable text.
    Pretty,
}

impl Format {
    pub fn as_str(self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Csv => "csv",
            Format::Pretty => "pretty",
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Emit the d + 1 mutually unbiased state bases of H_d (or one of
    /// them).
    Mub(MubArgs),

    /// Emit the d mutually unbiased unitary bases of the shift subspace
    /// (or one of them).
    Muub(MuubArgs),

    /// Construct the full family and verify every pairwise trace
    /// overlap exactly, including the failed r = 0 construction.
    Verify(VerifyArgs),

    /// Emit the d² Bell states of H_d ⊗ H_d (or one of them).
    Bell(BellArgs),

    /// Emit the d − 1 mutually unbiased maximally-entangled bases built
    /// on the word X^b Z^a (or the basis for one r).
    Mes(MesArgs),

    /// Run the self-test suites and report pass/fail per suite.
    Selftest(SelftestArgs),
}

#[derive(Debug, Args)]
pub struct MubArgs {
    /// Odd prime dimension.
    #[arg(long)]
    pub d: u64,

    /// Emit only the basis with this label, 0 ≤ r < d.
    #[arg(long, conflicts_with = "computational")]
    pub r: Option<u64>,

    /// Emit only the computational basis.
    #[arg(long)]
    pub computational: bool,
}

#[derive(Debug, Args)]
pub struct MuubArgs {
    /// Odd prime dimension.
    #[arg(long)]
    pub d: u64,

    /// Emit only the basis with this label, 1 ≤ r < d.
    #[arg(long, conflicts_with = "standard")]
    pub r: Option<u64>,

    /// Emit only the standard basis {X^s}.
    #[arg(long)]
    pub standard: bool,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Odd prime dimension.
    #[arg(long)]
    pub d: u64,
}

#[derive(Debug, Args)]
pub struct BellArgs {
    /// Prime dimension.
    #[arg(long)]
    pub d: u64,

    /// Clock exponent of the defining word, 0 ≤ a < d.
    #[arg(long, requires = "b")]
    pub a: Option<u64>,

    /// Shift exponent of the defining word, 0 ≤ b < d.
    #[arg(long, requires = "a")]
    pub b: Option<u64>,
}

#[derive(Debug, Args)]
pub struct MesArgs {
    /// Odd prime dimension.
    #[arg(long)]
    pub d: u64,

    /// Clock exponent of the word X^b Z^a; (a, b) = (0, 0) is rejected.
    #[arg(long)]
    pub a: u64,

    /// Shift exponent of the word X^b Z^a.
    #[arg(long)]
    pub b: u64,

    /// Emit only the basis with this label, 1 ≤ r < d.
    #[arg(long)]
    pub r: Option<u64>,
}

#[derive(Debug, Args)]
pub struct SelftestArgs {
    /// Run only the named suites (repeatable); defaults to all.
    #[arg(long = "suite", value_name = "NAME")]
    pub suites: Vec<String>,

    /// Deliberately corrupt one phase exponent to confirm the harness
    /// catches regressions.
    #[arg(long, hide = true)]
    pub inject_fault: bool,
}
