//! Deterministic random sweeps for the self-test harness.
//!
//! Every draw comes from a ChaCha stream cipher seeded by `--seed`, so a
//! given (seed, samples) pair always replays the same instances and the
//! reports stay byte-identical run to run.

use muub_kit::cyclo::{CycloScalar, Rational};
use muub_kit::hilbert::Ket;
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A seeded source of random scalars and kets.
pub struct Sweep {
    rng: ChaCha8Rng,
}

impl Sweep {
    pub fn new(seed: u64) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// A small rational with numerator in −8..=8 and denominator in 1..=6.
    pub fn rational(&mut self) -> Rational {
        let num = self.rng.random_range(-8i64..=8);
        let den = self.rng.random_range(1i64..=6);
        Rational::new(BigInt::from(num), BigInt::from(den))
    }

    /// A radical parity: 0 (rational) or 1 (a 1/√d factor).
    pub fn parity(&mut self) -> u32 {
        self.rng.random_range(0u32..=1)
    }

    /// A scalar over ℚ(ω_d) with the given radical parity.
    pub fn scalar(&mut self, d: u64, root_d_pow: u32) -> CycloScalar {
        let coeffs = (0..d).map(|_| self.rational()).collect();
        CycloScalar::new(d, coeffs, root_d_pow).expect("sweep scalars are always valid")
    }

    /// Three scalars sharing one radical parity, so sums are defined.
    pub fn uniform_triple(&mut self, d: u64) -> (CycloScalar, CycloScalar, CycloScalar) {
        let pow = self.parity();
        (
            self.scalar(d, pow),
            self.scalar(d, pow),
            self.scalar(d, pow),
        )
    }

    /// A ket whose amplitudes share one radical parity.
    pub fn ket(&mut self, d: u64) -> Ket {
        let pow = self.parity();
        let amps = (0..d).map(|_| self.scalar(d, pow)).collect();
        Ket::new(d, amps).expect("sweep kets are always valid")
    }
}
