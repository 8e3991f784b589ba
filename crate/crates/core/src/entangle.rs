//! Generalized Pauli words, Choi vectors, Bell states, and mutually
//! unbiased families of maximally entangled states.
//!
//! The Choi map sends an operator U on H_d to the bipartite vector
//!
//! ```text
//!     |U⟩ = (1/√d) Σ_{m,n} ⟨n|U|m⟩ |m⟩|n⟩,
//! ```
//!
//! a maximally entangled state exactly when U is unitary.  Inner products
//! carry over as ⟨U|V⟩ = Tr(U†V)/d, so the unitary bases of
//! [`crate::muub`] become mutually unbiased bases of maximally entangled
//! states.  Applied to the powers of a Pauli word W = X^bZ^a (with
//! (a, b) ≠ (0, 0)) this yields, for every r ∈ {1, …, d−1},
//!
//! ```text
//!     |W⟩_s^{(r)} = (1/d) Σ_i ω^{s(d−i)} ω^{−r·α(i)} |Wⁱ⟩,
//! ```
//!
//! where |Wⁱ⟩ here denotes the unnormalized Choi vector of Wⁱ.
//!
//! This module admits d = 2 for the Pauli/Bell layer (ω = −1); the
//! rotated families inherit the odd-prime restriction of their index
//! recipe.

use serde::ser::SerializeStruct;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::cyclo::{validate_odd_prime, validate_prime, CycloScalar, Rational};
use crate::error::{Error, Result};
use crate::hilbert::{state_exponent, Ket};
use crate::matspace::DenseOp;

fn validate_index(d: u64, name: &'static str, value: u64) -> Result<()> {
    if value >= d {
        return Err(Error::IndexOutOfRange {
            name,
            value: value as i64,
            bound: d,
        });
    }
    Ok(())
}

/// The cyclic shift X|k⟩ = |k⊕1⟩ for any prime d ≥ 2.
pub fn pauli_x(d: u64) -> Result<DenseOp> {
    validate_prime(d)?;
    let n = d as usize;
    let mut entries = vec![vec![CycloScalar::zero(d)?; n]; n];
    for col in 0..n {
        entries[(col + 1) % n][col] = CycloScalar::one(d)?;
    }
    DenseOp::from_entries(d, entries)
}

/// The clock operator Z|k⟩ = ω^k|k⟩ for any prime d ≥ 2.
pub fn pauli_z(d: u64) -> Result<DenseOp> {
    validate_prime(d)?;
    let n = d as usize;
    let mut entries = vec![vec![CycloScalar::zero(d)?; n]; n];
    for (k, row) in entries.iter_mut().enumerate() {
        row[k] = CycloScalar::root_of_unity(d, k as i64)?;
    }
    DenseOp::from_entries(d, entries)
}

/// X^b Z^a as a dense matrix.
fn pauli_xz(d: u64, b: u64, a: u64) -> Result<DenseOp> {
    pauli_x(d)?.pow(b as u32)?.mul(&pauli_z(d)?.pow(a as u32)?)
}

/// The two routes to (X^b Z^a)^n: the explicit matrix power, and the
/// closed form ω^{ab·n(n−1)/2} · X^{bn} Z^{an}.  The two are equal for
/// every prime d, which the test suites check exhaustively.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PauliWordPower {
    /// (X^b Z^a)^n multiplied out entry by entry.
    pub op: DenseOp,
    /// The closed-form phase ω^{ab·n(n−1)/2}.
    pub phase: CycloScalar,
    /// The closed-form word X^{bn mod d} Z^{an mod d}.
    pub word: DenseOp,
}

impl PauliWordPower {
    /// The closed form assembled into one matrix: phase × word.
    pub fn closed_form(&self) -> DenseOp {
        self.word
            .scale(&self.phase)
            .expect("phase and word share the scalar order")
    }

    /// Whether the explicit power equals the closed form.
    pub fn identity_holds(&self) -> bool {
        self.op == self.closed_form()
    }
}

/// Computes (X^b Z^a)^n both ways; see [`PauliWordPower`].
pub fn pauli_word(d: u64, b: u64, a: u64, n: u32) -> Result<PauliWordPower> {
    validate_prime(d)?;
    validate_index(d, "a", a)?;
    validate_index(d, "b", b)?;
    let op = pauli_xz(d, b, a)?.pow(n)?;
    // n(n−1)/2 is an integer for every n; the product is reduced mod d.
    let half_pairs = (n as i128) * (n as i128 - 1) / 2;
    let exponent = ((a as i128) * (b as i128) * half_pairs).rem_euclid(d as i128) as i64;
    let phase = CycloScalar::root_of_unity(d, exponent)?;
    let word = pauli_xz(d, (b * n as u64) % d, (a * n as u64) % d)?;
    Ok(PauliWordPower { op, phase, word })
}

/// A vector of the bipartite space H_d ⊗ H_d with exact amplitudes;
/// slot (m, n) is stored at index m·d + n.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteKet {
    d: u64,
    amps: Vec<CycloScalar>,
}

impl BipartiteKet {
    pub fn new(d: u64, amps: Vec<CycloScalar>) -> Result<Self> {
        validate_prime(d)?;
        if amps.len() != (d * d) as usize {
            return Err(Error::Malformed {
                reason: "amplitude count must equal d²",
            });
        }
        for a in &amps {
            if a.d() != d {
                return Err(Error::DimensionMismatch {
                    left: d,
                    right: a.d(),
                });
            }
        }
        Ok(Self { d, amps })
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn amps(&self) -> &[CycloScalar] {
        &self.amps
    }

    /// Amplitude of |m⟩|n⟩.
    pub fn amp(&self, m: usize, n: usize) -> &CycloScalar {
        &self.amps[m * self.d as usize + n]
    }

    /// Exact inner product ⟨self|other⟩.
    pub fn inner(&self, other: &Self) -> Result<CycloScalar> {
        if self.d != other.d {
            return Err(Error::DimensionMismatch {
                left: self.d,
                right: other.d,
            });
        }
        let mut acc = CycloScalar::zero(self.d)?;
        for (x, y) in self.amps.iter().zip(&other.amps) {
            if x.is_zero() || y.is_zero() {
                continue;
            }
            acc = acc.add(&x.conj().mul(y)?)?;
        }
        Ok(acc)
    }

    /// Exact squared norm ⟨ψ|ψ⟩.
    pub fn norm_squared(&self) -> CycloScalar {
        self.inner(self).expect("self-inner product shares dimensions")
    }
}

/// The Choi vector |U⟩ = (1/√d) Σ ⟨n|U|m⟩|m⟩|n⟩ of a unitary d×d
/// operator.  Non-unitary input is rejected: its image would not be
/// maximally entangled.
pub fn choi(u: &DenseOp) -> Result<BipartiteKet> {
    let d = u.order();
    if u.size() != d as usize {
        return Err(Error::Malformed {
            reason: "the Choi map takes a d×d operator",
        });
    }
    if !u.is_unitary() {
        return Err(Error::NotUnitary);
    }
    let n = d as usize;
    let mut amps = vec![CycloScalar::zero(d)?; n * n];
    for m in 0..n {
        for row in 0..n {
            amps[m * n + row] = u.entry(row, m).div_root_d();
        }
    }
    BipartiteKet::new(d, amps)
}

/// The generalized Bell state (1/√d) Σ_n ω^{an} |n⟩|n⊕b⟩, constructed
/// directly; it coincides entry for entry with `choi(X^b Z^a)`.
pub fn bell_state(d: u64, a: u64, b: u64) -> Result<BipartiteKet> {
    validate_prime(d)?;
    validate_index(d, "a", a)?;
    validate_index(d, "b", b)?;
    let n = d as usize;
    let mut amps = vec![CycloScalar::zero(d)?; n * n];
    for k in 0..n {
        let amp = CycloScalar::root_of_unity(d, (a as i64) * (k as i64))?.div_root_d();
        amps[k * n + (k + b as usize) % n] = amp;
    }
    BipartiteKet::new(d, amps)
}

/// The rotated maximally entangled state built on the powers of the word
/// W = X^b Z^a:
///
/// (1/√d) Σ_i ω^{s(d−i)} ω^{−r·α(i)} · choi(Wⁱ), with r ∈ {1, …, d−1}.
///
/// The identity word a = b = 0 is degenerate (its powers never leave the
/// span of 𝕀) and r = 0 inherits the non-unitary exclusion of the
/// operator family.
pub fn mes_mub_state(d: u64, r: u64, s: u64, a: u64, b: u64) -> Result<BipartiteKet> {
    validate_odd_prime(d)?;
    if a == 0 && b == 0 {
        return Err(Error::DegenerateFamily {
            reason: "the a = b = 0 word is the identity, whose powers span only 𝕀",
        });
    }
    if r == 0 {
        return Err(Error::NotUnitaryFamily);
    }
    validate_index(d, "r", r)?;
    validate_index(d, "s", s)?;
    validate_index(d, "a", a)?;
    validate_index(d, "b", b)?;
    let n = d as usize;
    let word = pauli_xz(d, b, a)?;
    let mut power = DenseOp::identity(d, n)?;
    let mut amps = vec![CycloScalar::zero(d)?; n * n];
    for i in 0..d {
        if i > 0 {
            power = power.mul(&word)?;
        }
        let coeff = CycloScalar::root_of_unity(d, state_exponent(d, r, s, i))?;
        let basis_vector = choi(&power)?;
        for (slot, v) in amps.iter_mut().zip(basis_vector.amps()) {
            if v.is_zero() {
                continue;
            }
            *slot = slot.add(&coeff.mul(v)?)?;
        }
    }
    let amps = amps.into_iter().map(|x| x.div_root_d()).collect();
    BipartiteKet::new(d, amps)
}

/// Which tensor factor [`partial_trace`] sums out.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Side {
    /// Trace out the first factor, leaving the state of the second.
    #[serde(rename = "first")]
    First,
    /// Trace out the second factor, leaving the state of the first.
    #[serde(rename = "second")]
    Second,
}

/// An exact density matrix (Hermitian, sized d or d²).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DensityMatrix {
    mat: DenseOp,
}

impl DensityMatrix {
    /// The projector |ψ⟩⟨ψ| of a d-dimensional ket.
    pub fn from_ket(psi: &Ket) -> Result<Self> {
        Self::projector(psi.d(), psi.amps())
    }

    /// The projector |ψ⟩⟨ψ| of a bipartite ket, a d²×d² matrix.
    pub fn from_bipartite(psi: &BipartiteKet) -> Result<Self> {
        Self::projector(psi.d(), psi.amps())
    }

    fn projector(d: u64, amps: &[CycloScalar]) -> Result<Self> {
        let n = amps.len();
        let mut entries = vec![vec![CycloScalar::zero(d)?; n]; n];
        for (i, x) in amps.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in amps.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                entries[i][j] = x.mul(&y.conj())?;
            }
        }
        Ok(Self {
            mat: DenseOp::from_entries(d, entries)?,
        })
    }

    /// The maximally mixed state 𝕀/size.
    pub fn maximally_mixed(d: u64, size: usize) -> Result<Self> {
        let inv = CycloScalar::from_rational(
            d,
            Rational::new(1.into(), (size as i64).into()),
        )?;
        Ok(Self {
            mat: DenseOp::identity(d, size)?.scale(&inv)?,
        })
    }

    /// Wraps a dense matrix, insisting on Hermiticity.
    pub fn from_dense(mat: DenseOp) -> Result<Self> {
        if !mat.is_hermitian() {
            return Err(Error::Malformed {
                reason: "density matrices must be Hermitian",
            });
        }
        Ok(Self { mat })
    }

    /// The scalar order d of the entries.
    pub fn order(&self) -> u64 {
        self.mat.order()
    }

    /// Total dimension (d for subspace-coordinate states, d² for
    /// bipartite ones).
    pub fn d_total(&self) -> usize {
        self.mat.size()
    }

    pub fn entry(&self, i: usize, j: usize) -> &CycloScalar {
        self.mat.entry(i, j)
    }

    pub fn as_dense(&self) -> &DenseOp {
        &self.mat
    }

    pub fn trace(&self) -> Result<CycloScalar> {
        self.mat.trace()
    }
}

impl Serialize for DensityMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.mat.serialize(serializer)
    }
}

/// Sums one tensor factor out of a d²×d² density matrix, leaving the d×d
/// reduced state of the other factor.
pub fn partial_trace(rho: &DensityMatrix, side: Side) -> Result<DensityMatrix> {
    let d = rho.order() as usize;
    if rho.d_total() != d * d {
        return Err(Error::Malformed {
            reason: "partial trace takes a bipartite (d²×d²) density matrix",
        });
    }
    let mut entries = vec![vec![CycloScalar::zero(rho.order())?; d]; d];
    for (i, row) in entries.iter_mut().enumerate() {
        for (j, slot) in row.iter_mut().enumerate() {
            let mut acc = CycloScalar::zero(rho.order())?;
            for k in 0..d {
                let term = match side {
                    // Leaving the second factor: rows/cols (k, i), (k, j).
                    Side::First => rho.entry(k * d + i, k * d + j),
                    // Leaving the first factor: rows/cols (i, k), (j, k).
                    Side::Second => rho.entry(i * d + k, j * d + k),
                };
                if !term.is_zero() {
                    acc = acc.add(term)?;
                }
            }
            *slot = acc;
        }
    }
    DensityMatrix::from_dense(DenseOp::from_entries(rho.order(), entries)?)
}

/// Whether |ψ⟩ is maximally entangled: both reduced states must equal
/// 𝕀/d exactly.
pub fn is_mes(psi: &BipartiteKet) -> Result<bool> {
    let rho = DensityMatrix::from_bipartite(psi)?;
    let mixed = DensityMatrix::maximally_mixed(psi.d(), psi.d() as usize)?;
    Ok(partial_trace(&rho, Side::First)? == mixed && partial_trace(&rho, Side::Second)? == mixed)
}

/// The traceless-overlap functional Tr[(ρ_A − 𝕀/n)(ρ_B − 𝕀/n)], n the
/// total dimension, computed on the dense matrices.
///
/// For projectors onto unit states it equals |⟨ψ_A|ψ_B⟩|² − 1/n: zero
/// exactly when the states come from different mutually unbiased bases,
/// −1/n for orthogonal states of one basis, and 1 − 1/n for ρ_A = ρ_B.
pub fn traceless_orthogonality(a: &DensityMatrix, b: &DensityMatrix) -> Result<CycloScalar> {
    if a.order() != b.order() {
        return Err(Error::DimensionMismatch {
            left: a.order(),
            right: b.order(),
        });
    }
    if a.d_total() != b.d_total() {
        return Err(Error::Malformed {
            reason: "density matrices must share their total dimension",
        });
    }
    let mixed = DensityMatrix::maximally_mixed(a.order(), a.d_total())?;
    let ta = a.mat.sub(&mixed.mat)?;
    let tb = b.mat.sub(&mixed.mat)?;
    ta.mul(&tb)?.trace()
}

#[derive(Deserialize)]
struct BipartiteKetRepr {
    d: u64,
    amps: Vec<CycloScalar>,
}

impl Serialize for BipartiteKet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("BipartiteKet", 3)?;
        st.serialize_field("d", &self.d)?;
        st.serialize_field("amps", &self.amps)?;
        // Slot (m, n) of H_d ⊗ H_d lives at index m·d + n.
        st.serialize_field("index_convention", "m*d + n")?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for BipartiteKet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = BipartiteKetRepr::deserialize(deserializer)?;
        BipartiteKet::new(raw.d, raw.amps).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hilbert::mub_state;
    use crate::matspace::{g_map, to_dense};
    use num_bigint::BigInt;

    fn w(d: u64, e: i64) -> CycloScalar {
        CycloScalar::root_of_unity(d, e).unwrap()
    }

    fn rat(n: i64, den: i64) -> CycloScalar {
        CycloScalar::from_rational(3, Rational::new(BigInt::from(n), BigInt::from(den))).unwrap()
    }

    #[test]
    fn shift_and_clock_matrices() {
        let x = pauli_x(3).unwrap();
        assert_eq!(x, to_dense(&crate::matspace::MsElement::x_power(3, 1).unwrap()).unwrap());
        let z = pauli_z(3).unwrap();
        for k in 0..3 {
            assert_eq!(*z.entry(k, k), w(3, k as i64));
        }
        // d = 2: the familiar bit flip and sign flip.
        let x = pauli_x(2).unwrap();
        let z = pauli_z(2).unwrap();
        assert_eq!(*x.entry(0, 1), CycloScalar::one(2).unwrap());
        assert_eq!(*z.entry(1, 1), CycloScalar::from_integer(2, -1).unwrap());
        assert!(x.is_unitary() && z.is_unitary());
    }

    #[test]
    fn clock_past_shift_picks_up_one_phase() {
        // Z·X = ω·X·Z for every prime d.
        for d in [2u64, 3, 5] {
            let x = pauli_x(d).unwrap();
            let z = pauli_z(d).unwrap();
            let lhs = z.mul(&x).unwrap();
            let rhs = x.mul(&z).unwrap().scale(&w(d, 1)).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn squared_word_of_dimension_three() {
        // (XZ)² = ω X²Z²: phase exponent ab·n(n−1)/2 = 1.
        let p = pauli_word(3, 1, 1, 2).unwrap();
        assert_eq!(p.phase, w(3, 1));
        assert_eq!(p.word, pauli_x(3).unwrap().pow(2).unwrap().mul(&pauli_z(3).unwrap().pow(2).unwrap()).unwrap());
        assert_eq!(p.op, p.word.scale(&p.phase).unwrap());
    }

    #[test]
    fn power_identity_is_exact_for_small_primes() {
        for d in [2u64, 3, 5] {
            for a in 0..d {
                for b in 0..d {
                    for n in 0..=d as u32 {
                        let p = pauli_word(d, b, a, n).unwrap();
                        let closed = p.word.scale(&p.phase).unwrap();
                        assert_eq!(p.op, closed, "d={d} a={a} b={b} n={n}");
                    }
                }
            }
        }
    }

    #[test]
    fn word_powers_close_at_the_dimension() {
        // X^d = Z^d = 𝕀 always; the full word power at n = d is 𝕀 for odd
        // d, while for d = 2 it is (−1)^{ab}𝕀 (the word part alone is
        // always 𝕀).
        for d in [2u64, 3, 5] {
            let id = DenseOp::identity(d, d as usize).unwrap();
            assert_eq!(pauli_x(d).unwrap().pow(d as u32).unwrap(), id);
            assert_eq!(pauli_z(d).unwrap().pow(d as u32).unwrap(), id);
            for a in 0..d {
                for b in 0..d {
                    let p = pauli_word(d, b, a, d as u32).unwrap();
                    assert_eq!(p.word, id, "d={d} a={a} b={b}");
                    if d % 2 == 1 {
                        assert_eq!(p.op, id, "d={d} a={a} b={b}");
                    } else {
                        let sign = CycloScalar::from_integer(d, if a * b % 2 == 0 { 1 } else { -1 })
                            .unwrap();
                        assert_eq!(p.op, id.scale(&sign).unwrap(), "d=2 a={a} b={b}");
                    }
                }
            }
        }
    }

    #[test]
    fn choi_vector_of_the_shift() {
        // |X⟩ = (1/√3)(|01⟩ + |12⟩ + |20⟩).
        let psi = choi(&pauli_x(3).unwrap()).unwrap();
        let r = CycloScalar::inv_sqrt_d(3).unwrap();
        for m in 0..3 {
            for n in 0..3 {
                if n == (m + 1) % 3 {
                    assert_eq!(*psi.amp(m, n), r);
                } else {
                    assert!(psi.amp(m, n).is_zero());
                }
            }
        }
        assert_eq!(psi.norm_squared(), CycloScalar::one(3).unwrap());
    }

    #[test]
    fn choi_rejects_non_unitary_operators() {
        let bad = to_dense(&g_map(&mub_state(3, 0, 0).unwrap()).unwrap()).unwrap();
        assert_eq!(choi(&bad), Err(Error::NotUnitary));
    }

    #[test]
    fn bell_state_of_dimension_three() {
        // (1/√3)(|01⟩ + ω|12⟩ + ω²|20⟩) for a = b = 1.
        let psi = bell_state(3, 1, 1).unwrap();
        assert_eq!(*psi.amp(0, 1), w(3, 0).div_root_d());
        assert_eq!(*psi.amp(1, 2), w(3, 1).div_root_d());
        assert_eq!(*psi.amp(2, 0), w(3, 2).div_root_d());
        assert_eq!(psi.amps().iter().filter(|a| !a.is_zero()).count(), 3);
    }

    #[test]
    fn bell_states_are_choi_vectors_of_the_words() {
        for d in [2u64, 3] {
            for a in 0..d {
                for b in 0..d {
                    let direct = bell_state(d, a, b).unwrap();
                    let via_choi = choi(&pauli_xz(d, b, a).unwrap()).unwrap();
                    assert_eq!(direct, via_choi, "d={d} a={a} b={b}");
                }
            }
        }
    }

    #[test]
    fn bell_states_form_an_orthonormal_basis() {
        let d = 3u64;
        let states: Vec<_> = (0..d)
            .flat_map(|a| (0..d).map(move |b| (a, b)))
            .map(|(a, b)| bell_state(d, a, b).unwrap())
            .collect();
        let one = CycloScalar::one(d).unwrap();
        for (i, x) in states.iter().enumerate() {
            for (j, y) in states.iter().enumerate() {
                let p = x.inner(y).unwrap();
                if i == j {
                    assert_eq!(p, one);
                } else {
                    assert!(p.is_zero());
                }
            }
        }
    }

    #[test]
    fn bell_states_are_maximally_entangled() {
        for d in [2u64, 3] {
            for a in 0..d {
                for b in 0..d {
                    let psi = bell_state(d, a, b).unwrap();
                    assert!(is_mes(&psi).unwrap(), "d={d} a={a} b={b}");
                }
            }
        }
    }

    #[test]
    fn product_states_are_not_maximally_entangled() {
        let mut amps = vec![CycloScalar::zero(3).unwrap(); 9];
        amps[0] = CycloScalar::one(3).unwrap();
        let psi = BipartiteKet::new(3, amps).unwrap();
        assert!(!is_mes(&psi).unwrap());
    }

    #[test]
    fn reduced_states_of_a_bell_state_are_maximally_mixed() {
        let rho = DensityMatrix::from_bipartite(&bell_state(3, 1, 2).unwrap()).unwrap();
        let mixed = DensityMatrix::maximally_mixed(3, 3).unwrap();
        assert_eq!(partial_trace(&rho, Side::First).unwrap(), mixed);
        assert_eq!(partial_trace(&rho, Side::Second).unwrap(), mixed);
        assert_eq!(
            rho.trace().unwrap(),
            CycloScalar::one(3).unwrap()
        );
    }

    #[test]
    fn rotated_entangled_state_of_dimension_three() {
        // r = 1, s = 0 over the plain shift word (a = 0, b = 1):
        // amplitudes (1, 1, ω, ω, 1, 1, 1, ω, 1)/3 by expanding the three
        // Choi vectors of 𝕀, X, X².
        let psi = mes_mub_state(3, 1, 0, 0, 1).unwrap();
        let expected: Vec<_> = [0i64, 0, 1, 1, 0, 0, 0, 1, 0]
            .iter()
            .map(|&e| w(3, e).div_root_d().div_root_d())
            .collect();
        assert_eq!(psi.amps(), &expected[..]);
        assert_eq!(psi.norm_squared(), CycloScalar::one(3).unwrap());
    }

    #[test]
    fn rotated_entangled_states_are_maximally_entangled() {
        for (a, b) in [(0u64, 1u64), (1, 0), (1, 1)] {
            for r in 1..3 {
                for s in 0..3 {
                    let psi = mes_mub_state(3, r, s, a, b).unwrap();
                    assert_eq!(psi.norm_squared(), CycloScalar::one(3).unwrap());
                    assert!(is_mes(&psi).unwrap(), "r={r} s={s} a={a} b={b}");
                }
            }
        }
    }

    #[test]
    fn rotated_entangled_bases_are_mutually_unbiased() {
        let d = 3u64;
        let inv_d = rat(1, 3);
        for s1 in 0..d {
            for s2 in 0..d {
                let x = mes_mub_state(d, 1, s1, 1, 1).unwrap();
                let y = mes_mub_state(d, 2, s2, 1, 1).unwrap();
                assert_eq!(x.inner(&y).unwrap().abs_squared(), inv_d);
            }
        }
        // Within one r the states are orthonormal.
        let x = mes_mub_state(d, 1, 0, 1, 1).unwrap();
        let y = mes_mub_state(d, 1, 1, 1, 1).unwrap();
        assert!(x.inner(&y).unwrap().is_zero());
    }

    #[test]
    fn degenerate_and_excluded_indices_are_rejected() {
        assert_eq!(
            mes_mub_state(3, 1, 0, 0, 0),
            Err(Error::DegenerateFamily {
                reason: "the a = b = 0 word is the identity, whose powers span only 𝕀",
            })
        );
        assert_eq!(mes_mub_state(3, 0, 0, 1, 1), Err(Error::NotUnitaryFamily));
        assert!(matches!(
            mes_mub_state(3, 1, 0, 3, 1),
            Err(Error::IndexOutOfRange { name: "a", .. })
        ));
        assert!(matches!(
            bell_state(3, 0, 4),
            Err(Error::IndexOutOfRange { name: "b", .. })
        ));
    }

    #[test]
    fn traceless_overlap_of_unbiased_projectors_vanishes() {
        // Distinct mutually unbiased bases → exactly 0.
        let a = DensityMatrix::from_ket(&mub_state(3, 0, 0).unwrap()).unwrap();
        let b = DensityMatrix::from_ket(&mub_state(3, 1, 0).unwrap()).unwrap();
        assert!(traceless_orthogonality(&a, &b).unwrap().is_zero());
    }

    #[test]
    fn traceless_overlap_within_one_basis_is_negative_inverse_d() {
        let a = DensityMatrix::from_ket(&mub_state(3, 1, 0).unwrap()).unwrap();
        let b = DensityMatrix::from_ket(&mub_state(3, 1, 1).unwrap()).unwrap();
        assert_eq!(traceless_orthogonality(&a, &b).unwrap(), rat(-1, 3));
        // And a projector against itself gives the purity defect 1 − 1/d.
        assert_eq!(traceless_orthogonality(&a, &a).unwrap(), rat(2, 3));
    }

    #[test]
    fn partial_trace_requires_a_bipartite_matrix() {
        let rho = DensityMatrix::from_ket(&mub_state(3, 1, 0).unwrap()).unwrap();
        assert!(matches!(
            partial_trace(&rho, Side::First),
            Err(Error::Malformed { .. })
        ));
    }

    #[test]
    fn bipartite_serialization_round_trips_with_the_index_note() {
        let psi = bell_state(3, 1, 1).unwrap();
        let json = serde_json::to_string(&psi).unwrap();
        assert_eq!(serde_json::from_str::<BipartiteKet>(&json).unwrap(), psi);
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["index_convention"], serde_json::json!("m*d + n"));
        assert_eq!(v["amps"].as_array().unwrap().len(), 9);
    }
}
