//! Kets of the d-dimensional Hilbert space H_d, the d + 1 mutually
//! unbiased bases for odd prime d, and the convolution monoid on H_d.
//!
//! The non-computational bases are indexed by r ∈ {0, …, d−1}; basis r
//! consists of the states
//!
//! ```text
//!     |ω_s^{(r)}⟩ = (1/√d) Σ_a ω^{s(d−a)} ω^{−r·α(a)} |a⟩,   s ∈ {0, …, d−1},
//! ```
//!
//! where α(a) = a + (a+1) + … + (d−1) is the descending tail sum.  Together
//! with the computational basis these are d + 1 bases, pairwise unbiased:
//! |⟨φ|ψ⟩|² = 1/d for states of different bases.
//!
//! The monoid product • is index-cyclic convolution,
//! (φ•ψ)_m = Σ_{i⊕j=m} φ_i ψ_j with ⊕ addition mod d, with identity |0⟩.
//! Combined with the conjugate-reverse involution [`dagger`] it detects
//! unitarity of the operators these kets map to: φ•φ† = |0⟩ exactly iff
//! the coefficient image of φ is unitary.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::cyclo::{validate_odd_prime, validate_prime, CycloScalar};
use crate::error::{Error, Result};

/// A vector of H_d with exact cyclotomic amplitudes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ket {
    d: u64,
    amps: Vec<CycloScalar>,
}

impl Ket {
    /// Builds a ket from amplitudes; every amplitude must share the ket's
    /// prime dimension.
    pub fn new(d: u64, amps: Vec<CycloScalar>) -> Result<Self> {
        validate_prime(d)?;
        if amps.len() != d as usize {
            return Err(Error::Malformed {
                reason: "amplitude count must equal d",
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

    /// The computational basis ket |i⟩.
    pub fn basis_ket(d: u64, i: u64) -> Result<Self> {
        validate_prime(d)?;
        if i >= d {
            return Err(Error::IndexOutOfRange {
                name: "i",
                value: i as i64,
                bound: d,
            });
        }
        let mut amps = vec![CycloScalar::zero(d)?; d as usize];
        amps[i as usize] = CycloScalar::one(d)?;
        Ok(Self { d, amps })
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn amps(&self) -> &[CycloScalar] {
        &self.amps
    }

    pub fn amp(&self, i: usize) -> &CycloScalar {
        &self.amps[i]
    }

    /// Component-wise vector sum.
    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.d != other.d {
            return Err(Error::DimensionMismatch {
                left: self.d,
                right: other.d,
            });
        }
        let amps = self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.add(b))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { d: self.d, amps })
    }

    /// Scales every amplitude by an exact scalar.
    pub fn scale(&self, c: &CycloScalar) -> Result<Self> {
        if self.d != c.d() {
            return Err(Error::DimensionMismatch {
                left: self.d,
                right: c.d(),
            });
        }
        let amps = self
            .amps
            .iter()
            .map(|a| a.mul(c))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { d: self.d, amps })
    }
}

/// Exact inner product ⟨a|b⟩ = Σ_i a_i* b_i (antilinear in the first slot).
pub fn inner(a: &Ket, b: &Ket) -> Result<CycloScalar> {
    if a.d != b.d {
        return Err(Error::DimensionMismatch {
            left: a.d,
            right: b.d,
        });
    }
    let mut acc = CycloScalar::zero(a.d)?;
    for (x, y) in a.amps.iter().zip(&b.amps) {
        if x.is_zero() || y.is_zero() {
            continue;
        }
        acc = acc.add(&x.conj().mul(y)?)?;
    }
    Ok(acc)
}

/// The monoid product: index-cyclic convolution,
/// (a•b)_m = Σ_{i+j ≡ m (mod d)} a_i b_j.
pub fn bullet(a: &Ket, b: &Ket) -> Result<Ket> {
    if a.d != b.d {
        return Err(Error::DimensionMismatch {
            left: a.d,
            right: b.d,
        });
    }
    let d = a.d as usize;
    let mut amps = vec![CycloScalar::zero(a.d)?; d];
    for (i, x) in a.amps.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.amps.iter().enumerate() {
            if y.is_zero() {
                continue;
            }
            let m = (i + j) % d;
            amps[m] = amps[m].add(&x.mul(y)?)?;
        }
    }
    Ok(Ket { d: a.d, amps })
}

/// The conjugate-reverse involution: Σ a_i |i⟩ ↦ Σ a_i* |(d−i) mod d⟩.
///
/// Under the coefficient isomorphism this is the Hermitian adjoint of the
/// associated operator.
pub fn dagger(a: &Ket) -> Ket {
    let d = a.d as usize;
    let mut amps = vec![
        CycloScalar::zero(a.d).expect("dimension was validated at construction");
        d
    ];
    for (i, x) in a.amps.iter().enumerate() {
        amps[(d - i) % d] = x.conj();
    }
    Ket { d: a.d, amps }
}

/// Outcome of the monoid unitarity test for a ket φ: the product φ•φ†
/// either collapses to the monoid identity |0⟩ (the associated operator is
/// unitary) or is returned as an explicit witness of non-unitarity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MonoidUnitarity {
    Unitary,
    Witness(Ket),
}

impl MonoidUnitarity {
    pub fn is_unitary(&self) -> bool {
        matches!(self, MonoidUnitarity::Unitary)
    }
}

/// Tests unitarity of the operator associated with φ by computing φ•φ†
/// and comparing it with |0⟩ exactly.
pub fn monoid_unitarity(a: &Ket) -> Result<MonoidUnitarity> {
    let w = bullet(a, &dagger(a))?;
    if w == Ket::basis_ket(a.d, 0)? {
        Ok(MonoidUnitarity::Unitary)
    } else {
        Ok(MonoidUnitarity::Witness(w))
    }
}

/// Descending tail sum α(a) = a + (a+1) + … + (d−1).
pub(crate) fn alpha(d: u64, a: u64) -> u128 {
    debug_assert!(a < d);
    let (d, a) = (d as u128, a as u128);
    (d - 1 + a) * (d - a) / 2
}

/// Reduced ω exponent of amplitude a of the state |ω_s^{(r)}⟩:
/// s(d−a) − r·α(a) mod d.
pub(crate) fn state_exponent(d: u64, r: u64, s: u64, a: u64) -> i64 {
    let e = (s as i128) * ((d - a) as i128) - (r as i128) * (alpha(d, a) as i128);
    e.rem_euclid(d as i128) as i64
}

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

/// The state |ω_s^{(r)}⟩ = (1/√d) Σ_a ω^{s(d−a)} ω^{−r·α(a)} |a⟩ for odd
/// prime d, with r, s ∈ {0, …, d−1}.
pub fn mub_state(d: u64, r: u64, s: u64) -> Result<Ket> {
    validate_odd_prime(d)?;
    validate_index(d, "r", r)?;
    validate_index(d, "s", s)?;
    let amps = (0..d)
        .map(|a| {
            CycloScalar::root_of_unity(d, state_exponent(d, r, s, a)).map(|w| w.div_root_d())
        })
        .collect::<Result<Vec<_>>>()?;
    Ket::new(d, amps)
}

/// Identifies one of the d + 1 mutually unbiased bases.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MubLabel {
    /// The computational basis {|0⟩, …, |d−1⟩}.
    Computational,
    /// The basis {|ω_s^{(r)}⟩ : s} for a fixed rotation index r.
    R(u64),
}

impl std::fmt::Display for MubLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            MubLabel::Computational => write!(f, "computational"),
            MubLabel::R(r) => write!(f, "r={r}"),
        }
    }
}

impl Serialize for MubLabel {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            MubLabel::Computational => serializer.serialize_str("computational"),
            MubLabel::R(r) => serializer.serialize_u64(*r),
        }
    }
}

impl<'de> Deserialize<'de> for MubLabel {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Text(String),
            Index(u64),
        }
        match Raw::deserialize(deserializer)? {
            Raw::Text(t) if t == "computational" => Ok(MubLabel::Computational),
            Raw::Text(t) => Err(D::Error::custom(format!("unknown basis label {t:?}"))),
            Raw::Index(r) => Ok(MubLabel::R(r)),
        }
    }
}

/// One orthonormal basis of H_d, validated exactly at construction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MubBasis {
    d: u64,
    label: MubLabel,
    states: Vec<Ket>,
}

impl MubBasis {
    /// Validates that the states form an exactly orthonormal d-element
    /// basis: ⟨φ_i|φ_j⟩ = δ_ij with no tolerance.
    pub fn new(d: u64, label: MubLabel, states: Vec<Ket>) -> Result<Self> {
        validate_odd_prime(d)?;
        if states.len() != d as usize {
            return Err(Error::Malformed {
                reason: "a basis must contain exactly d states",
            });
        }
        let one = CycloScalar::one(d)?;
        for (i, a) in states.iter().enumerate() {
            for (j, b) in states.iter().enumerate().skip(i) {
                let p = inner(a, b)?;
                let expected_one = i == j;
                if (expected_one && p != one) || (!expected_one && !p.is_zero()) {
                    return Err(Error::Malformed {
                        reason: "basis states are not exactly orthonormal",
                    });
                }
            }
        }
        Ok(Self { d, label, states })
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn label(&self) -> MubLabel {
        self.label
    }

    pub fn states(&self) -> &[Ket] {
        &self.states
    }

    pub fn state(&self, s: usize) -> &Ket {
        &self.states[s]
    }
}

/// The computational basis as a labeled MUB.
pub fn computational_basis(d: u64) -> Result<MubBasis> {
    validate_odd_prime(d)?;
    let states = (0..d).map(|i| Ket::basis_ket(d, i)).collect::<Result<_>>()?;
    MubBasis::new(d, MubLabel::Computational, states)
}

/// Basis r of the rotated family: {|ω_s^{(r)}⟩ : s ∈ 0..d}.
pub fn mub_basis(d: u64, r: u64) -> Result<MubBasis> {
    validate_odd_prime(d)?;
    validate_index(d, "r", r)?;
    let states = (0..d).map(|s| mub_state(d, r, s)).collect::<Result<_>>()?;
    MubBasis::new(d, MubLabel::R(r), states)
}

/// The full set of d + 1 mutually unbiased bases: the computational basis
/// followed by the rotated bases r = 0, …, d−1.
pub fn all_mubs(d: u64) -> Result<Vec<MubBasis>> {
    let mut bases = vec![computational_basis(d)?];
    for r in 0..d {
        bases.push(mub_basis(d, r)?);
    }
    Ok(bases)
}

/// Whether a ↦ a·p mod d permutes the residues {0, …, d−1}.
///
/// For prime d this holds for every p ≢ 0 (mod d); the basis-overlap sums
/// rely on exactly this re-indexing freedom.
pub fn multiplication_permutes_residues(d: u64, p: u64) -> bool {
    if d == 0 {
        return false;
    }
    let mut seen = vec![false; d as usize];
    for a in 0..d {
        let idx = ((a as u128 * p as u128) % d as u128) as usize;
        if seen[idx] {
            return false;
        }
        seen[idx] = true;
    }
    true
}

#[derive(Deserialize)]
struct KetRepr {
    d: u64,
    amps: Vec<CycloScalar>,
}

impl Serialize for Ket {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = serializer.serialize_struct("Ket", 2)?;
        st.serialize_field("d", &self.d)?;
        st.serialize_field("amps", &self.amps)?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for Ket {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = KetRepr::deserialize(deserializer)?;
        Ket::new(raw.d, raw.amps).map_err(D::Error::custom)
    }
}

impl<'de> Deserialize<'de> for MubBasis {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            d: u64,
            label: MubLabel,
            states: Vec<Ket>,
        }
        let raw = Raw::deserialize(deserializer)?;
        MubBasis::new(raw.d, raw.label, raw.states).map_err(D::Error::custom)
    }
}
