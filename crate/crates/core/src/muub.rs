//! The maximal family of mutually unbiased unitary bases for the shift
//! subspace M_s, with exact verification.
//!
//! Two orthogonal unitary-operator bases {Aᵢ}, {Bⱼ} of M_s are mutually
//! unbiased when |Tr(Aᵢ†Bⱼ)|² is the same nonzero constant for all i, j.
//! For odd prime d the family below attains the maximum of d such bases:
//! the shift powers {Xⁱ} plus, for every r ∈ {1, …, d−1}, the basis
//!
//! ```text
//!     X_s^{(r)} = (1/√d) Σᵢ ω^{s(d−i)} ω^{−r·α(i)} Xⁱ,   s ∈ {0, …, d−1},
//! ```
//!
//! whose cross moduli all equal |Tr(A†B)|² = d.  The r = 0 recipe is
//! excluded for cause: its operators are not unitary, which
//! [`theorem_counterexample`] certifies with an explicit monoid witness
//! and a failed dense U†U check.
//!
//! Verification reports keep every modulus as an exact rational and state
//! the observed constant rather than assuming it, so foreign bases with a
//! different (but valid) constant can be audited with the same machinery.

use serde::ser::SerializeStruct;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::cyclo::{rational_to_pair, validate_odd_prime, CycloScalar, Rational};
use crate::error::{Error, Result};
use crate::hilbert::{bullet, dagger, mub_state, state_exponent, Ket};
use crate::matspace::{g_map, hs_inner, to_dense, MsElement};

/// Identifies one basis of the unitary family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MuubLabel {
    /// The shift-power basis {X⁰, …, X^{d−1}}.
    Standard,
    /// The rotated basis {X_s^{(r)} : s} for a fixed r ∈ {1, …, d−1}.
    R(u64),
}

impl std::fmt::Display for MuubLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            MuubLabel::Standard => write!(f, "standard"),
            MuubLabel::R(r) => write!(f, "r={r}"),
        }
    }
}

impl Serialize for MuubLabel {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            MuubLabel::Standard => serializer.serialize_str("standard"),
            MuubLabel::R(r) => serializer.serialize_u64(*r),
        }
    }
}

impl<'de> Deserialize<'de> for MuubLabel {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Text(String),
            Index(u64),
        }
        match Raw::deserialize(deserializer)? {
            Raw::Text(t) if t == "standard" => Ok(MuubLabel::Standard),
            Raw::Text(t) => Err(D::Error::custom(format!("unknown basis label {t:?}"))),
            Raw::Index(r) => Ok(MuubLabel::R(r)),
        }
    }
}

/// One orthogonal basis of unitary operators for M_s.
///
/// Construction validates both defining properties exactly: every member
/// passes the dense U†U = 𝕀 check, and distinct members are
/// Hilbert–Schmidt orthogonal.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MuubBasis {
    d: u64,
    label: MuubLabel,
    elements: Vec<MsElement>,
}

impl MuubBasis {
    pub fn new(d: u64, label: MuubLabel, elements: Vec<MsElement>) -> Result<Self> {
        validate_odd_prime(d)?;
        if elements.len() != d as usize {
            return Err(Error::Malformed {
                reason: "a basis must contain exactly d elements",
            });
        }
        for e in &elements {
            if e.d() != d {
                return Err(Error::DimensionMismatch {
                    left: d,
                    right: e.d(),
                });
            }
            if !to_dense(e)?.is_unitary() {
                return Err(Error::NotUnitary);
            }
        }
        for (i, a) in elements.iter().enumerate() {
            for b in elements.iter().skip(i + 1) {
                if !hs_inner(a, b)?.is_zero() {
                    return Err(Error::Malformed {
                        reason: "basis elements are not trace-orthogonal",
                    });
                }
            }
        }
        Ok(Self { d, label, elements })
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn label(&self) -> MuubLabel {
        self.label
    }

    pub fn elements(&self) -> &[MsElement] {
        &self.elements
    }

    pub fn element(&self, s: usize) -> &MsElement {
        &self.elements[s]
    }
}

impl<'de> Deserialize<'de> for MuubBasis {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        #[derive(Deserialize)]
        struct Raw {
            d: u64,
            label: MuubLabel,
            elements: Vec<MsElement>,
        }
        let raw = Raw::deserialize(deserializer)?;
        MuubBasis::new(raw.d, raw.label, raw.elements).map_err(D::Error::custom)
    }
}

/// The rotated basis element X_s^{(r)} = (1/√d) Σᵢ ω^{s(d−i)−r·α(i)} Xⁱ.
///
/// r = 0 is rejected with [`Error::NotUnitaryFamily`]: those operators are
/// not unitary (see [`theorem_counterexample`]), so they form no basis of
/// the unitary family.
pub fn muub_element(d: u64, r: u64, s: u64) -> Result<MsElement> {
    validate_odd_prime(d)?;
    if r == 0 {
        return Err(Error::NotUnitaryFamily);
    }
    for (name, v) in [("r", r), ("s", s)] {
        if v >= d {
            return Err(Error::IndexOutOfRange {
                name,
                value: v as i64,
                bound: d,
            });
        }
    }
    let xcoeffs = (0..d)
        .map(|i| {
            CycloScalar::root_of_unity(d, state_exponent(d, r, s, i)).map(|w| w.div_root_d())
        })
        .collect::<Result<Vec<_>>>()?;
    MsElement::new(d, xcoeffs)
}

/// The shift-power basis {X⁰, …, X^{d−1}}.
pub fn standard_basis(d: u64) -> Result<MuubBasis> {
    validate_odd_prime(d)?;
    let elements = (0..d)
        .map(|i| MsElement::x_power(d, i))
        .collect::<Result<Vec<_>>>()?;
    MuubBasis::new(d, MuubLabel::Standard, elements)
}

/// The rotated basis for one r ∈ {1, …, d−1}.
pub fn muub_basis(d: u64, r: u64) -> Result<MuubBasis> {
    let elements = (0..d)
        .map(|s| muub_element(d, r, s))
        .collect::<Result<Vec<_>>>()?;
    MuubBasis::new(d, MuubLabel::R(r), elements)
}

/// The full maximal family: the shift-power basis plus the d−1 rotated
/// bases, d bases in total.
pub fn muub_family(d: u64) -> Result<Vec<MuubBasis>> {
    let mut family = vec![standard_basis(d)?];
    for r in 1..d {
        family.push(muub_basis(d, r)?);
    }
    Ok(family)
}

/// Verdict of a pairwise verification.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    #[serde(rename = "muub")]
    Muub,
    #[serde(rename = "not-muub")]
    NotMuub,
}

/// One cell whose modulus breaks the common-constant requirement, kept
/// with its exact (possibly irrational) value.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub i: usize,
    pub j: usize,
    pub value: CycloScalar,
}

/// Exact pairwise verification record: every |Tr(Aᵢ†Bⱼ)|², the observed
/// common constant (when there is one), and the verdict.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    d: u64,
    a: MuubLabel,
    b: MuubLabel,
    /// Row-major by (i, j); `None` marks a modulus that is not rational.
    values: Vec<Option<Rational>>,
    /// The shared value of all cells, if they do share one (zero included).
    constant: Option<Rational>,
    verdict: Verdict,
    violations: Vec<Violation>,
}

impl VerificationReport {
    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn labels(&self) -> (MuubLabel, MuubLabel) {
        (self.a, self.b)
    }

    pub fn values(&self) -> &[Option<Rational>] {
        &self.values
    }

    pub fn value(&self, i: usize, j: usize) -> &Option<Rational> {
        &self.values[i * self.d as usize + j]
    }

    pub fn constant(&self) -> Option<&Rational> {
        self.constant.as_ref()
    }

    pub fn verdict(&self) -> Verdict {
        self.verdict
    }

    pub fn violations(&self) -> &[Violation] {
        &self.violations
    }
}

impl Serialize for VerificationReport {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let pairs: Vec<Option<[serde_json::Number; 2]>> = self
            .values
            .iter()
            .map(|v| v.as_ref().map(rational_to_pair))
            .collect();
        let mut st = serializer.serialize_struct("VerificationReport", 7)?;
        st.serialize_field("d", &self.d)?;
        st.serialize_field("a", &self.a)?;
        st.serialize_field("b", &self.b)?;
        st.serialize_field("values", &pairs)?;
        st.serialize_field(
            "constant",
            &self.constant.as_ref().map(|c| rational_to_pair(c)),
        )?;
        st.serialize_field("verdict", &self.verdict)?;
        st.serialize_field("violations", &self.violations)?;
        st.end()
    }
}

/// Computes all d² cross moduli |Tr(Aᵢ†Bⱼ)|² between two distinct bases
/// and judges mutual unbiasedness: every cell must equal the same nonzero
/// constant.  Same-label input is rejected.
pub fn verify_muub_pair(a: &MuubBasis, b: &MuubBasis) -> Result<VerificationReport> {
    if a.d() != b.d() {
        return Err(Error::DimensionMismatch {
            left: a.d(),
            right: b.d(),
        });
    }
    if a.label() == b.label() {
        return Err(Error::SameBasis);
    }
    let d = a.d() as usize;
    let mut values = Vec::with_capacity(d * d);
    let mut exact = Vec::with_capacity(d * d);
    for ai in a.elements() {
        for bj in b.elements() {
            let m = hs_inner(ai, bj)?.abs_squared();
            values.push(m.as_rational());
            exact.push(m);
        }
    }
    let reference = values[0].clone();
    let mut violations = Vec::new();
    for (idx, v) in values.iter().enumerate() {
        if *v != reference || v.is_none() {
            violations.push(Violation {
                i: idx / d,
                j: idx % d,
                value: exact[idx].clone(),
            });
        }
    }
    let constant = match (&reference, violations.is_empty()) {
        (Some(c), true) => Some(c.clone()),
        _ => None,
    };
    let verdict = match &constant {
        Some(c) if !num_traits::Zero::is_zero(c) => Verdict::Muub,
        _ => Verdict::NotMuub,
    };
    Ok(VerificationReport {
        d: a.d(),
        a: a.label(),
        b: b.label(),
        values,
        constant,
        verdict,
        violations,
    })
}

/// The r = 0 exclusion, certified constructively: the would-be basis
/// member (1/√d) Σᵢ Xⁱ (the G-image of the r = 0, s = 0 state) fails both
/// unitarity tests.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub d: u64,
    /// The offending operator in coefficient form.
    pub element: MsElement,
    /// φ•φ† for its pre-image φ; unitarity would require exactly |0⟩, but
    /// here every coefficient is 1.
    pub witness: Ket,
    /// Whether the witness equals the monoid identity (always false).
    pub witness_is_identity: bool,
    /// Result of the dense U†U = 𝕀 check (always false).
    pub dense_unitary: bool,
}

pub fn theorem_counterexample(d: u64) -> Result<Counterexample> {
    let phi = mub_state(d, 0, 0)?;
    let element = g_map(&phi)?;
    let witness = bullet(&phi, &dagger(&phi))?;
    let witness_is_identity = witness == Ket::basis_ket(d, 0)?;
    let dense_unitary = to_dense(&element)?.is_unitary();
    Ok(Counterexample {
        d,
        element,
        witness,
        witness_is_identity,
        dense_unitary,
    })
}

/// Verification of the whole constructed family: every unordered pair of
/// bases plus the r = 0 counterexample.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyVerification {
    d: u64,
    pairs: Vec<VerificationReport>,
    counterexample: Counterexample,
}

impl FamilyVerification {
    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn pairs(&self) -> &[VerificationReport] {
        &self.pairs
    }

    pub fn counterexample(&self) -> &Counterexample {
        &self.counterexample
    }

    /// True iff every pair is mutually unbiased at the constant d and the
    /// r = 0 exclusion held up.
    pub fn passed(&self) -> bool {
        let d_const = Rational::from_integer(self.d.into());
        self.pairs.iter().all(|p| {
            p.verdict == Verdict::Muub && p.constant.as_ref() == Some(&d_const)
        }) && !self.counterexample.witness_is_identity
            && !self.counterexample.dense_unitary
    }
}

impl Serialize for FamilyVerification {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("FamilyVerification", 3)?;
        st.serialize_field("d", &self.d)?;
        st.serialize_field("pairs", &self.pairs)?;
        st.serialize_field("counterexample", &self.counterexample)?;
        st.end()
    }
}

/// Builds the maximal family for d and verifies all of it.
pub fn verify_family(d: u64) -> Result<FamilyVerification> {
    let family = muub_family(d)?;
    let mut pairs = Vec::new();
    for (i, a) in family.iter().enumerate() {
        for b in family.iter().skip(i + 1) {
            pairs.push(verify_muub_pair(a, b)?);
        }
    }
    Ok(FamilyVerification {
        d,
        pairs,
        counterexample: theorem_counterexample(d)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::omega_pow;
    use num_bigint::BigInt;

    fn rat(n: i64) -> Rational {
        Rational::from_integer(BigInt::from(n))
    }

    #[test]
    fn first_rotated_element_of_dimension_five() {
        // Coefficients (1, 1, ω, ω³, ω)/√5 for r = 1, s = 0.
        let m = muub_element(5, 1, 0).unwrap();
        let expect: Vec<_> = [0i64, 0, 1, 3, 1]
            .iter()
            .map(|&e| omega_pow(5, e).unwrap().div_root_d())
            .collect();
        assert_eq!(m.xcoeffs(), &expect[..]);
    }

    #[test]
    fn dimension_three_family_matches_the_closed_form() {
        // r = 1: (1/√3)[𝕀 + ω^{2m}X + ω^{m+1}X²] for every shift m;
        // r = 2: (1/√3)[𝕀 + ω^{2n}X + ω^{n+2}X²] for every shift n.
        for m in 0..3i64 {
            let el = muub_element(3, 1, m as u64).unwrap();
            let expect: Vec<_> = [0, 2 * m, m + 1]
                .iter()
                .map(|&e| omega_pow(3, e).unwrap().div_root_d())
                .collect();
            assert_eq!(el.xcoeffs(), &expect[..], "r = 1, s = {m}");
        }
        for n in 0..3i64 {
            let el = muub_element(3, 2, n as u64).unwrap();
            let expect: Vec<_> = [0, 2 * n, n + 2]
                .iter()
                .map(|&e| omega_pow(3, e).unwrap().div_root_d())
                .collect();
            assert_eq!(el.xcoeffs(), &expect[..], "r = 2, s = {n}");
        }
    }

    #[test]
    fn recipe_and_coefficient_map_route_coincide() {
        for d in [3u64, 5, 7] {
            for r in 1..d {
                for s in 0..d {
                    assert_eq!(
                        muub_element(d, r, s).unwrap(),
                        g_map(&mub_state(d, r, s).unwrap()).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn family_has_exactly_d_bases_with_the_expected_labels() {
        let family = muub_family(5).unwrap();
        assert_eq!(family.len(), 5);
        assert_eq!(family[0].label(), MuubLabel::Standard);
        for (r, basis) in family.iter().enumerate().skip(1) {
            assert_eq!(basis.label(), MuubLabel::R(r as u64));
            assert_eq!(basis.elements().len(), 5);
        }
    }

    #[test]
    fn rotated_bases_against_the_standard_basis_verify_at_constant_d() {
        let std_basis = standard_basis(3).unwrap();
        let r1 = muub_basis(3, 1).unwrap();
        let report = verify_muub_pair(&std_basis, &r1).unwrap();
        assert_eq!(report.verdict(), Verdict::Muub);
        assert_eq!(report.constant(), Some(&rat(3)));
        assert!(report.violations().is_empty());
        assert_eq!(report.values().len(), 9);
        for v in report.values() {
            assert_eq!(v.as_ref(), Some(&rat(3)));
        }
    }

    #[test]
    fn whole_family_verification_passes_for_small_dimensions() {
        for d in [3u64, 5] {
            let fam = verify_family(d).unwrap();
            assert_eq!(fam.pairs().len(), (d * (d - 1) / 2) as usize);
            assert!(fam.passed(), "family verification failed for d = {d}");
        }
    }

    #[test]
    fn relabeled_copies_of_one_basis_are_not_unbiased() {
        // Same operators under two labels: the diagonal moduli are d², the
        // off-diagonal ones 0, so the constant requirement fails.
        let r1 = muub_basis(3, 1).unwrap();
        let copy = MuubBasis::new(3, MuubLabel::R(2), r1.elements().to_vec()).unwrap();
        let report = verify_muub_pair(&r1, &copy).unwrap();
        assert_eq!(report.verdict(), Verdict::NotMuub);
        assert_eq!(report.constant(), None);
        assert!(!report.violations().is_empty());
        assert_eq!(report.value(0, 0).as_ref(), Some(&rat(9)));
        assert_eq!(report.value(0, 1).as_ref(), Some(&rat(0)));
    }

    #[test]
    fn same_label_verification_is_rejected() {
        let r1 = muub_basis(3, 1).unwrap();
        assert_eq!(verify_muub_pair(&r1, &r1), Err(Error::SameBasis));
    }

    #[test]
    fn zero_rotation_is_rejected_as_a_basis_index() {
        assert_eq!(muub_element(3, 0, 0), Err(Error::NotUnitaryFamily));
        assert!(matches!(
            muub_element(3, 3, 0),
            Err(Error::IndexOutOfRange { name: "r", .. })
        ));
        assert!(matches!(
            muub_element(3, 1, 5),
            Err(Error::IndexOutOfRange { name: "s", .. })
        ));
    }

    #[test]
    fn counterexample_certifies_non_unitarity() {
        let c = theorem_counterexample(3).unwrap();
        assert!(!c.witness_is_identity);
        assert!(!c.dense_unitary);
        // The witness is Σ_m |m⟩ with every coefficient exactly one.
        let one = CycloScalar::one(3).unwrap();
        for amp in c.witness.amps() {
            assert_eq!(*amp, one);
        }
    }

    #[test]
    fn non_unitary_elements_cannot_form_a_basis() {
        let bad = g_map(&mub_state(3, 0, 0).unwrap()).unwrap();
        let id = MsElement::x_power(3, 0).unwrap();
        let x2 = MsElement::x_power(3, 2).unwrap();
        assert_eq!(
            MuubBasis::new(3, MuubLabel::R(1), vec![bad, id, x2]),
            Err(Error::NotUnitary)
        );
    }

    #[test]
    fn report_serialization_matches_the_documented_shape() {
        let fam = verify_family(3).unwrap();
        let v: serde_json::Value = serde_json::to_value(&fam).unwrap();
        assert_eq!(v["d"], serde_json::json!(3));
        let pairs = v["pairs"].as_array().unwrap();
        assert_eq!(pairs.len(), 3);
        assert_eq!(pairs[0]["a"], serde_json::json!("standard"));
        assert_eq!(pairs[0]["b"], serde_json::json!(1));
        assert_eq!(pairs[0]["verdict"], serde_json::json!("muub"));
        assert_eq!(
            pairs[0]["values"].as_array().unwrap()[0],
            serde_json::json!([3, 1])
        );
        assert_eq!(v["counterexample"]["dense_unitary"], serde_json::json!(false));
        assert_eq!(
            v["counterexample"]["witness"]["amps"]
                .as_array()
                .unwrap()
                .len(),
            3
        );
    }

    #[test]
    fn basis_serialization_round_trips() {
        let basis = muub_basis(3, 1).unwrap();
        let json = serde_json::to_string(&basis).unwrap();
        assert_eq!(serde_json::from_str::<MuubBasis>(&json).unwrap(), basis);
        let v: serde_json::Value = serde_json::to_value(&basis).unwrap();
        assert_eq!(v["label"], serde_json::json!(1));
    }
}
