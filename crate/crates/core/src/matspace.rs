//! The d-dimensional operator subspace M_s ⊂ M(d, ℂ) spanned by the powers
//! of the cyclic shift X (X|k⟩ = |k⊕1⟩, X^i X^j = X^{i⊕j}), its dense
//! matrix form, and the coefficient isomorphism G between H_d and M_s.
//!
//! G maps Σ aᵢ|i⟩ ↦ Σ aᵢ Xⁱ and turns the convolution monoid of
//! [`crate::hilbert`] into the operator product: G(φ•ψ) = G(φ)G(ψ), and
//! the conjugate-reverse involution into the adjoint.  Traces relate to
//! inner products by |Tr[G(φ)†G(ψ)]| = d·|⟨φ|ψ⟩|, which is what carries
//! unbiasedness of state bases over to the operator side.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::cyclo::{validate_odd_prime, validate_prime, CycloScalar};
use crate::error::{Error, Result};
use crate::hilbert::Ket;

/// An element Σᵢ cᵢ Xⁱ of M_s, stored by its shift-power coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MsElement {
    d: u64,
    xcoeffs: Vec<CycloScalar>,
}

impl MsElement {
    pub fn new(d: u64, xcoeffs: Vec<CycloScalar>) -> Result<Self> {
        validate_odd_prime(d)?;
        if xcoeffs.len() != d as usize {
            return Err(Error::Malformed {
                reason: "coefficient count must equal d",
            });
        }
        for c in &xcoeffs {
            if c.d() != d {
                return Err(Error::DimensionMismatch {
                    left: d,
                    right: c.d(),
                });
            }
        }
        Ok(Self { d, xcoeffs })
    }

    /// The basis element Xⁱ.
    pub fn x_power(d: u64, i: u64) -> Result<Self> {
        validate_odd_prime(d)?;
        if i >= d {
            return Err(Error::IndexOutOfRange {
                name: "i",
                value: i as i64,
                bound: d,
            });
        }
        let mut xcoeffs = vec![CycloScalar::zero(d)?; d as usize];
        xcoeffs[i as usize] = CycloScalar::one(d)?;
        Ok(Self { d, xcoeffs })
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn xcoeffs(&self) -> &[CycloScalar] {
        &self.xcoeffs
    }

    /// Operator product, computed in coefficients: Xⁱ Xʲ = X^{i⊕j} makes
    /// this the same cyclic convolution as the ket monoid.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.d != other.d {
            return Err(Error::DimensionMismatch {
                left: self.d,
                right: other.d,
            });
        }
        let d = self.d as usize;
        let mut xcoeffs = vec![CycloScalar::zero(self.d)?; d];
        for (i, a) in self.xcoeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.xcoeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let m = (i + j) % d;
                xcoeffs[m] = xcoeffs[m].add(&a.mul(b)?)?;
            }
        }
        Ok(Self { d: self.d, xcoeffs })
    }

    /// Hermitian adjoint: (Σ cᵢ Xⁱ)† = Σ cᵢ* X^{d−i}.
    pub fn dagger(&self) -> Self {
        let d = self.d as usize;
        let mut xcoeffs = vec![
            CycloScalar::zero(self.d).expect("dimension was validated at construction");
            d
        ];
        for (i, c) in self.xcoeffs.iter().enumerate() {
            xcoeffs[(d - i) % d] = c.conj();
        }
        Self { d: self.d, xcoeffs }
    }
}

/// The coefficient isomorphism G: Σ aᵢ|i⟩ ↦ Σ aᵢ Xⁱ.
pub fn g_map(ket: &Ket) -> Result<MsElement> {
    MsElement::new(ket.d(), ket.amps().to_vec())
}

/// Inverse of [`g_map`]: reads the shift-power coefficients back as
/// amplitudes.
pub fn g_inv(m: &MsElement) -> Result<Ket> {
    Ket::new(m.d, m.xcoeffs.clone())
}

/// Exact Hilbert–Schmidt inner product Tr(A†B) on M_s.
///
/// Since Tr(X^{d−i} X^j) = d·δ_ij, the trace collapses to the coefficient
/// formula d·Σᵢ aᵢ* bᵢ; the dense-trace recomputation is kept as a
/// cross-check in the test suite.
pub fn hs_inner(a: &MsElement, b: &MsElement) -> Result<CycloScalar> {
    if a.d != b.d {
        return Err(Error::DimensionMismatch {
            left: a.d,
            right: b.d,
        });
    }
    let mut acc = CycloScalar::zero(a.d)?;
    for (x, y) in a.xcoeffs.iter().zip(&b.xcoeffs) {
        if x.is_zero() || y.is_zero() {
            continue;
        }
        acc = acc.add(&x.conj().mul(y)?)?;
    }
    acc.mul(&CycloScalar::from_integer(a.d, a.d as i64)?)
}

/// A square matrix over the exact scalars, of size d (operators on H_d) or
/// d² (operators on the bipartite space).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DenseOp {
    /// The scalar order: entries live in ℚ(e^{2πi/order}, 1/√order).
    order: u64,
    entries: Vec<Vec<CycloScalar>>,
}

impl DenseOp {
    /// Builds a matrix from row-major entries.  The size must be order or
    /// order², and every entry must carry the scalar order.
    pub fn from_entries(order: u64, entries: Vec<Vec<CycloScalar>>) -> Result<Self> {
        validate_prime(order)?;
        let n = entries.len();
        if n as u64 != order && n as u64 != order * order {
            return Err(Error::Malformed {
                reason: "matrix size must be the scalar order or its square",
            });
        }
        for row in &entries {
            if row.len() != n {
                return Err(Error::Malformed {
                    reason: "matrix must be square",
                });
            }
            for e in row {
                if e.d() != order {
                    return Err(Error::DimensionMismatch {
                        left: order,
                        right: e.d(),
                    });
                }
            }
        }
        Ok(Self { order, entries })
    }

    /// The identity matrix of the given size over scalars of the given
    /// order.
    pub fn identity(order: u64, size: usize) -> Result<Self> {
        let mut entries = vec![vec![CycloScalar::zero(order)?; size]; size];
        for (i, row) in entries.iter_mut().enumerate() {
            row[i] = CycloScalar::one(order)?;
        }
        Self::from_entries(order, entries)
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn entry(&self, row: usize, col: usize) -> &CycloScalar {
        &self.entries[row][col]
    }

    pub fn rows(&self) -> &[Vec<CycloScalar>] {
        &self.entries
    }

    fn check_same_shape(&self, other: &Self) -> Result<()> {
        if self.order != other.order {
            return Err(Error::DimensionMismatch {
                left: self.order,
                right: other.order,
            });
        }
        if self.size() != other.size() {
            return Err(Error::Malformed {
                reason: "matrix sizes differ",
            });
        }
        Ok(())
    }

    /// Matrix product.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        let n = self.size();
        let zero = CycloScalar::zero(self.order)?;
        let mut entries = vec![vec![zero; n]; n];
        for i in 0..n {
            for k in 0..n {
                let a = &self.entries[i][k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &other.entries[k][j];
                    if b.is_zero() {
                        continue;
                    }
                    entries[i][j] = entries[i][j].add(&a.mul(b)?)?;
                }
            }
        }
        Ok(Self {
            order: self.order,
            entries,
        })
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> Self {
        let n = self.size();
        let mut entries =
            vec![
                vec![CycloScalar::zero(self.order).expect("order validated at construction"); n];
                n
            ];
        for (i, row) in self.entries.iter().enumerate() {
            for (j, e) in row.iter().enumerate() {
                entries[j][i] = e.conj();
            }
        }
        Self {
            order: self.order,
            entries,
        }
    }

    /// Exact trace.
    pub fn trace(&self) -> Result<CycloScalar> {
        let mut acc = CycloScalar::zero(self.order)?;
        for (i, row) in self.entries.iter().enumerate() {
            acc = acc.add(&row[i])?;
        }
        Ok(acc)
    }

    /// n-th matrix power by repeated multiplication.
    pub fn pow(&self, n: u32) -> Result<Self> {
        let mut acc = Self::identity(self.order, self.size())?;
        for _ in 0..n {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Exact unitarity: U†U = 𝕀 with no tolerance.
    pub fn is_unitary(&self) -> bool {
        let gram = self
            .dagger()
            .mul(self)
            .expect("dagger preserves shape");
        let id = Self::identity(self.order, self.size()).expect("order validated at construction");
        gram == id
    }

    pub(crate) fn is_hermitian(&self) -> bool {
        *self == self.dagger()
    }

    pub(crate) fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(ra, rb)| {
                ra.iter()
                    .zip(rb)
                    .map(|(a, b)| a.add(b))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            order: self.order,
            entries,
        })
    }

    pub(crate) fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&CycloScalar::from_integer(other.order, -1)?)?)
    }

    pub(crate) fn scale(&self, c: &CycloScalar) -> Result<Self> {
        let entries = self
            .entries
            .iter()
            .map(|row| row.iter().map(|e| e.mul(c)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            order: self.order,
            entries,
        })
    }
}

/// Renders an M_s element as a dense d×d matrix: since Xⁱ has entries
/// δ_{m, n⊕i}, entry (m, n) of Σ cᵢ Xⁱ is c_{(m−n) mod d}.
pub fn to_dense(m: &MsElement) -> Result<DenseOp> {
    let d = m.d as usize;
    let mut entries = vec![vec![CycloScalar::zero(m.d)?; d]; d];
    for (row, out) in entries.iter_mut().enumerate() {
        for (col, slot) in out.iter_mut().enumerate() {
            *slot = m.xcoeffs[(row + d - col) % d].clone();
        }
    }
    DenseOp::from_entries(m.d, entries)
}

/// Exact unitarity of a dense operator (U†U = 𝕀), the matrix-level
/// counterpart of the monoid test [`crate::hilbert::monoid_unitarity`].
pub fn is_unitary_dense(u: &DenseOp) -> bool {
    u.is_unitary()
}

#[derive(Deserialize)]
struct MsElementRepr {
    d: u64,
    xcoeffs: Vec<CycloScalar>,
}

impl Serialize for MsElement {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = serializer.serialize_struct("MsElement", 2)?;
        st.serialize_field("d", &self.d)?;
        st.serialize_field("xcoeffs", &self.xcoeffs)?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for MsElement {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = MsElementRepr::deserialize(deserializer)?;
        MsElement::new(raw.d, raw.xcoeffs).map_err(D::Error::custom)
    }
}

impl Serialize for DenseOp {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = serializer.serialize_struct("DenseOp", 4)?;
        st.serialize_field("order", &self.order)?;
        st.serialize_field("d_rows", &self.size())?;
        st.serialize_field("d_cols", &self.size())?;
        st.serialize_field("entries", &self.entries)?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for DenseOp {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            order: u64,
            d_rows: usize,
            d_cols: usize,
            entries: Vec<Vec<CycloScalar>>,
        }
        let raw = Raw::deserialize(deserializer)?;
        if raw.d_rows != raw.entries.len() || raw.d_cols != raw.entries.len() {
            return Err(D::Error::custom("declared matrix size does not match entries"));
        }
        DenseOp::from_entries(raw.order, raw.entries).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::omega_pow;
    use crate::hilbert::{bullet, dagger, inner, mub_state};

    fn x(d: u64) -> MsElement {
        MsElement::x_power(d, 1).unwrap()
    }

    #[test]
    fn shift_matrix_moves_basis_kets_up() {
        // X|k⟩ = |k⊕1⟩: entry (m, n) = δ_{m, n⊕1}.
        let m = to_dense(&x(3)).unwrap();
        let one = CycloScalar::one(3).unwrap();
        for row in 0..3 {
            for col in 0..3 {
                let expected = row == (col + 1) % 3;
                assert_eq!(*m.entry(row, col) == one, expected);
                if !expected {
                    assert!(m.entry(row, col).is_zero());
                }
            }
        }
        assert!(m.is_unitary());
    }

    #[test]
    fn shift_powers_are_trace_orthogonal() {
        // Tr(X^{i†}X^j) = d·δ_ij.
        let d = 5;
        for i in 0..d {
            for j in 0..d {
                let a = MsElement::x_power(d, i).unwrap();
                let b = MsElement::x_power(d, j).unwrap();
                let t = hs_inner(&a, &b).unwrap();
                if i == j {
                    assert_eq!(t, CycloScalar::from_integer(d, d as i64).unwrap());
                } else {
                    assert!(t.is_zero());
                }
            }
        }
    }

    #[test]
    fn coefficient_trace_matches_the_dense_trace() {
        // Tr(A†B) via the coefficient formula equals the honest dense
        // matrix computation.
        for (r1, s1, r2, s2) in [(1, 0, 2, 0), (1, 1, 1, 2), (0, 0, 1, 0), (2, 4, 3, 1)] {
            let a = g_map(&mub_state(5, r1, s1).unwrap()).unwrap();
            let b = g_map(&mub_state(5, r2, s2).unwrap()).unwrap();
            let fast = hs_inner(&a, &b).unwrap();
            let dense = to_dense(&a)
                .unwrap()
                .dagger()
                .mul(&to_dense(&b).unwrap())
                .unwrap()
                .trace()
                .unwrap();
            assert_eq!(fast, dense);
        }
    }

    #[test]
    fn coefficient_map_round_trips() {
        let psi = mub_state(7, 3, 2).unwrap();
        let m = g_map(&psi).unwrap();
        assert_eq!(g_inv(&m).unwrap(), psi);
        assert_eq!(m.xcoeffs(), psi.amps());
    }

    #[test]
    fn coefficient_map_turns_convolution_into_operator_product() {
        // G(φ•ψ) = G(φ)·G(ψ), and the dense route agrees.
        let phi = mub_state(5, 1, 2).unwrap();
        let psi = mub_state(5, 3, 4).unwrap();
        let lhs = g_map(&bullet(&phi, &psi).unwrap()).unwrap();
        let rhs = g_map(&phi).unwrap().mul(&g_map(&psi).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
        let dense_lhs = to_dense(&lhs).unwrap();
        let dense_rhs = to_dense(&g_map(&phi).unwrap())
            .unwrap()
            .mul(&to_dense(&g_map(&psi).unwrap()).unwrap())
            .unwrap();
        assert_eq!(dense_lhs, dense_rhs);
    }

    #[test]
    fn coefficient_map_turns_reversal_into_the_adjoint() {
        let phi = mub_state(5, 2, 1).unwrap();
        let lhs = g_map(&dagger(&phi)).unwrap();
        let rhs = g_map(&phi).unwrap().dagger();
        assert_eq!(lhs, rhs);
        assert_eq!(
            to_dense(&lhs).unwrap(),
            to_dense(&g_map(&phi).unwrap()).unwrap().dagger()
        );
    }

    #[test]
    fn trace_modulus_is_d_times_the_inner_product_modulus() {
        // |Tr[G(φ)†G(ψ)]|² = d²·|⟨φ|ψ⟩|², exactly.
        let d = 5;
        let dd = CycloScalar::from_integer(d, (d * d) as i64).unwrap();
        for (r1, s1, r2, s2) in [(1, 0, 2, 3), (0, 1, 4, 4), (3, 2, 3, 2)] {
            let phi = mub_state(d, r1, s1).unwrap();
            let psi = mub_state(d, r2, s2).unwrap();
            let lhs = hs_inner(&g_map(&phi).unwrap(), &g_map(&psi).unwrap())
                .unwrap()
                .abs_squared();
            let rhs = inner(&phi, &psi).unwrap().abs_squared().mul(&dd).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn images_of_rotated_states_are_unitary_but_r_zero_is_not() {
        let good = to_dense(&g_map(&mub_state(3, 1, 0).unwrap()).unwrap()).unwrap();
        assert!(is_unitary_dense(&good));
        let bad = to_dense(&g_map(&mub_state(3, 0, 0).unwrap()).unwrap()).unwrap();
        assert!(!is_unitary_dense(&bad));
    }

    #[test]
    fn first_rotated_image_of_dimension_three() {
        // G((1/√3)(|0⟩+|1⟩+ω|2⟩)) = (1/√3)(𝕀 + X + ωX²).
        let m = g_map(&mub_state(3, 1, 0).unwrap()).unwrap();
        let expect = |e: i64| omega_pow(3, e).unwrap().div_root_d();
        assert_eq!(m.xcoeffs(), &[expect(0), expect(0), expect(1)]);
    }

    #[test]
    fn identity_matrix_behaves_neutrally() {
        let id = DenseOp::identity(5, 5).unwrap();
        let m = to_dense(&x(5)).unwrap();
        assert_eq!(id.mul(&m).unwrap(), m);
        assert_eq!(m.mul(&id).unwrap(), m);
        assert_eq!(
            id.trace().unwrap(),
            CycloScalar::from_integer(5, 5).unwrap()
        );
        assert!(id.is_unitary());
        assert_eq!(m.pow(5).unwrap(), id);
    }

    #[test]
    fn rectangular_and_oversized_matrices_are_rejected() {
        let z = CycloScalar::zero(3).unwrap();
        assert!(matches!(
            DenseOp::from_entries(3, vec![vec![z.clone(); 2]; 3]),
            Err(Error::Malformed { .. })
        ));
        assert!(matches!(
            DenseOp::from_entries(3, vec![vec![z; 4]; 4]),
            Err(Error::Malformed { .. })
        ));
    }

    #[test]
    fn element_serialization_round_trips() {
        let m = g_map(&mub_state(5, 1, 0).unwrap()).unwrap();
        let json = serde_json::to_string(&m).unwrap();
        assert_eq!(serde_json::from_str::<MsElement>(&json).unwrap(), m);

        let dense = to_dense(&m).unwrap();
        let json = serde_json::to_string(&dense).unwrap();
        assert_eq!(serde_json::from_str::<DenseOp>(&json).unwrap(), dense);
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["d_rows"], serde_json::json!(5));
        assert_eq!(v["d_cols"], serde_json::json!(5));
        assert_eq!(v["entries"].as_array().unwrap().len(), 5);
    }

    #[test]
    fn mixed_dimension_operands_are_rejected() {
        let a = x(3);
        let b = x(5);
        assert!(matches!(
            hs_inner(&a, &b),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(matches!(a.mul(&b), Err(Error::DimensionMismatch { .. })));
    }
}
