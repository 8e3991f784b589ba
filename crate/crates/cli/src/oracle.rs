//! Independent floating-point implementation of every quantity the
//! exact kernel produces.
//!
//! Nothing here touches the cyclotomic representation: phases come from
//! `Complex64::from_polar`, the cumulative exponent is summed directly
//! instead of using its closed form, operators are dense complex
//! matrices, and trace overlaps go through explicit matrix products.
//! Agreement with the exact kernel (to 1e−10) is therefore a meaningful
//! cross-check rather than a tautology.

use num_complex::Complex64;
use std::f64::consts::TAU;

/// A dense complex matrix in row-major order.
pub type CMat = Vec<Vec<Complex64>>;

/// e^{2πi·e/d}.
pub fn phase(d: u64, e: i64) -> Complex64 {
    let reduced = e.rem_euclid(d as i64) as f64;
    Complex64::from_polar(1.0, TAU * reduced / d as f64)
}

/// The cumulative exponent a + (a+1) + … + (d−1), summed directly.
pub fn alpha(d: u64, a: u64) -> u64 {
    (a..d).sum()
}

/// Amplitudes of the state |ω_s^{(r)}⟩ over the computational basis.
pub fn mub_state(d: u64, r: u64, s: u64) -> Vec<Complex64> {
    let scale = 1.0 / (d as f64).sqrt();
    (0..d)
        .map(|a| {
            let e = (s * (d - a)) as i64 - (r * alpha(d, a)) as i64;
            phase(d, e) * scale
        })
        .collect()
}

/// The d × d zero matrix.
fn zeros(d: usize) -> CMat {
    vec![vec![Complex64::new(0.0, 0.0); d]; d]
}

/// The identity matrix.
pub fn identity(d: usize) -> CMat {
    let mut m = zeros(d);
    for (k, row) in m.iter_mut().enumerate() {
        row[k] = Complex64::new(1.0, 0.0);
    }
    m
}

/// The cyclic shift X: X|k⟩ = |k+1 mod d⟩.
pub fn shift(d: u64) -> CMat {
    let n = d as usize;
    let mut m = zeros(n);
    for col in 0..n {
        m[(col + 1) % n][col] = Complex64::new(1.0, 0.0);
    }
    m
}

/// The clock Z: Z|k⟩ = ω^k |k⟩.
pub fn clock(d: u64) -> CMat {
    let n = d as usize;
    let mut m = zeros(n);
    for (k, row) in m.iter_mut().enumerate() {
        row[k] = phase(d, k as i64);
    }
    m
}

/// Matrix product.
pub fn matmul(a: &CMat, b: &CMat) -> CMat {
    let n = a.len();
    let mut out = zeros(n);
    for i in 0..n {
        for k in 0..n {
            let aik = a[i][k];
            if aik.norm_sqr() == 0.0 {
                continue;
            }
            for j in 0..n {
                out[i][j] += aik * b[k][j];
            }
        }
    }
    out
}

/// Conjugate transpose.
pub fn dagger(m: &CMat) -> CMat {
    let n = m.len();
    let mut out = zeros(n);
    for i in 0..n {
        for j in 0..n {
            out[j][i] = m[i][j].conj();
        }
    }
    out
}

/// Matrix trace.
pub fn trace(m: &CMat) -> Complex64 {
    m.iter().enumerate().map(|(k, row)| row[k]).sum()
}

/// The n-th matrix power.
pub fn matpow(m: &CMat, n: u32) -> CMat {
    let mut out = identity(m.len());
    for _ in 0..n {
        out = matmul(&out, m);
    }
    out
}

/// The word X^b Z^a.
pub fn word(d: u64, b: u64, a: u64) -> CMat {
    matmul(&matpow(&shift(d), b as u32), &matpow(&clock(d), a as u32))
}

/// The basis element (1/√d) Σ_a ω^{s(d−a) − r·α(a)} X^a as a dense
/// matrix, assembled from explicit shift powers.
pub fn muub_element(d: u64, r: u64, s: u64) -> CMat {
    let amps = mub_state(d, r, s);
    let n = d as usize;
    let mut out = zeros(n);
    let mut x_power = identity(n);
    for amp in amps.iter().take(n) {
        for i in 0..n {
            for j in 0..n {
                out[i][j] += amp * x_power[i][j];
            }
        }
        x_power = matmul(&x_power, &shift(d));
    }
    out
}

/// The standard basis element X^s.
pub fn standard_element(d: u64, s: u64) -> CMat {
    matpow(&shift(d), s as u32)
}

/// |Tr(A†B)|², through the explicit product and dense trace.
pub fn hs_overlap_sq(a: &CMat, b: &CMat) -> f64 {
    trace(&matmul(&dagger(a), b)).norm_sqr()
}

/// Whether ‖U†U − 𝕀‖_∞ < tol, entry by entry.
pub fn is_unitary(u: &CMat, tol: f64) -> bool {
    let product = matmul(&dagger(u), u);
    let eye = identity(u.len());
    product
        .iter()
        .zip(&eye)
        .all(|(pr, er)| pr.iter().zip(er).all(|(p, e)| (p - e).norm() < tol))
}

/// ⟨x|y⟩ = Σ x_i* y_i.
pub fn inner(x: &[Complex64], y: &[Complex64]) -> Complex64 {
    x.iter().zip(y).map(|(a, b)| a.conj() * b).sum()
}

/// The Choi vector of U: amplitudes ⟨n|U|m⟩/√d at index m·d + n.
pub fn vectorize(u: &CMat) -> Vec<Complex64> {
    let n = u.len();
    let scale = 1.0 / (n as f64).sqrt();
    let mut v = vec![Complex64::new(0.0, 0.0); n * n];
    for m in 0..n {
        for row in 0..n {
            v[m * n + row] = u[row][m] * scale;
        }
    }
    v
}

/// The Bell state (1/√d) Σ_n ω^{an} |n⟩|n + b mod d⟩.
pub fn bell_state(d: u64, a: u64, b: u64) -> Vec<Complex64> {
    let n = d as usize;
    let scale = 1.0 / (d as f64).sqrt();
    let mut v = vec![Complex64::new(0.0, 0.0); n * n];
    for k in 0..n {
        v[k * n + (k + b as usize) % n] = phase(d, (a as i64) * (k as i64)) * scale;
    }
    v
}

/// The maximally entangled family member built on the word W = X^b Z^a:
/// (1/√d) Σ_i ω^{s(d−i) − r·α(i)} |W^i⟩, with |·⟩ the Choi vector.
pub fn mes_state(d: u64, r: u64, s: u64, a: u64, b: u64) -> Vec<Complex64> {
    let n = d as usize;
    let scale = 1.0 / (d as f64).sqrt();
    let w = word(d, b, a);
    let mut v = vec![Complex64::new(0.0, 0.0); n * n];
    let mut w_power = identity(n);
    for i in 0..d {
        let coeff = phase(d, (s * (d - i)) as i64 - (r * alpha(d, i)) as i64) * scale;
        for (k, amp) in vectorize(&w_power).into_iter().enumerate() {
            v[k] += coeff * amp;
        }
        w_power = matmul(&w_power, &w);
    }
    v
}

/// The reduction of |ψ⟩⟨ψ| onto the first factor.
pub fn reduced_first(psi: &[Complex64], d: u64) -> CMat {
    let n = d as usize;
    let mut rho = zeros(n);
    for i in 0..n {
        for j in 0..n {
            rho[i][j] = (0..n)
                .map(|k| psi[i * n + k] * psi[j * n + k].conj())
                .sum();
        }
    }
    rho
}

/// Whether the reduction onto the first factor is 𝕀/d to within tol.
pub fn is_max_entangled(psi: &[Complex64], d: u64, tol: f64) -> bool {
    let rho = reduced_first(psi, d);
    let uniform = 1.0 / d as f64;
    rho.iter().enumerate().all(|(i, row)| {
        row.iter().enumerate().all(|(j, z)| {
            let expected = if i == j { uniform } else { 0.0 };
            (z - Complex64::new(expected, 0.0)).norm() < tol
        })
    })
}
