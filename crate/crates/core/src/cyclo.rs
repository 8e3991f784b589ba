//! Exact scalars from the cyclotomic field ℚ(ω), ω = e^{2πi/d}, extended by
//! a symbolic 1/√d factor.
//!
//! A scalar is stored as a length-d vector of rationals (c₀, …, c_{d−1})
//! together with a non-negative integer k, and denotes
//!
//! ```text
//!     (c₀ + c₁ω + … + c_{d−1}ω^{d−1}) / d^{k/2}.
//! ```
//!
//! For prime d the minimal polynomial of ω is 1 + x + … + x^{d−1}, so the
//! representation is made canonical by eliminating the top coefficient
//! (ω^{d−1} = −1 − ω − … − ω^{d−2}) and folding every whole power of d out
//! of the radical (k is reduced to 0 or 1 by dividing the coefficients by
//! d^{⌊k/2⌋}).  The zero scalar always carries k = 0.  With that, equality
//! of values is structural equality of representations.
//!
//! The residual √d is treated as a formal symbol: scalars whose canonical
//! radical powers have different parity cannot be summed (except with zero,
//! which is parity-neutral), and a value claimed to be rational must carry
//! an even radical power.  Only integer powers of ω are representable.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;

use crate::error::{Error, Result};

/// Exact rational number with arbitrary-precision numerator and denominator.
pub type Rational = num_rational::BigRational;

/// Largest radical power tolerated on ingest before canonicalization;
/// d^{k/2} is materialized as an integer, so k must stay sane.
const MAX_INGEST_ROOT_POW: u32 = 4096;

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut f = 3u64;
    while f * f <= n {
        if n % f == 0 {
            return false;
        }
        f += 2;
    }
    true
}

/// d must be prime (2 is allowed; callers that need d > 2 use
/// [`validate_odd_prime`]).
pub(crate) fn validate_prime(d: u64) -> Result<()> {
    if is_prime(d) {
        Ok(())
    } else {
        Err(Error::InvalidDimension {
            d,
            reason: "dimension must be prime",
        })
    }
}

/// d must be an odd prime (the basis constructions need an invertible 2).
pub(crate) fn validate_odd_prime(d: u64) -> Result<()> {
    validate_prime(d)?;
    if d == 2 {
        return Err(Error::InvalidDimension {
            d,
            reason: "dimension must be an odd prime",
        });
    }
    Ok(())
}

/// An exact element of ℚ(ω)·d^{−k/2} in canonical form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CycloScalar {
    d: u64,
    coeffs: Vec<Rational>,
    root_d_pow: u32,
}

impl CycloScalar {
    /// Builds a scalar from raw parts and canonicalizes it.
    ///
    /// Any coefficient vector of length d and any radical power up to an
    /// ingest bound are tolerated; the result is reduced to canonical form.
    pub fn new(d: u64, coeffs: Vec<Rational>, root_d_pow: u32) -> Result<Self> {
        validate_prime(d)?;
        if coeffs.len() != d as usize {
            return Err(Error::Malformed {
                reason: "coefficient vector length must equal d",
            });
        }
        if root_d_pow > MAX_INGEST_ROOT_POW {
            return Err(Error::Malformed {
                reason: "radical power exceeds ingest bound",
            });
        }
        let mut s = Self {
            d,
            coeffs,
            root_d_pow,
        };
        s.canonicalize();
        Ok(s)
    }

    /// The zero scalar.
    pub fn zero(d: u64) -> Result<Self> {
        validate_prime(d)?;
        Ok(Self {
            d,
            coeffs: vec![Rational::zero(); d as usize],
            root_d_pow: 0,
        })
    }

    /// The scalar 1.
    pub fn one(d: u64) -> Result<Self> {
        Self::from_rational(d, Rational::from_integer(BigInt::from(1)))
    }

    /// Embeds a rational number.
    pub fn from_rational(d: u64, q: Rational) -> Result<Self> {
        validate_prime(d)?;
        let mut coeffs = vec![Rational::zero(); d as usize];
        coeffs[0] = q;
        Ok(Self {
            d,
            coeffs,
            root_d_pow: 0,
        })
    }

    /// Embeds an integer.
    pub fn from_integer(d: u64, n: i64) -> Result<Self> {
        Self::from_rational(d, Rational::from_integer(BigInt::from(n)))
    }

    /// ω^e for any prime d (2 included); e may be negative and is reduced
    /// mod d.  For d = 2 this yields (−1)^e.
    pub fn root_of_unity(d: u64, e: i64) -> Result<Self> {
        validate_prime(d)?;
        let k = e.rem_euclid(d as i64) as usize;
        let mut coeffs = vec![Rational::zero(); d as usize];
        coeffs[k] = Rational::from_integer(BigInt::from(1));
        let mut s = Self {
            d,
            coeffs,
            root_d_pow: 0,
        };
        s.canonicalize();
        Ok(s)
    }

    /// The normalization factor 1/√d.
    pub fn inv_sqrt_d(d: u64) -> Result<Self> {
        validate_prime(d)?;
        let mut coeffs = vec![Rational::zero(); d as usize];
        coeffs[0] = Rational::from_integer(BigInt::from(1));
        Ok(Self {
            d,
            coeffs,
            root_d_pow: 1,
        })
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    /// Canonical coefficients (c₀, …, c_{d−1}) with c_{d−1} = 0.
    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Canonical radical power, always 0 or 1.
    pub fn root_d_pow(&self) -> u32 {
        self.root_d_pow
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rational::is_zero)
    }

    /// True iff the value is a rational number *in representation*: no
    /// residual √d and no non-constant ω contribution.
    pub fn is_rational(&self) -> bool {
        self.root_d_pow == 0 && self.coeffs[1..].iter().all(Rational::is_zero)
    }

    /// The value as a rational, when [`is_rational`](Self::is_rational)
    /// holds.  A nonzero value with an odd residual radical power is not
    /// rational and yields `None`.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.is_rational() {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    fn check_same_d(&self, other: &Self) -> Result<()> {
        if self.d == other.d {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                left: self.d,
                right: other.d,
            })
        }
    }

    /// Reduces to canonical form: radical power folded down to 0 or 1, the
    /// ω^{d−1} coefficient eliminated through 1 + ω + … + ω^{d−1} = 0, and
    /// zero normalized to radical power 0.
    fn canonicalize(&mut self) {
        let d = self.d as usize;
        if self.root_d_pow >= 2 {
            let fold = Rational::from_integer(BigInt::from(self.d).pow(self.root_d_pow / 2));
            for c in &mut self.coeffs {
                if !c.is_zero() {
                    *c /= &fold;
                }
            }
            self.root_d_pow %= 2;
        }
        if !self.coeffs[d - 1].is_zero() {
            let top = std::mem::replace(&mut self.coeffs[d - 1], Rational::zero());
            for c in &mut self.coeffs[..d - 1] {
                *c -= &top;
            }
        }
        if self.root_d_pow != 0 && self.is_zero() {
            self.root_d_pow = 0;
        }
    }

    /// Exact sum.  Zero is parity-neutral; otherwise both operands must
    /// carry the same parity of the symbolic √d.
    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_d(other)?;
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.root_d_pow != other.root_d_pow {
            return Err(Error::RadicalParityMismatch {
                left: self.root_d_pow,
                right: other.root_d_pow,
            });
        }
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        let mut out = Self {
            d: self.d,
            coeffs,
            root_d_pow: self.root_d_pow,
        };
        out.canonicalize();
        Ok(out)
    }

    /// Exact difference, with the same parity rule as [`add`](Self::add).
    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    /// Exact product: cyclic convolution of coefficients (ω^i·ω^j = ω^{i+j
    /// mod d}) with radical powers added, then canonicalized.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_same_d(other)?;
        let d = self.d as usize;
        let mut acc = vec![Rational::zero(); d];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                acc[(i + j) % d] += a * b;
            }
        }
        let mut out = Self {
            d: self.d,
            coeffs: acc,
            root_d_pow: self.root_d_pow + other.root_d_pow,
        };
        out.canonicalize();
        Ok(out)
    }

    /// Exact negation.
    pub fn neg(&self) -> Self {
        Self {
            d: self.d,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
            root_d_pow: self.root_d_pow,
        }
    }

    /// Complex conjugate: ω^k ↦ ω^{d−k} coefficient-wise (√d is real).
    pub fn conj(&self) -> Self {
        let d = self.d as usize;
        let mut coeffs = vec![Rational::zero(); d];
        for (k, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                coeffs[(d - k) % d] = c.clone();
            }
        }
        let mut out = Self {
            d: self.d,
            coeffs,
            root_d_pow: self.root_d_pow,
        };
        out.canonicalize();
        out
    }

    /// |z|² = z·z̄, exactly.  The result always carries an even (hence
    /// canonical zero) radical power.
    pub fn abs_squared(&self) -> Self {
        self.mul(&self.conj())
            .expect("conjugate shares the operand's dimension")
    }

    /// Divides by √d (raises the radical power by one and re-canonicalizes).
    pub(crate) fn div_root_d(&self) -> Self {
        let mut out = Self {
            d: self.d,
            coeffs: self.coeffs.clone(),
            root_d_pow: self.root_d_pow + 1,
        };
        out.canonicalize();
        out
    }

    /// Numerical value as a complex double: Σ c_k e^{2πik/d} / d^{pow/2}.
    pub fn to_complex(&self) -> Complex64 {
        let d = self.d as f64;
        let mut z = Complex64::new(0.0, 0.0);
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let theta = 2.0 * std::f64::consts::PI * (k as f64) / d;
            z += Complex64::from_polar(1.0, theta) * c.to_f64().unwrap_or(f64::NAN);
        }
        z / d.sqrt().powi(self.root_d_pow as i32)
    }
}

/// ω^e for the d-th root of unity with d an odd prime; e may be negative.
///
/// This is the standard entry point for the basis constructions, which are
/// defined only for odd prime d.  [`CycloScalar::root_of_unity`] is the
/// relaxed constructor that additionally admits d = 2 (where ω = −1).
pub fn omega_pow(d: u64, e: i64) -> Result<CycloScalar> {
    validate_odd_prime(d)?;
    CycloScalar::root_of_unity(d, e)
}

impl fmt::Display for CycloScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut terms: Vec<String> = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            let body = match k {
                0 => format!("{mag}"),
                _ if mag == Rational::from_integer(BigInt::from(1)) => {
                    if k == 1 {
                        "ω".to_string()
                    } else {
                        format!("ω^{k}")
                    }
                }
                1 => format!("{mag}ω"),
                _ => format!("{mag}ω^{k}"),
            };
            if terms.is_empty() {
                terms.push(if sign == "-" {
                    format!("-{body}")
                } else {
                    body
                });
            } else {
                terms.push(format!(" {sign} {body}"));
            }
        }
        let poly = terms.concat();
        if self.root_d_pow == 0 {
            write!(f, "{poly}")
        } else if self.coeffs.iter().filter(|c| !c.is_zero()).count() == 1 {
            write!(f, "{poly}/√{}", self.d)
        } else {
            write!(f, "({poly})/√{}", self.d)
        }
    }
}

fn bigint_to_number(n: &BigInt) -> serde_json::Number {
    n.to_string()
        .parse()
        .expect("integer literal is a valid JSON number")
}

fn number_to_bigint(n: &serde_json::Number) -> Option<BigInt> {
    n.to_string().parse().ok()
}

pub(crate) fn rational_to_pair(q: &Rational) -> [serde_json::Number; 2] {
    [bigint_to_number(q.numer()), bigint_to_number(q.denom())]
}

pub(crate) fn pair_to_rational(pair: &[serde_json::Number; 2]) -> Option<Rational> {
    let num = number_to_bigint(&pair[0])?;
    let den = number_to_bigint(&pair[1])?;
    if den.is_zero() {
        None
    } else {
        Some(Rational::new(num, den))
    }
}

#[derive(Serialize)]
struct ScalarRepr {
    d: u64,
    coeffs: Vec<[serde_json::Number; 2]>,
    root_d_pow: u32,
}

#[derive(Deserialize)]
struct ScalarReprIn {
    d: u64,
    coeffs: Vec<[serde_json::Number; 2]>,
    root_d_pow: u32,
}

impl Serialize for CycloScalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        ScalarRepr {
            d: self.d,
            coeffs: self.coeffs.iter().map(rational_to_pair).collect(),
            root_d_pow: self.root_d_pow,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for CycloScalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = ScalarReprIn::deserialize(deserializer)?;
        let coeffs = raw
            .coeffs
            .iter()
            .map(|p| {
                pair_to_rational(p)
                    .ok_or_else(|| D::Error::custom("coefficients must be integer num/den pairs"))
            })
            .collect::<std::result::Result<Vec<_>, _>>()?;
        CycloScalar::new(raw.d, coeffs, raw.root_d_pow).map_err(D::Error::custom)
    }
}
