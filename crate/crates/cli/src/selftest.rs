//! The self-test harness: named suites that re-derive and re-check the
//! library's defining identities at runtime.
//!
//! Each suite walks a family of instances — seeded random sweeps or
//! exhaustive small-dimension enumerations — and counts exact checks.
//! Reports are deterministic for a fixed (seed, samples) pair; per-suite
//! wall-clock timings go to stderr so stdout stays byte-identical.
//!
//! The hidden fault-injection switch corrupts one phase exponent inside
//! the state-basis suite, confirming that a single wrong root of unity
//! is enough to trip the harness.

use crate::error::CliError;
use crate::oracle;
use crate::sweep::Sweep;
use muub_kit::cyclo::{omega_pow, CycloScalar, Rational};
use muub_kit::hilbert::{self, Ket, MonoidUnitarity};
use muub_kit::matspace::{self, DenseOp};
use muub_kit::muub::{self, Verdict};
use muub_kit::entangle::{self, DensityMatrix};
use num_bigint::BigInt;
use serde::Serialize;
use std::time::Instant;

/// Everything a run of the harness needs.
pub struct SelftestOptions {
    pub seed: u64,
    pub samples: u32,
    /// Empty means every suite.
    pub suites: Vec<String>,
    pub inject_fault: bool,
}

/// The registry of suite names, in execution order.
pub const SUITE_NAMES: &[&str] = &[
    "cyclo-ring-laws",
    "mub-unbiasedness",
    "monoid-laws",
    "trace-isomorphism",
    "unitarity-equivalence",
    "muub-family",
    "residue-permutation",
    "pauli-power-identity",
    "bell-choi",
    "mes-mub",
    "traceless-orthogonality",
    "float-oracle",
    "serialization-roundtrip",
];

/// How many failure descriptions a suite keeps verbatim.
const FAILURE_SAMPLE_CAP: usize = 5;

/// The outcome of one suite.
#[derive(Debug, Serialize)]
pub struct SuiteReport {
    pub name: String,
    pub checks: u64,
    pub failed: u64,
    pub status: String,
    pub failures: Vec<String>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failed == 0
    }
}

/// An in-progress suite: a counter plus a capped failure sample.
struct Audit {
    name: &'static str,
    checks: u64,
    failed: u64,
    failures: Vec<String>,
}

impl Audit {
    fn new(name: &'static str) -> Self {
        Self {
            name,
            checks: 0,
            failed: 0,
            failures: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failed += 1;
            if self.failures.len() < FAILURE_SAMPLE_CAP {
                self.failures.push(describe());
            }
        }
    }

    fn finish(self) -> SuiteReport {
        SuiteReport {
            name: self.name.to_string(),
            checks: self.checks,
            failed: self.failed,
            status: if self.failed == 0 { "pass" } else { "fail" }.to_string(),
            failures: self.failures,
        }
    }
}

fn rational(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Runs the selected suites in registry order.
pub fn run(opts: &SelftestOptions) -> Result<Vec<SuiteReport>, CliError> {
    for requested in &opts.suites {
        if !SUITE_NAMES.contains(&requested.as_str()) {
            return Err(CliError::Invalid(format!(
                "unknown suite '{requested}'; expected one of: {}",
                SUITE_NAMES.join(", ")
            )));
        }
    }

    let selected: Vec<&str> = SUITE_NAMES
        .iter()
        .copied()
        .filter(|name| opts.suites.is_empty() || opts.suites.iter().any(|s| s == name))
        .collect();

    let mut reports = Vec::with_capacity(selected.len());
    for name in selected {
        let start = Instant::now();
        let report = dispatch(name, opts)?;
        eprintln!(
            "suite {name}: {:.1} ms, {} checks, {}",
            start.elapsed().as_secs_f64() * 1e3,
            report.checks,
            report.status
        );
        reports.push(report);
    }
    Ok(reports)
}

fn dispatch(name: &str, opts: &SelftestOptions) -> Result<SuiteReport, CliError> {
    match name {
        "cyclo-ring-laws" => cyclo_ring_laws(opts),
        "mub-unbiasedness" => mub_unbiasedness(opts),
        "monoid-laws" => monoid_laws(opts),
        "trace-isomorphism" => trace_isomorphism(opts),
        "unitarity-equivalence" => unitarity_equivalence(opts),
        "muub-family" => muub_family(),
        "residue-permutation" => residue_permutation(),
        "pauli-power-identity" => pauli_power_identity(),
        "bell-choi" => bell_choi(),
        "mes-mub" => mes_mub(),
        "traceless-orthogonality" => traceless_orthogonality_suite(),
        "float-oracle" => float_oracle(),
        "serialization-roundtrip" => serialization_roundtrip(opts),
        other => Err(CliError::Invalid(format!("unknown suite '{other}'"))),
    }
}

/// Ring laws of ℚ(ω, 1/√d) on seeded random scalars.
fn cyclo_ring_laws(opts: &SelftestOptions) -> Result<SuiteReport, CliError> {
    let mut audit = Audit::new("cyclo-ring-laws");
    let mut sweep = Sweep::new(opts.seed);
    let dims = [2u64, 3, 5, 7];

    for sample in 0..opts.samples {
        let d = dims[sample as usize % dims.len()];
        let (a, b, c) = sweep.uniform_triple(d);

        audit.check(
            a.add(&b)? == b.add(&a)?,
            || format!("addition commuted badly at d={d} sample={sample}"),
        );
        audit.check(
            a.add(&b)?.add(&c)? == a.add(&b.add(&c)?)?,
            || format!("addition associated badly at d={d} sample={sample}"),
        );
        audit.check(
            a.mul(&b)? == b.mul(&a)?,
            || format!("multiplication commuted badly at d={d} sample={sample}"),
        );
        audit.check(
            a.mul(&b)?.mul(&c)? == a.mul(&b.mul(&c)?)?,
            || format!("multiplication associated badly at d={d} sample={sample}"),
        );
        audit.check(
            a.mul(&b.add(&c)?)? == a.mul(&b)?.add(&a.mul(&c)?)?,
            || format!("distributivity broke at d={d} sample={sample}"),
        );
        audit.check(a.conj().conj() == a, || {
            format!("conjugation failed to involute at d={d} sample={sample}")
        });
        audit.check(
            a.abs_squared() == a.mul(&a.conj())?,
            || format!("|a|² diverged from a·a* at d={d} sample={sample}"),
        );
        audit.check(
            a.sub(&a)? == CycloScalar::zero(d)?,
            || format!("a − a missed zero at d={d} sample={sample}"),
        );
    }
    Ok(audit.finish())
}

/// Orthonormality within and exact 1/d unbiasedness across the d + 1
/// state bases. Fault injection corrupts one phase here.
fn mub_unbiasedness(opts: &SelftestOptions) -> Result<SuiteReport, CliError> {
    let mut audit = Audit::new("mub-unbiasedness");

    for d in [3u64, 5, 7] {
        let mut bases: Vec<Vec<Ket>> = Vec::new();
        bases.push((0..d).map(|i| Ket::basis_ket(d, i).unwrap()).collect());
        for r in 0..d {
            bases.push((0..d).map(|s| hilbert::mub_state(d, r, s).unwrap()).collect());
        }

        if opts.inject_fault && d == 3 {
            // One wrong root of unity in one amplitude of one state.
            let mut amps = bases[1][0].amps().to_vec();
            amps[0] = amps[0].mul(&omega_pow(d, 1)?)?;
            bases[1][0] = Ket::new(d, amps)?;
        }

        let one = CycloScalar::one(d)?;
        let zero = CycloScalar::zero(d)?;
        let unbiased = CycloScalar::from_rational(d, rational(1, d as i64))?;

        for (bi, basis_a) in bases.iter().enumerate() {
            for (i, phi) in basis_a.iter().enumerate() {
                for (bj, basis_b) in bases.iter().enumerate() {
                    for (j, psi) in basis_b.iter().enumerate() {
                        let overlap = hilbert::inner(phi, psi)?.abs_squared();
                        let expected = if bi != bj {
                            &unbiased
                        } else if i == j {
                            &one
                        } else {
                            &zero
                        };
                        audit.check(&overlap == expected, || {
                            format!(
                                "overlap |⟨φ|ψ⟩|² = {overlap} off target at d={d} \
                                 bases ({bi},{bj}) states ({i},{j})"
                            )
                        });
                    }
                }
            }
        }
    }
    Ok(audit.finish())
}

/// Convolution-monoid laws on seeded random kets.
fn monoid_laws(opts: &SelftestOptions) -> Result<SuiteReport, CliError> {
    let mut audit = Audit::new("monoid-laws");
    let mut sweep = Sweep::new(opts.seed);
    let dims = [3u64, 5];

    for sample in 0..opts.samples {
        let d = dims[sample as usize % dims.len()];
        let (a, b, c) = (sweep.ket(d), sweep.ket(d), sweep.ket(d));
        let e = Ket::basis_ket(d, 0)?;

        audit.check(
            hilbert::bullet(&a, &b)? == hilbert::bullet(&b, &a)?,
            || format!("convolution commuted badly at d={d} sample={sample}"),
        );
        audit.check(
            hilbert::bullet(&hilbert::bullet(&a, &b)?, &c)?
                == hilbert::bullet(&a, &hilbert::bullet(&b, &c)?)?,
            || format!("convolution associated badly at d={d} sample={sample}"),
        );
        audit.check(
            hilbert::bullet(&a, &e)? == a,
            || format!("|0⟩ failed as identity at d={d} sample={sample}"),
        );
        audit.check(
            hilbert::dagger(&hilbert::dagger(&a)) == a,
            || format!("dagger failed to involute at d={d} sample={sample}"),
        );
        audit.check(
            hilbert::dagger(&hilbert::bullet(&a, &b)?)
                == hilbert::bullet(&hilbert::dagger(&a), &hilbert::dagger(&b))?,
            || format!("dagger broke over convolution at d={d} sample={sample}"),
        );
    }
    Ok(audit.finish())
}

/// The transfer map scales inner products by d and carries convolution
/// to operator products, on seeded random kets.
fn trace_isomorphism(opts: &SelftestOptions) -> Result<SuiteReport, CliError> {
    let mut audit = Audit::new("trace-isomorphism");
    let mut sweep = Sweep::new(opts.seed);
    let dims = [3u64, 5];

    for sample in 0..opts.samples {
        let d = dims[sample as usize % dims.len()];
        let (a, b) = (sweep.ket(d), sweep.ket(d));
        let (ma, mb) = (matspace::g_map(&a)?, matspace::g_map(&b)?);

        let hs = matspace::hs_inner(&ma, &mb)?;
        let scaled = hilbert::inner(&a, &b)?.mul(&CycloScalar::from_integer(d, d as i64)?)?;
        audit.check(hs == scaled, || {
            format!("Tr(A†B) ≠ d·⟨a|b⟩ at d={d} sample={sample}")
        });

        audit.check(
            matspace::g_map(&hilbert::bullet(&a, &b)?)? == ma.mul(&mb)?,
            || format!("transfer broke over convolution at d={d} sample={sample}"),
        );
        audit.check(
            matspace::g_map(&hilbert::dagger(&a))? == ma.dagger(),
            || format!("transfer broke over dagger at d={d} sample={sample}"),
        );
        audit.check(matspace::g_inv(&ma)? == a, || {
            format!("transfer failed to invert at d={d} sample={sample}")
        });
    }
    Ok(audit.finish())
}

/// The monoid inverse criterion agrees with dense unitarity, on random
/// kets and on every transferred state of the unbiased bases.
fn unitarity_equivalence(opts: &SelftestOptions) -> Result<SuiteReport, CliError> {
    let mut audit = Audit::new("unitarity-equivalence");
    let mut sweep = Sweep::new(opts.seed);
    let dims = [3u64, 5];

    let check_one = |audit: &mut Audit, ket: &Ket, tag: String| -> Result<(), CliError> {
        let monoid = matches!(hilbert::monoid_unitarity(ket)?, MonoidUnitarity::Unitary);
        let dense = matspace::is_unitary_dense(&matspace::to_dense(&matspace::g_map(ket)?)?);
        audit.check(monoid == dense, || {
            format!("monoid criterion said {monoid}, dense said {dense} for {tag}")
        });
        Ok(())
    };

    for sample in 0..opts.samples {
        let d = dims[sample as usize % dims.len()];
        let ket = sweep.ket(d);
        check_one(&mut audit, &ket, format!("random ket d={d} sample={sample}"))?;
    }

    for d in [3u64, 5] {
        for r in 1..d {
            for s in 0..d {
                let phi = hilbert::mub_state(d, r, s)?;
                let monoid = matches!(hilbert::monoid_unitarity(&phi)?, MonoidUnitarity::Unitary);
                audit.check(monoid, || {
                    format!("state d={d} r={r} s={s} should transfer to a unitary")
                });
                check_one(&mut audit, &phi, format!("state d={d} r={r} s={s}"))?;
            }
        }
        // The r = 0 construction must fail both criteria at once.
        for s in 0..d {
            let phi = hilbert::mub_state(d, 0, s)?;
            check_one(&mut audit, &phi, format!("state d={d} r=0 s={s}"))?;
            let monoid = matches!(hilbert::monoid_unitarity(&phi)?, MonoidUnitarity::Unitary);
            audit.check(!monoid, || {
                format!("state d={d} r=0 s={s} unexpectedly transferred to a unitary")
            });
        }
    }
    Ok(audit.finish())
}

/// Full family verification over small dimensions.
fn muub_family() -> Result<SuiteReport, CliError> {
    let mut audit = Audit::new("muub-family");
    for d in [3u64, 5, 7] {
        let verification = muub::verify_family(d)?;
        audit.check(verification.passed(), || {
            format!("family verification failed at d={d}")
        });
        audit.check(
            verification.pairs().len() == (d * (d - 1) / 2) as usize,
            || format!("wrong pair count at d={d}"),
        );
        for report in verification.pairs() {
            audit.check(report.verdict() == Verdict::Muub, || {
                format!("pair {:?} not unbiased at d={d}", report.labels())
            });
            audit.check(
                report.constant() == Some(&rational(d as i64, 1)),
                || format!("pair {:?} constant ≠ d at d={d}", report.labels()),
            );
        }
        let counter = verification.counterexample();
        audit.check(
            !counter.witness_is_identity && !counter.dense_unitary,
            || format!("r = 0 counterexample did not fail at d={d}"),
        );
    }
    Ok(audit.finish())
}

/// Multiplication by nonzero residues permutes ℤ_d.
fn residue_permutation() -> Result<SuiteReport, CliError> {
    let mut audit = Audit::new("residue-permutation");
    for d in [3u64, 5, 7, 11, 13] {
        for p in 1..d {
            audit.check(hilbert::multiplication_permutes_residues(d, p), || {
                format!("p = {p} failed to permute ℤ_{d}")
            });
        }
        audit.check(!hilbert::multiplication_permutes_residues(d, 0), || {
            format!("p = 0 claimed to permute ℤ_{d}")
        });
        audit.check(!hilbert::multiplication_permutes_residues(d, d), || {
            format!("p = d claimed to permute ℤ_{d}")
        });
    }
    Ok(audit.finish())
}

/// Every generalized Pauli power matches its closed form; at n = d the
/// word collapses to 𝕀 and only even dimension keeps a sign.
fn pauli_power_identity() -> Result<SuiteReport, CliError> {
    let mut audit = Audit::new("pauli-power-identity");
    for d in [2u64, 3, 5] {
        let identity = DenseOp::identity(d, d as usize)?;
        for b in 0..d {
            for a in 0..d {
                for n in 0..=d as u32 {
                    let power = entangle::pauli_word(d, b, a, n)?;
                    audit.check(power.identity_holds(), || {
                        format!("(X^{b}Z^{a})^{n} missed its closed form at d={d}")
                    });
                }
                let at_dimension = entangle::pauli_word(d, b, a, d as u32)?;
                audit.check(at_dimension.word == identity, || {
                    format!("word part of (X^{b}Z^{a})^d ≠ 𝕀 at d={d}")
                });
                let expected_identity = d % 2 == 1 || (a * b) % 2 == 0;
                audit.check(
                    (at_dimension.op == identity) == expected_identity,
                    || format!("sign of (X^{b}Z^{a})^d wrong at d={d}"),
                );
            }
        }
    }
    Ok(audit.finish())
}

/// Bell states equal the Choi vectors of the Pauli words, form an
/// orthonormal basis of H_d ⊗ H_d, and are maximally entangled.
fn bell_choi() -> Result<SuiteReport, CliError> {
    let mut audit = Audit::new("bell-choi");
    for d in [2u64, 3, 5] {
        let one = CycloScalar::one(d)?;
        let zero = CycloScalar::zero(d)?;

        let mut states = Vec::new();
        for a in 0..d {
            for b in 0..d {
                let direct = entangle::bell_state(d, a, b)?;
                let via_choi = entangle::choi(&entangle::pauli_word(d, b, a, 1)?.op)?;
                audit.check(direct == via_choi, || {
                    format!("Bell ({a},{b}) ≠ Choi vector of X^{b}Z^{a} at d={d}")
                });
                audit.check(entangle::is_mes(&direct)?, || {
                    format!("Bell ({a},{b}) not maximally entangled at d={d}")
                });
                states.push(direct);
            }
        }

        for (i, x) in states.iter().enumerate() {
            for (j, y) in states.iter().enumerate() {
                let overlap = x.inner(y)?.abs_squared();
                let expected = if i == j { &one } else { &zero };
                audit.check(&overlap == expected, || {
                    format!("Bell pair ({i},{j}) overlap ≠ δ at d={d}")
                });
            }
        }
    }
    Ok(audit.finish())
}

/// The entangled families on nontrivial words: maximal entanglement,
/// orthonormality within each r, exact 1/d unbiasedness across r, and
/// coincidence with Choi vectors on the plain-shift word.
fn mes_mub() -> Result<SuiteReport, CliError> {
    let mut audit = Audit::new("mes-mub");
    let d = 3u64;
    let one = CycloScalar::one(d)?;
    let zero = CycloScalar::zero(d)?;
    let unbiased = CycloScalar::from_rational(d, rational(1, d as i64))?;

    for (a, b) in [(0u64, 1u64), (1, 0), (1, 1), (2, 1)] {
        let family: Vec<Vec<_>> = (1..d)
            .map(|r| {
                (0..d)
                    .map(|s| entangle::mes_mub_state(d, r, s, a, b).unwrap())
                    .collect()
            })
            .collect();

        for (ri, basis_x) in family.iter().enumerate() {
            for (i, phi) in basis_x.iter().enumerate() {
                audit.check(entangle::is_mes(phi)?, || {
                    format!("state (a={a},b={b},r={},s={i}) not maximally entangled", ri + 1)
                });
                for (rj, basis_y) in family.iter().enumerate() {
                    for (j, psi) in basis_y.iter().enumerate() {
                        let overlap = phi.inner(psi)?.abs_squared();
                        let expected = if ri != rj {
                            &unbiased
                        } else if i == j {
                            &one
                        } else {
                            &zero
                        };
                        audit.check(&overlap == expected, || {
                            format!(
                                "entangled overlap off target at word ({a},{b}) \
                                 r=({},{}) s=({i},{j})",
                                ri + 1,
                                rj + 1
                            )
                        });
                    }
                }
            }
        }
    }

    for r in 1..d {
        for s in 0..d {
            let via_recipe = entangle::mes_mub_state(d, r, s, 0, 1)?;
            let via_choi = entangle::choi(&matspace::to_dense(&muub::muub_element(d, r, s)?)?)?;
            audit.check(via_recipe == via_choi, || {
                format!("shift-word state (r={r},s={s}) ≠ Choi of basis element")
            });
        }
    }
    Ok(audit.finish())
}

/// The traceless-part overlaps of state projectors hit exactly
/// 1 − 1/d, −1/d, and 0.
fn traceless_orthogonality_suite() -> Result<SuiteReport, CliError> {
    let mut audit = Audit::new("traceless-orthogonality");
    for d in [3u64, 5] {
        let bases = hilbert::all_mubs(d)?;
        let projectors: Vec<Vec<DensityMatrix>> = bases
            .iter()
            .map(|basis| {
                basis
                    .states()
                    .iter()
                    .map(|phi| DensityMatrix::from_ket(phi).unwrap())
                    .collect()
            })
            .collect();

        let self_value = CycloScalar::from_rational(d, rational(d as i64 - 1, d as i64))?;
        let within = CycloScalar::from_rational(d, rational(-1, d as i64))?;
        let across = CycloScalar::zero(d)?;

        for (bi, row_x) in projectors.iter().enumerate() {
            for (i, rho_x) in row_x.iter().enumerate() {
                for (bj, row_y) in projectors.iter().enumerate() {
                    for (j, rho_y) in row_y.iter().enumerate() {
                        let value = entangle::traceless_orthogonality(rho_x, rho_y)?;
                        let expected = if bi != bj {
                            &across
                        } else if i == j {
                            &self_value
                        } else {
                            &within
                        };
                        audit.check(&value == expected, || {
                            format!(
                                "traceless overlap off target at d={d} \
                                 bases ({bi},{bj}) states ({i},{j})"
                            )
                        });
                    }
                }
            }
        }
    }
    Ok(audit.finish())
}

/// The exact kernel and the independent floating-point implementation
/// agree to 1e−10 on states, overlaps, and entangled families.
fn float_oracle() -> Result<SuiteReport, CliError> {
    let mut audit = Audit::new("float-oracle");
    const TOL: f64 = 1e-10;

    for d in [3u64, 5, 7] {
        for r in 0..d {
            for s in 0..d {
                let exact = hilbert::mub_state(d, r, s)?;
                let float = oracle::mub_state(d, r, s);
                for (k, (e, f)) in exact.amps().iter().zip(&float).enumerate() {
                    audit.check((e.to_complex() - f).norm() < TOL, || {
                        format!("state amplitude diverged at d={d} r={r} s={s} k={k}")
                    });
                }
            }
        }
    }

    for d in [3u64, 5] {
        let family = muub::muub_family(d)?;
        let dense_family: Vec<Vec<oracle::CMat>> = {
            let mut all = vec![(0..d).map(|s| oracle::standard_element(d, s)).collect()];
            for r in 1..d {
                all.push((0..d).map(|s| oracle::muub_element(d, r, s)).collect());
            }
            all
        };

        for (bi, basis_x) in family.iter().enumerate() {
            for (bj, basis_y) in family.iter().enumerate() {
                if bi == bj {
                    continue;
                }
                for (i, elem_x) in basis_x.elements().iter().enumerate() {
                    for (j, elem_y) in basis_y.elements().iter().enumerate() {
                        let exact = matspace::hs_inner(elem_x, elem_y)?
                            .abs_squared()
                            .to_complex()
                            .re;
                        let float =
                            oracle::hs_overlap_sq(&dense_family[bi][i], &dense_family[bj][j]);
                        audit.check((exact - float).abs() < TOL, || {
                            format!(
                                "trace overlap diverged at d={d} bases ({bi},{bj}) \
                                 elements ({i},{j})"
                            )
                        });
                    }
                }
            }
        }
    }

    for d in [2u64, 3, 5] {
        for a in 0..d {
            for b in 0..d {
                let exact = entangle::bell_state(d, a, b)?;
                let float = oracle::bell_state(d, a, b);
                for (k, (e, f)) in exact.amps().iter().zip(&float).enumerate() {
                    audit.check((e.to_complex() - f).norm() < TOL, || {
                        format!("Bell amplitude diverged at d={d} a={a} b={b} k={k}")
                    });
                }
            }
        }
    }

    let d = 3u64;
    for (a, b) in [(0u64, 1u64), (1, 0), (1, 1), (2, 2)] {
        for r in 1..d {
            for s in 0..d {
                let exact = entangle::mes_mub_state(d, r, s, a, b)?;
                let float = oracle::mes_state(d, r, s, a, b);
                audit.check(oracle::is_max_entangled(&float, d, TOL), || {
                    format!("oracle state (r={r},s={s},a={a},b={b}) not maximally entangled")
                });
                for (k, (e, f)) in exact.amps().iter().zip(&float).enumerate() {
                    audit.check((e.to_complex() - f).norm() < TOL, || {
                        format!("entangled amplitude diverged at r={r} s={s} a={a} b={b} k={k}")
                    });
                }
            }
        }
    }
    Ok(audit.finish())
}

/// Random scalars, kets, and whole bases survive a JSON round trip.
fn serialization_roundtrip(opts: &SelftestOptions) -> Result<SuiteReport, CliError> {
    let mut audit = Audit::new("serialization-roundtrip");
    let mut sweep = Sweep::new(opts.seed);
    let dims = [2u64, 3, 5];

    let describe = |what: &str, d: u64, sample: u32| {
        format!("{what} changed across a JSON round trip at d={d} sample={sample}")
    };

    for sample in 0..opts.samples {
        let d = dims[sample as usize % dims.len()];
        let pow = sweep.parity();
        let scalar = sweep.scalar(d, pow);
        let json = serde_json::to_string(&scalar).map_err(|e| CliError::Invalid(e.to_string()))?;
        let back: CycloScalar =
            serde_json::from_str(&json).map_err(|e| CliError::Invalid(e.to_string()))?;
        audit.check(back == scalar, || describe("scalar", d, sample));

        let ket = sweep.ket(d);
        let json = serde_json::to_string(&ket).map_err(|e| CliError::Invalid(e.to_string()))?;
        let back: Ket = serde_json::from_str(&json).map_err(|e| CliError::Invalid(e.to_string()))?;
        audit.check(back == ket, || describe("ket", d, sample));
    }

    for d in [3u64, 5] {
        for r in 0..d {
            let basis = hilbert::mub_basis(d, r)?;
            let json = serde_json::to_string(&basis).map_err(|e| CliError::Invalid(e.to_string()))?;
            let back: hilbert::MubBasis =
                serde_json::from_str(&json).map_err(|e| CliError::Invalid(e.to_string()))?;
            audit.check(back == basis, || format!("state basis d={d} r={r} changed"));
        }
        for r in 1..d {
            let basis = muub::muub_basis(d, r)?;
            let json = serde_json::to_string(&basis).map_err(|e| CliError::Invalid(e.to_string()))?;
            let back: muub::MuubBasis =
                serde_json::from_str(&json).map_err(|e| CliError::Invalid(e.to_string()))?;
            audit.check(back == basis, || format!("unitary basis d={d} r={r} changed"));
        }
    }
    Ok(audit.finish())
}
