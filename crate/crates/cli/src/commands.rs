//! Command implementations: each one maps parsed arguments to a single
//! [`Outcome`] carrying the JSON payload, the optional CSV table, the
//! human-readable text, and the exit status.
//!
//! In exact mode every payload comes straight from the core library's
//! serializers; in float mode it comes from the independent
//! floating-point implementation, with amplitudes as [re, im] pairs.

use crate::args::{
    BellArgs, Cli, Command, GlobalOpts, MesArgs, Mode, MubArgs, MuubArgs, SelftestArgs,
    VerifyArgs,
};
use crate::error::CliError;
use crate::oracle;
use crate::output::{colors_enabled, green, red, CsvTable, Outcome};
use crate::selftest::{self, SelftestOptions};
use muub_kit::entangle;
use muub_kit::hilbert;

use muub_kit::muub;
use num_complex::Complex64;
use serde_json::{json, Value};

/// Dispatches the parsed invocation.
pub fn execute(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Mub(args) => mub(&cli.global, args),
        Command::Muub(args) => muub_cmd(&cli.global, args),
        Command::Verify(args) => verify(&cli.global, args),
        Command::Bell(args) => bell(&cli.global, args),
        Command::Mes(args) => mes(&cli.global, args),
        Command::Selftest(args) => selftest_cmd(&cli.global, args),
    }
}

/// The configuration object echoed into the JSON envelope.
fn config(command: &str, global: &GlobalOpts, params: Value) -> Value {
    let mut object = serde_json::Map::new();
    object.insert("command".into(), json!(command));
    object.insert("mode".into(), json!(global.mode.as_str()));
    object.insert("format".into(), json!(global.format.as_str()));
    if let Value::Object(extra) = params {
        for (k, v) in extra {
            object.insert(k, v);
        }
    }
    Value::Object(object)
}

fn complex_pair(z: Complex64) -> Value {
    json!([z.re, z.im])
}

fn complex_text(z: Complex64) -> String {
    format!("{:.6}{:+.6}i", z.re, z.im)
}

/// The d + 1 state bases, or one of them.
fn mub(global: &GlobalOpts, args: &MubArgs) -> Result<Outcome, CliError> {
    let d = args.d;
    let bases: Vec<hilbert::MubBasis> = if args.computational {
        vec![hilbert::computational_basis(d)?]
    } else if let Some(r) = args.r {
        vec![hilbert::mub_basis(d, r)?]
    } else {
        hilbert::all_mubs(d)?
    };

    let result = match global.mode {
        Mode::Exact => json!({
            "d": d,
            "bases": bases.iter().map(serde_json::to_value).collect::<Result<Vec<_>, _>>()
                .map_err(|e| CliError::Invalid(e.to_string()))?,
        }),
        Mode::Float => {
            let float_bases: Vec<Value> = bases
                .iter()
                .map(|basis| {
                    let states: Vec<Value> = match basis.label() {
                        hilbert::MubLabel::Computational => (0..d)
                            .map(|i| {
                                Value::Array(
                                    (0..d)
                                        .map(|k| {
                                            let re = if i == k { 1.0 } else { 0.0 };
                                            complex_pair(Complex64::new(re, 0.0))
                                        })
                                        .collect(),
                                )
                            })
                            .collect(),
                        hilbert::MubLabel::R(r) => (0..d)
                            .map(|s| {
                                Value::Array(
                                    oracle::mub_state(d, r, s)
                                        .into_iter()
                                        .map(complex_pair)
                                        .collect(),
                                )
                            })
                            .collect(),
                    };
                    json!({"label": basis.label().to_string(), "states": states})
                })
                .collect();
            json!({"d": d, "bases": float_bases})
        }
    };

    let csv = (global.mode == Mode::Exact).then(|| {
        let mut table = CsvTable::new(&["basis", "state", "component", "amplitude"]);
        for basis in &bases {
            for (s, state) in basis.states().iter().enumerate() {
                for (k, amp) in state.amps().iter().enumerate() {
                    table.row(&[
                        basis.label().to_string(),
                        s.to_string(),
                        k.to_string(),
                        amp.to_string(),
                    ]);
                }
            }
        }
        table.finish()
    });

    let mut pretty = format!("state bases for d = {d}\n");
    for basis in &bases {
        pretty.push_str(&format!("\n[{}]\n", basis.label()));
        for (s, state) in basis.states().iter().enumerate() {
            let amps: Vec<String> = match global.mode {
                Mode::Exact => state.amps().iter().map(|a| a.to_string()).collect(),
                Mode::Float => state
                    .amps()
                    .iter()
                    .map(|a| complex_text(a.to_complex()))
                    .collect(),
            };
            pretty.push_str(&format!("  s={s}: {}\n", amps.join(", ")));
        }
    }

    Ok(Outcome {
        config: config(
            "mub",
            global,
            json!({"d": d, "r": args.r, "computational": args.computational}),
        ),
        result,
        csv,
        pretty,
        exit: 0,
    })
}

/// The d unitary bases of the shift subspace, or one of them.
fn muub_cmd(global: &GlobalOpts, args: &MuubArgs) -> Result<Outcome, CliError> {
    let d = args.d;
    let bases: Vec<muub::MuubBasis> = if args.standard {
        vec![muub::standard_basis(d)?]
    } else if let Some(r) = args.r {
        vec![muub::muub_basis(d, r)?]
    } else {
        muub::muub_family(d)?
    };

    let result = match global.mode {
        Mode::Exact => json!({
            "d": d,
            "bases": bases.iter().map(serde_json::to_value).collect::<Result<Vec<_>, _>>()
                .map_err(|e| CliError::Invalid(e.to_string()))?,
        }),
        Mode::Float => {
            let float_bases: Vec<Value> = bases
                .iter()
                .map(|basis| {
                    let elements: Vec<Value> = (0..d)
                        .map(|s| {
                            let matrix = match basis.label() {
                                muub::MuubLabel::Standard => oracle::standard_element(d, s),
                                muub::MuubLabel::R(r) => oracle::muub_element(d, r, s),
                            };
                            let rows: Vec<Value> = matrix
                                .iter()
                                .map(|row| {
                                    Value::Array(row.iter().copied().map(complex_pair).collect())
                                })
                                .collect();
                            json!({"s": s, "matrix": rows})
                        })
                        .collect();
                    json!({"label": basis.label().to_string(), "elements": elements})
                })
                .collect();
            json!({"d": d, "bases": float_bases})
        }
    };

    let csv = (global.mode == Mode::Exact).then(|| {
        let mut table = CsvTable::new(&["basis", "element", "power", "coefficient"]);
        for basis in &bases {
            for (s, element) in basis.elements().iter().enumerate() {
                for (i, coeff) in element.xcoeffs().iter().enumerate() {
                    table.row(&[
                        basis.label().to_string(),
                        s.to_string(),
                        i.to_string(),
                        coeff.to_string(),
                    ]);
                }
            }
        }
        table.finish()
    });

    let mut pretty = format!("unitary bases of the shift subspace for d = {d}\n");
    for basis in &bases {
        pretty.push_str(&format!("\n[{}]  (coefficients over 𝕀, X, …, X^{})\n", basis.label(), d - 1));
        for (s, element) in basis.elements().iter().enumerate() {
            let coeffs: Vec<String> = element.xcoeffs().iter().map(|c| c.to_string()).collect();
            pretty.push_str(&format!("  s={s}: {}\n", coeffs.join(", ")));
        }
    }

    Ok(Outcome {
        config: config(
            "muub",
            global,
            json!({"d": d, "r": args.r, "standard": args.standard}),
        ),
        result,
        csv,
        pretty,
        exit: 0,
    })
}

/// Build the whole family and verify every pairwise overlap.
fn verify(global: &GlobalOpts, args: &VerifyArgs) -> Result<Outcome, CliError> {
    let d = args.d;
    match global.mode {
        Mode::Exact => {
            let verification = muub::verify_family(d)?;
            let passed = verification.passed();

            let csv = {
                let mut table = CsvTable::new(&["basis_a", "basis_b", "i", "j", "overlap"]);
                for report in verification.pairs() {
                    let (label_a, label_b) = report.labels();
                    for i in 0..d as usize {
                        for j in 0..d as usize {
                            let cell = match report.value(i, j) {
                                Some(q) => q.to_string(),
                                None => "non-rational".to_string(),
                            };
                            table.row(&[
                                label_a.to_string(),
                                label_b.to_string(),
                                i.to_string(),
                                j.to_string(),
                                cell,
                            ]);
                        }
                    }
                }
                table.finish()
            };

            let colors = colors_enabled();
            let mut pretty = format!("family verification, d = {d}\n");
            for report in verification.pairs() {
                let (label_a, label_b) = report.labels();
                let line = match (report.verdict(), report.constant()) {
                    (muub::Verdict::Muub, Some(c)) => format!(
                        "  {label_a} × {label_b}: |Tr(A†B)|² ≡ {c} — {}\n",
                        green("PASS", colors)
                    ),
                    _ => format!(
                        "  {label_a} × {label_b}: overlaps not constant ({} violations) — {}\n",
                        report.violations().len(),
                        red("FAIL", colors)
                    ),
                };
                pretty.push_str(&line);
            }
            let counter = verification.counterexample();
            pretty.push_str(&format!(
                "  r=0 construction: dense unitary = {}, witness = |0⟩ is {} — fails as required\n",
                counter.dense_unitary, counter.witness_is_identity
            ));
            pretty.push_str(&format!(
                "verdict: {} ({} pairs at constant {d})\n",
                if passed {
                    green("PASS", colors)
                } else {
                    red("FAIL", colors)
                },
                verification.pairs().len()
            ));

            Ok(Outcome {
                config: config("verify", global, json!({"d": d})),
                result: serde_json::to_value(&verification)
                    .map_err(|e| CliError::Invalid(e.to_string()))?,
                csv: Some(csv),
                pretty,
                exit: if passed { 0 } else { 4 },
            })
        }
        Mode::Float => {
            // Bounds and primality: reuse the exact constructor's
            // validation before running the independent implementation.
            muub::muub_element(d, 1, 0)?;

            let mut dense: Vec<(String, Vec<oracle::CMat>)> = Vec::new();
            dense.push((
                "standard".to_string(),
                (0..d).map(|s| oracle::standard_element(d, s)).collect(),
            ));
            for r in 1..d {
                dense.push((
                    format!("r={r}"),
                    (0..d).map(|s| oracle::muub_element(d, r, s)).collect(),
                ));
            }

            const TOL: f64 = 1e-10;
            let mut pairs = Vec::new();
            let mut passed = true;
            for bi in 0..dense.len() {
                for bj in (bi + 1)..dense.len() {
                    let mut max_deviation: f64 = 0.0;
                    for elem_a in &dense[bi].1 {
                        for elem_b in &dense[bj].1 {
                            let overlap = oracle::hs_overlap_sq(elem_a, elem_b);
                            max_deviation = max_deviation.max((overlap - d as f64).abs());
                        }
                    }
                    let pair_ok = max_deviation < TOL;
                    passed &= pair_ok;
                    pairs.push(json!({
                        "basis_a": dense[bi].0,
                        "basis_b": dense[bj].0,
                        "max_deviation_from_d": max_deviation,
                        "unbiased": pair_ok,
                    }));
                }
            }
            let r0_unitary = oracle::is_unitary(&oracle::muub_element(d, 0, 0), TOL);
            passed &= !r0_unitary;

            let colors = colors_enabled();
            let mut pretty = format!("family verification (float), d = {d}\n");
            for pair in &pairs {
                pretty.push_str(&format!(
                    "  {} × {}: max |overlap − d| = {:.3e} — {}\n",
                    pair["basis_a"].as_str().unwrap(),
                    pair["basis_b"].as_str().unwrap(),
                    pair["max_deviation_from_d"].as_f64().unwrap(),
                    if pair["unbiased"].as_bool().unwrap() {
                        green("PASS", colors)
                    } else {
                        red("FAIL", colors)
                    }
                ));
            }
            pretty.push_str(&format!(
                "  r=0 construction: dense unitary = {r0_unitary} — fails as required\n"
            ));
            pretty.push_str(&format!(
                "verdict: {}\n",
                if passed {
                    green("PASS", colors)
                } else {
                    red("FAIL", colors)
                }
            ));

            Ok(Outcome {
                config: config("verify", global, json!({"d": d})),
                result: json!({
                    "d": d,
                    "pairs": pairs,
                    "r0_dense_unitary": r0_unitary,
                    "passed": passed,
                }),
                csv: None,
                pretty,
                exit: if passed { 0 } else { 4 },
            })
        }
    }
}

/// The d² Bell states, or one of them.
fn bell(global: &GlobalOpts, args: &BellArgs) -> Result<Outcome, CliError> {
    let d = args.d;
    let labels: Vec<(u64, u64)> = match (args.a, args.b) {
        (Some(a), Some(b)) => vec![(a, b)],
        _ => (0..d).flat_map(|a| (0..d).map(move |b| (a, b))).collect(),
    };

    let states: Vec<(u64, u64, entangle::BipartiteKet)> = labels
        .iter()
        .map(|&(a, b)| entangle::bell_state(d, a, b).map(|s| (a, b, s)))
        .collect::<Result<_, _>>()?;

    let result = match global.mode {
        Mode::Exact => json!({
            "d": d,
            "states": states.iter().map(|(a, b, state)| {
                Ok(json!({"a": a, "b": b, "state": serde_json::to_value(state)
                    .map_err(|e| CliError::Invalid(e.to_string()))?}))
            }).collect::<Result<Vec<_>, CliError>>()?,
        }),
        Mode::Float => json!({
            "d": d,
            "states": labels.iter().map(|&(a, b)| {
                let amps: Vec<Value> = oracle::bell_state(d, a, b)
                    .into_iter().map(complex_pair).collect();
                json!({"a": a, "b": b, "state": amps})
            }).collect::<Vec<_>>(),
        }),
    };

    let csv = (global.mode == Mode::Exact).then(|| {
        let mut table = CsvTable::new(&["a", "b", "component", "amplitude"]);
        for (a, b, state) in &states {
            for (k, amp) in state.amps().iter().enumerate() {
                table.row(&[a.to_string(), b.to_string(), k.to_string(), amp.to_string()]);
            }
        }
        table.finish()
    });

    let mut pretty = format!("Bell states for d = {d} (amplitudes indexed by m·d + n)\n");
    for (a, b, state) in &states {
        let amps: Vec<String> = match global.mode {
            Mode::Exact => state.amps().iter().map(|x| x.to_string()).collect(),
            Mode::Float => state
                .amps()
                .iter()
                .map(|x| complex_text(x.to_complex()))
                .collect(),
        };
        pretty.push_str(&format!("  (a={a}, b={b}): {}\n", amps.join(", ")));
    }

    Ok(Outcome {
        config: config("bell", global, json!({"d": d, "a": args.a, "b": args.b})),
        result,
        csv,
        pretty,
        exit: 0,
    })
}

/// The d − 1 entangled bases on the word X^b Z^a, or one of them.
fn mes(global: &GlobalOpts, args: &MesArgs) -> Result<Outcome, CliError> {
    let d = args.d;
    let (a, b) = (args.a, args.b);
    let r_values: Vec<u64> = match args.r {
        Some(r) => vec![r],
        None => (1..d).collect(),
    };

    let families: Vec<(u64, Vec<entangle::BipartiteKet>)> = r_values
        .iter()
        .map(|&r| {
            (0..d)
                .map(|s| entangle::mes_mub_state(d, r, s, a, b))
                .collect::<Result<Vec<_>, _>>()
                .map(|states| (r, states))
        })
        .collect::<Result<_, _>>()?;

    let result = match global.mode {
        Mode::Exact => json!({
            "d": d, "a": a, "b": b,
            "families": families.iter().map(|(r, states)| {
                Ok(json!({
                    "r": r,
                    "states": states.iter().map(serde_json::to_value)
                        .collect::<Result<Vec<_>, _>>()
                        .map_err(|e| CliError::Invalid(e.to_string()))?,
                }))
            }).collect::<Result<Vec<_>, CliError>>()?,
        }),
        Mode::Float => json!({
            "d": d, "a": a, "b": b,
            "families": r_values.iter().map(|&r| {
                let states: Vec<Value> = (0..d).map(|s| {
                    Value::Array(
                        oracle::mes_state(d, r, s, a, b).into_iter().map(complex_pair).collect(),
                    )
                }).collect();
                json!({"r": r, "states": states})
            }).collect::<Vec<_>>(),
        }),
    };

    let csv = (global.mode == Mode::Exact).then(|| {
        let mut table = CsvTable::new(&["r", "s", "component", "amplitude"]);
        for (r, states) in &families {
            for (s, state) in states.iter().enumerate() {
                for (k, amp) in state.amps().iter().enumerate() {
                    table.row(&[r.to_string(), s.to_string(), k.to_string(), amp.to_string()]);
                }
            }
        }
        table.finish()
    });

    let mut pretty = format!(
        "maximally entangled bases on the word X^{b} Z^{a}, d = {d}\n"
    );
    for (r, states) in &families {
        pretty.push_str(&format!("\n[r={r}]\n"));
        for (s, state) in states.iter().enumerate() {
            let amps: Vec<String> = match global.mode {
                Mode::Exact => state.amps().iter().map(|x| x.to_string()).collect(),
                Mode::Float => state
                    .amps()
                    .iter()
                    .map(|x| complex_text(x.to_complex()))
                    .collect(),
            };
            pretty.push_str(&format!("  s={s}: {}\n", amps.join(", ")));
        }
    }

    Ok(Outcome {
        config: config("mes", global, json!({"d": d, "a": a, "b": b, "r": args.r})),
        result,
        csv,
        pretty,
        exit: 0,
    })
}

/// Run the self-test suites.
fn selftest_cmd(global: &GlobalOpts, args: &SelftestArgs) -> Result<Outcome, CliError> {
    let opts = SelftestOptions {
        seed: global.seed,
        samples: global.samples,
        suites: args.suites.clone(),
        inject_fault: args.inject_fault,
    };
    let reports = selftest::run(&opts)?;
    let passed = reports.iter().all(|r| r.passed());

    let result = json!({
        "passed": passed,
        "suites": reports.iter().map(serde_json::to_value).collect::<Result<Vec<_>, _>>()
            .map_err(|e| CliError::Invalid(e.to_string()))?,
    });

    let csv = (global.mode == Mode::Exact).then(|| {
        let mut table = CsvTable::new(&["suite", "checks", "failed", "status"]);
        for report in &reports {
            table.row(&[
                report.name.clone(),
                report.checks.to_string(),
                report.failed.to_string(),
                report.status.clone(),
            ]);
        }
        table.finish()
    });

    let colors = colors_enabled();
    let mut pretty = String::from("self-test report\n");
    for report in &reports {
        let status = if report.passed() {
            green("PASS", colors)
        } else {
            red("FAIL", colors)
        };
        pretty.push_str(&format!(
            "  {status} {} — {} checks\n",
            report.name, report.checks
        ));
        for failure in &report.failures {
            pretty.push_str(&format!("       {failure}\n"));
        }
    }
    pretty.push_str(&format!(
        "overall: {} ({}/{} suites)\n",
        if passed {
            green("PASS", colors)
        } else {
            red("FAIL", colors)
        },
        reports.iter().filter(|r| r.passed()).count(),
        reports.len()
    ));

    let suites_echo: Value = if args.suites.is_empty() {
        json!("all")
    } else {
        json!(args.suites)
    };
    Ok(Outcome {
        config: config(
            "selftest",
            global,
            json!({"seed": global.seed, "samples": global.samples, "suites": suites_echo}),
        ),
        result,
        csv,
        pretty,
        exit: if passed { 0 } else { 4 },
    })
}
