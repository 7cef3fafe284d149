// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

//! Acceptance checks: one PASS/FAIL line per criterion.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use cost_model::{fuse_cnot_pairs, unfused, CostReport, PulseRules};
use gate_algebra::{circuit_matrix, Circuit, Gate};
use gf2_core::{
    apply_matrix, enumerate_syndromes, syndrome_table, validate_code_matrix, CodeMatrix, Codeword,
    MeasurementWord, PauliOp,
};
use num_complex::Complex64;
use qecc_sim::{lift_circuit, lift_encoder, pauli_propagate, run_qecc, QGate, StateVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use synthesis::{enumerate_assignments, staged_reduce, Assignment, Reduction, Template};

const M1: &str = include_str!("../../../fixtures/m1.txt");
const M1_STAGE1: &str = include_str!("../../../fixtures/m1_stage1.txt");
const M1_STAGE2: &str = include_str!("../../../fixtures/m1_stage2.txt");
const M_BS: &str = include_str!("../../../fixtures/m_bs.txt");
const TEMPLATE: &str = include_str!("../../../fixtures/template.txt");
const CHOICES: &str = include_str!("../../../fixtures/choices.txt");

/// Reference syndrome table `(e, w, v, U)` of the worked matrix.
const REFERENCE_TABLE: [(&str, &str, &str, PauliOp); 16] = [
    ("00 00 00 00 00", "00 00 00 00 00", "0000", PauliOp::I),
    ("10 00 00 00 00", "11 00 00 01 01", "0011", PauliOp::Y),
    ("01 00 00 00 00", "01 00 01 01 00", "0110", PauliOp::X),
    ("11 00 00 00 00", "10 00 01 00 01", "0101", PauliOp::Z),
    ("00 10 00 00 00", "00 01 00 00 01", "1001", PauliOp::I),
    ("00 01 00 00 00", "00 11 01 01 00", "1110", PauliOp::I),
    ("00 11 00 00 00", "00 10 01 01 01", "0111", PauliOp::I),
    ("00 00 10 00 00", "11 01 10 01 01", "1011", PauliOp::Y),
    ("00 00 01 00 00", "00 00 01 00 00", "0100", PauliOp::I),
    ("00 00 11 00 00", "11 01 11 01 01", "1111", PauliOp::Y),
    ("00 00 00 10 00", "10 01 00 10 00", "1000", PauliOp::Z),
    ("00 00 00 01 00", "00 00 00 01 00", "0010", PauliOp::I),
    ("00 00 00 11 00", "10 01 00 11 00", "1010", PauliOp::Z),
    ("00 00 00 00 10", "00 00 00 00 01", "0001", PauliOp::I),
    ("00 00 00 00 01", "01 11 01 00 10", "1100", PauliOp::X),
    ("00 00 00 00 11", "01 11 01 00 11", "1101", PauliOp::X),
];

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    ensure(elapsed < limit, || {
        format!("took {elapsed:?}, limit {limit:?}")
    })
}

fn m1() -> CodeMatrix {
    M1.parse().unwrap()
}

fn worked_reduction() -> Reduction {
    let t: Template = TEMPLATE.parse().unwrap();
    let a: Assignment = CHOICES.parse().unwrap();
    staged_reduce(&t, &a).unwrap()
}

fn syndrome_table_reproduction() -> Check {
    let m = m1();
    let start = Instant::now();
    let rows = syndrome_table(&m);
    let elapsed = start.elapsed();
    for (row, (e, w, v, u)) in rows.iter().zip(REFERENCE_TABLE) {
        let want = (
            e.parse::<Codeword>().unwrap(),
            w.parse::<Codeword>().unwrap(),
            v.parse::<MeasurementWord>().unwrap(),
            u,
        );
        let got = (row.syndrome, row.image, row.measurement, row.recovery);
        ensure(got == want, || {
            format!("row {}: got {got:?}, want {want:?}", row.index)
        })?;
    }
    let distinct: BTreeSet<_> = rows.iter().map(|r| r.measurement).collect();
    ensure(distinct.len() == 16, || {
        format!("{} distinct words", distinct.len())
    })?;
    within(elapsed, Duration::from_millis(1))?;
    Ok(format!("16 rows exact, 16 distinct v, {elapsed:?}"))
}

fn derivation_path() -> Check {
    let start = Instant::now();
    let r = worked_reduction();
    let elapsed = start.elapsed();
    let stage1: CodeMatrix = M1_STAGE1.parse().unwrap();
    let stage2: CodeMatrix = M1_STAGE2.parse().unwrap();
    ensure(r.trace.stages[0].checkpoint == stage1, || {
        "first checkpoint differs".into()
    })?;
    ensure(r.trace.stages[1].checkpoint == stage2, || {
        "second checkpoint differs".into()
    })?;
    ensure(r.matrix == m1(), || "solved matrix differs".into())?;
    ensure(
        r.trace.stages.last().unwrap().checkpoint.is_identity(),
        || "endpoint is not I".into(),
    )?;
    within(elapsed, Duration::from_secs(1))?;
    Ok(format!(
        "both checkpoints and the solved matrix exact, {elapsed:?}"
    ))
}

fn circuit_size() -> Check {
    let decoder = worked_reduction().decoder();
    ensure(circuit_matrix(&decoder) == m1(), || {
        "circuit does not realize the worked matrix".into()
    })?;
    let ops = lift_circuit(&decoder);
    let cnots = ops.iter().filter(|g| g.is_cnot()).count();
    ensure(ops.len() == 9 && cnots == 6, || {
        format!("{} operations, {cnots} CNOTs", ops.len())
    })?;
    let enc = lift_encoder(&decoder);
    ensure(enc.len() == 9, || {
        format!("encoder has {} operations", enc.len())
    })?;
    Ok(format!(
        "9 operations, 6 CNOT ({} bit-level gates)",
        decoder.len()
    ))
}

fn stage_one_count() -> Check {
    let t: Template = TEMPLATE.parse().unwrap();
    let start = Instant::now();
    let n = enumerate_assignments(&t, 1).len();
    let elapsed = start.elapsed();
    ensure(n == 640, || format!("{n} assignments"))?;
    within(elapsed, Duration::from_secs(1))?;
    Ok(format!("640 assignments, {elapsed:?}"))
}

fn end_to_end() -> Check {
    let decoder = worked_reduction().decoder();
    let mut rng = ChaCha8Rng::seed_from_u64(20);
    let start = Instant::now();
    let mut worst = 1.0f64;
    for _ in 0..100 {
        let raw: [f64; 4] = std::array::from_fn(|_| rng.gen_range(-1.0..1.0));
        let (a, b) = (
            Complex64::new(raw[0], raw[1]),
            Complex64::new(raw[2], raw[3]),
        );
        let norm = (a.norm_sqr() + b.norm_sqr()).sqrt();
        let (a, b) = (a / norm, b / norm);
        for (i, (_, _, v, _)) in REFERENCE_TABLE.iter().enumerate() {
            let out = run_qecc(&decoder, i, a, b).map_err(|e| format!("syndrome {i}: {e}"))?;
            ensure(out.measurement.to_string() == *v, || {
                format!("syndrome {i}: v = {}", out.measurement)
            })?;
            ensure(out.fidelity >= 1.0 - 1e-10, || {
                format!("syndrome {i}: fidelity {}", out.fidelity)
            })?;
            ensure(out.ancilla_probability >= 1.0 - 1e-10, || {
                format!(
                    "syndrome {i}: readout probability {}",
                    out.ancilla_probability
                )
            })?;
            worst = worst.min(out.fidelity);
        }
    }
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(5))?;
    Ok(format!(
        "1600 runs, worst fidelity {worst:.15}, {elapsed:?}"
    ))
}

fn oracle_equivalence() -> Check {
    let decoder = worked_reduction().decoder();
    let m = circuit_matrix(&decoder);
    let start = Instant::now();
    for e in Codeword::all() {
        let (got, want) = (pauli_propagate(&decoder, e), apply_matrix(&m, e));
        ensure(got == want, || format!("codeword {e}: {got} vs {want}"))?;
    }
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(1))?;
    Ok(format!("1024 codewords agree, {elapsed:?}"))
}

fn pulse_count() -> Check {
    let decoder = worked_reduction().decoder();
    let report = CostReport::for_decoder(&decoder, &PulseRules::default());
    ensure(
        report.pulse_count == 24 && report.three_qubit_fusions == 2,
        || {
            format!(
                "{} pulses, {} fusions",
                report.pulse_count, report.three_qubit_fusions
            )
        },
    )?;
    Ok(format!(
        "24 pulses, 2 three-qubit fusions: {}",
        report.fused_gate_list.join("; ")
    ))
}

fn m_bs_validity() -> Check {
    let m: CodeMatrix = M_BS.parse().unwrap();
    ensure(validate_code_matrix(&m).is_valid(), || {
        "validate_code_matrix rejects it".into()
    })?;
    // Independent brute force: row parities, then positions 4, 6, 8, 10.
    let mut words = BTreeSet::new();
    for e in enumerate_syndromes() {
        let w: Vec<bool> = m
            .rows()
            .iter()
            .map(|r| (r & e.bits()).count_ones() % 2 == 1)
            .collect();
        words.insert([w[3], w[5], w[7], w[9]]);
    }
    ensure(words.len() == 16, || {
        format!("{} distinct words", words.len())
    })?;
    Ok("16 distinct measurement words".into())
}

fn random_circuit(rng: &mut ChaCha8Rng, max_len: usize) -> Circuit {
    let gates = Gate::all();
    let len = rng.gen_range(0..=max_len);
    (0..len)
        .map(|_| gates[rng.gen_range(0..gates.len())])
        .collect()
}

fn random_qgates(rng: &mut ChaCha8Rng, len: usize) -> Vec<QGate> {
    (0..len)
        .map(|_| {
            let a = rng.gen_range(1..=5u8);
            match rng.gen_range(0..4) {
                0 => QGate::H(a),
                1 => QGate::Q(a),
                _ => {
                    let b = (a + rng.gen_range(0..4u8)) % 5 + 1;
                    QGate::Cnot {
                        control: a,
                        target: b,
                    }
                }
            }
        })
        .collect()
}

fn fused_matches(gates: &[QGate]) -> Result<(), String> {
    let (fused, plain) = (fuse_cnot_pairs(gates), unfused(gates));
    for basis in 0..32 {
        let (mut a, mut b) = (StateVector::basis(basis), StateVector::basis(basis));
        fused.iter().for_each(|g| g.apply(&mut a));
        plain.iter().for_each(|g| g.apply(&mut b));
        for (x, y) in a.amplitudes().iter().zip(b.amplitudes()) {
            ensure((x - y).norm() <= 1e-12, || {
                format!("basis {basis}: amplitudes differ")
            })?;
        }
    }
    Ok(())
}

fn property_suite() -> Check {
    for g in Gate::all() {
        let m = g.matrix();
        ensure((m * m).is_identity(), || {
            format!("{g} is not an involution")
        })?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..1000 {
        let c = random_circuit(&mut rng, 12);
        let inv = c.inverse();
        ensure(c.then(&inv).matrix().is_identity(), || {
            format!("inverse fails for {c:?}")
        })?;
        ensure(Some(inv.matrix()) == c.matrix().inverse(), || {
            format!("inverse matrix differs for {c:?}")
        })?;
    }
    fused_matches(&lift_encoder(&worked_reduction().decoder()))?;
    for _ in 0..200 {
        let len = rng.gen_range(1..=12);
        fused_matches(&random_qgates(&mut rng, len))?;
    }
    let mut matrices = vec![m1(), M_BS.parse().unwrap()];
    matrices.extend((0..20).map(|_| random_circuit(&mut rng, 12).matrix()));
    for m in &matrices {
        for _ in 0..4096 {
            let (a, b) = (
                Codeword::from_bits(rng.gen_range(0..1024)),
                Codeword::from_bits(rng.gen_range(0..1024)),
            );
            ensure(
                apply_matrix(m, a ^ b) == apply_matrix(m, a) ^ apply_matrix(m, b),
                || "linearity fails".into(),
            )?;
        }
    }
    let m = m1();
    for a in Codeword::all() {
        for b in Codeword::all() {
            ensure(
                apply_matrix(&m, a ^ b) == apply_matrix(&m, a) ^ apply_matrix(&m, b),
                || "linearity fails".into(),
            )?;
        }
    }
    Ok("involutions, 1000 inverses, fusion on 32 basis states, linearity".into())
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("syndrome table reproduction", syndrome_table_reproduction),
        ("derivation checkpoints", derivation_path),
        ("circuit size", circuit_size),
        ("stage-1 enumeration", stage_one_count),
        ("end-to-end correction", end_to_end),
        ("oracle equivalence", oracle_equivalence),
        ("pulse count", pulse_count),
        ("M_BS validity", m_bs_validity),
        ("property suite", property_suite),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let result =
            catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        match result {
            Ok(detail) => println!("PASS [{}] {name}: {detail}", i + 1),
            Err(reason) => {
                failed += 1;
                println!("FAIL [{}] {name}: {reason}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
