// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

use std::fs;
use std::path::Path;
use std::str::FromStr;

use cost_model::{reference_rows, table2_report, CostReport, PulseRules, Table2Entry};
use gate_algebra::Circuit;
use gf2_core::{validate_code_matrix, CodeMatrix, Codeword, ValidityReport};
use num_complex::Complex64;
use qecc_sim::{pauli_propagate, run_qecc, QeccError};
use serde::Serialize;
use synthesis::{search_with, staged_reduce, Assignment, Reduction, SearchConfig, Template};

use crate::Command;

const WORKED_MATRIX: &str = include_str!("../../../fixtures/m1.txt");
const WORKED_TEMPLATE: &str = include_str!("../../../fixtures/template.txt");
const WORKED_CHOICES: &str = include_str!("../../../fixtures/choices.txt");

/// Exit status 1 for domain failures, 2 for bad input.
pub enum Failure {
    Domain(String),
    Input(String),
}

impl Failure {
    pub fn code(&self) -> u8 {
        match self {
            Failure::Domain(_) => 1,
            Failure::Input(_) => 2,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            Failure::Domain(m) | Failure::Input(m) => m,
        }
    }
}

type Outcome = Result<(), Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn parse_file<T: FromStr>(path: &Path) -> Result<T, Failure>
where
    T::Err: std::fmt::Display,
{
    read(path)?
        .parse()
        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn rules(text: &str) -> Result<PulseRules, Failure> {
    text.parse()
        .map_err(|e| Failure::Input(format!("--rules: {e}")))
}

fn print_json<T: Serialize>(value: &T) {
    println!(
        "{}",
        serde_json::to_string_pretty(value).expect("report serializes")
    );
}

pub fn run(command: Command, json: bool) -> Outcome {
    match command {
        Command::Synthesize {
            template,
            choices,
            budget,
            seed,
            exhaustive,
            out,
            rules: r,
        } => synthesize(
            &template,
            choices.as_deref(),
            budget,
            seed,
            exhaustive,
            &out,
            &rules(&r)?,
            json,
        ),
        Command::VerifyMatrix { matrix } => verify_matrix(&parse_file(&matrix)?, json),
        Command::VerifyCircuit { circuit, matrix } => {
            verify_circuit(&parse_file(&circuit)?, &parse_file(&matrix)?, json)
        }
        Command::Simulate {
            circuit,
            syndrome,
            alpha,
            beta,
        } => simulate(&parse_file(&circuit)?, syndrome, &alpha, &beta),
        Command::Cost { circuit, rules: r } => cost(&parse_file(&circuit)?, &rules(&r)?, json),
        Command::Table1 { matrix } => {
            let m = match matrix {
                Some(path) => parse_file(&path)?,
                None => WORKED_MATRIX.parse().expect("embedded matrix parses"),
            };
            verify_matrix(&m, json)
        }
        Command::Table2 { circuit, rules: r } => {
            let decoder = match circuit {
                Some(path) => parse_file(&path)?,
                None => worked_reduction().decoder(),
            };
            table2(&decoder, &rules(&r)?, json)
        }
    }
}

fn worked_reduction() -> Reduction {
    let t: Template = WORKED_TEMPLATE.parse().expect("embedded template parses");
    let a: Assignment = WORKED_CHOICES.parse().expect("embedded choices parse");
    staged_reduce(&t, &a).expect("worked path reduces")
}

#[derive(Serialize)]
struct SynthesisReport {
    matrix: CodeMatrix,
    decoder: Circuit,
    bxor: usize,
    gates: usize,
    found: usize,
    cost: CostReport,
}

/// Seed used when neither `--seed` nor `--exhaustive` is given.
const DEFAULT_SEED: u64 = 0;

fn synthesize(
    template: &Path,
    choices: Option<&Path>,
    budget: usize,
    seed: Option<u64>,
    exhaustive: bool,
    out: &Path,
    rules: &PulseRules,
    json: bool,
) -> Outcome {
    let t: Template = parse_file(template)?;
    let (decoder, matrix, found, trace) = match choices {
        Some(path) => {
            let a: Assignment = parse_file(path)?;
            let r = staged_reduce(&t, &a).map_err(|e| Failure::Domain(e.to_string()))?;
            let trace: Vec<String> = r
                .trace
                .stages
                .iter()
                .map(|s| serde_json::to_string(s).expect("trace serializes"))
                .collect();
            (r.decoder(), r.matrix, 1, Some(trace))
        }
        None => {
            let config = if exhaustive {
                SearchConfig::default()
            } else {
                SearchConfig::sampled(seed.unwrap_or(DEFAULT_SEED))
            };
            let hits = search_with(&t, budget, &config);
            let best = hits
                .first()
                .ok_or_else(|| Failure::Domain(format!("no circuit within {budget} BXOR gates")))?;
            (best.decoder.clone(), best.matrix, hits.len(), None)
        }
    };
    if decoder.bxor_count() > budget {
        return Err(Failure::Domain(format!(
            "best circuit uses {} BXOR gates, over the budget of {budget}",
            decoder.bxor_count()
        )));
    }
    fs::create_dir_all(out).map_err(|e| Failure::Input(format!("{}: {e}", out.display())))?;
    write(&out.join("decoder.txt"), &format!("{decoder}"))?;
    write(&out.join("matrix.txt"), &format!("{matrix}"))?;
    if let Some(lines) = &trace {
        write(&out.join("trace.jsonl"), &(lines.join("\n") + "\n"))?;
    }
    let report = SynthesisReport {
        matrix,
        bxor: decoder.bxor_count(),
        gates: decoder.len(),
        found,
        cost: CostReport::for_decoder(&decoder, rules),
        decoder,
    };
    if json {
        print_json(&report);
    } else {
        println!("decoder ({} gates, {} BXOR):", report.gates, report.bxor);
        print!("{}", report.decoder);
        println!("code matrix:");
        print!("{}", report.matrix);
        if found > 1 {
            println!("matrices within budget: {found}");
        }
        print_cost(&report.cost);
        println!("written to {}", out.display());
    }
    Ok(())
}

fn print_cost(c: &CostReport) {
    println!(
        "encoder: {} operations, {} CNOTs, {} pulses, {} three-qubit fusions",
        c.total_ops, c.cnot_count, c.pulse_count, c.three_qubit_fusions
    );
    println!("fused: {}", c.fused_gate_list.join("; "));
}

fn print_table1(report: &ValidityReport) {
    println!(" i  e^(i)           w^(i)           v^(i)  U");
    for row in &report.rows {
        println!("{row}");
    }
}

fn verify_matrix(m: &CodeMatrix, json: bool) -> Outcome {
    let report = validate_code_matrix(m);
    if json {
        print_json(&report);
    } else {
        print_table1(&report);
        for c in &report.collisions {
            println!("collision: {c}");
        }
        if report.rank != 10 {
            println!("rank {} < 10", report.rank);
        }
    }
    if report.is_valid() {
        Ok(())
    } else {
        Err(Failure::Domain(format!(
            "invalid code matrix: {} collisions, rank {}",
            report.collisions.len(),
            report.rank
        )))
    }
}

#[derive(Serialize)]
struct CircuitCheck {
    realizes_matrix: bool,
    matrix_valid: bool,
    propagation_mismatches: usize,
}

fn verify_circuit(c: &Circuit, m: &CodeMatrix, json: bool) -> Outcome {
    let realized = c.matrix();
    let check = CircuitCheck {
        realizes_matrix: realized == *m,
        matrix_valid: validate_code_matrix(m).is_valid(),
        propagation_mismatches: Codeword::all()
            .filter(|&e| pauli_propagate(c, e) != realized.apply(e))
            .count(),
    };
    if json {
        print_json(&check);
    } else {
        println!("circuit realizes matrix: {}", check.realizes_matrix);
        println!("matrix valid: {}", check.matrix_valid);
        println!(
            "Pauli propagation mismatches: {} of 1024",
            check.propagation_mismatches
        );
    }
    if check.realizes_matrix && check.matrix_valid && check.propagation_mismatches == 0 {
        Ok(())
    } else {
        Err(Failure::Domain(
            "circuit does not realize a valid code matrix".into(),
        ))
    }
}

fn amplitude(name: &str, text: &str) -> Result<Complex64, Failure> {
    Complex64::from_str(text.trim())
        .map_err(|_| Failure::Input(format!("--{name}: cannot parse {text:?}")))
}

#[derive(Serialize)]
struct SimulationReport {
    v: String,
    recovery: String,
    fidelity: f64,
}

fn simulate(c: &Circuit, syndrome: usize, alpha: &str, beta: &str) -> Outcome {
    let (a, b) = (amplitude("alpha", alpha)?, amplitude("beta", beta)?);
    let outcome = run_qecc(c, syndrome, a, b).map_err(|e| match e {
        QeccError::Unnormalized(_) | QeccError::SyndromeOutOfRange(_) => {
            Failure::Input(e.to_string())
        }
        QeccError::InvalidCode { .. } | QeccError::NonDeterministic { .. } => {
            Failure::Domain(e.to_string())
        }
    })?;
    print_json(&SimulationReport {
        v: outcome.measurement.to_string(),
        recovery: outcome.recovery.symbol().to_string(),
        fidelity: outcome.fidelity,
    });
    Ok(())
}

fn cost(c: &Circuit, rules: &PulseRules, json: bool) -> Outcome {
    let report = CostReport::for_decoder(c, rules);
    if json {
        print_json(&report);
    } else {
        print_cost(&report);
        println!("pulses: {}", report.schedule.join("; "));
    }
    Ok(())
}

fn table2(decoder: &Circuit, rules: &PulseRules, json: bool) -> Outcome {
    let mut entries: Vec<Table2Entry> = reference_rows()
        .into_iter()
        .map(Table2Entry::Recorded)
        .collect();
    entries.push(Table2Entry::Computed(
        "Circuit 4 (synthesized)".into(),
        CostReport::for_decoder(decoder, rules),
    ));
    let table = table2_report(entries);
    if json {
        print_json(&table);
    } else {
        print!("{table}");
    }
    Ok(())
}
