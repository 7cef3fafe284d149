// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

use std::fmt;

use gate_algebra::Circuit;
use qecc_sim::{lift_encoder, QGate};
use serde::{Deserialize, Serialize};

use crate::fusion::{fuse_cnot_pairs, FusedGate};
use crate::pulses::{lower_ion_trap, pulse_count, Primitive, PulseRules};

/// Total operations and CNOTs of a lifted circuit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OpCounts {
    pub total_ops: usize,
    pub cnot_count: usize,
}

pub fn count_ops(gates: &[QGate]) -> OpCounts {
    OpCounts {
        total_ops: gates.len(),
        cnot_count: gates.iter().filter(|g| g.is_cnot()).count(),
    }
}

/// Efficiency figures of one circuit.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CostReport {
    pub total_ops: usize,
    pub cnot_count: usize,
    pub pulse_count: u32,
    pub three_qubit_fusions: usize,
    pub rules: PulseRules,
    pub fused_gate_list: Vec<String>,
    pub schedule: Vec<String>,
}

impl CostReport {
    /// Costs an already lifted gate list.
    pub fn from_gates(gates: &[QGate], rules: &PulseRules) -> Self {
        let counts = count_ops(gates);
        let fused = fuse_cnot_pairs(gates);
        let schedule: Vec<Primitive> = lower_ion_trap(&fused);
        Self {
            total_ops: counts.total_ops,
            cnot_count: counts.cnot_count,
            pulse_count: pulse_count(&schedule, rules),
            three_qubit_fusions: fused
                .iter()
                .filter(|g| matches!(g, FusedGate::Three { .. }))
                .count(),
            rules: *rules,
            fused_gate_list: fused.iter().map(ToString::to_string).collect(),
            schedule: schedule.iter().map(ToString::to_string).collect(),
        }
    }

    /// Costs the encoder `U⁺` of a bit-level decoder circuit.
    pub fn for_decoder(decoder: &Circuit, rules: &PulseRules) -> Self {
        Self::from_gates(&lift_encoder(decoder), rules)
    }
}

/// Pulse count of the fused, lowered encoder of `decoder`.
pub fn encoder_pulses(decoder: &Circuit, rules: &PulseRules) -> u32 {
    pulse_count(
        &lower_ion_trap(&fuse_cnot_pairs(&lift_encoder(decoder))),
        rules,
    )
}

/// A row of the comparison table; `None` marks an unknown figure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Table2Row {
    pub name: String,
    pub total_ops: Option<usize>,
    pub cnot_count: Option<usize>,
    pub pulse_count: Option<u32>,
    /// `false` for literature figures stored as constants.
    pub computed: bool,
}

impl Table2Row {
    pub fn computed(name: impl Into<String>, report: &CostReport) -> Self {
        Self {
            name: name.into(),
            total_ops: Some(report.total_ops),
            cnot_count: Some(report.cnot_count),
            pulse_count: Some(report.pulse_count),
            computed: true,
        }
    }

    pub fn recorded(
        name: impl Into<String>,
        ops: usize,
        cnots: usize,
        pulses: Option<u32>,
    ) -> Self {
        Self {
            name: name.into(),
            total_ops: Some(ops),
            cnot_count: Some(cnots),
            pulse_count: pulses,
            computed: false,
        }
    }
}

/// Published figures of earlier five-qubit encoders; their gate lists are not available.
pub fn reference_rows() -> Vec<Table2Row> {
    vec![
        Table2Row::recorded("Circuit 1", 12, 7, Some(35)),
        Table2Row::recorded("Circuit 2", 11, 6, None),
        Table2Row::recorded("Circuit 3", 10, 7, Some(26)),
    ]
}

/// Entry of [`table2_report`].
#[derive(Clone, Debug)]
pub enum Table2Entry {
    Computed(String, CostReport),
    Recorded(Table2Row),
}

/// Comparison table of operations, CNOTs and pulses.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Table2 {
    pub rows: Vec<Table2Row>,
}

pub fn table2_report(entries: Vec<Table2Entry>) -> Table2 {
    Table2 {
        rows: entries
            .into_iter()
            .map(|e| match e {
                Table2Entry::Computed(name, report) => Table2Row::computed(name, &report),
                Table2Entry::Recorded(row) => row,
            })
            .collect(),
    }
}

impl fmt::Display for Table2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cell = |v: Option<String>| v.unwrap_or_else(|| "*".into());
        writeln!(
            f,
            "{:<24} {:>10} {:>6} {:>7}  source",
            "circuit", "operations", "CNOTs", "pulses"
        )?;
        for r in &self.rows {
            writeln!(
                f,
                "{:<24} {:>10} {:>6} {:>7}  {}",
                r.name,
                cell(r.total_ops.map(|v| v.to_string())),
                cell(r.cnot_count.map(|v| v.to_string())),
                cell(r.pulse_count.map(|v| v.to_string())),
                if r.computed { "computed" } else { "recorded" }
            )?;
        }
        Ok(())
    }
}
