// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

use cost_model::{
    count_ops, fuse_cnot_pairs, lower_ion_trap, pulse_count, CostReport, FusedGate, OpCounts,
    PulseRules,
};
use gate_algebra::Circuit;
use qecc_sim::lift_encoder;

const DECODER: &str = include_str!("../../../fixtures/m1_decoder.txt");

fn decoder() -> Circuit {
    DECODER.parse().unwrap()
}

#[test]
fn encoder_counts() {
    let gates = lift_encoder(&decoder());
    assert_eq!(
        count_ops(&gates),
        OpCounts {
            total_ops: 9,
            cnot_count: 6
        }
    );
}

#[test]
fn encoder_fuses_two_pairs() {
    let fused = fuse_cnot_pairs(&lift_encoder(&decoder()));
    let threes: Vec<String> = fused
        .iter()
        .filter(|g| matches!(g, FusedGate::Three { .. }))
        .map(ToString::to_string)
        .collect();
    assert_eq!(
        threes,
        [
            "THREE control 2; targets 4,3",
            "THREE control 5; targets 2,1"
        ]
    );
    assert_eq!(fused.len(), 7);
}

#[test]
fn encoder_costs_twenty_four_pulses() {
    let report = CostReport::for_decoder(&decoder(), &PulseRules::default());
    assert_eq!(report.pulse_count, 24);
    assert_eq!(report.three_qubit_fusions, 2);
    assert_eq!((report.total_ops, report.cnot_count), (9, 6));
    let schedule = lower_ion_trap(&fuse_cnot_pairs(&lift_encoder(&decoder())));
    let singles = schedule.iter().filter(|p| p.arity() == 1).count();
    assert_eq!(singles, 10);
    assert_eq!(pulse_count(&schedule, &PulseRules::default()), 24);
}

#[test]
fn report_invariants() {
    let report = CostReport::for_decoder(&decoder(), &PulseRules::default());
    assert!(report.cnot_count <= report.total_ops);
    assert!(report.pulse_count as usize >= report.total_ops);
}
