// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

//! Reordering of commuting gates inside each stage.
//!
//! Gates of a stage may be permuted whenever their matrices commute, which
//! leaves every stage transform, and so every checkpoint, unchanged. Among
//! those orders the pass picks the fewest lifted operations, then the fewest
//! encoder pulses under default rules, then the smallest gate list.

use cost_model::{encoder_pulses, PulseRules};
use gate_algebra::{Circuit, Gate};
use qecc_sim::LiftCounter;

/// Cap on the orders tried per stage.
const MAX_ORDERS: usize = 4096;
const MAX_ROUNDS: usize = 4;

fn commute(a: Gate, b: Gate) -> bool {
    let (ma, mb) = (a.matrix(), b.matrix());
    ma * mb == mb * ma
}

/// Orders of `gates` that respect every non-commuting pair, the given order first.
pub(crate) fn stage_orders(gates: &[Gate]) -> Vec<Vec<Gate>> {
    let n = gates.len();
    let mut preds = vec![0u64; n];
    for j in 0..n {
        for i in 0..j {
            if !commute(gates[i], gates[j]) {
                preds[j] |= 1 << i;
            }
        }
    }
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(n);
    extend(gates, &preds, 0, &mut current, &mut out);
    out
}

fn extend(
    gates: &[Gate],
    preds: &[u64],
    placed: u64,
    current: &mut Vec<Gate>,
    out: &mut Vec<Vec<Gate>>,
) {
    if out.len() >= MAX_ORDERS {
        return;
    }
    if current.len() == gates.len() {
        out.push(current.clone());
        return;
    }
    for j in 0..gates.len() {
        if placed & (1 << j) == 0 && preds[j] & !placed == 0 {
            current.push(gates[j]);
            extend(gates, preds, placed | (1 << j), current, out);
            current.pop();
        }
    }
}

fn score(stages: &[Vec<Gate>], rules: &PulseRules) -> (usize, u32, Vec<Gate>) {
    let flat: Vec<Gate> = stages.iter().flatten().copied().collect();
    let mut counter = LiftCounter::new();
    counter.extend(flat.iter());
    let decoder = Circuit::new(flat.clone()).inverse();
    (counter.count(), encoder_pulses(&decoder, rules), flat)
}

/// Coordinate descent over per-stage orders.
pub(crate) fn schedule_stages(mut stages: Vec<Vec<Gate>>) -> Vec<Vec<Gate>> {
    let rules = PulseRules::default();
    let mut best = score(&stages, &rules);
    for _ in 0..MAX_ROUNDS {
        let mut improved = false;
        for s in 0..stages.len() {
            for order in stage_orders(&stages[s]) {
                let previous = std::mem::replace(&mut stages[s], order);
                let candidate = score(&stages, &rules);
                if candidate < best {
                    best = candidate;
                    improved = true;
                } else {
                    stages[s] = previous;
                }
            }
        }
        if !improved {
            break;
        }
    }
    stages
}
