// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

use std::fmt;

use qecc_sim::{QGate, StateVector};
use serde::{Deserialize, Serialize};

/// A gate of the fused circuit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum FusedGate {
    /// A single-qubit gate passed through unchanged.
    Single(QGate),
    Cnot {
        control: u8,
        target: u8,
    },
    /// Two CNOTs on three qubits sharing a control or a target, run as one primitive.
    Three {
        first: (u8, u8),
        second: (u8, u8),
    },
}

impl FusedGate {
    pub fn arity(&self) -> usize {
        match self {
            FusedGate::Single(_) => 1,
            FusedGate::Cnot { .. } => 2,
            FusedGate::Three { .. } => 3,
        }
    }

    /// The CNOTs this gate stands for, in order.
    pub fn cnots(&self) -> Vec<(u8, u8)> {
        match *self {
            FusedGate::Single(_) => Vec::new(),
            FusedGate::Cnot { control, target } => vec![(control, target)],
            FusedGate::Three { first, second } => vec![first, second],
        }
    }

    /// Applies the gate; a three-qubit primitive acts as its two CNOTs.
    pub fn apply(&self, state: &mut StateVector) {
        match *self {
            FusedGate::Single(g) => state.apply(g),
            _ => {
                for (c, t) in self.cnots() {
                    state.apply_cnot(c as usize, t as usize);
                }
            }
        }
    }
}

impl fmt::Display for FusedGate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FusedGate::Single(g) => write!(f, "{g}"),
            FusedGate::Cnot { control, target } => write!(f, "CNOT {control} {target}"),
            FusedGate::Three { first, second } if first.0 == second.0 => {
                write!(
                    f,
                    "THREE control {}; targets {},{}",
                    first.0, first.1, second.1
                )
            }
            FusedGate::Three { first, second } => {
                write!(
                    f,
                    "THREE controls {},{}; target {}",
                    first.0, second.0, first.1
                )
            }
        }
    }
}

fn cnot_of(g: QGate) -> Option<(u8, u8)> {
    match g {
        QGate::Cnot { control, target } => Some((control, target)),
        _ => None,
    }
}

fn shares_one_role(a: (u8, u8), b: (u8, u8)) -> bool {
    (a.0 == b.0 && a.1 != b.1) || (a.1 == b.1 && a.0 != b.0)
}

/// Greedy left-to-right fusion of CNOT pairs sharing a control or a target.
///
/// A CNOT fuses with the next gate that touches either of its qubits when that
/// gate is a CNOT sharing its control or its target, and no gate in between
/// touches the third qubit. The fused primitive takes the earlier slot.
pub fn fuse_cnot_pairs(gates: &[QGate]) -> Vec<FusedGate> {
    let mut consumed = vec![false; gates.len()];
    let mut out = Vec::with_capacity(gates.len());
    for i in 0..gates.len() {
        if consumed[i] {
            continue;
        }
        let Some(a) = cnot_of(gates[i]) else {
            out.push(FusedGate::Single(gates[i]));
            continue;
        };
        let touches_a = |g: QGate| g.touches(a.0 as usize) || g.touches(a.1 as usize);
        let partner = (i + 1..gates.len())
            .filter(|&j| !consumed[j])
            .find(|&j| touches_a(gates[j]))
            .and_then(|j| {
                let b = cnot_of(gates[j])?;
                if !shares_one_role(a, b) {
                    return None;
                }
                let third = if b.0 == a.0 { b.1 } else { b.0 } as usize;
                let blocked = (i + 1..j).any(|k| !consumed[k] && gates[k].touches(third));
                (!blocked).then_some((j, b))
            });
        match partner {
            Some((j, b)) => {
                consumed[j] = true;
                out.push(FusedGate::Three {
                    first: a,
                    second: b,
                });
            }
            None => out.push(FusedGate::Cnot {
                control: a.0,
                target: a.1,
            }),
        }
    }
    out
}

/// Every gate kept as is, for comparison with [`fuse_cnot_pairs`].
pub fn unfused(gates: &[QGate]) -> Vec<FusedGate> {
    gates
        .iter()
        .map(|&g| match cnot_of(g) {
            Some((control, target)) => FusedGate::Cnot { control, target },
            None => FusedGate::Single(g),
        })
        .collect()
}
