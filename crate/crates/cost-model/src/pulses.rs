// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

//! Ion-trap lowering and laser-pulse accounting.
//!
//! The native entangling primitives act in the phase basis, so a CNOT is run as
//! a basis rotation on its target, the two-qubit primitive, and the rotation
//! back. A fused pair rotates each of its targets around one three-qubit
//! primitive. Consecutive single-qubit work on one wire is then merged:
//! a run holding `k` circuit gates costs `k` pulses, and a run of inserted
//! rotations alone costs one pulse, or none when the rotations cancel.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::fusion::FusedGate;

/// Pulses per primitive, by arity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PulseRules {
    pub single_qubit: u32,
    pub two_qubit: u32,
    pub three_qubit: u32,
}

impl Default for PulseRules {
    fn default() -> Self {
        Self {
            single_qubit: 1,
            two_qubit: 3,
            three_qubit: 4,
        }
    }
}

impl PulseRules {
    pub fn new(single_qubit: u32, two_qubit: u32, three_qubit: u32) -> Result<Self, String> {
        if single_qubit == 0 || two_qubit == 0 || three_qubit == 0 {
            return Err("pulse costs must be positive".into());
        }
        Ok(Self {
            single_qubit,
            two_qubit,
            three_qubit,
        })
    }
}

/// Parses `s,t,th`.
impl FromStr for PulseRules {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<u32> = s
            .split(',')
            .map(|p| p.trim().parse::<u32>().map_err(|e| format!("{p:?}: {e}")))
            .collect::<Result<_, _>>()?;
        match parts[..] {
            [a, b, c] => PulseRules::new(a, b, c),
            _ => Err(format!(
                "expected three comma-separated costs, found {}",
                parts.len()
            )),
        }
    }
}

/// A physical primitive of the lowered schedule.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Primitive {
    /// One single-qubit pulse.
    Single {
        qubit: u8,
    },
    Two {
        qubits: [u8; 2],
    },
    Three {
        qubits: [u8; 3],
    },
}

impl Primitive {
    pub fn arity(&self) -> usize {
        match self {
            Primitive::Single { .. } => 1,
            Primitive::Two { .. } => 2,
            Primitive::Three { .. } => 3,
        }
    }
}

impl fmt::Display for Primitive {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Primitive::Single { qubit } => write!(f, "R {qubit}"),
            Primitive::Two { qubits: [a, b] } => write!(f, "MS {a} {b}"),
            Primitive::Three { qubits: [a, b, c] } => write!(f, "MS3 {a} {b} {c}"),
        }
    }
}

#[derive(Clone, Copy, Debug)]
enum Event {
    Gate(u8),
    Rotation(u8),
    Entangle(Primitive2),
}

#[derive(Clone, Copy, Debug)]
enum Primitive2 {
    Two([u8; 2]),
    Three([u8; 3]),
}

fn events(gates: &[FusedGate]) -> Vec<Event> {
    let mut out = Vec::new();
    for g in gates {
        match *g {
            FusedGate::Single(q) => {
                let qubit = q.qubits().next().expect("single-qubit gate") as u8;
                out.push(Event::Gate(qubit));
            }
            FusedGate::Cnot { control, target } => {
                out.push(Event::Rotation(target));
                out.push(Event::Entangle(Primitive2::Two([control, target])));
                out.push(Event::Rotation(target));
            }
            FusedGate::Three { first, second } => {
                let (qubits, targets): ([u8; 3], Vec<u8>) = if first.0 == second.0 {
                    ([first.0, first.1, second.1], vec![first.1, second.1])
                } else {
                    ([first.0, second.0, first.1], vec![first.1])
                };
                out.extend(targets.iter().map(|&t| Event::Rotation(t)));
                out.push(Event::Entangle(Primitive2::Three(qubits)));
                out.extend(targets.iter().map(|&t| Event::Rotation(t)));
            }
        }
    }
    out
}

#[derive(Clone, Copy, Default)]
struct Run {
    start: Option<usize>,
    gates: u32,
    rotations: u32,
}

impl Run {
    fn pulses(&self) -> u32 {
        if self.gates > 0 {
            self.gates
        } else {
            self.rotations % 2
        }
    }
}

/// Lowers a fused circuit to the ion-trap primitive schedule.
pub fn lower_ion_trap(gates: &[FusedGate]) -> Vec<Primitive> {
    // Each slot holds either an entangling primitive or the pulses of a closed run.
    let mut slots: Vec<Vec<Primitive>> = Vec::new();
    let mut runs = [Run::default(); 8];
    let close = |run: &mut Run, qubit: u8, slots: &mut Vec<Vec<Primitive>>| {
        if let Some(s) = run.start {
            slots[s].extend((0..run.pulses()).map(|_| Primitive::Single { qubit }));
        }
        *run = Run::default();
    };
    for ev in events(gates) {
        match ev {
            Event::Gate(q) | Event::Rotation(q) => {
                let run = &mut runs[q as usize];
                if run.start.is_none() {
                    run.start = Some(slots.len());
                    slots.push(Vec::new());
                }
                if matches!(ev, Event::Gate(_)) {
                    run.gates += 1;
                } else {
                    run.rotations += 1;
                }
            }
            Event::Entangle(p) => {
                let (qubits, prim) = match p {
                    Primitive2::Two(qs) => (qs.to_vec(), Primitive::Two { qubits: qs }),
                    Primitive2::Three(qs) => (qs.to_vec(), Primitive::Three { qubits: qs }),
                };
                for q in qubits {
                    close(&mut runs[q as usize], q, &mut slots);
                }
                slots.push(vec![prim]);
            }
        }
    }
    for (q, run) in runs.iter_mut().enumerate() {
        close(run, q as u8, &mut slots);
    }
    slots.into_iter().flatten().collect()
}

/// Sum of per-primitive costs by arity.
pub fn pulse_count(primitives: &[Primitive], rules: &PulseRules) -> u32 {
    primitives
        .iter()
        .map(|p| match p.arity() {
            1 => rules.single_qubit,
            2 => rules.two_qubit,
            _ => rules.three_qubit,
        })
        .sum()
}
