// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

//! Quantum gates and the lift from bit-level circuits.

use std::fmt;

use gate_algebra::{Circuit, Gate};
use gf2_core::PauliOp;
use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

/// A 2×2 complex matrix, row-major.
pub type Mat2 = [[C64; 2]; 2];

/// Gates of the lifted five-qubit circuit. Qubits are 1-indexed.
///
/// `P`, `Pdg` and `R` are merged runs of `H` and `Q` on one qubit; the
/// run is read in time order, so `P` is `Q` followed by `H` (matrix `H·Q`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum QGate {
    /// Hadamard, `(σx + σz)/√2`.
    H(u8),
    /// `(σy + σz)/√2`.
    Q(u8),
    /// `H·Q`.
    P(u8),
    /// `Q·H`, the inverse of `P`.
    Pdg(u8),
    /// `H·Q·H`, equal to `Q·H·Q` up to a global sign.
    R(u8),
    Cnot {
        control: u8,
        target: u8,
    },
    Pauli(u8, PauliOp),
}

/// Single-qubit letters that can be merged on one wire.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Letter {
    H,
    Q,
}

impl QGate {
    pub fn is_cnot(self) -> bool {
        matches!(self, QGate::Cnot { .. })
    }

    pub fn is_single(self) -> bool {
        !self.is_cnot()
    }

    pub fn qubits(self) -> impl Iterator<Item = usize> {
        let (a, b) = match self {
            QGate::Cnot { control, target } => (control, Some(target)),
            QGate::H(q) | QGate::Q(q) | QGate::P(q) | QGate::Pdg(q) | QGate::R(q) => (q, None),
            QGate::Pauli(q, _) => (q, None),
        };
        std::iter::once(a as usize).chain(b.map(usize::from))
    }

    pub fn touches(self, qubit: usize) -> bool {
        self.qubits().any(|q| q == qubit)
    }

    /// Time-ordered letters of a merged single-qubit gate.
    fn word(self) -> Option<(u8, &'static [Letter])> {
        use Letter::*;
        match self {
            QGate::H(q) => Some((q, &[H])),
            QGate::Q(q) => Some((q, &[Q])),
            QGate::P(q) => Some((q, &[Q, H])),
            QGate::Pdg(q) => Some((q, &[H, Q])),
            QGate::R(q) => Some((q, &[H, Q, H])),
            _ => None,
        }
    }

    fn from_word(q: u8, word: &[Letter]) -> Option<QGate> {
        use Letter::*;
        match word {
            [H] => Some(QGate::H(q)),
            [Q] => Some(QGate::Q(q)),
            [Q, H] => Some(QGate::P(q)),
            [H, Q] => Some(QGate::Pdg(q)),
            [H, Q, H] | [Q, H, Q] => Some(QGate::R(q)),
            _ => None,
        }
    }

    /// Unitary of a single-qubit gate.
    pub fn matrix(self) -> Option<Mat2> {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let h: Mat2 = [
            [C64::new(s, 0.0), C64::new(s, 0.0)],
            [C64::new(s, 0.0), C64::new(-s, 0.0)],
        ];
        let q: Mat2 = [
            [C64::new(s, 0.0), C64::new(0.0, -s)],
            [C64::new(0.0, s), C64::new(-s, 0.0)],
        ];
        match self {
            QGate::H(_) => Some(h),
            QGate::Q(_) => Some(q),
            QGate::P(_) => Some(mul2(&h, &q)),
            QGate::Pdg(_) => Some(mul2(&q, &h)),
            QGate::R(_) => Some(mul2(&h, &mul2(&q, &h))),
            QGate::Pauli(_, op) => Some(pauli_matrix(op)),
            QGate::Cnot { .. } => None,
        }
    }

    /// Inverse gate; `R` is self-inverse up to sign.
    pub fn inverse(self) -> QGate {
        match self {
            QGate::P(q) => QGate::Pdg(q),
            QGate::Pdg(q) => QGate::P(q),
            g => g,
        }
    }
}

impl fmt::Display for QGate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QGate::H(q) => write!(f, "H {q}"),
            QGate::Q(q) => write!(f, "Q {q}"),
            QGate::P(q) => write!(f, "P {q}"),
            QGate::Pdg(q) => write!(f, "P+ {q}"),
            QGate::R(q) => write!(f, "HQH {q}"),
            QGate::Cnot { control, target } => write!(f, "CNOT {control} {target}"),
            QGate::Pauli(q, op) => write!(f, "{op} {q}"),
        }
    }
}

pub fn pauli_matrix(op: PauliOp) -> Mat2 {
    let (o, l) = (C64::new(0.0, 0.0), C64::new(1.0, 0.0));
    let i = C64::new(0.0, 1.0);
    match op {
        PauliOp::I => [[l, o], [o, l]],
        PauliOp::X => [[o, l], [l, o]],
        PauliOp::Z => [[l, o], [o, -l]],
        PauliOp::Y => [[o, -i], [i, o]],
    }
}

pub fn mul2(a: &Mat2, b: &Mat2) -> Mat2 {
    std::array::from_fn(|r| std::array::from_fn(|c| a[r][0] * b[0][c] + a[r][1] * b[1][c]))
}

/// Lifts one bit-level gate: `BXOR → CNOT`, `BY → H`, `SXBX → Q`.
pub fn lift_gate(g: Gate) -> QGate {
    match g {
        Gate::Bxor { source, target } => QGate::Cnot {
            control: source,
            target,
        },
        Gate::By(p) => QGate::H(p),
        Gate::Sxbx(p) => QGate::Q(p),
    }
}

/// Lifts a bit-level circuit gate by gate, in order.
///
/// Consecutive `H`/`Q` gates on one qubit with no gate on that qubit between
/// them are merged into one operation when their time-ordered word is one of
/// `QH`, `HQ`, `HQH` or `QHQ`; the merged gate takes the slot of the first.
pub fn lift_circuit(c: &Circuit) -> Vec<QGate> {
    let mut out: Vec<QGate> = Vec::with_capacity(c.len());
    let mut open: [Option<usize>; 6] = [None; 6];
    for &g in c {
        let lifted = lift_gate(g);
        match lifted {
            QGate::Cnot { control, target } => {
                open[control as usize] = None;
                open[target as usize] = None;
                out.push(lifted);
            }
            _ => {
                let (q, letters) = lifted.word().expect("single-qubit lift");
                let merged = open[q as usize].and_then(|j| {
                    let (_, prev) = out[j].word()?;
                    let word: Vec<Letter> = prev.iter().chain(letters).copied().collect();
                    QGate::from_word(q, &word).map(|m| (j, m))
                });
                match merged {
                    Some((j, m)) => out[j] = m,
                    None => {
                        open[q as usize] = Some(out.len());
                        out.push(lifted);
                    }
                }
            }
        }
    }
    out
}

/// Running count of [`lift_circuit`] output length, fed one bit-level gate at a time.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct LiftCounter {
    count: u32,
    /// Per qubit: last letter (`true` for `H`) and length of the open run.
    open: [Option<(bool, u8)>; 6],
}

impl LiftCounter {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn count(&self) -> usize {
        self.count as usize
    }

    pub fn push(&mut self, g: Gate) {
        match g {
            Gate::Bxor { source, target } => {
                self.open[source as usize] = None;
                self.open[target as usize] = None;
                self.count += 1;
            }
            Gate::By(p) | Gate::Sxbx(p) => {
                let h = matches!(g, Gate::By(_));
                let slot = &mut self.open[p as usize];
                match *slot {
                    Some((last, len)) if last != h && len < 3 => *slot = Some((h, len + 1)),
                    _ => {
                        *slot = Some((h, 1));
                        self.count += 1;
                    }
                }
            }
        }
    }

    pub fn extend<'a>(&mut self, gates: impl IntoIterator<Item = &'a Gate>) {
        for &g in gates {
            self.push(g);
        }
    }
}

/// Lifted encoder `U⁺` for the decoder circuit `c`.
pub fn lift_encoder(decoder: &Circuit) -> Vec<QGate> {
    lift_circuit(&decoder.inverse())
}
