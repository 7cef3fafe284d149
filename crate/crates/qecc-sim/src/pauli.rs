// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

//! Sign-free Pauli conjugation through lifted gates.

use gate_algebra::Circuit;
use gf2_core::{Codeword, PairLabel, PAIRS};

use crate::qgate::{lift_circuit, QGate};

/// A five-qubit Pauli word as `(x, z)` components, signs dropped.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct PauliFrame {
    x: [bool; PAIRS],
    z: [bool; PAIRS],
}

impl PauliFrame {
    /// Reads phase bits as `Z` components and amplitude bits as `X` components.
    pub fn from_codeword(e: Codeword) -> Self {
        let mut f = Self::default();
        for (i, l) in e.pairs().iter().enumerate() {
            f.z[i] = l.phase;
            f.x[i] = l.amplitude;
        }
        f
    }

    pub fn to_codeword(self) -> Codeword {
        Codeword::from_pairs(std::array::from_fn(|i| {
            PairLabel::new(self.z[i], self.x[i])
        }))
    }

    fn h(&mut self, q: usize) {
        std::mem::swap(&mut self.x[q], &mut self.z[q]);
    }

    // Q X Q = -X, Q Z Q = Y, Q Y Q = Z.
    fn q(&mut self, q: usize) {
        self.x[q] ^= self.z[q];
    }

    /// Replaces the word `E` by `g E g†`.
    pub fn conjugate(&mut self, g: QGate) {
        match g {
            QGate::H(q) => self.h(q as usize - 1),
            QGate::Q(q) => self.q(q as usize - 1),
            QGate::P(q) => {
                self.q(q as usize - 1);
                self.h(q as usize - 1);
            }
            QGate::Pdg(q) => {
                self.h(q as usize - 1);
                self.q(q as usize - 1);
            }
            QGate::R(q) => {
                self.h(q as usize - 1);
                self.q(q as usize - 1);
                self.h(q as usize - 1);
            }
            QGate::Cnot { control, target } => {
                let (c, t) = (control as usize - 1, target as usize - 1);
                self.x[t] ^= self.x[c];
                self.z[c] ^= self.z[t];
            }
            QGate::Pauli(..) => {}
        }
    }
}

/// Conjugates the Pauli word labelled `e` through the lifted decoder `c`.
pub fn pauli_propagate(c: &Circuit, e: Codeword) -> Codeword {
    let mut frame = PauliFrame::from_codeword(e);
    for g in lift_circuit(c) {
        frame.conjugate(g);
    }
    frame.to_codeword()
}
