// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

use std::ops::Index;

use gf2_core::{Codeword, PAIRS};
use num_complex::Complex64 as C64;

use crate::qgate::{pauli_matrix, Mat2, QGate};

pub const QUBITS: usize = PAIRS;
pub const DIM: usize = 1 << QUBITS;

/// Five-qubit pure state; basis index bit `5 - q` holds qubit `q`, so qubit 1 is most significant.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    amps: [C64; DIM],
}

#[inline]
fn qubit_mask(q: usize) -> usize {
    debug_assert!((1..=QUBITS).contains(&q));
    1 << (QUBITS - q)
}

impl StateVector {
    /// Computational basis state `|index⟩`.
    pub fn basis(index: usize) -> Self {
        assert!(index < DIM, "basis index {index} out of range");
        let mut amps = [C64::new(0.0, 0.0); DIM];
        amps[index] = C64::new(1.0, 0.0);
        Self { amps }
    }

    /// `(α|0⟩ + β|1⟩)|0000⟩`.
    pub fn with_data(alpha: C64, beta: C64) -> Self {
        let mut amps = [C64::new(0.0, 0.0); DIM];
        amps[0] = alpha;
        amps[qubit_mask(1)] = beta;
        Self { amps }
    }

    pub fn from_amplitudes(amps: [C64; DIM]) -> Self {
        Self { amps }
    }

    pub fn amplitudes(&self) -> &[C64; DIM] {
        &self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &StateVector) -> C64 {
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// `|⟨self|other⟩|²`, insensitive to global phase.
    pub fn overlap(&self, other: &StateVector) -> f64 {
        self.inner(other).norm_sqr()
    }

    pub fn apply_single(&mut self, q: usize, m: &Mat2) {
        let bit = qubit_mask(q);
        for i in (0..DIM).filter(|i| i & bit == 0) {
            let (a0, a1) = (self.amps[i], self.amps[i | bit]);
            self.amps[i] = m[0][0] * a0 + m[0][1] * a1;
            self.amps[i | bit] = m[1][0] * a0 + m[1][1] * a1;
        }
    }

    pub fn apply_cnot(&mut self, control: usize, target: usize) {
        assert_ne!(control, target, "CNOT control equals target");
        let (c, t) = (qubit_mask(control), qubit_mask(target));
        for i in (0..DIM).filter(|i| i & c != 0 && i & t == 0) {
            self.amps.swap(i, i | t);
        }
    }

    pub fn apply(&mut self, g: QGate) {
        match g {
            QGate::Cnot { control, target } => self.apply_cnot(control as usize, target as usize),
            single => {
                let q = single.qubits().next().expect("gate acts on a qubit");
                self.apply_single(q, &single.matrix().expect("single-qubit gate"));
            }
        }
    }

    pub fn apply_all<'a>(&mut self, gates: impl IntoIterator<Item = &'a QGate>) {
        for &g in gates {
            self.apply(g);
        }
    }

    /// Applies the Pauli word labelled by `e`, one operator per qubit.
    pub fn apply_pauli_word(&mut self, e: Codeword) {
        for (i, op) in e.paulis().iter().enumerate() {
            if *op != gf2_core::PauliOp::I {
                self.apply_single(i + 1, &pauli_matrix(*op));
            }
        }
    }
}

impl Index<usize> for StateVector {
    type Output = C64;

    fn index(&self, i: usize) -> &C64 {
        &self.amps[i]
    }
}
