// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

//! Exact five-qubit verification of bit-level decoder circuits.
//!
//! A decoder circuit is lifted gate by gate (`BXOR → CNOT`, `BY → H`,
//! `SXBX → Q`). [`run_qecc`] encodes a data qubit with the inverse circuit,
//! applies one of the sixteen single-qubit Pauli errors, decodes, reads the
//! four ancillas and applies the recovery Pauli to the data qubit.
//! [`pauli_propagate`] is an independent symbolic check of the same map.

pub mod pauli;
pub mod qgate;
pub mod recovery;
pub mod state;

use gate_algebra::Circuit;
use gf2_core::{syndrome, MeasurementWord, PauliOp, SYNDROMES};
use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use pauli::{pauli_propagate, PauliFrame};
pub use qgate::{lift_circuit, lift_encoder, lift_gate, LiftCounter, QGate};
pub use recovery::RecoveryTable;
pub use state::StateVector;

/// Probability below which an ancilla readout counts as non-deterministic.
pub const DETERMINISM_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum QeccError {
    #[error("input amplitudes are not normalized (|α|²+|β|² = {0})")]
    Unnormalized(f64),
    #[error("syndrome index {0} out of range 0..16")]
    SyndromeOutOfRange(usize),
    #[error("invalid code matrix: {collisions} measurement collisions")]
    InvalidCode { collisions: usize },
    #[error("invalid code/circuit pair: ancilla readout has probability {probability}")]
    NonDeterministic { probability: f64 },
}

/// Result of one encode, error, decode, measure and recover cycle.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct QeccOutcome {
    #[serde(rename = "v")]
    pub measurement: MeasurementWord,
    pub recovery: PauliOp,
    pub fidelity: f64,
    pub ancilla_probability: f64,
}

/// Simulates syndrome `index` on the data state `α|0⟩ + β|1⟩`.
pub fn run_qecc(
    decoder: &Circuit,
    index: usize,
    alpha: C64,
    beta: C64,
) -> Result<QeccOutcome, QeccError> {
    let table = RecoveryTable::from_matrix(&decoder.matrix())?;
    run_qecc_with(decoder, &table, index, alpha, beta)
}

/// [`run_qecc`] with a precomputed recovery table.
pub fn run_qecc_with(
    decoder: &Circuit,
    table: &RecoveryTable,
    index: usize,
    alpha: C64,
    beta: C64,
) -> Result<QeccOutcome, QeccError> {
    if index >= SYNDROMES {
        return Err(QeccError::SyndromeOutOfRange(index));
    }
    let norm = alpha.norm_sqr() + beta.norm_sqr();
    if (norm - 1.0).abs() > 1e-10 {
        return Err(QeccError::Unnormalized(norm));
    }

    let mut state = StateVector::with_data(alpha, beta);
    state.apply_all(&lift_encoder(decoder));
    state.apply_pauli_word(syndrome(index));
    state.apply_all(&lift_circuit(decoder));

    // Marginal distribution of qubits 2..5.
    let amps = state.amplitudes();
    let (best, probability) = (0..16)
        .map(|s| (s, amps[s].norm_sqr() + amps[16 | s].norm_sqr()))
        .fold((0, f64::MIN), |acc, x| if x.1 > acc.1 { x } else { acc });
    if probability < 1.0 - DETERMINISM_TOLERANCE {
        return Err(QeccError::NonDeterministic { probability });
    }
    let measurement = MeasurementWord::from_bits(best as u8);
    let recovery = table.get(measurement);

    let scale = probability.sqrt();
    let data = StateVector::with_data(amps[best] / scale, amps[16 | best] / scale);
    let mut corrected = data;
    if recovery != PauliOp::I {
        corrected.apply(QGate::Pauli(1, recovery));
    }
    let fidelity = StateVector::with_data(alpha, beta).overlap(&corrected);
    Ok(QeccOutcome {
        measurement,
        recovery,
        fidelity,
        ancilla_probability: probability,
    })
}
