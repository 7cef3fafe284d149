// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

use gf2_core::{validate_code_matrix, CodeMatrix, MeasurementWord, PauliOp};
use serde::{Deserialize, Serialize};

use crate::QeccError;

/// Measurement word to corrective Pauli on the data qubit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecoveryTable {
    entries: [PauliOp; 16],
}

impl RecoveryTable {
    /// Inverts `v^(i) → U^(i)` over the sixteen syndromes of a valid matrix.
    pub fn from_matrix(m: &CodeMatrix) -> Result<Self, QeccError> {
        let report = validate_code_matrix(m);
        if !report.is_valid() {
            return Err(QeccError::InvalidCode {
                collisions: report.collisions.len(),
            });
        }
        let mut entries = [PauliOp::I; 16];
        for row in &report.rows {
            entries[row.measurement.bits() as usize] = row.recovery;
        }
        Ok(Self { entries })
    }

    pub fn get(&self, v: MeasurementWord) -> PauliOp {
        self.entries[v.bits() as usize]
    }

    pub fn iter(&self) -> impl Iterator<Item = (MeasurementWord, PauliOp)> + '_ {
        MeasurementWord::all().map(|v| (v, self.get(v)))
    }
}
