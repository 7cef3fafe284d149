// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

//! Syndrome tables and code-matrix validity.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::codeword::{
    enumerate_syndromes, extract_measurement, extract_recovery, Codeword, MeasurementWord, PAIRS,
    SYNDROMES,
};
use crate::label::PauliOp;
use crate::matrix::CodeMatrix;

/// One row of the syndrome table: `e`, `w = M·e`, `v` and the recovery Pauli.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SyndromeRow {
    pub index: usize,
    pub syndrome: Codeword,
    pub image: Codeword,
    pub measurement: MeasurementWord,
    pub recovery: PauliOp,
}

impl fmt::Display for SyndromeRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:>2}  {}  {}  {}  {}",
            self.index,
            self.syndrome,
            self.image,
            self.measurement,
            self.recovery.symbol()
        )
    }
}

/// The sixteen rows `(i, e, w, v, U)` induced by `m`.
pub fn syndrome_table(m: &CodeMatrix) -> Vec<SyndromeRow> {
    enumerate_syndromes()
        .iter()
        .enumerate()
        .map(|(index, &e)| {
            let w = m.apply(e);
            SyndromeRow {
                index,
                syndrome: e,
                image: w,
                measurement: extract_measurement(w),
                recovery: extract_recovery(w),
            }
        })
        .collect()
}

/// Two syndromes that yield the same measurement word.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Collision {
    pub first: usize,
    pub second: usize,
    pub measurement: MeasurementWord,
}

impl fmt::Display for Collision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "syndromes {} and {} both measure {}",
            self.first, self.second, self.measurement
        )
    }
}

/// Outcome of [`validate_code_matrix`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidityReport {
    pub rows: Vec<SyndromeRow>,
    pub collisions: Vec<Collision>,
    pub rank: usize,
    pub group_relations_hold: bool,
}

impl ValidityReport {
    pub fn is_valid(&self) -> bool {
        self.collisions.is_empty() && self.rank == 10 && self.group_relations_hold
    }
}

/// Checks that all sixteen measurement words are distinct and that `m` has full rank.
pub fn validate_code_matrix(m: &CodeMatrix) -> ValidityReport {
    let rows = syndrome_table(m);
    let mut collisions = Vec::new();
    for (i, a) in rows.iter().enumerate() {
        for b in &rows[i + 1..] {
            if a.measurement == b.measurement {
                collisions.push(Collision {
                    first: a.index,
                    second: b.index,
                    measurement: a.measurement,
                });
            }
        }
    }
    let group_relations_hold = (1..=PAIRS).all(|k| {
        let (x, y, z) = (&rows[3 * k - 2], &rows[3 * k - 1], &rows[3 * k]);
        x.image ^ y.image == z.image
            && (x.measurement.bits() ^ y.measurement.bits()) == z.measurement.bits()
    }) && rows[0].image.is_zero();
    debug_assert_eq!(rows.len(), SYNDROMES);
    ValidityReport {
        rows,
        collisions,
        rank: m.rank(),
        group_relations_hold,
    }
}
