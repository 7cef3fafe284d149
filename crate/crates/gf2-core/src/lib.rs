// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

//! Bit-level algebra of five-pair error syndromes.
//!
//! A Bell pair (or a single-qubit Pauli) is labelled by two bits, a phase bit
//! and an amplitude bit. Five labels form a ten-bit [`Codeword`]. A decoder is
//! described by a [`CodeMatrix`] `M` over GF(2) with `w = M·e`: the syndrome `e`
//! of a single-pair error is mapped to a codeword `w` whose amplitude bits on
//! pairs 2 to 5 form the [`MeasurementWord`] and whose first pair names the
//! recovery Pauli.

pub mod codeword;
pub mod error;
pub mod label;
pub mod matrix;
pub mod validity;

pub use codeword::{
    enumerate_syndromes, extract_measurement, extract_recovery, syndrome, syndrome_pair, Codeword,
    MeasurementWord, BITS, PAIRS, SYNDROMES,
};
pub use error::ParseError;
pub use label::{label_to_pauli, pauli_to_label, PairLabel, PauliOp};
pub use matrix::{apply_matrix, Block2, CodeMatrix};
pub use validity::{syndrome_table, validate_code_matrix, Collision, SyndromeRow, ValidityReport};
