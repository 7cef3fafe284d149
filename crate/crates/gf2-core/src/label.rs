// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

use std::fmt;

use serde::{Deserialize, Serialize};

/// Two-bit label of one Bell pair, or equivalently of a single-qubit Pauli.
///
/// `(0, 0)` is the reference pair (Φ⁺) and the identity Pauli.
#[derive(
    Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize,
)]
pub struct PairLabel {
    /// High bit, `x`.
    pub phase: bool,
    /// Low bit, `y`.
    pub amplitude: bool,
}

impl PairLabel {
    pub const IDENTITY: PairLabel = PairLabel::new(false, false);

    pub const fn new(phase: bool, amplitude: bool) -> Self {
        Self { phase, amplitude }
    }

    /// Packs the label as `phase << 1 | amplitude`.
    pub const fn bits(self) -> u8 {
        ((self.phase as u8) << 1) | self.amplitude as u8
    }

    /// Inverse of [`PairLabel::bits`]; only the two low bits are read.
    pub const fn from_bits(bits: u8) -> Self {
        Self::new(bits & 0b10 != 0, bits & 0b01 != 0)
    }

    pub fn pauli(self) -> PauliOp {
        PauliOp::from(self)
    }
}

impl fmt::Display for PairLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.phase as u8, self.amplitude as u8)
    }
}

/// Single-qubit Pauli operator, up to phase.
#[derive(
    Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize,
)]
pub enum PauliOp {
    #[default]
    I,
    X,
    Z,
    Y,
}

impl PauliOp {
    pub const ALL: [PauliOp; 4] = [PauliOp::I, PauliOp::X, PauliOp::Z, PauliOp::Y];

    pub fn label(self) -> PairLabel {
        PairLabel::from(self)
    }

    /// Conventional symbol, `I`, `σx`, `σy` or `σz`.
    pub fn symbol(self) -> &'static str {
        match self {
            PauliOp::I => "I",
            PauliOp::X => "σx",
            PauliOp::Z => "σz",
            PauliOp::Y => "σy",
        }
    }

    /// Whether the operator has an `X` component (flips the computational basis).
    pub fn has_x(self) -> bool {
        matches!(self, PauliOp::X | PauliOp::Y)
    }

    /// Whether the operator has a `Z` component.
    pub fn has_z(self) -> bool {
        matches!(self, PauliOp::Z | PauliOp::Y)
    }
}

impl fmt::Display for PauliOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            PauliOp::I => "I",
            PauliOp::X => "X",
            PauliOp::Z => "Z",
            PauliOp::Y => "Y",
        };
        f.write_str(s)
    }
}

impl From<PairLabel> for PauliOp {
    fn from(label: PairLabel) -> Self {
        match (label.phase, label.amplitude) {
            (false, false) => PauliOp::I,
            (false, true) => PauliOp::X,
            (true, false) => PauliOp::Z,
            (true, true) => PauliOp::Y,
        }
    }
}

impl From<PauliOp> for PairLabel {
    fn from(op: PauliOp) -> Self {
        PairLabel::new(op.has_z(), op.has_x())
    }
}

/// Maps a pair label to its Pauli operator.
pub fn label_to_pauli(label: PairLabel) -> PauliOp {
    label.into()
}

/// Maps a Pauli operator back to its pair label.
pub fn pauli_to_label(op: PauliOp) -> PairLabel {
    op.into()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coding_table() {
        assert_eq!(label_to_pauli(PairLabel::new(false, false)), PauliOp::I);
        assert_eq!(label_to_pauli(PairLabel::new(false, true)), PauliOp::X);
        assert_eq!(label_to_pauli(PairLabel::new(true, false)), PauliOp::Z);
        assert_eq!(label_to_pauli(PairLabel::new(true, true)), PauliOp::Y);
    }

    #[test]
    fn round_trip() {
        for bits in 0..4 {
            let label = PairLabel::from_bits(bits);
            assert_eq!(label.bits(), bits);
            assert_eq!(pauli_to_label(label_to_pauli(label)), label);
        }
        for op in PauliOp::ALL {
            assert_eq!(label_to_pauli(pauli_to_label(op)), op);
        }
    }

    #[test]
    fn display() {
        assert_eq!(PairLabel::new(true, false).to_string(), "10");
        assert_eq!(PauliOp::Y.symbol(), "σy");
    }
}
