// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

//! Matrices that equal the identity up to column operations inside each pair's group.

use std::fmt;
use std::str::FromStr;

use gf2_core::{Block2, CodeMatrix, PAIRS};
use serde::{Deserialize, Serialize};

use crate::error::SynthesisError;

/// A column operation confined to one pair's two columns.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum ColumnOp {
    /// Exchange the pair's phase and amplitude columns.
    Swap { pair: u8 },
    /// Add the pair's phase column into its amplitude column.
    AddPhase { pair: u8 },
    /// Add the pair's amplitude column into its phase column.
    AddAmplitude { pair: u8 },
}

impl ColumnOp {
    pub fn pair(self) -> usize {
        match self {
            ColumnOp::Swap { pair }
            | ColumnOp::AddPhase { pair }
            | ColumnOp::AddAmplitude { pair } => pair as usize,
        }
    }

    pub fn apply(self, m: &mut CodeMatrix) {
        let p = self.pair();
        let (phase, amplitude) = (2 * p - 1, 2 * p);
        match self {
            ColumnOp::Swap { .. } => m.swap_columns(phase, amplitude),
            ColumnOp::AddPhase { .. } => m.add_column(amplitude, phase),
            ColumnOp::AddAmplitude { .. } => m.add_column(phase, amplitude),
        }
    }

    fn apply_block(self, b: Block2) -> Block2 {
        let [x, y] = b.rows();
        let f = |r: u8| match self {
            ColumnOp::Swap { .. } => ((r & 1) << 1) | (r >> 1),
            ColumnOp::AddPhase { .. } => r ^ (r >> 1),
            ColumnOp::AddAmplitude { .. } => r ^ ((r & 1) << 1),
        };
        Block2::from_rows(f(x), f(y))
    }
}

impl fmt::Display for ColumnOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.pair();
        match self {
            ColumnOp::Swap { .. } => write!(f, "SWAP {} {}", 2 * p - 1, 2 * p),
            ColumnOp::AddPhase { .. } => write!(f, "ADD {} {}", 2 * p, 2 * p - 1),
            ColumnOp::AddAmplitude { .. } => write!(f, "ADD {} {}", 2 * p - 1, 2 * p),
        }
    }
}

impl FromStr for ColumnOp {
    type Err = SynthesisError;

    /// Parses `SWAP a b` or `ADD dst src` over the two columns of one pair.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || SynthesisError::Template(format!("invalid column operation {s:?}"));
        let parts: Vec<&str> = s.split_whitespace().collect();
        let [kind, a, b] = parts.as_slice() else {
            return Err(bad());
        };
        let (a, b): (usize, usize) = (a.parse().map_err(|_| bad())?, b.parse().map_err(|_| bad())?);
        let (lo, hi) = (a.min(b), a.max(b));
        if lo == 0 || hi > 2 * PAIRS || lo % 2 == 0 || hi != lo + 1 {
            return Err(bad());
        }
        let pair = hi as u8 / 2;
        match (kind.to_ascii_uppercase().as_str(), a == hi) {
            ("SWAP", _) => Ok(ColumnOp::Swap { pair }),
            ("ADD", true) => Ok(ColumnOp::AddPhase { pair }),
            ("ADD", false) => Ok(ColumnOp::AddAmplitude { pair }),
            _ => Err(bad()),
        }
    }
}

impl From<ColumnOp> for String {
    fn from(op: ColumnOp) -> Self {
        op.to_string()
    }
}

impl TryFrom<String> for ColumnOp {
    type Error = SynthesisError;
    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

/// Shortest column-operation word taking an invertible block to `I`.
fn block_ops(b: Block2, pair: u8) -> Vec<ColumnOp> {
    let moves = [
        ColumnOp::Swap { pair },
        ColumnOp::AddPhase { pair },
        ColumnOp::AddAmplitude { pair },
    ];
    let mut frontier = vec![(b, Vec::new())];
    for _ in 0..=3 {
        if let Some((_, ops)) = frontier.iter().find(|(b, _)| *b == Block2::IDENTITY) {
            return ops.clone();
        }
        frontier = frontier
            .into_iter()
            .flat_map(|(b, ops)| {
                moves.iter().map(move |&m| {
                    let mut next = ops.clone();
                    next.push(m);
                    (m.apply_block(b), next)
                })
            })
            .collect();
    }
    unreachable!("every invertible 2x2 block is within three column operations of I")
}

/// Column operations taking a matrix akin to the identity to the identity itself.
///
/// `A` is akin to the identity when it is block diagonal over the pairs with
/// invertible diagonal blocks. Applying the returned operations in order to `A`
/// gives `I`; the identity itself needs none.
pub fn akin_normalize(a: &CodeMatrix) -> Result<(Vec<ColumnOp>, CodeMatrix), SynthesisError> {
    let mut ops = Vec::new();
    for alpha in 1..=PAIRS {
        for beta in 1..=PAIRS {
            let b = a.block(alpha, beta);
            if alpha != beta && !b.is_zero() {
                return Err(SynthesisError::NotAkin(format!(
                    "block m_{alpha}{beta} is nonzero"
                )));
            }
            if alpha == beta && !b.det() {
                return Err(SynthesisError::NotAkin(format!(
                    "block m_{alpha}{alpha} is singular"
                )));
            }
        }
        ops.extend(block_ops(a.block(alpha, alpha), alpha as u8));
    }
    let mut m = *a;
    for op in &ops {
        op.apply(&mut m);
    }
    debug_assert!(m.is_identity());
    Ok((ops, m))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_needs_no_operations() {
        let (ops, m) = akin_normalize(&CodeMatrix::identity()).unwrap();
        assert!(ops.is_empty());
        assert!(m.is_identity());
    }

    #[test]
    fn every_invertible_block_normalizes() {
        for b in Block2::all().filter(|b| b.det()) {
            let ops = block_ops(b, 1);
            assert!(ops.len() <= 3);
            assert_eq!(
                ops.iter().fold(b, |b, op| op.apply_block(b)),
                Block2::IDENTITY
            );
        }
    }

    #[test]
    fn block_action_matches_matrix_action() {
        let mut m = CodeMatrix::identity();
        m.set_block(2, 2, Block2::new(true, true, false, true));
        for op in [
            ColumnOp::Swap { pair: 2 },
            ColumnOp::AddPhase { pair: 2 },
            ColumnOp::AddAmplitude { pair: 2 },
        ] {
            let mut n = m;
            op.apply(&mut n);
            assert_eq!(n.block(2, 2), op.apply_block(m.block(2, 2)));
        }
    }

    #[test]
    fn column_op_text_round_trip() {
        for pair in 1..=5 {
            for op in [
                ColumnOp::Swap { pair },
                ColumnOp::AddPhase { pair },
                ColumnOp::AddAmplitude { pair },
            ] {
                assert_eq!(op.to_string().parse::<ColumnOp>().unwrap(), op);
            }
        }
        assert!("ADD 2 3".parse::<ColumnOp>().is_err());
    }

    #[test]
    fn rejects_off_diagonal_blocks() {
        let mut m = CodeMatrix::identity();
        m.set(1, 3, true);
        assert!(matches!(
            akin_normalize(&m),
            Err(SynthesisError::NotAkin(_))
        ));
    }
}
