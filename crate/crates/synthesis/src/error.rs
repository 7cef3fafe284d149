// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

use gf2_core::ParseError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SynthesisError {
    #[error("pair index {0} out of range 1..=5")]
    PairOutOfRange(usize),
    #[error("pairs {0} and {1} must differ")]
    SamePair(usize, usize),
    #[error("det(m_{{{row}{col}}}) must be {expected}")]
    Determinant {
        row: usize,
        col: usize,
        expected: u8,
    },
    #[error("block elimination target unreachable")]
    Unreachable,
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("invalid template: {0}")]
    Template(String),
    #[error("unknown {0} does not exist in the template")]
    UnknownName(String),
    #[error("stage {stage} (pivot pair {pivot}): {reason}")]
    Stage {
        stage: usize,
        pivot: usize,
        reason: String,
    },
    #[error("matrix is not akin to the identity: {0}")]
    NotAkin(String),
}
