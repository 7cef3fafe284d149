// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

use std::fmt;
use std::str::FromStr;

use gf2_core::{CodeMatrix, Codeword, ParseError};
use serde::{Deserialize, Serialize};

use crate::gate::{parse_gate, Gate};

/// An ordered gate list; the first gate acts first on codewords.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Circuit {
    gates: Vec<Gate>,
}

impl Circuit {
    pub fn new(gates: Vec<Gate>) -> Self {
        Self { gates }
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn into_gates(self) -> Vec<Gate> {
        self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn push(&mut self, g: Gate) {
        self.gates.push(g);
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Gate> {
        self.gates.iter()
    }

    pub fn bxor_count(&self) -> usize {
        self.gates.iter().filter(|g| g.is_bxor()).count()
    }

    /// Product `gₙ·…·g₁` of the gate matrices.
    pub fn matrix(&self) -> CodeMatrix {
        let mut m = CodeMatrix::identity();
        self.apply_rows(&mut m);
        m
    }

    /// Replaces `m` by `circuit_matrix(self)·m`.
    pub fn apply_rows(&self, m: &mut CodeMatrix) {
        for g in &self.gates {
            g.apply_rows(m);
        }
    }

    /// Runs a codeword through the gates in order.
    pub fn apply(&self, e: Codeword) -> Codeword {
        self.gates.iter().fold(e, |acc, g| g.apply(acc))
    }

    /// The same gates in reverse order.
    pub fn inverse(&self) -> Circuit {
        Circuit {
            gates: self.gates.iter().rev().copied().collect(),
        }
    }

    /// Concatenation, `self` first.
    pub fn then(&self, other: &Circuit) -> Circuit {
        Circuit {
            gates: self.gates.iter().chain(&other.gates).copied().collect(),
        }
    }
}

/// Matrix of `c` with its first gate as the rightmost factor.
pub fn circuit_matrix(c: &Circuit) -> CodeMatrix {
    c.matrix()
}

/// Reversed gate list; every gate is its own inverse.
pub fn invert_circuit(c: &Circuit) -> Circuit {
    c.inverse()
}

impl From<Vec<Gate>> for Circuit {
    fn from(gates: Vec<Gate>) -> Self {
        Self { gates }
    }
}

impl FromIterator<Gate> for Circuit {
    fn from_iter<I: IntoIterator<Item = Gate>>(iter: I) -> Self {
        Self {
            gates: iter.into_iter().collect(),
        }
    }
}

impl Extend<Gate> for Circuit {
    fn extend<I: IntoIterator<Item = Gate>>(&mut self, iter: I) {
        self.gates.extend(iter);
    }
}

impl IntoIterator for Circuit {
    type Item = Gate;
    type IntoIter = std::vec::IntoIter<Gate>;

    fn into_iter(self) -> Self::IntoIter {
        self.gates.into_iter()
    }
}

impl<'a> IntoIterator for &'a Circuit {
    type Item = &'a Gate;
    type IntoIter = std::slice::Iter<'a, Gate>;

    fn into_iter(self) -> Self::IntoIter {
        self.gates.iter()
    }
}

/// Circuit text format: one gate per line.
impl fmt::Display for Circuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for g in &self.gates {
            writeln!(f, "{g}")?;
        }
        Ok(())
    }
}

/// Parses one gate per line; blank lines and `#` comments are skipped.
impl FromStr for Circuit {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut gates = Vec::new();
        for (n, line) in s.lines().enumerate() {
            let body = line.split('#').next().unwrap_or("");
            if body.trim().is_empty() {
                continue;
            }
            gates.push(parse_gate(body, n + 1)?);
        }
        Ok(Self { gates })
    }
}
