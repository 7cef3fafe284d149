// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use gf2_core::{CodeMatrix, Codeword, ParseError, PAIRS};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum GateError {
    #[error("pair index {0} out of range 1..=5")]
    PairOutOfRange(usize),
    #[error("BXOR source and target are both pair {0}")]
    SameSourceTarget(usize),
}

/// One of the three bilateral operations, acting on 1-indexed pairs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum Gate {
    /// Bilateral XOR: `(x_s, y_s)(x_t, y_t) → (x_s ⊕ x_t, y_s)(x_t, y_s ⊕ y_t)`.
    Bxor { source: u8, target: u8 },
    /// Bilateral π/2 rotation: `(x, y) → (y, x)`.
    By(u8),
    /// Unilateral σx after bilateral π/2 rotation about x: `(x, y) → (x, x ⊕ y)`.
    Sxbx(u8),
}

fn check_pair(p: usize) -> Result<u8, GateError> {
    if (1..=PAIRS).contains(&p) {
        Ok(p as u8)
    } else {
        Err(GateError::PairOutOfRange(p))
    }
}

impl Gate {
    pub fn bxor(source: usize, target: usize) -> Result<Self, GateError> {
        let (s, t) = (check_pair(source)?, check_pair(target)?);
        if s == t {
            return Err(GateError::SameSourceTarget(source));
        }
        Ok(Gate::Bxor {
            source: s,
            target: t,
        })
    }

    pub fn by(pair: usize) -> Result<Self, GateError> {
        check_pair(pair).map(Gate::By)
    }

    pub fn sxbx(pair: usize) -> Result<Self, GateError> {
        check_pair(pair).map(Gate::Sxbx)
    }

    pub fn is_bxor(self) -> bool {
        matches!(self, Gate::Bxor { .. })
    }

    /// The pairs this gate touches.
    pub fn pairs(self) -> impl Iterator<Item = usize> {
        let (a, b) = match self {
            Gate::Bxor { source, target } => (source, Some(target)),
            Gate::By(p) | Gate::Sxbx(p) => (p, None),
        };
        std::iter::once(a as usize).chain(b.map(usize::from))
    }

    pub fn touches(self, pair: usize) -> bool {
        self.pairs().any(|p| p == pair)
    }

    /// Applies the gate as row operations, replacing `m` by `G·m`.
    pub fn apply_rows(self, m: &mut CodeMatrix) {
        match self {
            Gate::Bxor { source, target } => {
                let (s, t) = (source as usize, target as usize);
                m.add_row(2 * s - 1, 2 * t - 1);
                m.add_row(2 * t, 2 * s);
            }
            Gate::By(p) => {
                let p = p as usize;
                m.swap_rows(2 * p - 1, 2 * p);
            }
            Gate::Sxbx(p) => {
                let p = p as usize;
                m.add_row(2 * p, 2 * p - 1);
            }
        }
    }

    /// The gate's bit map on a single codeword.
    pub fn apply(self, e: Codeword) -> Codeword {
        match self {
            Gate::Bxor { source, target } => {
                let (s, t) = (source as usize, target as usize);
                let xs = e.bit(2 * s - 1) ^ e.bit(2 * t - 1);
                let yt = e.bit(2 * t) ^ e.bit(2 * s);
                e.with_bit(2 * s - 1, xs).with_bit(2 * t, yt)
            }
            Gate::By(p) => {
                let p = p as usize;
                let l = e.pair(p);
                e.with_bit(2 * p - 1, l.amplitude).with_bit(2 * p, l.phase)
            }
            Gate::Sxbx(p) => {
                let p = p as usize;
                let l = e.pair(p);
                e.with_bit(2 * p, l.phase ^ l.amplitude)
            }
        }
    }

    /// The 10×10 GF(2) matrix of the gate.
    pub fn matrix(self) -> CodeMatrix {
        let mut m = CodeMatrix::identity();
        self.apply_rows(&mut m);
        m
    }

    fn sort_key(self) -> (u8, u8, u8) {
        match self {
            Gate::By(p) => (0, p, 0),
            Gate::Sxbx(p) => (1, p, 0),
            Gate::Bxor { source, target } => (2, source, target),
        }
    }

    /// Every gate on five pairs: 5 `BY`, 5 `SXBX` and 20 `BXOR`, in canonical order.
    pub fn all() -> Vec<Gate> {
        let mut gates: Vec<Gate> = (1..=PAIRS as u8)
            .flat_map(|p| [Gate::By(p), Gate::Sxbx(p)])
            .chain((1..=PAIRS as u8).flat_map(|s| {
                (1..=PAIRS as u8)
                    .filter(move |&t| t != s)
                    .map(move |t| Gate::Bxor {
                        source: s,
                        target: t,
                    })
            }))
            .collect();
        gates.sort();
        gates
    }
}

/// Canonical order: `BY < SXBX < BXOR`, then by pair index.
impl Ord for Gate {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl PartialOrd for Gate {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// The gate's 10×10 GF(2) matrix.
pub fn gate_matrix(g: Gate) -> CodeMatrix {
    g.matrix()
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gate::Bxor { source, target } => write!(f, "BXOR {source} {target}"),
            Gate::By(p) => write!(f, "BY {p}"),
            Gate::Sxbx(p) => write!(f, "SXBX {p}"),
        }
    }
}

impl FromStr for Gate {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_gate(s, 1)
    }
}

impl From<Gate> for String {
    fn from(g: Gate) -> String {
        g.to_string()
    }
}

impl TryFrom<String> for Gate {
    type Error = ParseError;

    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

pub(crate) fn parse_gate(line: &str, line_no: usize) -> Result<Gate, ParseError> {
    let offset = line.len() - line.trim_start().len();
    let mut words = line.split_whitespace();
    let name = words
        .next()
        .ok_or_else(|| ParseError::new(line_no, 1, "empty gate"))?;
    let args: Vec<&str> = words.collect();
    let arity = match name {
        "BXOR" => 2,
        "BY" | "SXBX" => 1,
        other => {
            return Err(ParseError::new(
                line_no,
                offset + 1,
                format!("unknown gate {other:?}"),
            ))
        }
    };
    if args.len() != arity {
        return Err(ParseError::new(
            line_no,
            offset + 1,
            format!("{name} takes {arity} pair index(es), found {}", args.len()),
        ));
    }
    let mut pairs = Vec::with_capacity(arity);
    for a in &args {
        let column = a.as_ptr() as usize - line.as_ptr() as usize + 1;
        let p: usize = a
            .parse()
            .map_err(|_| ParseError::new(line_no, column, format!("bad pair index {a:?}")))?;
        pairs.push(p);
    }
    let gate = match name {
        "BXOR" => Gate::bxor(pairs[0], pairs[1]),
        "BY" => Gate::by(pairs[0]),
        _ => Gate::sxbx(pairs[0]),
    };
    gate.map_err(|e| ParseError::new(line_no, offset + 1, e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cw(s: &str) -> Codeword {
        s.parse().unwrap()
    }

    #[test]
    fn bit_maps() {
        assert_eq!(
            Gate::By(1).apply(cw("10 00 00 00 00")),
            cw("01 00 00 00 00")
        );
        assert_eq!(
            Gate::Sxbx(1).apply(cw("11 00 00 00 00")),
            cw("10 00 00 00 00")
        );
        let g = Gate::bxor(1, 2).unwrap();
        assert_eq!(g.apply(cw("01 00 00 00 00")), cw("01 01 00 00 00"));
        assert_eq!(g.apply(cw("00 10 00 00 00")), cw("10 10 00 00 00"));
    }

    #[test]
    fn matrix_agrees_with_bit_map() {
        for g in Gate::all() {
            let m = g.matrix();
            for e in Codeword::all() {
                assert_eq!(m.apply(e), g.apply(e), "{g}");
            }
        }
    }

    #[test]
    fn canonical_order() {
        let all = Gate::all();
        assert_eq!(all.len(), 30);
        assert_eq!(all[0], Gate::By(1));
        assert_eq!(all[5], Gate::Sxbx(1));
        assert_eq!(
            all[10],
            Gate::Bxor {
                source: 1,
                target: 2
            }
        );
        assert!(Gate::Sxbx(5) < Gate::bxor(1, 2).unwrap());
    }

    #[test]
    fn construction_errors() {
        assert_eq!(Gate::bxor(2, 2), Err(GateError::SameSourceTarget(2)));
        assert_eq!(Gate::by(6), Err(GateError::PairOutOfRange(6)));
        assert_eq!(Gate::sxbx(0), Err(GateError::PairOutOfRange(0)));
    }

    #[test]
    fn text() {
        for g in Gate::all() {
            assert_eq!(g.to_string().parse::<Gate>().unwrap(), g);
        }
        assert!("BXOR 1".parse::<Gate>().is_err());
        assert!("CNOT 1 2".parse::<Gate>().is_err());
        let err = "BXOR 1 x".parse::<Gate>().unwrap_err();
        assert_eq!(err.column, 8);
        assert!("BXOR 3 3".parse::<Gate>().is_err());
    }
}
