// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

//! Ten-bit codewords, four-bit measurement words and the sixteen syndromes.

use std::fmt;
use std::ops::{BitXor, BitXorAssign};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::ParseError;
use crate::label::{PairLabel, PauliOp};

/// Number of Bell pairs (qubits) in a block.
pub const PAIRS: usize = 5;
/// Number of bits in a codeword.
pub const BITS: usize = 2 * PAIRS;
/// Number of single-pair error syndromes, including the error-free one.
pub const SYNDROMES: usize = 16;

const MASK: u16 = (1 << BITS) - 1;

/// Bit mask of 1-indexed position `pos`, leftmost position first.
#[inline]
pub(crate) const fn position_mask(pos: usize) -> u16 {
    1 << (BITS - pos)
}

/// Five pair labels packed into ten bits.
///
/// Position `2k-1` holds the phase bit of pair `k` and position `2k` its
/// amplitude bit (1-indexed, leftmost first). Internally position `p` is bit
/// `10 - p` of the packed integer, so the binary rendering reads left to right.
#[derive(
    Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize,
)]
#[serde(into = "String", try_from = "String")]
pub struct Codeword(u16);

impl Codeword {
    pub const ZERO: Codeword = Codeword(0);

    /// Builds a codeword from its packed form; bits above the tenth are dropped.
    pub const fn from_bits(bits: u16) -> Self {
        Self(bits & MASK)
    }

    pub const fn bits(self) -> u16 {
        self.0
    }

    /// Codeword with a single bit at 1-indexed `pos`.
    pub fn unit(pos: usize) -> Self {
        assert!((1..=BITS).contains(&pos), "bit position {pos} out of range");
        Self(position_mask(pos))
    }

    pub fn from_pairs(pairs: [PairLabel; PAIRS]) -> Self {
        pairs
            .iter()
            .enumerate()
            .fold(Self::ZERO, |acc, (i, &l)| acc.with_pair(i + 1, l))
    }

    /// Codeword labelling one Pauli operator per qubit.
    pub fn from_paulis(ops: [PauliOp; PAIRS]) -> Self {
        Self::from_pairs(ops.map(PairLabel::from))
    }

    pub fn bit(self, pos: usize) -> bool {
        assert!((1..=BITS).contains(&pos), "bit position {pos} out of range");
        self.0 & position_mask(pos) != 0
    }

    pub fn with_bit(self, pos: usize, value: bool) -> Self {
        assert!((1..=BITS).contains(&pos), "bit position {pos} out of range");
        let m = position_mask(pos);
        Self(if value { self.0 | m } else { self.0 & !m })
    }

    /// Label of pair `k` (1-indexed).
    pub fn pair(self, k: usize) -> PairLabel {
        PairLabel::new(self.bit(2 * k - 1), self.bit(2 * k))
    }

    pub fn with_pair(self, k: usize, label: PairLabel) -> Self {
        self.with_bit(2 * k - 1, label.phase)
            .with_bit(2 * k, label.amplitude)
    }

    pub fn pairs(self) -> [PairLabel; PAIRS] {
        std::array::from_fn(|i| self.pair(i + 1))
    }

    pub fn paulis(self) -> [PauliOp; PAIRS] {
        self.pairs().map(PauliOp::from)
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    pub fn weight(self) -> u32 {
        self.0.count_ones()
    }

    /// All 1024 codewords in increasing packed order.
    pub fn all() -> impl Iterator<Item = Codeword> {
        (0..=MASK).map(Codeword)
    }
}

impl BitXor for Codeword {
    type Output = Codeword;

    fn bitxor(self, rhs: Codeword) -> Codeword {
        Codeword(self.0 ^ rhs.0)
    }
}

impl BitXorAssign for Codeword {
    fn bitxor_assign(&mut self, rhs: Codeword) {
        self.0 ^= rhs.0;
    }
}

/// Renders as five space-separated pairs, e.g. `11 00 00 01 01`.
impl fmt::Display for Codeword {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for k in 1..=PAIRS {
            if k > 1 {
                f.write_str(" ")?;
            }
            write!(f, "{}", self.pair(k))?;
        }
        Ok(())
    }
}

/// Parses ten `0`/`1` characters; whitespace between them is ignored.
impl FromStr for Codeword {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_bits(s, BITS, 1).map(Codeword)
    }
}

impl From<Codeword> for String {
    fn from(c: Codeword) -> String {
        c.to_string()
    }
}

impl TryFrom<String> for Codeword {
    type Error = ParseError;

    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

/// Reads exactly `width` binary digits from `s`, skipping whitespace.
pub(crate) fn parse_bits(s: &str, width: usize, line: usize) -> Result<u16, ParseError> {
    let mut value = 0u16;
    let mut count = 0;
    for (i, ch) in s.chars().enumerate() {
        match ch {
            '0' | '1' => {
                if count == width {
                    return Err(ParseError::new(
                        line,
                        i + 1,
                        format!("expected {width} bits, found more"),
                    ));
                }
                value = (value << 1) | (ch == '1') as u16;
                count += 1;
            }
            c if c.is_whitespace() => {}
            c => {
                return Err(ParseError::new(
                    line,
                    i + 1,
                    format!("unexpected character {c:?}"),
                ))
            }
        }
    }
    if count != width {
        return Err(ParseError::new(
            line,
            s.chars().count() + 1,
            format!("expected {width} bits, found {count}"),
        ));
    }
    Ok(value)
}

/// The four amplitude bits of pairs 2 to 5 read after decoding.
#[derive(
    Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize,
)]
#[serde(into = "String", try_from = "String")]
pub struct MeasurementWord(u8);

impl MeasurementWord {
    /// Builds a word from its packed form, pair 2 in the most significant of four bits.
    pub const fn from_bits(bits: u8) -> Self {
        Self(bits & 0b1111)
    }

    pub const fn bits(self) -> u8 {
        self.0
    }

    /// Bit for pair `k` in `2..=5`.
    pub fn bit(self, k: usize) -> bool {
        assert!((2..=PAIRS).contains(&k), "measured pair {k} out of range");
        self.0 & (1 << (PAIRS - k)) != 0
    }

    pub fn all() -> impl Iterator<Item = MeasurementWord> {
        (0..16).map(MeasurementWord)
    }
}

impl fmt::Display for MeasurementWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:04b}", self.0)
    }
}

impl FromStr for MeasurementWord {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_bits(s, 4, 1).map(|b| MeasurementWord(b as u8))
    }
}

impl From<MeasurementWord> for String {
    fn from(v: MeasurementWord) -> String {
        v.to_string()
    }
}

impl TryFrom<String> for MeasurementWord {
    type Error = ParseError;

    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

/// Error syndrome `i` in table order.
///
/// Index 0 is error-free; for pair `k`, index `3k-2` flips its phase bit,
/// `3k-1` its amplitude bit and `3k` both.
pub fn syndrome(i: usize) -> Codeword {
    assert!(i < SYNDROMES, "syndrome index {i} out of range");
    if i == 0 {
        return Codeword::ZERO;
    }
    let k = i.div_ceil(3);
    let label = match i % 3 {
        1 => PairLabel::new(true, false),
        2 => PairLabel::new(false, true),
        _ => PairLabel::new(true, true),
    };
    Codeword::ZERO.with_pair(k, label)
}

/// The sixteen syndromes `e^(0)..e^(15)`.
pub fn enumerate_syndromes() -> [Codeword; SYNDROMES] {
    std::array::from_fn(syndrome)
}

/// Pair (qubit) hit by syndrome `i`, or `None` for the error-free syndrome.
pub fn syndrome_pair(i: usize) -> Option<usize> {
    assert!(i < SYNDROMES, "syndrome index {i} out of range");
    (i > 0).then(|| i.div_ceil(3))
}

/// Reads the amplitude bits of pairs 2 to 5 (positions 4, 6, 8, 10).
pub fn extract_measurement(w: Codeword) -> MeasurementWord {
    let bits = (2..=PAIRS).fold(0u8, |acc, k| (acc << 1) | w.bit(2 * k) as u8);
    MeasurementWord(bits)
}

/// Pauli whose label equals pair 1 of `w`; it undoes the residual error on the data pair.
pub fn extract_recovery(w: Codeword) -> PauliOp {
    w.pair(1).into()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cw(s: &str) -> Codeword {
        s.parse().unwrap()
    }

    #[test]
    fn positions() {
        assert_eq!(Codeword::unit(1).bits(), 0b10_0000_0000);
        assert_eq!(Codeword::unit(10).bits(), 1);
        assert_eq!(cw("01 00 00 00 00").pair(1), PairLabel::new(false, true));
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(cw("1100000101"), cw("11 00 00 01 01"));
        assert_eq!(cw("1100000101").to_string(), "11 00 00 01 01");
        assert!("110000010".parse::<Codeword>().is_err());
        assert!("11000001011".parse::<Codeword>().is_err());
        assert!("11000001x1".parse::<Codeword>().is_err());
    }

    #[test]
    fn syndrome_table_order() {
        assert_eq!(syndrome(0), Codeword::ZERO);
        assert_eq!(syndrome(7), cw("00 00 10 00 00"));
        assert_eq!(syndrome(14), cw("00 00 00 00 01"));
        assert_eq!(syndrome(3), syndrome(1) ^ syndrome(2));
        for k in 1..=PAIRS {
            assert_eq!(syndrome(3 * k), syndrome(3 * k - 2) ^ syndrome(3 * k - 1));
            assert_eq!(syndrome_pair(3 * k - 1), Some(k));
        }
        assert_eq!(syndrome_pair(0), None);
    }

    #[test]
    fn syndromes_are_distinct_single_pair_patterns() {
        let all = enumerate_syndromes();
        for (i, a) in all.iter().enumerate() {
            for b in &all[i + 1..] {
                assert_ne!(a, b);
            }
            let touched = a
                .pairs()
                .iter()
                .filter(|l| **l != PairLabel::IDENTITY)
                .count();
            assert_eq!(touched, usize::from(i > 0));
        }
    }

    #[test]
    fn measurement_and_recovery() {
        assert_eq!(
            extract_measurement(cw("00 11 01 01 00")).to_string(),
            "1110"
        );
        assert_eq!(extract_measurement(Codeword::ZERO).to_string(), "0000");
        assert_eq!(
            extract_measurement(cw("11 01 11 01 01")).to_string(),
            "1111"
        );
        assert_eq!(extract_recovery(cw("11 00 00 01 01")), PauliOp::Y);
        assert_eq!(extract_recovery(cw("01 11 01 00 10")), PauliOp::X);
        assert_eq!(extract_recovery(cw("00 11 11 11 11")), PauliOp::I);
        let v = extract_measurement(cw("00 01 00 00 01"));
        assert!(v.bit(2) && !v.bit(3) && !v.bit(4) && v.bit(5));
    }
}
