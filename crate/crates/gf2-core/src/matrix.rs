// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

//! Dense 10×10 matrices over GF(2), one packed `u16` per row.

use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::codeword::{parse_bits, position_mask, Codeword, BITS, PAIRS};
use crate::error::ParseError;

/// A 10×10 GF(2) matrix mapping syndromes to decoded codewords.
///
/// Rows and columns are 1-indexed in the public API. Row `r` uses the same
/// packing as [`Codeword`], so column `c` is bit `10 - c`. Column `c` is the
/// image of the unit syndrome with bit `c` set.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "Vec<String>", try_from = "Vec<String>")]
pub struct CodeMatrix {
    rows: [u16; BITS],
}

impl CodeMatrix {
    pub const ZERO: CodeMatrix = CodeMatrix { rows: [0; BITS] };

    pub fn identity() -> Self {
        Self {
            rows: std::array::from_fn(|i| position_mask(i + 1)),
        }
    }

    /// Builds a matrix from packed rows; bits above the tenth are dropped.
    pub fn from_rows(rows: [u16; BITS]) -> Self {
        Self {
            rows: rows.map(|r| Codeword::from_bits(r).bits()),
        }
    }

    /// Builds a matrix whose column `c` is `cols[c - 1]`.
    pub fn from_columns(cols: [Codeword; BITS]) -> Self {
        let mut m = Self::ZERO;
        for (j, col) in cols.iter().enumerate() {
            for r in 1..=BITS {
                m.set(r, j + 1, col.bit(r));
            }
        }
        m
    }

    pub fn rows(&self) -> &[u16; BITS] {
        &self.rows
    }

    pub fn row(&self, r: usize) -> Codeword {
        Codeword::from_bits(self.rows[r - 1])
    }

    pub fn column(&self, c: usize) -> Codeword {
        let m = position_mask(c);
        Codeword::from_bits(self.rows.iter().enumerate().fold(0, |acc, (i, &row)| {
            if row & m != 0 {
                acc | position_mask(i + 1)
            } else {
                acc
            }
        }))
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.rows[r - 1] & position_mask(c) != 0
    }

    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        let m = position_mask(c);
        if value {
            self.rows[r - 1] |= m;
        } else {
            self.rows[r - 1] &= !m;
        }
    }

    /// Adds row `src` into row `dst`.
    pub fn add_row(&mut self, dst: usize, src: usize) {
        self.rows[dst - 1] ^= self.rows[src - 1];
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        self.rows.swap(a - 1, b - 1);
    }

    /// Adds column `src` into column `dst`.
    pub fn add_column(&mut self, dst: usize, src: usize) {
        let (d, s) = (position_mask(dst), position_mask(src));
        for row in &mut self.rows {
            if *row & s != 0 {
                *row ^= d;
            }
        }
    }

    pub fn swap_columns(&mut self, a: usize, b: usize) {
        let (ma, mb) = (position_mask(a), position_mask(b));
        for row in &mut self.rows {
            let (ba, bb) = (*row & ma != 0, *row & mb != 0);
            if ba != bb {
                *row ^= ma | mb;
            }
        }
    }

    /// Matrix-vector product `M·e` over GF(2).
    pub fn apply(&self, e: Codeword) -> Codeword {
        let bits = self.rows.iter().enumerate().fold(0u16, |acc, (i, &row)| {
            if (row & e.bits()).count_ones() & 1 == 1 {
                acc | position_mask(i + 1)
            } else {
                acc
            }
        });
        Codeword::from_bits(bits)
    }

    pub fn transpose(&self) -> Self {
        Self {
            rows: std::array::from_fn(|i| self.column(i + 1).bits()),
        }
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity()
    }

    /// Rank over GF(2).
    pub fn rank(&self) -> usize {
        let mut rows = self.rows;
        let mut rank = 0;
        for c in 1..=BITS {
            let m = position_mask(c);
            let Some(p) = (rank..BITS).find(|&i| rows[i] & m != 0) else {
                continue;
            };
            rows.swap(rank, p);
            let pivot = rows[rank];
            for (i, row) in rows.iter_mut().enumerate() {
                if i != rank && *row & m != 0 {
                    *row ^= pivot;
                }
            }
            rank += 1;
        }
        rank
    }

    /// Gauss-Jordan inverse, `None` when singular.
    pub fn inverse(&self) -> Option<Self> {
        let mut a = self.rows;
        let mut inv = Self::identity().rows;
        for c in 1..=BITS {
            let m = position_mask(c);
            let p = (c - 1..BITS).find(|&i| a[i] & m != 0)?;
            a.swap(c - 1, p);
            inv.swap(c - 1, p);
            for i in 0..BITS {
                if i != c - 1 && a[i] & m != 0 {
                    a[i] ^= a[c - 1];
                    inv[i] ^= inv[c - 1];
                }
            }
        }
        Some(Self { rows: inv })
    }

    /// The 2×2 block at pair-row `alpha`, pair-column `beta`.
    pub fn block(&self, alpha: usize, beta: usize) -> Block2 {
        assert!((1..=PAIRS).contains(&alpha) && (1..=PAIRS).contains(&beta));
        let shift = BITS - 2 * beta;
        let top = (self.rows[2 * alpha - 2] >> shift) as u8 & 0b11;
        let bottom = (self.rows[2 * alpha - 1] >> shift) as u8 & 0b11;
        Block2::from_rows(top, bottom)
    }

    pub fn set_block(&mut self, alpha: usize, beta: usize, block: Block2) {
        let shift = BITS - 2 * beta;
        let mask = !(0b11u16 << shift);
        let [top, bottom] = block.rows();
        let (i, j) = (2 * alpha - 2, 2 * alpha - 1);
        self.rows[i] = (self.rows[i] & mask) | ((top as u16) << shift);
        self.rows[j] = (self.rows[j] & mask) | ((bottom as u16) << shift);
    }

    /// Whether `M` preserves the symplectic form pairing each phase bit with its amplitude bit.
    pub fn is_symplectic(&self) -> bool {
        // Mᵀ Ω M = Ω with Ω the block-diagonal swap.
        let omega = |a: Codeword, b: Codeword| -> bool {
            (1..=PAIRS).fold(false, |acc, k| {
                let (x, y) = (a.pair(k), b.pair(k));
                acc ^ ((x.phase & y.amplitude) ^ (x.amplitude & y.phase))
            })
        };
        (1..=BITS).all(|i| {
            (1..=BITS).all(|j| {
                let expected = i != j && i.div_ceil(2) == j.div_ceil(2);
                omega(self.column(i), self.column(j)) == expected
            })
        })
    }
}

impl Default for CodeMatrix {
    fn default() -> Self {
        Self::identity()
    }
}

impl Mul for CodeMatrix {
    type Output = CodeMatrix;

    #[allow(clippy::op_ref)]
    fn mul(self, rhs: CodeMatrix) -> CodeMatrix {
        &self * &rhs
    }
}

impl Mul for &CodeMatrix {
    type Output = CodeMatrix;

    fn mul(self, rhs: &CodeMatrix) -> CodeMatrix {
        CodeMatrix {
            rows: std::array::from_fn(|i| {
                (0..BITS).fold(0u16, |acc, k| {
                    if self.rows[i] & position_mask(k + 1) != 0 {
                        acc ^ rhs.rows[k]
                    } else {
                        acc
                    }
                })
            }),
        }
    }
}

impl Mul<Codeword> for &CodeMatrix {
    type Output = Codeword;

    fn mul(self, e: Codeword) -> Codeword {
        self.apply(e)
    }
}

/// Matrix-vector product `w = M·e`.
pub fn apply_matrix(m: &CodeMatrix, e: Codeword) -> Codeword {
    m.apply(e)
}

impl fmt::Debug for CodeMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("CodeMatrix [")?;
        for (i, r) in self.rows.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{r:010b}")?;
        }
        f.write_str("]")
    }
}

/// Matrix text format: ten lines of ten binary digits.
impl fmt::Display for CodeMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.rows {
            writeln!(f, "{r:010b}")?;
        }
        Ok(())
    }
}

/// Parses ten rows of ten binary digits; blank lines and lines starting with `#` are skipped.
impl FromStr for CodeMatrix {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut rows = Vec::with_capacity(BITS);
        let mut last_line = 0;
        for (n, line) in s.lines().enumerate() {
            last_line = n + 1;
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            if rows.len() == BITS {
                return Err(ParseError::new(n + 1, 1, "more than 10 matrix rows"));
            }
            rows.push(parse_bits(line, BITS, n + 1)?);
        }
        if rows.len() != BITS {
            return Err(ParseError::new(
                last_line + 1,
                1,
                format!("expected 10 matrix rows, found {}", rows.len()),
            ));
        }
        Ok(Self::from_rows(rows.try_into().expect("ten rows")))
    }
}

impl From<CodeMatrix> for Vec<String> {
    fn from(m: CodeMatrix) -> Self {
        m.rows.iter().map(|r| format!("{r:010b}")).collect()
    }
}

impl TryFrom<Vec<String>> for CodeMatrix {
    type Error = ParseError;

    fn try_from(rows: Vec<String>) -> Result<Self, Self::Error> {
        rows.join("\n").parse()
    }
}

/// A 2×2 GF(2) block, rows packed as two-bit values (first column high).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Block2(u8);

impl Block2 {
    pub const ZERO: Block2 = Block2(0);
    pub const IDENTITY: Block2 = Block2(0b10_01);

    pub const fn from_rows(top: u8, bottom: u8) -> Self {
        Self(((top & 0b11) << 2) | (bottom & 0b11))
    }

    /// Builds `[[a, b], [c, d]]`.
    pub const fn new(a: bool, b: bool, c: bool, d: bool) -> Self {
        Self::from_rows(((a as u8) << 1) | b as u8, ((c as u8) << 1) | d as u8)
    }

    pub const fn rows(self) -> [u8; 2] {
        [self.0 >> 2, self.0 & 0b11]
    }

    pub const fn get(self, r: usize, c: usize) -> bool {
        let row = self.rows()[r];
        row & (0b10 >> c) != 0
    }

    pub const fn det(self) -> bool {
        (self.get(0, 0) & self.get(1, 1)) ^ (self.get(0, 1) & self.get(1, 0))
    }

    pub const fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// All sixteen blocks.
    pub fn all() -> impl Iterator<Item = Block2> {
        (0..16).map(Block2)
    }
}

impl Mul for Block2 {
    type Output = Block2;

    fn mul(self, rhs: Block2) -> Block2 {
        let [t, b] = self.rows();
        let [r0, r1] = rhs.rows();
        let row =
            |x: u8| (if x & 0b10 != 0 { r0 } else { 0 }) ^ (if x & 0b01 != 0 { r1 } else { 0 });
        Block2::from_rows(row(t), row(b))
    }
}

impl fmt::Debug for Block2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [t, b] = self.rows();
        write!(f, "[{t:02b};{b:02b}]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const M1: &str = "1000101000
1100100001
0001000001
0011101001
0000100000
0101010001
0000001000
1101100100
0000000001
1010100010";

    fn m1() -> CodeMatrix {
        M1.parse().unwrap()
    }

    #[test]
    fn parse_round_trip() {
        let m = m1();
        assert_eq!(m.to_string().parse::<CodeMatrix>().unwrap(), m);
        assert!(m.get(1, 1) && !m.get(1, 2) && m.get(10, 9));
    }

    #[test]
    fn parse_skips_comments_and_reports_errors() {
        let text = format!("# comment\n\n{M1}\n# trailing\n");
        assert_eq!(text.parse::<CodeMatrix>().unwrap(), m1());
        let short: String = M1.lines().take(9).collect::<Vec<_>>().join("\n");
        let err = short.parse::<CodeMatrix>().unwrap_err();
        assert_eq!(err.line, 10);
        let bad = M1.replacen("1000101000", "10001z1000", 1);
        let err = bad.parse::<CodeMatrix>().unwrap_err();
        assert_eq!((err.line, err.column), (1, 6));
    }

    #[test]
    fn apply_reads_columns() {
        let m = m1();
        for c in 1..=BITS {
            assert_eq!(m.apply(Codeword::unit(c)), m.column(c));
        }
        assert_eq!(m.apply(Codeword::ZERO), Codeword::ZERO);
    }

    #[test]
    fn inverse_and_rank() {
        let m = m1();
        assert_eq!(m.rank(), 10);
        let inv = m.inverse().unwrap();
        assert!((m * inv).is_identity());
        assert!((inv * m).is_identity());
        assert_eq!(CodeMatrix::ZERO.rank(), 0);
        assert!(CodeMatrix::ZERO.inverse().is_none());
        assert_eq!(m.transpose().transpose(), m);
    }

    #[test]
    fn blocks() {
        let m = m1();
        assert_eq!(m.block(1, 1), Block2::new(true, false, true, true));
        assert_eq!(m.block(4, 4), Block2::new(true, false, false, true));
        let mut z = m;
        z.set_block(4, 4, Block2::ZERO);
        assert!(z.block(4, 4).is_zero());
        assert_eq!(z.block(4, 3), m.block(4, 3));
        assert_eq!(Block2::all().filter(|b| b.det()).count(), 6);
    }

    #[test]
    fn identity_is_symplectic() {
        assert!(CodeMatrix::identity().is_symplectic());
        assert!(m1().is_symplectic());
        let mut m = CodeMatrix::identity();
        m.set(1, 2, true);
        m.set(3, 1, true);
        assert!(!m.is_symplectic());
    }

    #[test]
    fn column_ops() {
        let mut m = CodeMatrix::identity();
        m.swap_columns(1, 2);
        m.add_column(3, 4);
        assert_eq!(m.row(1).to_string(), "01 00 00 00 00");
        assert_eq!(m.row(4).to_string(), "00 11 00 00 00");
    }
}
