// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

//! Code-matrix templates: fixed measurement rows and named unknown entries.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use gf2_core::{enumerate_syndromes, CodeMatrix, ParseError, BITS, PAIRS};
use serde::{Deserialize, Serialize};

use crate::error::SynthesisError;

/// Rows holding the amplitude bits of pairs 2 to 5; these define the measurement.
pub const MEASUREMENT_ROWS: [usize; 4] = [4, 6, 8, 10];

/// Maximum number of rows that may hold unknowns.
pub const MAX_UNKNOWN_ROWS: usize = BITS - MEASUREMENT_ROWS.len();

/// An unknown entry: row letter (`a` is the first row holding unknowns) and 1-based column.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct Unknown {
    pub slot: u8,
    pub column: u8,
}

impl Unknown {
    pub fn new(slot: usize, column: usize) -> Self {
        Self {
            slot: slot as u8,
            column: column as u8,
        }
    }

    pub fn letter(self) -> char {
        (b'a' + self.slot) as char
    }
}

impl fmt::Display for Unknown {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.letter(), self.column)
    }
}

impl FromStr for Unknown {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut chars = s.chars();
        let letter = chars.next().ok_or("empty unknown name")?;
        if !letter.is_ascii_lowercase() || (letter as u8 - b'a') as usize >= MAX_UNKNOWN_ROWS {
            return Err(format!("bad unknown row letter in {s:?}"));
        }
        let column: usize = chars
            .as_str()
            .parse()
            .map_err(|_| format!("bad unknown column in {s:?}"))?;
        if !(1..=BITS).contains(&column) {
            return Err(format!("unknown column out of range in {s:?}"));
        }
        Ok(Unknown::new((letter as u8 - b'a') as usize, column))
    }
}

impl From<Unknown> for String {
    fn from(u: Unknown) -> String {
        u.to_string()
    }
}

impl TryFrom<String> for Unknown {
    type Error = String;

    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

/// Values for some unknowns.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Assignment(pub BTreeMap<Unknown, bool>);

impl Assignment {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set(&mut self, u: Unknown, v: bool) -> &mut Self {
        self.0.insert(u, v);
        self
    }

    pub fn get(&self, u: Unknown) -> Option<bool> {
        self.0.get(&u).copied()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Unknown, bool)> + '_ {
        self.0.iter().map(|(&u, &v)| (u, v))
    }

    /// Sets every unknown of one letter from a ten-character row string.
    pub fn set_row(&mut self, slot: usize, bits: &str) -> Result<&mut Self, String> {
        let digits: Vec<char> = bits.chars().filter(|c| !c.is_whitespace()).collect();
        if digits.len() != BITS || digits.iter().any(|c| !matches!(c, '0' | '1')) {
            return Err(format!("row {bits:?} must have ten binary digits"));
        }
        for (i, c) in digits.iter().enumerate() {
            self.set(Unknown::new(slot, i + 1), *c == '1');
        }
        Ok(self)
    }

    /// Adds all entries of `other`, which take precedence.
    pub fn merge(&mut self, other: &Assignment) {
        self.0.extend(other.iter());
    }
}

impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (u, v)) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{u}={}", v as u8)?;
        }
        Ok(())
    }
}

/// Parses whitespace- or comma-separated `name=value` items; `#` starts a comment.
///
/// An item `b=1100100001` with a bare letter sets the whole row.
impl FromStr for Assignment {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut out = Assignment::new();
        for (n, line) in s.lines().enumerate() {
            let body = line.split('#').next().unwrap_or("");
            for item in body
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
            {
                let column = item.as_ptr() as usize - line.as_ptr() as usize + 1;
                let err = |m: String| ParseError::new(n + 1, column, m);
                let (name, value) = item
                    .split_once('=')
                    .ok_or_else(|| err(format!("expected name=value, found {item:?}")))?;
                if name.len() == 1 {
                    let slot = name.as_bytes()[0].wrapping_sub(b'a') as usize;
                    if slot >= MAX_UNKNOWN_ROWS {
                        return Err(err(format!("bad row letter {name:?}")));
                    }
                    out.set_row(slot, value).map_err(err)?;
                    continue;
                }
                let u: Unknown = name.parse().map_err(err)?;
                let v = match value {
                    "0" => false,
                    "1" => true,
                    _ => return Err(err(format!("value of {name} must be 0 or 1"))),
                };
                out.set(u, v);
            }
        }
        Ok(out)
    }
}

/// A partially specified code matrix and the order in which pairs are isolated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Template {
    /// Known bits, packed like [`CodeMatrix`] rows.
    fixed: [u16; BITS],
    /// Unknown positions per row.
    unknown: [u16; BITS],
    /// Row of each unknown letter.
    slot_rows: Vec<usize>,
    stages: [usize; PAIRS],
}

/// Default isolation order: pair 4, then 2, then the rest.
pub const DEFAULT_STAGES: [usize; PAIRS] = [4, 2, 1, 3, 5];

#[inline]
fn col_mask(c: usize) -> u16 {
    1 << (BITS - c)
}

impl Template {
    /// Builds a template from rows over `{0, 1, ?}`.
    pub fn new(rows: [&str; BITS], stages: [usize; PAIRS]) -> Result<Self, SynthesisError> {
        let mut fixed = [0u16; BITS];
        let mut unknown = [0u16; BITS];
        for (r, row) in rows.iter().enumerate() {
            let cells: Vec<char> = row.chars().filter(|c| !c.is_whitespace()).collect();
            if cells.len() != BITS {
                return Err(SynthesisError::Template(format!(
                    "row {} must have 10 cells",
                    r + 1
                )));
            }
            for (c, cell) in cells.iter().enumerate() {
                match cell {
                    '0' => {}
                    '1' => fixed[r] |= col_mask(c + 1),
                    '?' => unknown[r] |= col_mask(c + 1),
                    other => {
                        return Err(SynthesisError::Template(format!(
                            "row {} has invalid cell {other:?}",
                            r + 1
                        )))
                    }
                }
            }
        }
        Self::from_parts(fixed, unknown, stages)
    }

    fn from_parts(
        fixed: [u16; BITS],
        unknown: [u16; BITS],
        stages: [usize; PAIRS],
    ) -> Result<Self, SynthesisError> {
        let mut sorted = stages;
        sorted.sort_unstable();
        if sorted != [1, 2, 3, 4, 5] {
            return Err(SynthesisError::Template(format!(
                "stage order {stages:?} is not a permutation of the five pairs"
            )));
        }
        for r in MEASUREMENT_ROWS {
            if unknown[r - 1] != 0 {
                return Err(SynthesisError::Template(format!(
                    "measurement row {r} must be fully known"
                )));
            }
        }
        let slot_rows: Vec<usize> = (1..=BITS).filter(|&r| unknown[r - 1] != 0).collect();
        let t = Self {
            fixed,
            unknown,
            slot_rows,
            stages,
        };
        if let Some((i, j)) = t.measurement_collision() {
            return Err(SynthesisError::Template(format!(
                "measurement rows give syndromes {i} and {j} the same word"
            )));
        }
        Ok(t)
    }

    /// A template whose measurement rows are those of `m` and whose other rows are unknown.
    pub fn from_measurement_rows(
        m: &CodeMatrix,
        stages: [usize; PAIRS],
    ) -> Result<Self, SynthesisError> {
        let mut fixed = [0u16; BITS];
        let mut unknown = [(1u16 << BITS) - 1; BITS];
        for r in MEASUREMENT_ROWS {
            fixed[r - 1] = m.row(r).bits();
            unknown[r - 1] = 0;
        }
        Self::from_parts(fixed, unknown, stages)
    }

    /// First pair of syndromes that the fixed measurement rows cannot tell apart.
    fn measurement_collision(&self) -> Option<(usize, usize)> {
        let words: Vec<u8> = enumerate_syndromes()
            .iter()
            .map(|e| {
                MEASUREMENT_ROWS.iter().fold(0u8, |acc, &r| {
                    (acc << 1) | ((self.fixed[r - 1] & e.bits()).count_ones() & 1) as u8
                })
            })
            .collect();
        (0..words.len())
            .flat_map(|i| (i + 1..words.len()).map(move |j| (i, j)))
            .find(|&(i, j)| words[i] == words[j])
    }

    pub fn stages(&self) -> [usize; PAIRS] {
        self.stages
    }

    pub fn with_stages(&self, stages: [usize; PAIRS]) -> Result<Self, SynthesisError> {
        Self::from_parts(self.fixed, self.unknown, stages)
    }

    /// Number of unknown letters.
    pub fn slots(&self) -> usize {
        self.slot_rows.len()
    }

    /// Matrix row of unknown letter `slot`.
    pub fn slot_row(&self, slot: usize) -> usize {
        self.slot_rows[slot]
    }

    /// Letter of `row`, if the row holds unknowns.
    pub fn row_slot(&self, row: usize) -> Option<usize> {
        self.slot_rows.iter().position(|&r| r == row)
    }

    pub fn fixed_bits(&self, row: usize) -> u16 {
        self.fixed[row - 1]
    }

    pub fn unknown_bits(&self, row: usize) -> u16 {
        self.unknown[row - 1]
    }

    /// Whether entry `(row, col)` is unknown.
    pub fn is_unknown_at(&self, row: usize, col: usize) -> bool {
        self.unknown[row - 1] & col_mask(col) != 0
    }

    pub fn is_unknown(&self, u: Unknown) -> bool {
        (u.slot as usize) < self.slots()
            && self.unknown[self.slot_rows[u.slot as usize] - 1] & col_mask(u.column as usize) != 0
    }

    /// All unknowns, by letter then column.
    pub fn unknowns(&self) -> Vec<Unknown> {
        (0..self.slots())
            .flat_map(|s| (1..=BITS).map(move |c| Unknown::new(s, c)))
            .filter(|&u| self.is_unknown(u))
            .collect()
    }

    /// Fills the unknowns from `a`; fails if any is missing.
    pub fn instantiate(&self, a: &Assignment) -> Result<CodeMatrix, SynthesisError> {
        let mut rows = self.fixed;
        for u in self.unknowns() {
            match a.get(u) {
                Some(true) => {
                    rows[self.slot_rows[u.slot as usize] - 1] |= col_mask(u.column as usize)
                }
                Some(false) => {}
                None => return Err(SynthesisError::UnknownName(format!("{u} has no value"))),
            }
        }
        Ok(CodeMatrix::from_rows(rows))
    }

    /// Checks that every name in `a` is an unknown of this template.
    pub fn check_assignment(&self, a: &Assignment) -> Result<(), SynthesisError> {
        match a.iter().find(|(u, _)| !self.is_unknown(*u)) {
            Some((u, _)) => Err(SynthesisError::UnknownName(u.to_string())),
            None => Ok(()),
        }
    }
}

impl fmt::Display for Template {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.stages.iter().map(ToString::to_string).collect();
        writeln!(f, "stages: {}", s.join(" "))?;
        for r in 0..BITS {
            for c in 1..=BITS {
                let ch = if self.unknown[r] & col_mask(c) != 0 {
                    '?'
                } else if self.fixed[r] & col_mask(c) != 0 {
                    '1'
                } else {
                    '0'
                };
                write!(f, "{ch}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Template file: optional `stages:` header, then ten rows over `{0, 1, ?}`; `#` comments.
impl FromStr for Template {
    type Err = SynthesisError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut stages = DEFAULT_STAGES;
        let mut rows: Vec<&str> = Vec::new();
        let mut last = 0;
        for (n, line) in s.lines().enumerate() {
            last = n + 1;
            let body = line.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            if let Some(rest) = body.strip_prefix("stages:") {
                let parsed: Result<Vec<usize>, _> =
                    rest.split_whitespace().map(str::parse).collect();
                stages = parsed.ok().and_then(|v| v.try_into().ok()).ok_or_else(|| {
                    ParseError::new(n + 1, 1, "stages header needs five pair indices")
                })?;
                continue;
            }
            if let Some((i, ch)) = body
                .char_indices()
                .find(|(_, c)| !matches!(c, '0' | '1' | '?') && !c.is_whitespace())
            {
                return Err(
                    ParseError::new(n + 1, i + 1, format!("unexpected character {ch:?}")).into(),
                );
            }
            if body.chars().filter(|c| !c.is_whitespace()).count() != BITS {
                return Err(ParseError::new(n + 1, 1, "template rows need 10 cells").into());
            }
            if rows.len() == BITS {
                return Err(ParseError::new(n + 1, 1, "more than 10 template rows").into());
            }
            rows.push(body);
        }
        if rows.len() != BITS {
            return Err(ParseError::new(
                last + 1,
                1,
                format!("expected 10 template rows, found {}", rows.len()),
            )
            .into());
        }
        Template::new(rows.try_into().expect("ten rows"), stages)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const TEMPLATE: &str = "stages: 4 2 1 3 5
??????????
??????????
??????????
0011101001
??????????
0101010001
??????????
1101100100
??????????
1010100010
";

    #[test]
    fn parse_template() {
        let t: Template = TEMPLATE.parse().unwrap();
        assert_eq!(t.slots(), 6);
        assert_eq!(
            (1..=6).map(|s| t.slot_row(s - 1)).collect::<Vec<_>>(),
            [1, 2, 3, 5, 7, 9]
        );
        assert_eq!(t.unknowns().len(), 60);
        assert_eq!(t.to_string().parse::<Template>().unwrap(), t);
        assert_eq!(t.stages(), DEFAULT_STAGES);
    }

    #[test]
    fn rejects_bad_templates() {
        let hidden = TEMPLATE.replace("0011101001", "001110100?");
        assert!(matches!(
            hidden.parse::<Template>(),
            Err(SynthesisError::Template(_))
        ));
        let collide = TEMPLATE.replace("0011101001", "0000000000");
        assert!(matches!(
            collide.parse::<Template>(),
            Err(SynthesisError::Template(_))
        ));
        let stages = TEMPLATE.replace("4 2 1 3 5", "4 2 1 3 3");
        assert!(stages.parse::<Template>().is_err());
        let short = TEMPLATE.replace("1010100010\n", "");
        assert!(matches!(
            short.parse::<Template>(),
            Err(SynthesisError::Parse(_))
        ));
    }

    #[test]
    fn unknown_names() {
        assert_eq!("a7".parse::<Unknown>().unwrap(), Unknown::new(0, 7));
        assert_eq!("f10".parse::<Unknown>().unwrap().to_string(), "f10");
        assert!("g1".parse::<Unknown>().is_err());
        assert!("a11".parse::<Unknown>().is_err());
    }

    #[test]
    fn assignments() {
        let a: Assignment = "a7=1, b7=0 # note\nc=0001000001".parse().unwrap();
        assert_eq!(a.get("a7".parse().unwrap()), Some(true));
        assert_eq!(a.get("c4".parse().unwrap()), Some(true));
        assert_eq!(a.get("c10".parse().unwrap()), Some(true));
        assert_eq!(a.len(), 12);
        assert!("a7=2".parse::<Assignment>().is_err());
        assert!("a7".parse::<Assignment>().is_err());
        assert_eq!(a.to_string().parse::<Assignment>().unwrap(), a);
    }
}
