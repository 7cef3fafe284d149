// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

//! Single-pair operations generated by `BY` and `SXBX`.

use gate_algebra::Gate;
use gf2_core::Block2;

/// One of the six invertible 2×2 GF(2) maps on a pair's rows, as its shortest gate word.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Local {
    Identity,
    By,
    Sxbx,
    /// `SXBX` then `BY`.
    SxbxBy,
    /// `BY` then `SXBX`.
    BySxbx,
    /// `BY`, `SXBX`, `BY`: adds the amplitude row into the phase row.
    BySxbxBy,
}

#[derive(Clone, Copy)]
enum Letter {
    By,
    Sxbx,
}

impl Local {
    pub const ALL: [Local; 6] = [
        Local::Identity,
        Local::By,
        Local::Sxbx,
        Local::SxbxBy,
        Local::BySxbx,
        Local::BySxbxBy,
    ];

    fn letters(self) -> &'static [Letter] {
        match self {
            Local::Identity => &[],
            Local::By => &[Letter::By],
            Local::Sxbx => &[Letter::Sxbx],
            Local::SxbxBy => &[Letter::Sxbx, Letter::By],
            Local::BySxbx => &[Letter::By, Letter::Sxbx],
            Local::BySxbxBy => &[Letter::By, Letter::Sxbx, Letter::By],
        }
    }

    pub fn is_identity(self) -> bool {
        self == Local::Identity
    }

    /// Gates realizing the map on `pair`, in application order.
    pub fn gates(self, pair: usize) -> impl Iterator<Item = Gate> {
        let p = pair as u8;
        self.letters().iter().map(move |l| match l {
            Letter::By => Gate::By(p),
            Letter::Sxbx => Gate::Sxbx(p),
        })
    }

    /// Row action on a pair's block: `BY` swaps rows, `SXBX` adds the top row into the bottom.
    pub fn apply(self, b: Block2) -> Block2 {
        self.letters().iter().fold(b, |b, l| {
            let [x, y] = b.rows();
            match l {
                Letter::By => Block2::from_rows(y, x),
                Letter::Sxbx => Block2::from_rows(x, x ^ y),
            }
        })
    }

    /// Row action on two packed rows `(x, y)`.
    pub fn apply_rows(self, x: u16, y: u16) -> (u16, u16) {
        self.letters().iter().fold((x, y), |(x, y), l| match l {
            Letter::By => (y, x),
            Letter::Sxbx => (x, x ^ y),
        })
    }

    /// The unique map taking the invertible block `b` to the identity.
    pub fn normalizer(b: Block2) -> Option<Local> {
        Local::ALL
            .into_iter()
            .find(|l| l.apply(b) == Block2::IDENTITY)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn six_distinct_maps() {
        let images: std::collections::HashSet<Block2> = Local::ALL
            .iter()
            .map(|l| l.apply(Block2::IDENTITY))
            .collect();
        assert_eq!(images.len(), 6);
        assert!(images.iter().all(|b| b.det()));
    }

    #[test]
    fn normalizer_inverts() {
        for b in Block2::all().filter(|b| b.det()) {
            let l = Local::normalizer(b).unwrap();
            assert_eq!(l.apply(b), Block2::IDENTITY);
        }
        assert!(Local::normalizer(Block2::ZERO).is_none());
    }

    #[test]
    fn gate_words_match_row_action() {
        use gf2_core::CodeMatrix;
        for l in Local::ALL {
            let mut m = CodeMatrix::identity();
            for g in l.gates(3) {
                g.apply_rows(&mut m);
            }
            assert_eq!(m.block(3, 3), l.apply(Block2::IDENTITY));
        }
    }
}
