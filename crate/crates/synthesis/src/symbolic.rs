// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

//! Matrices with affine GF(2) entries over the template unknowns.
//!
//! Row operations never mix columns, so every entry of column `c` is an affine
//! form in the unknowns of column `c` only: at most one per letter, packed as a
//! `u8` mask. Constraints are kept as one small linear system per column.

use gate_algebra::Gate;
use gf2_core::{CodeMatrix, BITS};

use crate::template::{Assignment, Template, Unknown};

#[inline]
fn col_mask(c: usize) -> u16 {
    1 << (BITS - c)
}

#[inline]
fn parity(x: u8) -> bool {
    x.count_ones() & 1 == 1
}

/// A 10×10 matrix whose entries are affine forms `konst ⊕ Σ mask·u`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SymMatrix {
    konst: [u16; BITS],
    mask: [[u8; BITS]; BITS],
}

impl SymMatrix {
    pub fn from_template(t: &Template) -> Self {
        let mut konst = [0u16; BITS];
        let mut mask = [[0u8; BITS]; BITS];
        for r in 1..=BITS {
            konst[r - 1] = t.fixed_bits(r);
            if let Some(slot) = t.row_slot(r) {
                let unknown = t.unknown_bits(r);
                for c in 1..=BITS {
                    if unknown & col_mask(c) != 0 {
                        mask[r - 1][c - 1] = 1 << slot;
                    }
                }
            }
        }
        Self { konst, mask }
    }

    pub fn from_matrix(m: &CodeMatrix) -> Self {
        Self {
            konst: *m.rows(),
            mask: [[0; BITS]; BITS],
        }
    }

    pub fn add_row(&mut self, dst: usize, src: usize) {
        self.konst[dst - 1] ^= self.konst[src - 1];
        for c in 0..BITS {
            self.mask[dst - 1][c] ^= self.mask[src - 1][c];
        }
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        self.konst.swap(a - 1, b - 1);
        self.mask.swap(a - 1, b - 1);
    }

    pub fn apply_gate(&mut self, g: Gate) {
        match g {
            Gate::Bxor { source, target } => {
                let (s, t) = (source as usize, target as usize);
                self.add_row(2 * s - 1, 2 * t - 1);
                self.add_row(2 * t, 2 * s);
            }
            Gate::By(p) => self.swap_rows(2 * p as usize - 1, 2 * p as usize),
            Gate::Sxbx(p) => self.add_row(2 * p as usize, 2 * p as usize - 1),
        }
    }

    /// Entry `(r, c)` as `(mask, constant)`.
    pub fn entry(&self, r: usize, c: usize) -> (u8, bool) {
        (
            self.mask[r - 1][c - 1],
            self.konst[r - 1] & col_mask(c) != 0,
        )
    }

    /// Value of column `c` in row `r` when the unknowns of that column take `values`.
    pub fn eval(&self, r: usize, c: usize, values: u8) -> bool {
        let (m, k) = self.entry(r, c);
        k ^ parity(m & values)
    }

    /// Entry in column `c` of the sum of the rows selected by `sel` (packed like a matrix row).
    pub fn combined_entry(&self, sel: u16, c: usize) -> (u8, bool) {
        let (mut m, mut k) = (0u8, false);
        for r in 1..=BITS {
            if sel & col_mask(r) != 0 {
                m ^= self.mask[r - 1][c - 1];
                k ^= self.konst[r - 1] & col_mask(c) != 0;
            }
        }
        (m, k)
    }

    /// Concrete matrix for per-column unknown values.
    pub fn evaluate(&self, values: &[u8; BITS]) -> CodeMatrix {
        let mut rows = [0u16; BITS];
        for (r, row) in rows.iter_mut().enumerate() {
            for c in 1..=BITS {
                if self.eval(r + 1, c, values[c - 1]) {
                    *row |= col_mask(c);
                }
            }
        }
        CodeMatrix::from_rows(rows)
    }
}

/// Conflicting constraint.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Conflict;

/// Reduced row echelon system over the (at most eight) unknowns of one column.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct ColumnSystem {
    /// Unknowns that exist in this column.
    present: u8,
    /// Pivot variables.
    pivots: u8,
    /// Row of each pivot variable: the pivot bit plus free variables only.
    rows: [u8; 8],
    rhs: u8,
}

impl ColumnSystem {
    pub fn new(present: u8) -> Self {
        Self {
            present,
            ..Self::default()
        }
    }

    fn reduce(&self, mut mask: u8, mut rhs: bool) -> (u8, bool) {
        let mut p = self.pivots & mask;
        while p != 0 {
            let v = p.trailing_zeros() as usize;
            p &= p - 1;
            if mask & (1 << v) != 0 {
                mask ^= self.rows[v];
                rhs ^= self.rhs & (1 << v) != 0;
            }
        }
        (mask, rhs)
    }

    /// Adds `Σ mask·u = rhs`; returns whether the system changed.
    pub fn add(&mut self, mask: u8, rhs: bool) -> Result<bool, Conflict> {
        let (mask, rhs) = self.reduce(mask, rhs);
        if mask == 0 {
            return if rhs { Err(Conflict) } else { Ok(false) };
        }
        let v = mask.trailing_zeros() as usize;
        let bit = 1u8 << v;
        let mut p = self.pivots;
        while p != 0 {
            let u = p.trailing_zeros() as usize;
            p &= p - 1;
            if self.rows[u] & bit != 0 {
                self.rows[u] ^= mask;
                if rhs {
                    self.rhs ^= 1 << u;
                }
            }
        }
        self.pivots |= bit;
        self.rows[v] = mask;
        if rhs {
            self.rhs |= bit;
        } else {
            self.rhs &= !bit;
        }
        Ok(true)
    }

    /// Value of `Σ mask·u` if the system determines it.
    pub fn value(&self, mask: u8) -> Option<bool> {
        let (m, r) = self.reduce(mask, false);
        (m == 0).then_some(r)
    }

    pub fn free(&self) -> u8 {
        self.present & !self.pivots
    }

    pub fn is_determined(&self) -> bool {
        self.free() == 0
    }

    /// Values of all present unknowns, given values for the free ones.
    pub fn solution(&self, free_values: u8) -> u8 {
        let free = free_values & self.free();
        let mut out = free;
        let mut p = self.pivots;
        while p != 0 {
            let v = p.trailing_zeros() as usize;
            p &= p - 1;
            let others = self.rows[v] & !(1 << v);
            if (self.rhs & (1 << v) != 0) ^ parity(others & free) {
                out |= 1 << v;
            }
        }
        out
    }

    /// Every solution, in increasing order of the free-variable values.
    pub fn solutions(&self) -> impl Iterator<Item = u8> + '_ {
        let free = self.free();
        let n = free.count_ones();
        (0u32..(1 << n)).map(move |i| {
            let mut values = 0u8;
            let mut f = free;
            let mut k = 0;
            while f != 0 {
                let v = f.trailing_zeros();
                f &= f - 1;
                if i & (1 << k) != 0 {
                    values |= 1 << v;
                }
                k += 1;
            }
            self.solution(values)
        })
    }

    /// Pins every present unknown to `values`.
    pub fn fix(&mut self, values: u8) -> Result<(), Conflict> {
        let mut p = self.present;
        while p != 0 {
            let v = p.trailing_zeros();
            p &= p - 1;
            self.add(1 << v, values & (1 << v) != 0)?;
        }
        Ok(())
    }
}

/// Linear constraints on all unknowns, one system per column.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Constraints {
    pub columns: [ColumnSystem; BITS],
}

impl Constraints {
    pub fn new(t: &Template) -> Self {
        let mut columns = [ColumnSystem::default(); BITS];
        for (c, sys) in columns.iter_mut().enumerate() {
            let present = (0..t.slots())
                .filter(|&s| t.is_unknown(Unknown::new(s, c + 1)))
                .fold(0u8, |acc, s| acc | (1 << s));
            *sys = ColumnSystem::new(present);
        }
        Self { columns }
    }

    pub fn assign(&mut self, u: Unknown, v: bool) -> Result<(), Conflict> {
        self.columns[u.column as usize - 1]
            .add(1 << u.slot, v)
            .map(|_| ())
    }

    pub fn assign_all(&mut self, a: &Assignment) -> Result<(), Conflict> {
        a.iter().try_for_each(|(u, v)| self.assign(u, v))
    }

    pub fn value(&self, u: Unknown) -> Option<bool> {
        self.columns[u.column as usize - 1].value(1 << u.slot)
    }

    /// Per-column values when every column is determined.
    pub fn values(&self) -> Option<[u8; BITS]> {
        self.columns
            .iter()
            .all(ColumnSystem::is_determined)
            .then(|| std::array::from_fn(|c| self.columns[c].solution(0)))
    }
}
