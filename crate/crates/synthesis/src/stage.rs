// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

//! Staged block elimination over templates with unknowns.
//!
//! Stage `s` isolates pivot pair `p`: the column blocks `m_kp` of the other
//! active pairs are cleared one BXOR at a time, each preceded by single-pair
//! maps on `p` and `k`, and a final map brings `m_pp` to `I`. The row blocks
//! `m_pk` must then vanish, which becomes linear constraints on the unknowns.
//! Before a stage can run, the unknowns in the pivot's two columns are
//! enumerated subject to `det(m_pp) = 1` and `det(m_kp) = 0`.

use std::collections::HashMap;
use std::ops::BitXorAssign;
use std::sync::Arc;

use gate_algebra::Gate;
use gf2_core::{Block2, CodeMatrix, BITS, PAIRS};
use qecc_sim::LiftCounter;
use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};

use crate::local::Local;
use crate::symbolic::{Constraints, SymMatrix};
use crate::template::{Assignment, Template, Unknown};

/// Two-bit rows of one column group, packed like [`Block2`] rows.
pub(crate) type ColGroup = [u8; BITS];

fn pair_mask(p: usize) -> u8 {
    1 << p
}

fn pairs_of(mask: u8) -> impl Iterator<Item = usize> {
    (1..=PAIRS).filter(move |&p| mask & pair_mask(p) != 0)
}

pub(crate) fn all_pairs() -> u8 {
    (1..=PAIRS).fold(0, |acc, p| acc | pair_mask(p))
}

/// Applies a gate as row operations on any packed-row array.
pub(crate) fn row_gate<T: Copy + BitXorAssign>(rows: &mut [T; BITS], g: Gate) {
    match g {
        Gate::Bxor { source, target } => {
            let (s, t) = (source as usize, target as usize);
            let xt = rows[2 * t - 2];
            rows[2 * s - 2] ^= xt;
            let ys = rows[2 * s - 1];
            rows[2 * t - 1] ^= ys;
        }
        Gate::By(p) => rows.swap(2 * p as usize - 2, 2 * p as usize - 1),
        Gate::Sxbx(p) => {
            let x = rows[2 * p as usize - 2];
            rows[2 * p as usize - 1] ^= x;
        }
    }
}

fn block(col: &ColGroup, k: usize) -> Block2 {
    Block2::from_rows(col[2 * k - 2], col[2 * k - 1])
}

/// One way to run a stage: its gates and their combined row transform.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StageOption {
    pub gates: Vec<Gate>,
    pub transform: [u16; BITS],
    pub bxor: usize,
    pub ops: usize,
    /// Pairs whose column block is cleared, in clearing order.
    pub cleared: Vec<u8>,
}

/// Ordering of options: cost first, then clearing order, then the gate list.
pub(crate) type OptionKey<'a> = (usize, usize, usize, &'a [u8], &'a [Gate]);

impl StageOption {
    pub(crate) fn key(&self) -> OptionKey<'_> {
        (
            self.bxor,
            self.ops,
            self.gates.len(),
            &self.cleared,
            &self.gates,
        )
    }
}

/// The determinant conditions for pivot `p`: which block fails first, if any.
pub(crate) fn det_violation(col: &ColGroup, p: usize, active: u8) -> Option<(usize, u8)> {
    if !block(col, p).det() {
        return Some((p, 1));
    }
    pairs_of(active)
        .filter(|&k| k != p)
        .find(|&k| block(col, k).det())
        .map(|k| (k, 0))
}

/// BXOR between pivot `p` and pair `k` on their blocks; `k_to_p` makes `k` the source.
fn bxor_blocks(bp: Block2, bk: Block2, k_to_p: bool) -> (Block2, Block2) {
    let ([xp, yp], [xk, yk]) = (bp.rows(), bk.rows());
    if k_to_p {
        (
            Block2::from_rows(xp, yp ^ yk),
            Block2::from_rows(xk ^ xp, yk),
        )
    } else {
        (
            Block2::from_rows(xp ^ xk, yp),
            Block2::from_rows(xk, yk ^ yp),
        )
    }
}

const MAX_STAGE_GATES: usize = 32;

/// Fixed-capacity partial stage program.
#[derive(Clone, Copy)]
struct Partial {
    col: ColGroup,
    counter: LiftCounter,
    gates: [Gate; MAX_STAGE_GATES],
    len: u8,
    cleared: [u8; PAIRS],
    n_cleared: u8,
}

impl Partial {
    fn new(col: ColGroup) -> Self {
        Self {
            col,
            counter: LiftCounter::new(),
            gates: [Gate::By(1); MAX_STAGE_GATES],
            len: 0,
            cleared: [0; PAIRS],
            n_cleared: 0,
        }
    }

    fn gates(&self) -> &[Gate] {
        &self.gates[..self.len as usize]
    }

    fn cleared(&self) -> &[u8] {
        &self.cleared[..self.n_cleared as usize]
    }

    fn push(&mut self, g: Gate, t: &mut [u16; BITS]) {
        row_gate(&mut self.col, g);
        row_gate(t, g);
        self.counter.push(g);
        self.gates[self.len as usize] = g;
        self.len += 1;
    }

    fn key(&self) -> (usize, usize, &[u8], &[Gate]) {
        (
            self.counter.count(),
            self.len as usize,
            self.cleared(),
            self.gates(),
        )
    }
}

type Level = FxHashMap<(u8, [u16; BITS]), Partial>;

/// All distinct ways to isolate pivot `p` given its column group, cheapest first.
///
/// Each nonzero block `m_kp` is cleared by one BXOR between `p` and `k`,
/// preceded by single-pair maps on both; a final map takes `m_pp` to `I`.
/// Partial programs reaching the same row transform with the same blocks left
/// to clear are merged, keeping the fewest lifted operations, then fewest
/// gates, then ascending clearing order, then the smallest gate list.
pub fn stage_options(col: &ColGroup, p: usize, active: u8) -> Vec<StageOption> {
    if det_violation(col, p, active).is_some() {
        return Vec::new();
    }
    let others: u8 = pairs_of(active)
        .filter(|&k| k != p && !block(col, k).is_zero())
        .fold(0, |acc, k| acc | pair_mask(k));
    let bxor = others.count_ones() as usize;
    let mut level = Level::default();
    level.insert((others, *CodeMatrix::identity().rows()), Partial::new(*col));
    for _ in 0..bxor {
        let mut next = Level::default();
        for ((remaining, transform), part) in &level {
            for k in pairs_of(*remaining) {
                let (bp, bk) = (block(&part.col, p), block(&part.col, k));
                for lp in Local::ALL {
                    let bp1 = lp.apply(bp);
                    for lk in Local::ALL {
                        let bk1 = lk.apply(bk);
                        for k_to_p in [true, false] {
                            let (bp2, bk2) = bxor_blocks(bp1, bk1, k_to_p);
                            if !bk2.is_zero() || !bp2.det() {
                                continue;
                            }
                            let bx = if k_to_p {
                                Gate::Bxor {
                                    source: k as u8,
                                    target: p as u8,
                                }
                            } else {
                                Gate::Bxor {
                                    source: p as u8,
                                    target: k as u8,
                                }
                            };
                            let (first, second) = if p < k {
                                ((lp, p), (lk, k))
                            } else {
                                ((lk, k), (lp, p))
                            };
                            let mut child = *part;
                            let mut t = *transform;
                            for g in first
                                .0
                                .gates(first.1)
                                .chain(second.0.gates(second.1))
                                .chain([bx])
                            {
                                child.push(g, &mut t);
                            }
                            child.cleared[child.n_cleared as usize] = k as u8;
                            child.n_cleared += 1;
                            keep_min(&mut next, (*remaining & !pair_mask(k), t), child);
                        }
                    }
                }
            }
        }
        level = next;
    }
    let mut found: FxHashMap<[u16; BITS], Partial> = FxHashMap::default();
    for ((_, transform), mut part) in level {
        let norm = Local::normalizer(block(&part.col, p)).expect("pivot block stays invertible");
        let mut t = transform;
        for g in norm.gates(p) {
            part.push(g, &mut t);
        }
        match found.get(&t) {
            Some(old) if old.key() <= part.key() => {}
            _ => {
                found.insert(t, part);
            }
        }
    }
    let mut out: Vec<StageOption> = found
        .into_iter()
        .map(|(transform, part)| StageOption {
            gates: part.gates().to_vec(),
            transform,
            bxor,
            ops: part.counter.count(),
            cleared: part.cleared().to_vec(),
        })
        .collect();
    out.sort_by(|a, b| a.key().cmp(&b.key()));
    out
}

fn keep_min(map: &mut Level, key: (u8, [u16; BITS]), part: Partial) {
    match map.get(&key) {
        Some(old) if old.key() <= part.key() => {}
        _ => {
            map.insert(key, part);
        }
    }
}

/// Column group of pivot `p` after fixing the unknowns of its two columns.
pub(crate) fn column_group(sym: &SymMatrix, p: usize, v1: u8, v2: u8) -> ColGroup {
    std::array::from_fn(|r| {
        ((sym.eval(r + 1, 2 * p - 1, v1) as u8) << 1) | sym.eval(r + 1, 2 * p, v2) as u8
    })
}

/// Adds the constraints that the pivot's rows vanish outside its own columns.
pub(crate) fn isolate(
    sym: &SymMatrix,
    cons: &mut Constraints,
    p: usize,
    active: u8,
) -> Result<(), usize> {
    for k in pairs_of(active).filter(|&k| k != p) {
        for r in [2 * p - 1, 2 * p] {
            for c in [2 * k - 1, 2 * k] {
                let (mask, konst) = sym.entry(r, c);
                cons.columns[c - 1].add(mask, konst).map_err(|_| k)?;
            }
        }
    }
    Ok(())
}

/// Isolation constraints for the rows that `transform` will place in pair `p`.
pub(crate) fn isolate_rows(
    sym: &SymMatrix,
    transform: &[u16; BITS],
    cons: &mut Constraints,
    p: usize,
    active: u8,
) -> Result<(), usize> {
    for k in pairs_of(active).filter(|&k| k != p) {
        for sel in [transform[2 * p - 2], transform[2 * p - 1]] {
            for c in [2 * k - 1, 2 * k] {
                let (mask, konst) = sym.combined_entry(sel, c);
                cons.columns[c - 1].add(mask, konst).map_err(|_| k)?;
            }
        }
    }
    Ok(())
}

/// Comparison key of a complete reduction.
pub(crate) type Score = (usize, usize, usize);

/// A complete reduction found by the search.
#[derive(Clone, Debug)]
pub(crate) struct Leaf {
    pub score: Score,
    /// Per stage: clearing order and gates.
    pub program: Vec<(Vec<u8>, Vec<Gate>)>,
    pub values: [u8; BITS],
}

impl Leaf {
    pub fn stages(&self) -> Vec<Vec<Gate>> {
        self.program.iter().map(|(_, g)| g.clone()).collect()
    }

    pub fn better_than(&self, other: &Leaf) -> bool {
        (self.score, &self.program) < (other.score, &other.program)
    }
}

/// What the depth-first search keeps.
pub(crate) enum Goal {
    /// The single best reduction.
    Best,
    /// Every solved matrix reachable within a BXOR budget.
    Reach { budget: usize },
}

/// Random subsampling of enumerated assignments and stage options.
pub(crate) struct Sampler {
    pub rng: rand_chacha::ChaCha8Rng,
    /// Column-group completions kept per stage.
    pub completions: usize,
    /// Cheapest options kept per completion.
    pub options: usize,
}

pub(crate) struct Engine<'t> {
    template: &'t Template,
    plan: [usize; PAIRS],
    goal: Goal,
    memo: HashMap<(usize, u8, ColGroup), Arc<Vec<StageOption>>>,
    pub best: Option<Leaf>,
    /// Reach goal: solved unknown values with the fewest BXORs seen.
    pub reached: FxHashMap<[u8; BITS], usize>,
    visited: FxHashMap<(usize, SymMatrix, Constraints), usize>,
    pub failure: Option<(usize, String)>,
    sampler: Option<Sampler>,
}

impl<'t> Engine<'t> {
    pub fn new(template: &'t Template, goal: Goal, sampler: Option<Sampler>) -> Self {
        Self {
            template,
            plan: template.stages(),
            goal,
            memo: HashMap::new(),
            best: None,
            reached: FxHashMap::default(),
            visited: FxHashMap::default(),
            failure: None,
            sampler,
        }
    }

    fn fail(&mut self, stage: usize, reason: String) {
        if self.failure.as_ref().is_none_or(|(s, _)| stage >= *s) {
            self.failure = Some((stage, reason));
        }
    }

    fn options(&mut self, col: &ColGroup, p: usize, active: u8) -> Arc<Vec<StageOption>> {
        self.memo
            .entry((p, active, *col))
            .or_insert_with(|| Arc::new(stage_options(col, p, active)))
            .clone()
    }

    /// Admissible column-group completions of stage `stage`, with their options.
    pub fn completions(
        &mut self,
        stage: usize,
        sym: &SymMatrix,
        cons: &Constraints,
        active: u8,
    ) -> Vec<(u8, u8, Arc<Vec<StageOption>>)> {
        let p = self.plan[stage];
        let (s1, s2) = (cons.columns[2 * p - 2], cons.columns[2 * p - 1]);
        let mut out = Vec::new();
        let mut last_violation = None;
        for v1 in s1.solutions() {
            for v2 in s2.solutions() {
                let col = column_group(sym, p, v1, v2);
                let stray = pairs_of(all_pairs() & !active).find(|&q| !block(&col, q).is_zero());
                if let Some(q) = stray {
                    last_violation =
                        Some(format!("isolated pair {q} reappears in column group {p}"));
                    continue;
                }
                if let Some((k, expected)) = det_violation(&col, p, active) {
                    last_violation = Some(format!("det(m_{k}{p}) must be {expected}"));
                    continue;
                }
                let opts = self.options(&col, p, active);
                out.push((v1, v2, opts));
            }
        }
        if out.is_empty() {
            let reason = last_violation.unwrap_or_else(|| "no admissible assignment".into());
            self.fail(stage + 1, reason);
        }
        if let Some(s) = self.sampler.as_mut() {
            use rand::seq::SliceRandom;
            out.shuffle(&mut s.rng);
            out.truncate(s.completions);
        }
        out
    }

    fn prune(&self, bxor: usize, ops: usize, len: usize) -> bool {
        match self.goal {
            Goal::Best => self
                .best
                .as_ref()
                .is_some_and(|b| (bxor, ops, len) > b.score),
            Goal::Reach { budget } => bxor > budget,
        }
    }

    #[allow(clippy::too_many_arguments)]
    pub fn dfs(
        &mut self,
        stage: usize,
        sym: &SymMatrix,
        cons: &Constraints,
        active: u8,
        program: &mut Vec<(Vec<u8>, Vec<Gate>)>,
        counter: LiftCounter,
        bxor: usize,
        len: usize,
    ) {
        if stage == PAIRS {
            let values = cons.values().expect("every column is fixed by its stage");
            let leaf = Leaf {
                score: (bxor, counter.count(), len),
                program: program.clone(),
                values,
            };
            match self.goal {
                Goal::Best => {
                    if self.best.as_ref().is_none_or(|b| leaf.better_than(b)) {
                        self.best = Some(leaf);
                    }
                }
                Goal::Reach { .. } => {
                    let seen = self.reached.entry(values).or_insert(bxor);
                    *seen = (*seen).min(bxor);
                }
            }
            return;
        }
        if let Goal::Reach { .. } = self.goal {
            match self.visited.get(&(stage, *sym, *cons)) {
                Some(&b) if b <= bxor => return,
                _ => {
                    self.visited.insert((stage, *sym, *cons), bxor);
                }
            }
        }
        let p = self.plan[stage];
        let option_limit = self.sampler.as_ref().map_or(usize::MAX, |s| s.options);
        let mut branches: Vec<(Arc<Vec<StageOption>>, usize, Constraints)> = Vec::new();
        for (v1, v2, opts) in self.completions(stage, sym, cons, active) {
            let mut fixed = *cons;
            let ok = fixed.columns[2 * p - 2].fix(v1).is_ok()
                && fixed.columns[2 * p - 1].fix(v2).is_ok();
            debug_assert!(ok);
            for (i, opt) in opts.iter().enumerate().take(option_limit) {
                let mut next = fixed;
                match isolate_rows(sym, &opt.transform, &mut next, p, active) {
                    Ok(()) => branches.push((opts.clone(), i, next)),
                    Err(k) => self.fail(
                        stage + 1,
                        format!("row block m_{p}{k} cannot vanish under the given assignment"),
                    ),
                }
            }
        }
        branches.sort_by(|a, b| a.0[a.1].key().cmp(&b.0[b.1].key()));
        for (opts, i, next_cons) in branches {
            let opt = &opts[i];
            let mut next_counter = counter;
            next_counter.extend(opt.gates.iter());
            let (nb, nl) = (bxor + opt.bxor, len + opt.gates.len());
            if self.prune(nb, next_counter.count(), nl) {
                continue;
            }
            let mut next_sym = *sym;
            for &g in &opt.gates {
                next_sym.apply_gate(g);
            }
            program.push((opt.cleared.clone(), opt.gates.clone()));
            self.dfs(
                stage + 1,
                &next_sym,
                &next_cons,
                active & !pair_mask(p),
                program,
                next_counter,
                nb,
                nl,
            );
            program.pop();
        }
    }

    pub fn run(&mut self, cons: &Constraints) {
        let sym = SymMatrix::from_template(self.template);
        self.dfs(
            0,
            &sym,
            cons,
            all_pairs(),
            &mut Vec::new(),
            LiftCounter::new(),
            0,
            0,
        );
    }
}

/// Per-stage record of a reduction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StageRecord {
    pub stage: usize,
    pub pivot: usize,
    pub gates: Vec<Gate>,
    /// The solved matrix after this and all earlier stages.
    pub checkpoint: CodeMatrix,
    /// Unknowns of the pivot's columns first determined here.
    pub enumerated: Assignment,
    /// Unknowns first determined here by the isolation constraints.
    pub forced: Assignment,
}

/// Stage-by-stage history of a reduction.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct EliminationTrace {
    pub stages: Vec<StageRecord>,
}

/// Replays stage programs on the template to rebuild checkpoints and bindings.
pub(crate) fn build_trace(
    template: &Template,
    stages: &[Vec<Gate>],
    values: &[u8; BITS],
) -> EliminationTrace {
    let plan = template.stages();
    let unknowns = template.unknowns();
    let mut sym = SymMatrix::from_template(template);
    let mut cons = Constraints::new(template);
    let mut active = all_pairs();
    let mut out = Vec::new();
    let known = |cons: &Constraints| -> Vec<bool> {
        unknowns.iter().map(|&u| cons.value(u).is_some()).collect()
    };
    let newly = |before: &[bool], cons: &Constraints| -> Assignment {
        let mut a = Assignment::new();
        for (i, &u) in unknowns.iter().enumerate() {
            if !before[i] {
                if let Some(v) = cons.value(u) {
                    a.set(u, v);
                }
            }
        }
        a
    };
    for (s, gates) in stages.iter().enumerate() {
        let p = plan[s];
        let before = known(&cons);
        for c in [2 * p - 1, 2 * p] {
            cons.columns[c - 1]
                .fix(values[c - 1])
                .expect("final values satisfy every constraint");
        }
        let enumerated = newly(&before, &cons);
        let before = known(&cons);
        for &g in gates {
            sym.apply_gate(g);
        }
        isolate(&sym, &mut cons, p, active).expect("final values satisfy isolation");
        let forced = newly(&before, &cons);
        active &= !pair_mask(p);
        out.push(StageRecord {
            stage: s + 1,
            pivot: p,
            gates: gates.clone(),
            checkpoint: sym.evaluate(values),
            enumerated,
            forced,
        });
    }
    EliminationTrace { stages: out }
}

/// Unknowns of `template` as an assignment, from per-column values.
pub(crate) fn values_to_assignment(template: &Template, values: &[u8; BITS]) -> Assignment {
    let mut a = Assignment::new();
    for u in template.unknowns() {
        a.set(u, values[u.column as usize - 1] & (1 << u.slot) != 0);
    }
    a
}

/// Assignments of the unknowns in pivot `p`'s columns meeting the stage's determinant conditions.
///
/// `stage` is 1-based. The conditions are read on the template as given, so
/// for stage 1 this is exact; later stages see the template without the row
/// operations of earlier stages.
pub fn enumerate_assignments(template: &Template, stage: usize) -> Vec<Assignment> {
    assert!(
        (1..=PAIRS).contains(&stage),
        "stage {stage} out of range 1..=5"
    );
    let plan = template.stages();
    let p = plan[stage - 1];
    let active = plan[stage - 1..]
        .iter()
        .fold(0, |acc, &k| acc | pair_mask(k));
    let sym = SymMatrix::from_template(template);
    let cons = Constraints::new(template);
    let (s1, s2) = (cons.columns[2 * p - 2], cons.columns[2 * p - 1]);
    let mut out = Vec::new();
    for v1 in s1.solutions() {
        for v2 in s2.solutions() {
            let col = column_group(&sym, p, v1, v2);
            if det_violation(&col, p, active).is_some() {
                continue;
            }
            let mut a = Assignment::new();
            for s in 0..template.slots() {
                for (c, v) in [(2 * p - 1, v1), (2 * p, v2)] {
                    let u = Unknown::new(s, c);
                    if template.is_unknown(u) {
                        a.set(u, v & (1 << s) != 0);
                    }
                }
            }
            out.push(a);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn row_gate_matches_gate_matrix() {
        for g in Gate::all() {
            let mut rows = *CodeMatrix::identity().rows();
            row_gate(&mut rows, g);
            assert_eq!(CodeMatrix::from_rows(rows), g.matrix());
        }
    }

    #[test]
    fn options_clear_the_column_group() {
        // Column group 1 of a matrix whose other blocks are all nonzero with det 0.
        let mut col: ColGroup = [0; BITS];
        let blocks = [
            Block2::new(true, true, false, true),
            Block2::new(true, false, false, false),
            Block2::new(false, true, false, true),
            Block2::new(true, true, true, true),
            Block2::ZERO,
        ];
        for (i, b) in blocks.iter().enumerate() {
            col[2 * i] = b.rows()[0];
            col[2 * i + 1] = b.rows()[1];
        }
        let opts = stage_options(&col, 1, all_pairs());
        assert!(!opts.is_empty());
        for o in &opts {
            assert_eq!(o.bxor, 3);
            let mut c = col;
            for &g in &o.gates {
                row_gate(&mut c, g);
            }
            assert_eq!(block(&c, 1), Block2::IDENTITY);
            assert!((2..=5).all(|k| block(&c, k).is_zero()));
        }
        let mut transforms: Vec<_> = opts.iter().map(|o| o.transform).collect();
        transforms.dedup();
        assert_eq!(transforms.len(), opts.len());
    }

    #[test]
    fn no_options_when_determinants_fail() {
        let col: ColGroup = [0; BITS];
        assert!(stage_options(&col, 1, all_pairs()).is_empty());
    }
}
