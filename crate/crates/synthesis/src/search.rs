// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

//! Enumeration of solved matrices with few BXOR gates.

use gate_algebra::Circuit;
use gf2_core::{validate_code_matrix, CodeMatrix, BITS};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};

use crate::reduce::staged_reduce;
use crate::stage::{values_to_assignment, Engine, Goal, Sampler};
use crate::symbolic::Constraints;
use crate::template::Template;

/// Search controls. Without a seed the search is exhaustive.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub seed: Option<u64>,
    /// Sampled mode: column-group completions kept per stage.
    pub completions_per_stage: usize,
    /// Sampled mode: cheapest stage options kept per completion.
    pub options_per_completion: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            seed: None,
            completions_per_stage: 128,
            options_per_completion: 16,
        }
    }
}

impl SearchConfig {
    pub fn sampled(seed: u64) -> Self {
        Self {
            seed: Some(seed),
            ..Self::default()
        }
    }
}

/// A verified decoder and the code matrix it realizes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchHit {
    /// Decoder circuit: `circuit_matrix(decoder) = matrix`.
    pub decoder: Circuit,
    pub matrix: CodeMatrix,
}

impl SearchHit {
    pub fn bxor_count(&self) -> usize {
        self.decoder.bxor_count()
    }
}

/// Every solved matrix of `template` whose best staged circuit uses at most `budget` BXORs.
pub fn search_min_bxor(template: &Template, budget: usize) -> Vec<SearchHit> {
    search_with(template, budget, &SearchConfig::default())
}

/// [`search_min_bxor`] with explicit controls.
///
/// Matrices are collected by a depth-first pass over stage completions and
/// options, pruned by the budget. Each matrix is then reduced again with all
/// unknowns fixed, and its circuit verified before it is returned. Results are
/// sorted by BXOR count, total gates, then circuit text.
pub fn search_with(template: &Template, budget: usize, config: &SearchConfig) -> Vec<SearchHit> {
    let p = template.stages()[0];
    let cons = Constraints::new(template);
    let (s1, s2) = (cons.columns[2 * p - 2], cons.columns[2 * p - 1]);
    let mut firsts: Vec<(u8, u8)> = s1
        .solutions()
        .flat_map(|v1| s2.solutions().map(move |v2| (v1, v2)))
        .collect();
    if let Some(seed) = config.seed {
        firsts.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        firsts.truncate(config.completions_per_stage);
    }
    let reached = firsts
        .par_iter()
        .enumerate()
        .map(|(i, &(v1, v2))| {
            let mut c = cons;
            let ok = c.columns[2 * p - 2].fix(v1).is_ok() && c.columns[2 * p - 1].fix(v2).is_ok();
            debug_assert!(ok);
            let sampler = config.seed.map(|seed| Sampler {
                rng: ChaCha8Rng::seed_from_u64(seed ^ (i as u64 + 1)),
                completions: config.completions_per_stage,
                options: config.options_per_completion,
            });
            let mut engine = Engine::new(template, Goal::Reach { budget }, sampler);
            engine.run(&c);
            engine.reached
        })
        .reduce(FxHashMap::default, merge_min);
    let mut hits: Vec<SearchHit> = reached
        .into_par_iter()
        .filter_map(|(values, _)| verified_hit(template, &values, budget))
        .collect();
    hits.sort_by_cached_key(|h| (h.bxor_count(), h.decoder.len(), h.decoder.to_string()));
    hits
}

fn merge_min(
    mut a: FxHashMap<[u8; BITS], usize>,
    b: FxHashMap<[u8; BITS], usize>,
) -> FxHashMap<[u8; BITS], usize> {
    for (k, v) in b {
        let e = a.entry(k).or_insert(v);
        *e = (*e).min(v);
    }
    a
}

fn verified_hit(template: &Template, values: &[u8; BITS], budget: usize) -> Option<SearchHit> {
    let reduction = staged_reduce(template, &values_to_assignment(template, values)).ok()?;
    let decoder = reduction.decoder();
    let valid = decoder.bxor_count() <= budget
        && decoder.matrix() == reduction.matrix
        && validate_code_matrix(&reduction.matrix).is_valid();
    valid.then_some(SearchHit {
        decoder,
        matrix: reduction.matrix,
    })
}
