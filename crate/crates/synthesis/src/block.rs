// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

use std::collections::VecDeque;

use gate_algebra::Gate;
use gf2_core::{Block2, CodeMatrix, PAIRS};

use crate::error::SynthesisError;

/// Stacked column blocks `[m_αγ; m_βγ]`, rows `x_α, y_α, x_β, y_β`.
type Stack = [u8; 4];

fn stack_gate(s: Stack, g: Gate, alpha: u8) -> Stack {
    let [mut xa, mut ya, mut xb, mut yb] = s;
    let on_alpha = |p: u8| p == alpha;
    match g {
        Gate::By(p) if on_alpha(p) => std::mem::swap(&mut xa, &mut ya),
        Gate::By(_) => std::mem::swap(&mut xb, &mut yb),
        Gate::Sxbx(p) if on_alpha(p) => ya ^= xa,
        Gate::Sxbx(_) => yb ^= xb,
        Gate::Bxor { source, .. } if on_alpha(source) => {
            xa ^= xb;
            yb ^= ya;
        }
        Gate::Bxor { .. } => {
            xb ^= xa;
            ya ^= yb;
        }
    }
    [xa, ya, xb, yb]
}

fn check_pair(p: usize) -> Result<(), SynthesisError> {
    if (1..=PAIRS).contains(&p) {
        Ok(())
    } else {
        Err(SynthesisError::PairOutOfRange(p))
    }
}

/// Shortest gate sequence on pairs `α`, `β` taking `[m_αγ; m_βγ]` to `[I; 0]`.
///
/// Requires `det(m_αγ) = 1` and `det(m_βγ) = 0`. Ties between shortest
/// sequences go to the lexicographically smallest under `BY < SXBX < BXOR`,
/// then pair index. Returns the gates and the row-reduced matrix.
pub fn block_eliminate(
    m: &CodeMatrix,
    alpha: usize,
    beta: usize,
    gamma: usize,
) -> Result<(Vec<Gate>, CodeMatrix), SynthesisError> {
    for p in [alpha, beta, gamma] {
        check_pair(p)?;
    }
    if alpha == beta {
        return Err(SynthesisError::SamePair(alpha, beta));
    }
    let (top, bottom) = (m.block(alpha, gamma), m.block(beta, gamma));
    if !top.det() {
        return Err(SynthesisError::Determinant {
            row: alpha,
            col: gamma,
            expected: 1,
        });
    }
    if bottom.det() {
        return Err(SynthesisError::Determinant {
            row: beta,
            col: gamma,
            expected: 0,
        });
    }
    let (a, b) = (alpha as u8, beta as u8);
    let mut moves = vec![
        Gate::By(a),
        Gate::By(b),
        Gate::Sxbx(a),
        Gate::Sxbx(b),
        Gate::Bxor {
            source: a,
            target: b,
        },
        Gate::Bxor {
            source: b,
            target: a,
        },
    ];
    moves.sort();

    let start: Stack = [
        top.rows()[0],
        top.rows()[1],
        bottom.rows()[0],
        bottom.rows()[1],
    ];
    let goal: Stack = [0b10, 0b01, 0, 0];
    // Breadth-first search with ordered expansion yields the lexicographically
    // smallest among the shortest paths.
    let mut parent: [Option<(u8, Gate)>; 256] = [None; 256];
    let key = |s: Stack| (s[0] << 6 | s[1] << 4 | s[2] << 2 | s[3]) as usize;
    let mut seen = [false; 256];
    seen[key(start)] = true;
    let mut queue = VecDeque::from([start]);
    while let Some(s) = queue.pop_front() {
        if s == goal {
            break;
        }
        for &g in &moves {
            let t = stack_gate(s, g, a);
            if !seen[key(t)] {
                seen[key(t)] = true;
                parent[key(t)] = Some((key(s) as u8, g));
                queue.push_back(t);
            }
        }
    }
    if !seen[key(goal)] {
        return Err(SynthesisError::Unreachable);
    }
    let mut gates = Vec::new();
    let mut k = key(goal);
    while let Some((prev, g)) = parent[k] {
        gates.push(g);
        k = prev as usize;
    }
    gates.reverse();

    let mut out = *m;
    for g in &gates {
        g.apply_rows(&mut out);
    }
    debug_assert_eq!(out.block(alpha, gamma), Block2::IDENTITY);
    debug_assert!(out.block(beta, gamma).is_zero());
    Ok((gates, out))
}
