// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

use std::collections::BTreeSet;

use gf2_core::{syndrome_table, validate_code_matrix, CodeMatrix};
use proptest::prelude::*;
use synthesis::{akin_normalize, staged_reduce, Assignment, ColumnOp, Template};

fn fixture(name: &str) -> String {
    std::fs::read_to_string(format!(
        "{}/../../fixtures/{name}",
        env!("CARGO_MANIFEST_DIR")
    ))
    .unwrap()
}

fn m1() -> CodeMatrix {
    fixture("m1.txt").parse().unwrap()
}

fn column_op() -> impl Strategy<Value = ColumnOp> {
    (1u8..=5, 0..3).prop_map(|(pair, kind)| match kind {
        0 => ColumnOp::Swap { pair },
        1 => ColumnOp::AddPhase { pair },
        _ => ColumnOp::AddAmplitude { pair },
    })
}

#[test]
fn akin_fixture_normalizes() {
    let a: CodeMatrix = fixture("akin.txt").parse().unwrap();
    let (ops, m) = akin_normalize(&a).unwrap();
    assert!(!ops.is_empty());
    assert!(m.is_identity());
    let mut replay = a;
    for op in &ops {
        op.apply(&mut replay);
    }
    assert!(replay.is_identity());
}

#[test]
fn worked_matrix_is_not_akin() {
    assert!(akin_normalize(&m1()).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn random_akin_identities_round_trip(ops in proptest::collection::vec(column_op(), 0..16)) {
        let mut a = CodeMatrix::identity();
        for op in &ops {
            op.apply(&mut a);
        }
        let (found, m) = akin_normalize(&a).unwrap();
        prop_assert!(m.is_identity());
        let mut replay = a;
        for op in &found {
            op.apply(&mut replay);
        }
        prop_assert!(replay.is_identity());
    }

    #[test]
    fn column_ops_preserve_the_measurement_word_set(ops in proptest::collection::vec(column_op(), 0..12)) {
        let mut m = m1();
        for op in &ops {
            op.apply(&mut m);
        }
        let words = |m: &CodeMatrix| -> BTreeSet<u8> {
            syndrome_table(m).iter().map(|r| r.measurement.bits()).collect()
        };
        prop_assert_eq!(words(&m), words(&m1()));
        prop_assert!(validate_code_matrix(&m).is_valid());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// Hiding a few entries of the worked matrix: the reduction recovers a valid
    /// matrix agreeing with every visible entry, and replays to the identity.
    #[test]
    fn hidden_entries_are_recovered(hidden in proptest::collection::btree_set((0usize..6, 1usize..=10), 1..6)) {
        let rows = [1usize, 2, 3, 5, 7, 9];
        let mut text: Vec<Vec<char>> = m1().rows().iter().map(|r| format!("{r:010b}").chars().collect()).collect();
        for &(r, c) in &hidden {
            text[rows[r] - 1][c - 1] = '?';
        }
        let body: Vec<String> = text.into_iter().map(|r| r.into_iter().collect()).collect();
        let t: Template = format!("stages: 4 2 1 3 5\n{}\n", body.join("\n")).parse().unwrap();
        let r = staged_reduce(&t, &Assignment::new()).unwrap();
        prop_assert!(validate_code_matrix(&r.matrix).is_valid());
        prop_assert_eq!(r.decoder().matrix(), r.matrix);
        prop_assert!(r.circuit.bxor_count() <= 6);
        for row in 1..=10 {
            for col in 1..=10 {
                if !t.is_unknown_at(row, col) {
                    prop_assert_eq!(r.matrix.get(row, col), m1().get(row, col));
                }
            }
        }
        let mut m = r.matrix;
        r.circuit.apply_rows(&mut m);
        prop_assert!(m.is_identity());
    }
}
