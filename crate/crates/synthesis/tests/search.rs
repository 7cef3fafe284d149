// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

use gf2_core::{validate_code_matrix, CodeMatrix};
use synthesis::{search_min_bxor, search_with, SearchConfig, SearchHit, Template};

fn fixture(name: &str) -> String {
    std::fs::read_to_string(format!(
        "{}/../../fixtures/{name}",
        env!("CARGO_MANIFEST_DIR")
    ))
    .unwrap()
}

/// The worked matrix with columns 7 and 8 of every non-measurement row left open.
fn open_column_template() -> Template {
    let m1: CodeMatrix = fixture("m1.txt").parse().unwrap();
    let rows: Vec<String> = m1
        .rows()
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut cells: Vec<char> = format!("{r:010b}").chars().collect();
            if ![3, 5, 7, 9].contains(&i) {
                cells[6] = '?';
                cells[7] = '?';
            }
            cells.into_iter().collect()
        })
        .collect();
    format!("stages: 4 2 1 3 5\n{}\n", rows.join("\n"))
        .parse()
        .unwrap()
}

fn check(hits: &[SearchHit], budget: usize) {
    for h in hits {
        assert!(h.bxor_count() <= budget);
        assert_eq!(h.decoder.matrix(), h.matrix);
        assert!(validate_code_matrix(&h.matrix).is_valid());
    }
    let keys: Vec<_> = hits
        .iter()
        .map(|h| (h.bxor_count(), h.decoder.len(), h.decoder.to_string()))
        .collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
}

#[test]
fn exhaustive_search_finds_the_worked_matrix() {
    let m1: CodeMatrix = fixture("m1.txt").parse().unwrap();
    let hits = search_min_bxor(&open_column_template(), 6);
    check(&hits, 6);
    assert!(hits.iter().any(|h| h.matrix == m1));
}

#[test]
fn zero_budget_is_empty() {
    assert!(search_min_bxor(&open_column_template(), 0).is_empty());
    let full: Template = fixture("template.txt").parse().unwrap();
    assert!(search_with(&full, 0, &SearchConfig::sampled(1)).is_empty());
}

#[test]
fn sampled_search_on_the_open_template_finds_six_bxor_circuits() {
    let full: Template = fixture("template.txt").parse().unwrap();
    let a = search_with(&full, 6, &SearchConfig::sampled(7));
    assert!(!a.is_empty());
    check(&a, 6);
    assert_eq!(a[0].bxor_count(), 6);
    let b = search_with(&full, 6, &SearchConfig::sampled(7));
    assert_eq!(a, b);
}
