// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

use gate_algebra::{circuit_matrix, gate_matrix, invert_circuit, Circuit, Gate};
use gf2_core::{CodeMatrix, Codeword};
use proptest::prelude::*;

fn gate() -> impl Strategy<Value = Gate> {
    prop::sample::select(Gate::all())
}

fn circuit(max: usize) -> impl Strategy<Value = Circuit> {
    prop::collection::vec(gate(), 0..=max).prop_map(Circuit::new)
}

#[test]
fn every_gate_is_a_symplectic_involution() {
    for g in Gate::all() {
        let m = gate_matrix(g);
        assert!((m * m).is_identity(), "{g}");
        assert_eq!(m.rank(), 10, "{g}");
        assert!(m.is_symplectic(), "{g}");
    }
}

#[test]
fn gate_matrices_are_elementary() {
    // Each gate differs from the identity in at most two rows.
    for g in Gate::all() {
        let m = gate_matrix(g);
        let changed = (1..=10)
            .filter(|&r| m.row(r) != CodeMatrix::identity().row(r))
            .count();
        assert!(changed <= 2, "{g}");
    }
}

#[test]
fn disjoint_gates_commute() {
    for a in Gate::all() {
        for b in Gate::all() {
            if a.pairs().all(|p| !b.touches(p)) {
                assert_eq!(
                    gate_matrix(a) * gate_matrix(b),
                    gate_matrix(b) * gate_matrix(a)
                );
            }
        }
    }
}

#[test]
fn elimination_order_convention() {
    // If gₙ…g₁·M = 1 then M is the matrix of the reversed list.
    let gates = vec![
        Gate::bxor(1, 4).unwrap(),
        Gate::Sxbx(2),
        Gate::By(2),
        Gate::bxor(2, 4).unwrap(),
        Gate::bxor(2, 3).unwrap(),
    ];
    let elim = Circuit::new(gates);
    let m = circuit_matrix(&elim.inverse());
    let mut reduced = m;
    elim.apply_rows(&mut reduced);
    assert!(reduced.is_identity());
    assert_eq!(circuit_matrix(&elim) * m, CodeMatrix::identity());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn circuit_times_inverse_is_identity(c in circuit(12)) {
        let inv = invert_circuit(&c);
        prop_assert!((circuit_matrix(&c) * circuit_matrix(&inv)).is_identity());
        prop_assert!((circuit_matrix(&inv) * circuit_matrix(&c)).is_identity());
        prop_assert_eq!(invert_circuit(&inv), c);
    }

    #[test]
    fn matrix_distributes_over_concatenation(a in circuit(8), b in circuit(8)) {
        prop_assert_eq!(circuit_matrix(&a.then(&b)), circuit_matrix(&b) * circuit_matrix(&a));
    }

    #[test]
    fn matrix_agrees_with_sequential_bit_maps(c in circuit(12), e in 0u16..1024) {
        let e = Codeword::from_bits(e);
        prop_assert_eq!(circuit_matrix(&c).apply(e), c.apply(e));
    }

    #[test]
    fn doubled_gate_cancels(g in gate()) {
        prop_assert!(circuit_matrix(&Circuit::new(vec![g, g])).is_identity());
    }

    #[test]
    fn text_round_trip(c in circuit(12)) {
        prop_assert_eq!(c.to_string().parse::<Circuit>().unwrap(), c);
    }
}
