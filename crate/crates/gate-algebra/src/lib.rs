// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

//! The three bilateral operations as elementary row operations over GF(2).
//!
//! Pair `p` owns rows `2p-1` (phase, `x`) and `2p` (amplitude, `y`):
//!
//! | gate          | row operation                          |
//! |---------------|----------------------------------------|
//! | `BXOR s t`    | `x_s ^= x_t`, `y_t ^= y_s`             |
//! | `BY p`        | swap `x_p` and `y_p`                   |
//! | `SXBX p`      | `y_p ^= x_p`                           |
//!
//! Every gate is an involution. A [`Circuit`] applies its gates in list order,
//! so its matrix is `gₙ·…·g₁`; the reversed list is its inverse.

pub mod circuit;
pub mod gate;

pub use circuit::{circuit_matrix, invert_circuit, Circuit};
pub use gate::{gate_matrix, Gate, GateError};
