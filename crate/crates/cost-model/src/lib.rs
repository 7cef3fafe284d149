// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

//! Operation, CNOT and laser-pulse accounting for lifted circuits.
//!
//! Pipeline: lifted gates → [`fuse_cnot_pairs`] → [`lower_ion_trap`] →
//! [`pulse_count`]. [`CostReport`] bundles the three figures.

pub mod fusion;
pub mod pulses;
pub mod report;

pub use fusion::{fuse_cnot_pairs, unfused, FusedGate};
pub use pulses::{lower_ion_trap, pulse_count, Primitive, PulseRules};
pub use report::{
    count_ops, encoder_pulses, reference_rows, table2_report, CostReport, OpCounts, Table2,
    Table2Entry, Table2Row,
};
