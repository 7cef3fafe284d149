// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

//! Synthesis of five-pair code matrices and their bilateral circuits.

mod akin;
mod block;
mod error;
mod local;
mod reduce;
mod schedule;
mod search;
mod stage;
mod symbolic;
mod template;

pub use akin::{akin_normalize, ColumnOp};
pub use block::block_eliminate;
pub use error::SynthesisError;
pub use local::Local;
pub use reduce::{staged_reduce, Reduction};
pub use search::{search_min_bxor, search_with, SearchConfig, SearchHit};
pub use stage::{enumerate_assignments, stage_options, EliminationTrace, StageOption, StageRecord};
pub use symbolic::{ColumnSystem, Conflict, Constraints, SymMatrix};
pub use template::{
    Assignment, Template, Unknown, DEFAULT_STAGES, MAX_UNKNOWN_ROWS, MEASUREMENT_ROWS,
};
