// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

//! Reduction of a template with chosen unknowns to the identity.

use gate_algebra::{Circuit, Gate};
use gf2_core::CodeMatrix;
use serde::{Deserialize, Serialize};

use crate::error::SynthesisError;
use crate::schedule::schedule_stages;
use crate::stage::{build_trace, values_to_assignment, EliminationTrace, Engine, Goal};
use crate::symbolic::Constraints;
use crate::template::{Assignment, Template};

/// A solved code matrix with the circuit that reduces it to the identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Reduction {
    /// Elimination order: applying these gates as row operations takes `matrix` to `I`.
    pub circuit: Circuit,
    pub matrix: CodeMatrix,
    /// Values of every template unknown.
    pub assignment: Assignment,
    pub trace: EliminationTrace,
}

impl Reduction {
    /// The encoder, which is the elimination circuit itself.
    pub fn encoder(&self) -> &Circuit {
        &self.circuit
    }

    /// The decoder `d` with `circuit_matrix(d) = matrix`.
    pub fn decoder(&self) -> Circuit {
        self.circuit.inverse()
    }

    pub(crate) fn from_stages(
        template: &Template,
        stages: Vec<Vec<Gate>>,
        values: [u8; 10],
    ) -> Self {
        let stages = schedule_stages(stages);
        let trace = build_trace(template, &stages, &values);
        let matrix = crate::symbolic::SymMatrix::from_template(template).evaluate(&values);
        let circuit: Circuit = stages.into_iter().flatten().collect();
        debug_assert_eq!(circuit.inverse().matrix(), matrix);
        Self {
            circuit,
            matrix,
            assignment: values_to_assignment(template, &values),
            trace,
        }
    }
}

/// Runs staged elimination on `template` with some unknowns fixed by `choices`.
///
/// Remaining unknowns are enumerated stage by stage; among all completions the
/// reduction with the fewest BXOR gates, then fewest lifted operations, then
/// fewest gates, then the lexicographically smallest gate list is returned.
pub fn staged_reduce(
    template: &Template,
    choices: &Assignment,
) -> Result<Reduction, SynthesisError> {
    template.check_assignment(choices)?;
    let mut cons = Constraints::new(template);
    cons.assign_all(choices)
        .map_err(|_| SynthesisError::Template("contradictory choices".into()))?;
    let mut engine = Engine::new(template, Goal::Best, None);
    engine.run(&cons);
    match engine.best.take() {
        Some(leaf) => Ok(Reduction::from_stages(template, leaf.stages(), leaf.values)),
        None => {
            let (stage, reason) = engine
                .failure
                .take()
                .unwrap_or((1, "no admissible assignment".into()));
            Err(SynthesisError::Stage {
                stage,
                pivot: template.stages()[stage - 1],
                reason,
            })
        }
    }
}
