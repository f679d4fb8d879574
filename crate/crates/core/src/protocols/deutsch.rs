//! The 2→1 recurrence step with single-qubit x-rotations before the
//! bilateral CNOT: one party turns each qubit a quarter turn about x, the
//! other the inverse turn, both apply CNOT from pair a to pair b, measure
//! pair b in the computational basis, and keep pair a iff the outcomes
//! coincide.
//!
//! In the error-label picture the rotations exchange the Y and Z labels and
//! the bilateral CNOT propagates labels like any Pauli frame, which yields
//! the closed-form quadratic recurrence below. The oracle tests drive the
//! same circuit through the dense engine and confirm this table, branch
//! probabilities included.

use super::{two_pair_step, PurificationStep, StepOutcome};
use crate::bell::BellDiagonalState;
use crate::error::Result;

#[derive(Debug, Default, Clone, Copy)]
pub struct DeutschStep;

impl DeutschStep {
    pub fn step(&self, a: &BellDiagonalState, b: &BellDiagonalState) -> Result<StepOutcome> {
        two_pair_step(a, b, true)
    }
}

impl PurificationStep for DeutschStep {
    fn id(&self) -> &'static str {
        "deutsch"
    }

    fn arity(&self) -> usize {
        2
    }

    fn evaluate(&self, inputs: &[BellDiagonalState]) -> Result<StepOutcome> {
        self.check_arity(inputs)?;
        self.step(&inputs[0], &inputs[1])
    }
}
