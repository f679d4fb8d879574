//! The twirl-based 2→1 recurrence step: both inputs are brought to Werner
//! form, then a bilateral CNOT from pair a to pair b is followed by a
//! computational-basis measurement of pair b, keeping pair a iff the
//! outcomes coincide.

use super::{two_pair_step, PurificationStep, StepOutcome};
use crate::bell::BellDiagonalState;
use crate::error::Result;

#[derive(Debug, Default, Clone, Copy)]
pub struct BennettStep;

impl BennettStep {
    pub fn step(&self, a: &BellDiagonalState, b: &BellDiagonalState) -> Result<StepOutcome> {
        two_pair_step(&a.twirl_to_werner(), &b.twirl_to_werner(), false)
    }
}

impl PurificationStep for BennettStep {
    fn id(&self) -> &'static str {
        "bennett"
    }

    fn arity(&self) -> usize {
        2
    }

    fn evaluate(&self, inputs: &[BellDiagonalState]) -> Result<StepOutcome> {
        self.check_arity(inputs)?;
        self.step(&inputs[0], &inputs[1])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn perfect_inputs_stay_perfect() {
        let p = BellDiagonalState::perfect();
        let out = BennettStep.step(&p, &p).unwrap();
        assert!((out.state.fidelity() - 1.0).abs() < 1e-15);
        assert!((out.success_probability - 1.0).abs() < 1e-15);
    }

    #[test]
    fn werner_recurrence_closed_form() {
        // F' = (F² + w²) / (F² + 2Fw + 5w²) with w = (1−F)/3
        for f in [0.55, 0.7, 0.85, 0.95] {
            let s = BellDiagonalState::werner(f).unwrap();
            let out = BennettStep.step(&s, &s).unwrap();
            let w = (1.0 - f) / 3.0;
            let denom = f * f + 2.0 * f * w + 5.0 * w * w;
            assert!((out.state.fidelity() - (f * f + w * w) / denom).abs() < 1e-12);
            assert!((out.success_probability - denom).abs() < 1e-12);
        }
    }

    #[test]
    fn purification_gains_exactly_above_one_half() {
        for f in [0.55, 0.6, 0.8, 0.95] {
            let s = BellDiagonalState::werner(f).unwrap();
            let out = BennettStep.step(&s, &s).unwrap();
            assert!(out.state.fidelity() > f, "should gain at F = {f}");
        }
        for f in [0.3, 0.4, 0.45] {
            let s = BellDiagonalState::werner(f).unwrap();
            let out = BennettStep.step(&s, &s).unwrap();
            assert!(out.state.fidelity() <= f + 1e-12, "no gain at F = {f}");
        }
    }
}
