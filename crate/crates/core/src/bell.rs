//! Bell-diagonal two-qubit states and the closed-form action of Pauli noise
//! on them.
//!
//! A Bell-diagonal state is the mixture Σ_E λ_E (I⊗E)|Φ+⟩⟨Φ+|(I⊗E)† over the
//! four error labels E ∈ {I, X, Y, Z}, error acting on the second qubit.
//! The fidelity with Φ+ is λ_I. All protocol closed forms in this crate are
//! maps on these 4-vectors.

use crate::channel::{conjugation_row, PauliChannel, PROB_TOLERANCE};
use crate::error::{Error, Result};
use crate::pauli::{PauliLabel, PAULI_LABELS};

/// Probability weights over the four Bell-basis error labels.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BellDiagonalState {
    lambda: [f64; 4],
}

impl BellDiagonalState {
    /// Build from weights indexed (I, X, Y, Z). Weights must be non-negative
    /// and sum to 1 within 1e-12.
    pub fn new(lambda: [f64; 4]) -> Result<Self> {
        if lambda
            .iter()
            .any(|l| *l < -PROB_TOLERANCE || !l.is_finite())
        {
            return Err(Error::InvalidState(format!(
                "negative bell-diagonal weight in {lambda:?}"
            )));
        }
        let total: f64 = lambda.iter().sum();
        if (total - 1.0).abs() > 1e-9 {
            return Err(Error::InvalidState(format!(
                "bell-diagonal weights sum to {total}, expected 1"
            )));
        }
        let mut clamped = lambda;
        for l in &mut clamped {
            if *l < 0.0 {
                *l = 0.0;
            }
        }
        Ok(Self { lambda: clamped })
    }

    /// Renormalize a non-negative weight vector; fails when the total is
    /// below `1e-14` (a post-selected branch with no support).
    pub fn from_unnormalized(weights: [f64; 4]) -> Result<Self> {
        let total: f64 = weights.iter().sum();
        if total < 1e-14 {
            return Err(Error::VanishingSuccess(1e-14));
        }
        let mut lambda = weights;
        for l in &mut lambda {
            *l /= total;
        }
        Self::new(lambda)
    }

    /// The perfect pair |Φ+⟩.
    pub fn perfect() -> Self {
        Self {
            lambda: [1.0, 0.0, 0.0, 0.0],
        }
    }

    pub fn lambda(&self) -> [f64; 4] {
        self.lambda
    }

    pub fn weight(&self, label: PauliLabel) -> f64 {
        self.lambda[label.index()]
    }

    /// Overlap with Φ+.
    pub fn fidelity(&self) -> f64 {
        self.lambda[0]
    }

    /// Werner state of fidelity F: the three error weights are equal.
    pub fn werner(fidelity: f64) -> Result<Self> {
        if !(0.25..=1.0).contains(&fidelity) || !fidelity.is_finite() {
            return Err(Error::InvalidFidelity(fidelity));
        }
        let rest = (1.0 - fidelity) / 3.0;
        Self::new([fidelity, rest, rest, rest])
    }

    /// Keep λ_I, average the other three weights.
    pub fn twirl_to_werner(&self) -> Self {
        let rest = (self.lambda[1] + self.lambda[2] + self.lambda[3]) / 3.0;
        Self {
            lambda: [self.lambda[0], rest, rest, rest],
        }
    }

    /// Apply a Pauli channel to one qubit of the pair. Conjugating either
    /// side permutes the labels the same way (Pauli transposition only flips
    /// phases), so no side argument is needed.
    pub fn apply_channel_one_sided(&self, ch: &PauliChannel) -> Self {
        let mut out = [0.0; 4];
        for &e in &PAULI_LABELS {
            let row = conjugation_row(ch, e);
            let w = self.lambda[e.index()];
            for (o, r) in out.iter_mut().zip(row) {
                *o += w * r;
            }
        }
        Self { lambda: out }
    }

    /// Local white noise of parameter p on both qubits:
    /// λ'_E = p²·λ_E + (1−p²)/4.
    pub fn apply_lwn_both_sides(&self, p: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) || !p.is_finite() {
            return Err(Error::InvalidProbability(p));
        }
        let p2 = p * p;
        Ok(Self {
            lambda: self.lambda.map(|l| p2 * l + (1.0 - p2) / 4.0),
        })
    }
}
