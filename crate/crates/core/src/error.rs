//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("pauli string length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),

    #[error("probability out of range [0, 1]: {0}")]
    InvalidProbability(f64),

    #[error("werner fidelity out of range [1/4, 1]: {0}")]
    InvalidFidelity(f64),

    #[error("value out of range: {0}")]
    OutOfRange(String),

    #[error("qubit budget exceeded: need {needed} qubits, budget is {budget}")]
    QubitBudget { needed: usize, budget: usize },

    #[error("qubit index {index} out of range for {n} qubits")]
    QubitIndex { index: usize, n: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid state: {0}")]
    InvalidState(String),

    #[error("invalid channel: {0}")]
    InvalidChannel(String),

    #[error("invalid stabilizer code: {0}")]
    InvalidCode(String),

    #[error("unknown protocol: {0}")]
    UnknownProtocol(String),

    #[error("expected {expected} input states, got {got}")]
    ArityMismatch { expected: usize, got: usize },

    #[error("success probability below {0:e}; step failed")]
    VanishingSuccess(f64),

    #[error("outcome pattern not present in the derived classification table (convention drift?)")]
    UnknownOutcomePattern,

    #[error("bisection bracket [{lo}, {hi}] does not straddle a threshold")]
    BisectionBracket { lo: f64, hi: f64 },

    #[error("unsupported operation: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
