//! Simulation and analysis workbench for measurement-based entanglement
//! purification under local noise.
//!
//! The crate is layered:
//!
//! - [`pauli`], [`channel`], [`bell`]: exact Pauli/Bell-diagonal algebra and
//!   the closed-form action of Pauli noise channels.
//! - [`code`]: stabilizer codes in symplectic GF(2) form ([[5,1,3]] built in).
//! - [`dense`]: the dense density-matrix oracle — ground truth for every
//!   closed-form map and commutation identity.
//! - [`protocols`]: m→1 purification steps behind a common trait, selected
//!   by name from a registry, composed into concatenation trees.
//! - [`mbqc`]: the measurement-based layer — resource states, Bell-measured
//!   read-in, outcome classification, resource concatenation.
//! - [`analysis`]: noisy fixed-point iteration, threshold bisection, the
//!   closed-form asymptotic threshold, and graph-state conversions.
//! - [`verify`]: seeded randomized verification suites behind the CLI.

pub mod analysis;
pub mod bell;
pub mod channel;
pub mod code;
pub mod dense;
pub mod error;
pub mod mbqc;
pub mod pauli;
pub mod protocols;
pub mod verify;

pub use bell::BellDiagonalState;
pub use channel::PauliChannel;
pub use code::StabilizerCode;
pub use error::{Error, Result};
pub use pauli::{symplectic_product, PauliLabel, PauliString};
