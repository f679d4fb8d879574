//! Dense brute-force engine: exact pure states and density matrices on a
//! dozen qubits, Bell measurements, graph states, and channel–state duals.
//! Everything the closed-form layers claim is checked against this module.

pub mod bell;
pub mod gates;
pub mod graph;
pub mod jamiolkowski;
pub mod pure;
pub mod state;

pub use bell::{
    bell_diagonal_to_dense, bell_measure, bell_pair_pure, bell_state_pure, prepare_bell_pairs,
    project_bell, BellBasis, BellBranch, BellOutcome, ALL_BELL,
};
pub use gates::CircuitOp;
pub use graph::{prepare_graph_state, prepare_graph_state_pure, Graph};
pub use jamiolkowski::{dual_state_pure, jamiolkowski_state, CliffordCircuit, DualState};
pub use pure::{PureState, DEFAULT_QUBIT_BUDGET};
pub use state::{bell_diagonal_weights, DenseState};
