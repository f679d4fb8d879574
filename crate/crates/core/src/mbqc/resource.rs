//! Resource states for measurement-based purification: per-party dual
//! states of the protocol's local circuit, with labeled input/output ports.
//!
//! A party's resource for an m→1 protocol has m+1 qubits: m input ports
//! (the kept halves of the dual-state construction) and one output port.
//! Concatenation Bell-measures an upstream output port into a downstream
//! input port, producing one larger resource.

use crate::channel::PauliChannel;
use crate::dense::{
    dual_state_pure, BellBasis, CircuitOp, CliffordCircuit, DenseState, PureState,
    DEFAULT_QUBIT_BUDGET,
};
use crate::error::{Error, Result};

/// Which communication party holds the resource. The two parties run
/// complex-conjugate circuits, so their resources differ only in rotation
/// senses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Party {
    A,
    B,
}

/// A per-party resource state with port bookkeeping. The pure form is kept
/// alongside the density matrix while the resource is noiseless; degrading
/// drops it.
#[derive(Debug, Clone)]
pub struct ResourceState {
    state: DenseState,
    pure: Option<PureState>,
    party: Party,
    input_ports: Vec<usize>,
    output_port: usize,
}

impl ResourceState {
    pub fn state(&self) -> &DenseState {
        &self.state
    }

    pub fn pure(&self) -> Option<&PureState> {
        self.pure.as_ref()
    }

    pub fn party(&self) -> Party {
        self.party
    }

    pub fn input_ports(&self) -> &[usize] {
        &self.input_ports
    }

    pub fn output_port(&self) -> usize {
        self.output_port
    }

    pub fn arity(&self) -> usize {
        self.input_ports.len()
    }

    pub fn qubits(&self) -> usize {
        self.state.qubits()
    }
}

/// The local circuit one party runs for a protocol tree. Wires are the
/// protocol's input pairs; measured wires are consumed and the single
/// surviving wire is the output.
fn party_circuit(protocol: &str, depth: usize, party: Party) -> Result<CliffordCircuit> {
    let rotate = match protocol {
        "deutsch" => true,
        "bennett" => false,
        "identity" => {
            if depth != 0 {
                return Err(Error::Unsupported(
                    "identity protocol has no concatenated form".into(),
                ));
            }
            return Ok(CliffordCircuit::new(1));
        }
        other => {
            return Err(Error::Unsupported(format!(
                "no local-circuit construction for protocol '{other}'"
            )))
        }
    };
    let m = 2usize.pow(depth as u32 + 1);
    let mut circuit = CliffordCircuit::new(m);
    let mut active: Vec<usize> = (0..m).collect();
    while active.len() > 1 {
        let mut survivors = Vec::with_capacity(active.len() / 2);
        for pair in active.chunks(2) {
            let (keep, measure) = (pair[0], pair[1]);
            if rotate {
                match party {
                    Party::A => {
                        circuit.push(CircuitOp::RxQuarter(keep));
                        circuit.push(CircuitOp::RxQuarter(measure));
                    }
                    Party::B => {
                        circuit.push(CircuitOp::RxQuarterInv(keep));
                        circuit.push(CircuitOp::RxQuarterInv(measure));
                    }
                }
            }
            circuit.push(CircuitOp::Cnot {
                control: keep,
                target: measure,
            });
            circuit.push(CircuitOp::PostselectZ {
                qubit: measure,
                outcome: false,
            });
            survivors.push(keep);
        }
        active = survivors;
    }
    Ok(circuit)
}

/// Build the party's resource for a registered protocol at the given
/// concatenation depth. The construction runs on 2m qubits, so only trees
/// with m ≤ budget/2 input pairs fit (2→1 and 4→1 at the default budget).
pub fn build_resource(protocol: &str, depth: usize, party: Party) -> Result<ResourceState> {
    let circuit = party_circuit(protocol, depth, party)?;
    let dual = dual_state_pure(&circuit, DEFAULT_QUBIT_BUDGET)?;
    let pure = dual.state.normalized()?;
    let m = dual.n_in;
    Ok(ResourceState {
        state: DenseState::from_pure(&pure),
        pure: Some(pure),
        party,
        input_ports: (0..m).collect(),
        output_port: m,
    })
}

/// Apply a Pauli channel to one qubit of the resource (noise-mobility
/// experiments want single-port noise).
pub fn resource_with_channel(
    resource: &ResourceState,
    qubit: usize,
    channel: &PauliChannel,
) -> Result<ResourceState> {
    let state = resource.state.apply_channel(channel, qubit)?;
    Ok(ResourceState {
        state,
        pure: None,
        party: resource.party,
        input_ports: resource.input_ports.clone(),
        output_port: resource.output_port,
    })
}

/// Apply a Pauli channel to every qubit of the resource.
pub fn degrade_resource(resource: &ResourceState, channel: &PauliChannel) -> Result<ResourceState> {
    let mut state = resource.state.clone();
    for q in 0..state.qubits() {
        state = state.apply_channel(channel, q)?;
    }
    let pure = if channel.p() == 1.0 {
        resource.pure.clone()
    } else {
        None
    };
    Ok(ResourceState {
        state,
        pure,
        party: resource.party,
        input_ports: resource.input_ports.clone(),
        output_port: resource.output_port,
    })
}

/// Concatenate two resources of the same party: Bell-measure the upstream
/// output port into the chosen downstream input port (outcome fixed to Φ+
/// and renormalized; other outcomes give byproduct-equivalent resources).
/// The result keeps the upstream inputs, the remaining downstream inputs,
/// and the downstream output.
pub fn connect(
    upstream: &ResourceState,
    downstream: &ResourceState,
    downstream_port: usize,
) -> Result<ResourceState> {
    if upstream.party != downstream.party {
        return Err(Error::InvalidState(
            "cannot connect resources held by different parties".into(),
        ));
    }
    if downstream_port >= downstream.arity() {
        return Err(Error::OutOfRange(format!(
            "downstream port {downstream_port} of an arity-{} resource",
            downstream.arity()
        )));
    }
    let (up_pure, down_pure) = match (&upstream.pure, &downstream.pure) {
        (Some(u), Some(d)) => (u, d),
        _ => {
            return Err(Error::Unsupported(
                "connecting degraded resources is not supported".into(),
            ))
        }
    };
    let k = upstream.qubits();
    let joint = up_pure.tensor(down_pure)?;
    let qa = upstream.output_port;
    let qb = k + downstream.input_ports[downstream_port];
    let projected = joint_project_phi_plus(&joint, qa, qb)?;
    let pure = projected.normalized()?;

    let removed = [qa, qb];
    let shift = |q: usize| -> usize { q - removed.iter().filter(|&&r| r < q).count() };
    let mut input_ports: Vec<usize> = upstream.input_ports.iter().map(|&q| shift(q)).collect();
    input_ports.extend(
        downstream
            .input_ports
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != downstream_port)
            .map(|(_, &q)| shift(k + q)),
    );
    let output_port = shift(k + downstream.output_port);
    Ok(ResourceState {
        state: DenseState::from_pure(&pure),
        pure: Some(pure),
        party: upstream.party,
        input_ports,
        output_port,
    })
}

fn joint_project_phi_plus(state: &PureState, qa: usize, qb: usize) -> Result<PureState> {
    let bra = BellBasis::PhiPlus.amplitudes();
    state.project_out_pair(qa, qb, &bra)
}
