//! Channel–state duality for postselected Clifford circuits.
//!
//! The dual state of a map M with n_in input wires is (Id ⊗ M) applied to
//! |Φ+⟩^{⊗ n_in}, keeping the identity halves as input ports. Its weight is
//! the map's success probability on maximally mixed input. Circuits may mix
//! Clifford gates with postselected computational-basis measurements;
//! measured wires are removed from the result.

use super::gates::CircuitOp;
use super::pure::PureState;
use super::state::DenseState;
use crate::error::{Error, Result};

/// A Clifford circuit on `wires` wires, with optional postselected
/// measurements. Wires measured by `PostselectZ` are consumed.
#[derive(Debug, Clone)]
pub struct CliffordCircuit {
    wires: usize,
    ops: Vec<CircuitOp>,
}

impl CliffordCircuit {
    pub fn new(wires: usize) -> Self {
        Self {
            wires,
            ops: Vec::new(),
        }
    }

    pub fn wires(&self) -> usize {
        self.wires
    }

    pub fn ops(&self) -> &[CircuitOp] {
        &self.ops
    }

    pub fn push(&mut self, op: CircuitOp) -> &mut Self {
        self.ops.push(op);
        self
    }

    /// Wires consumed by postselected measurements, in program order.
    pub fn measured_wires(&self) -> Vec<usize> {
        self.ops
            .iter()
            .filter_map(|op| match op {
                CircuitOp::PostselectZ { qubit, .. } => Some(*qubit),
                _ => None,
            })
            .collect()
    }

    pub fn output_wires(&self) -> Vec<usize> {
        let measured = self.measured_wires();
        (0..self.wires).filter(|w| !measured.contains(w)).collect()
    }
}

/// Result of the dual-state construction, as a pure (subnormalized) state.
/// Qubit layout: ports 0..n_in first, then the surviving output wires in
/// ascending wire order.
#[derive(Debug, Clone)]
pub struct DualState {
    pub state: PureState,
    pub n_in: usize,
    pub n_out: usize,
}

/// Build the dual state of `circuit`, treating every wire as an input fed
/// through a fresh |Φ+⟩ pair. Fails on non-Clifford content by construction
/// (the op vocabulary is Clifford-only) and on qubit-budget overflow.
pub fn dual_state_pure(circuit: &CliffordCircuit, budget: usize) -> Result<DualState> {
    let n_in = circuit.wires;
    if n_in == 0 {
        return Err(Error::InvalidState("circuit with no wires".into()));
    }
    let total = 2 * n_in;
    // layout: ports 0..n_in, wires n_in..2n_in
    let mut s = PureState::zero_with_budget(total, budget)?;
    for i in 0..n_in {
        s.apply_op(&CircuitOp::H(i))?;
        s.apply_op(&CircuitOp::Cnot {
            control: i,
            target: n_in + i,
        })?;
    }
    let offset = |w: usize| n_in + w;
    let mut removed: Vec<usize> = Vec::new();
    let map_wire = |w: usize, removed: &[usize]| -> usize {
        let base = offset(w);
        base - removed.iter().filter(|&&r| r < base).count()
    };
    for op in &circuit.ops {
        let mapped = match *op {
            CircuitOp::H(q) => CircuitOp::H(map_wire(q, &removed)),
            CircuitOp::S(q) => CircuitOp::S(map_wire(q, &removed)),
            CircuitOp::SDagger(q) => CircuitOp::SDagger(map_wire(q, &removed)),
            CircuitOp::X(q) => CircuitOp::X(map_wire(q, &removed)),
            CircuitOp::Y(q) => CircuitOp::Y(map_wire(q, &removed)),
            CircuitOp::Z(q) => CircuitOp::Z(map_wire(q, &removed)),
            CircuitOp::RxQuarter(q) => CircuitOp::RxQuarter(map_wire(q, &removed)),
            CircuitOp::RxQuarterInv(q) => CircuitOp::RxQuarterInv(map_wire(q, &removed)),
            CircuitOp::Cnot { control, target } => CircuitOp::Cnot {
                control: map_wire(control, &removed),
                target: map_wire(target, &removed),
            },
            CircuitOp::Cz(a, b) => CircuitOp::Cz(map_wire(a, &removed), map_wire(b, &removed)),
            CircuitOp::PostselectZ { qubit, outcome } => {
                let q = map_wire(qubit, &removed);
                s.postselect_z(q, outcome)?;
                s.remove_fixed_qubit(q, outcome)?;
                removed.push(offset(qubit));
                continue;
            }
        };
        s.apply_op(&mapped)?;
    }
    let n_out = circuit.output_wires().len();
    Ok(DualState {
        state: s,
        n_in,
        n_out,
    })
}

/// Density-matrix form of [`dual_state_pure`] with the default budget.
pub fn jamiolkowski_state(circuit: &CliffordCircuit) -> Result<DenseState> {
    let dual = dual_state_pure(circuit, super::pure::DEFAULT_QUBIT_BUDGET)?;
    Ok(DenseState::from_pure(&dual.state))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dense::bell::bell_pair_pure;
    use num_complex::Complex64 as C64;

    #[test]
    fn identity_map_dualizes_to_a_bell_pair() {
        let circuit = CliffordCircuit::new(1);
        let rho = jamiolkowski_state(&circuit).unwrap();
        assert_eq!(rho.qubits(), 2);
        assert!((rho.weight() - 1.0).abs() < 1e-12);
        assert!((rho.fidelity_with_pure(&bell_pair_pure()).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn cnot_dual_state_reconstructs_the_channel() {
        // tomography: M(ρ) = d · tr_ports[(ρᵀ ⊗ I) J] must reproduce CNOT
        // conjugation on a basis of product inputs
        let mut circuit = CliffordCircuit::new(2);
        circuit.push(CircuitOp::Cnot {
            control: 0,
            target: 1,
        });
        let j = jamiolkowski_state(&circuit).unwrap();
        assert_eq!(j.qubits(), 4);
        assert!((j.weight() - 1.0).abs() < 1e-12);

        // single-qubit test states: |0⟩, |1⟩, |+⟩, |+i⟩
        let kets: [[C64; 2]; 4] = [
            [C64::new(1.0, 0.0), C64::new(0.0, 0.0)],
            [C64::new(0.0, 0.0), C64::new(1.0, 0.0)],
            [
                C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0),
                C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0),
            ],
            [
                C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0),
                C64::new(0.0, std::f64::consts::FRAC_1_SQRT_2),
            ],
        ];
        for a in 0..4 {
            for b in 0..4 {
                let mut amp = vec![C64::default(); 4];
                for i in 0..2 {
                    for k in 0..2 {
                        amp[i * 2 + k] = kets[a][i] * kets[b][k];
                    }
                }
                let input = PureState::from_amplitudes(amp).unwrap();
                let rho_in = DenseState::from_pure(&input);

                // direct route
                let mut direct = rho_in.clone();
                direct
                    .apply_two_qubit(0, 1, &crate::dense::gates::cnot())
                    .unwrap();

                // reconstruction from the dual state:
                // out[o,o'] = d · Σ_{i,i'} ρᵀ[i,i'] J[(i,o),(i',o')]
                let d = 4.0;
                let mut recon = vec![C64::default(); 16];
                for o in 0..4usize {
                    for op in 0..4usize {
                        let mut acc = C64::default();
                        for i in 0..4usize {
                            for ip in 0..4usize {
                                // out[o,o'] = Σ ρ[k,i] · J[(k,o),(i,o')]
                                acc += rho_in.entry(ip, i) * j.entry(ip * 4 + o, i * 4 + op);
                            }
                        }
                        recon[o * 4 + op] = acc * C64::new(d, 0.0);
                    }
                }
                let recon = DenseState::from_matrix(2, recon).unwrap();
                assert!(
                    direct.max_deviation(&recon).unwrap() < 1e-12,
                    "basis ({a},{b})"
                );
            }
        }
    }

    #[test]
    fn postselection_weight_is_success_probability() {
        // measure a fresh wire of a Bell pair: weight 1/2 per outcome
        let mut circuit = CliffordCircuit::new(1);
        circuit.push(CircuitOp::PostselectZ {
            qubit: 0,
            outcome: false,
        });
        let rho = jamiolkowski_state(&circuit).unwrap();
        assert_eq!(rho.qubits(), 1);
        assert!((rho.weight() - 0.5).abs() < 1e-12);
    }
}
