//! Bell basis, Bell measurements, and entangled-pair preparation.
//!
//! Frozen conventions: |Φ±⟩ = (|00⟩ ± |11⟩)/√2, |Ψ±⟩ = (|01⟩ ± |10⟩)/√2;
//! the byproduct of outcome B is the single-qubit Pauli whose action on the
//! second qubit maps Φ+ to B (up to phase): I→Φ+, X→Ψ+, Y→Ψ−, Z→Φ−.

use num_complex::Complex64 as C64;

use super::gates::CircuitOp;
use super::pure::PureState;
use super::state::DenseState;
use crate::error::Result;
use crate::pauli::PauliLabel;

/// The four Bell states.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BellBasis {
    PhiPlus,
    PhiMinus,
    PsiPlus,
    PsiMinus,
}

pub const ALL_BELL: [BellBasis; 4] = [
    BellBasis::PhiPlus,
    BellBasis::PhiMinus,
    BellBasis::PsiPlus,
    BellBasis::PsiMinus,
];

impl BellBasis {
    /// The byproduct Pauli: one-sided action on Φ+ produces this Bell state.
    pub fn byproduct(self) -> PauliLabel {
        match self {
            BellBasis::PhiPlus => PauliLabel::I,
            BellBasis::PsiPlus => PauliLabel::X,
            BellBasis::PsiMinus => PauliLabel::Y,
            BellBasis::PhiMinus => PauliLabel::Z,
        }
    }

    pub fn from_byproduct(label: PauliLabel) -> Self {
        match label {
            PauliLabel::I => BellBasis::PhiPlus,
            PauliLabel::X => BellBasis::PsiPlus,
            PauliLabel::Y => BellBasis::PsiMinus,
            PauliLabel::Z => BellBasis::PhiMinus,
        }
    }

    /// Amplitudes in the |q_a q_b⟩ ordering.
    pub fn amplitudes(self) -> [C64; 4] {
        let r = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        match self {
            BellBasis::PhiPlus => [r, C64::default(), C64::default(), r],
            BellBasis::PhiMinus => [r, C64::default(), C64::default(), -r],
            BellBasis::PsiPlus => [C64::default(), r, r, C64::default()],
            BellBasis::PsiMinus => [C64::default(), r, -r, C64::default()],
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            BellBasis::PhiPlus => "Φ+",
            BellBasis::PhiMinus => "Φ−",
            BellBasis::PsiPlus => "Ψ+",
            BellBasis::PsiMinus => "Ψ−",
        }
    }
}

impl std::fmt::Display for BellBasis {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.name())
    }
}

/// Outcome of a single Bell measurement.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BellOutcome {
    pub label: BellBasis,
    pub byproduct: PauliLabel,
}

impl BellOutcome {
    pub fn new(label: BellBasis) -> Self {
        Self {
            label,
            byproduct: label.byproduct(),
        }
    }
}

/// One branch of a Bell measurement: the outcome, its absolute probability,
/// and the renormalized post-state with the measured qubits removed (absent
/// for branches of negligible weight).
#[derive(Debug, Clone)]
pub struct BellBranch {
    pub outcome: BellOutcome,
    pub probability: f64,
    pub post: Option<DenseState>,
}

/// |Φ+⟩ as a pure state.
pub fn bell_pair_pure() -> PureState {
    let mut s = PureState::zero(2).expect("two qubits fit any budget");
    s.apply_op(&CircuitOp::H(0)).expect("static circuit");
    s.apply_op(&CircuitOp::Cnot {
        control: 0,
        target: 1,
    })
    .expect("static circuit");
    s
}

/// A specific Bell state as a pure state.
pub fn bell_state_pure(label: BellBasis) -> PureState {
    PureState::from_amplitudes(label.amplitudes().to_vec()).expect("4 amplitudes")
}

/// |Φ+⟩^{⊗k} with pair i on qubits (2i, 2i+1).
pub fn prepare_bell_pairs(k: usize) -> Result<DenseState> {
    let mut s = PureState::zero(2 * k)?;
    for i in 0..k {
        s.apply_op(&CircuitOp::H(2 * i))?;
        s.apply_op(&CircuitOp::Cnot {
            control: 2 * i,
            target: 2 * i + 1,
        })?;
    }
    Ok(DenseState::from_pure(&s))
}

/// Embed a Bell-diagonal 4-vector as an honest two-qubit density matrix.
pub fn bell_diagonal_to_dense(state: &crate::bell::BellDiagonalState) -> Result<DenseState> {
    let base = prepare_bell_pairs(1)?;
    let mut acc = DenseState::from_matrix(2, vec![C64::default(); 16])?;
    for label in crate::pauli::PAULI_LABELS {
        let w = state.weight(label);
        if w == 0.0 {
            continue;
        }
        let p = crate::pauli::PauliString::single(2, 1, label)?;
        acc.add_assign(&base.conjugate_pauli(&p)?.scaled(w))?;
    }
    Ok(acc)
}

/// Measure qubits (qa, qb) in the Bell basis. Branch probabilities sum to
/// the weight of the input state; post-states are renormalized. Branches
/// below 1e-14 carry no post-state.
pub fn bell_measure(state: &DenseState, qa: usize, qb: usize) -> Result<Vec<BellBranch>> {
    let mut branches = Vec::with_capacity(4);
    for label in ALL_BELL {
        let (probability, post) = project_bell(state, qa, qb, label)?;
        let post = if probability < 1e-14 {
            None
        } else {
            Some(post.normalized()?)
        };
        branches.push(BellBranch {
            outcome: BellOutcome::new(label),
            probability,
            post,
        });
    }
    Ok(branches)
}

/// Project qubits (qa, qb) onto a Bell state, returning the branch weight
/// and the subnormalized post-state with the two qubits removed.
pub fn project_bell(
    state: &DenseState,
    qa: usize,
    qb: usize,
    label: BellBasis,
) -> Result<(f64, DenseState)> {
    let bra = label.amplitudes();
    let n = state.qubits();
    let dim = state.dim();
    let sa = n - 1 - qa;
    let sb = n - 1 - qb;
    let ma = 1usize << sa;
    let mb = 1usize << sb;
    let rdim = dim / 4;
    let mut mat = vec![C64::default(); rdim * rdim];

    // enumerate restricted indices by walking full indices with both bits clear
    let mut rows = Vec::with_capacity(rdim);
    for i in 0..dim {
        if i & ma == 0 && i & mb == 0 {
            rows.push(i);
        }
    }
    debug_assert_eq!(rows.len(), rdim);

    for (r, &base_i) in rows.iter().enumerate() {
        let idx_i = [base_i, base_i | mb, base_i | ma, base_i | ma | mb];
        for (c, &base_j) in rows.iter().enumerate() {
            let idx_j = [base_j, base_j | mb, base_j | ma, base_j | ma | mb];
            let mut acc = C64::default();
            for (k, &fi) in idx_i.iter().enumerate() {
                if bra[k].norm_sqr() == 0.0 {
                    continue;
                }
                for (l, &fj) in idx_j.iter().enumerate() {
                    if bra[l].norm_sqr() == 0.0 {
                        continue;
                    }
                    acc += bra[k].conj() * state.entry(fi, fj) * bra[l];
                }
            }
            mat[r * rdim + c] = acc;
        }
    }
    let post = DenseState::from_matrix_with_budget(n - 2, mat, state.budget())?;
    let probability = post.weight();
    Ok((probability, post))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn measuring_a_bell_pair_on_its_own_qubits() {
        let rho = prepare_bell_pairs(1).unwrap();
        // removing both qubits leaves a 0-qubit scalar; project directly
        for label in ALL_BELL {
            let bra = label.amplitudes();
            let mut acc = C64::default();
            for i in 0..4 {
                for j in 0..4 {
                    acc += bra[i].conj() * rho.entry(i, j) * bra[j];
                }
            }
            let expect = if label == BellBasis::PhiPlus {
                1.0
            } else {
                0.0
            };
            assert!((acc.re - expect).abs() < 1e-12, "{label}");
        }
    }

    #[test]
    fn entanglement_swapping() {
        // measure qubits (1, 2) of Φ+₀₁ ⊗ Φ+₂₃: each outcome has probability
        // 1/4 and leaves (0, 3) in the matching Bell state
        let rho = prepare_bell_pairs(2).unwrap();
        let branches = bell_measure(&rho, 1, 2).unwrap();
        let total: f64 = branches.iter().map(|b| b.probability).sum();
        assert!((total - 1.0).abs() < 1e-12);
        for branch in &branches {
            assert!((branch.probability - 0.25).abs() < 1e-12);
            let post = branch.post.as_ref().unwrap();
            let target = bell_state_pure(branch.outcome.label);
            assert!((post.fidelity_with_pure(&target).unwrap() - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn bell_pair_fidelity_is_one() {
        let rho = prepare_bell_pairs(1).unwrap();
        let psi = bell_pair_pure();
        assert!((rho.fidelity_with_pure(&psi).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn byproduct_action_maps_phi_plus_to_each_bell_state() {
        use crate::pauli::PauliString;
        let rho = prepare_bell_pairs(1).unwrap();
        for label in ALL_BELL {
            let p = PauliString::single(2, 1, label.byproduct()).unwrap();
            let twisted = rho.conjugate_pauli(&p).unwrap();
            let target = bell_state_pure(label);
            assert!(
                (twisted.fidelity_with_pure(&target).unwrap() - 1.0).abs() < 1e-12,
                "{label}"
            );
        }
    }

    #[test]
    fn branch_probabilities_sum_to_weight_for_random_states() {
        use rand::Rng;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(7);
        for _ in 0..5 {
            // random mixture of a few pure states on 4 qubits
            let mut rho = DenseState::from_matrix(4, vec![C64::default(); 256]).unwrap();
            for _ in 0..3 {
                let amps: Vec<C64> = (0..16)
                    .map(|_| C64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5))
                    .collect();
                let norm: f64 = amps.iter().map(|a| a.norm_sqr()).sum::<f64>();
                let amps = amps
                    .into_iter()
                    .map(|a| a / C64::new(norm.sqrt() * 3.0f64.sqrt(), 0.0))
                    .collect();
                let psi = PureState::from_amplitudes(amps).unwrap();
                rho.add_assign(&DenseState::from_pure(&psi)).unwrap();
            }
            let branches = bell_measure(&rho, 0, 2).unwrap();
            let total: f64 = branches.iter().map(|b| b.probability).sum();
            assert!((total - rho.weight()).abs() < 1e-10);
        }
    }
}
