//! Subnormalized pure-state engine.
//!
//! Resource-state construction and the pattern-level induced-map evaluation
//! only ever touch pure states (Clifford circuits and postselections on
//! |Φ+⟩ inputs stay pure), so they run on state vectors instead of density
//! matrices. The squared norm carries the accumulated postselection weight.

use num_complex::Complex64 as C64;

use super::gates::{self, CircuitOp, Mat2, Mat4, ONE, ZERO};
use crate::error::{Error, Result};

pub const DEFAULT_QUBIT_BUDGET: usize = 12;

/// A subnormalized state vector on `n` qubits. Qubit 0 owns the most
/// significant index bit.
#[derive(Debug, Clone)]
pub struct PureState {
    n: usize,
    amp: Vec<C64>,
    budget: usize,
}

impl PureState {
    /// |0…0⟩ on `n` qubits.
    pub fn zero(n: usize) -> Result<Self> {
        Self::zero_with_budget(n, DEFAULT_QUBIT_BUDGET)
    }

    pub fn zero_with_budget(n: usize, budget: usize) -> Result<Self> {
        if n > budget {
            return Err(Error::QubitBudget { needed: n, budget });
        }
        if n == 0 {
            return Err(Error::InvalidState("zero-qubit state".into()));
        }
        let mut amp = vec![ZERO; 1 << n];
        amp[0] = ONE;
        Ok(Self { n, amp, budget })
    }

    pub fn from_amplitudes(amp: Vec<C64>) -> Result<Self> {
        let n = amp.len().trailing_zeros() as usize;
        if amp.len() != 1 << n || amp.is_empty() {
            return Err(Error::DimensionMismatch(format!(
                "amplitude vector length {} is not a power of two",
                amp.len()
            )));
        }
        Ok(Self {
            n,
            amp,
            budget: DEFAULT_QUBIT_BUDGET.max(n),
        })
    }

    pub fn qubits(&self) -> usize {
        self.n
    }

    pub fn budget(&self) -> usize {
        self.budget
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amp
    }

    /// Squared norm: the weight of this postselected branch.
    pub fn weight(&self) -> f64 {
        self.amp.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn normalized(&self) -> Result<Self> {
        let w = self.weight();
        if w < 1e-28 {
            return Err(Error::VanishingSuccess(1e-28));
        }
        let scale = C64::new(1.0 / w.sqrt(), 0.0);
        Ok(Self {
            n: self.n,
            amp: self.amp.iter().map(|a| a * scale).collect(),
            budget: self.budget,
        })
    }

    fn shift(&self, q: usize) -> usize {
        self.n - 1 - q
    }

    fn check_qubit(&self, q: usize) -> Result<()> {
        if q >= self.n {
            return Err(Error::QubitIndex {
                index: q,
                n: self.n,
            });
        }
        Ok(())
    }

    pub fn apply_single_qubit(&mut self, q: usize, u: &Mat2) -> Result<()> {
        self.check_qubit(q)?;
        let mask = 1usize << self.shift(q);
        for i in 0..self.amp.len() {
            if i & mask == 0 {
                let a = self.amp[i];
                let b = self.amp[i | mask];
                self.amp[i] = u[0][0] * a + u[0][1] * b;
                self.amp[i | mask] = u[1][0] * a + u[1][1] * b;
            }
        }
        Ok(())
    }

    pub fn apply_two_qubit(&mut self, q1: usize, q2: usize, u: &Mat4) -> Result<()> {
        self.check_qubit(q1)?;
        self.check_qubit(q2)?;
        if q1 == q2 {
            return Err(Error::InvalidState(
                "two-qubit gate needs distinct qubits".into(),
            ));
        }
        let m1 = 1usize << self.shift(q1);
        let m2 = 1usize << self.shift(q2);
        for i in 0..self.amp.len() {
            if i & m1 == 0 && i & m2 == 0 {
                let idx = [i, i | m2, i | m1, i | m1 | m2];
                let v: Vec<C64> = idx.iter().map(|&k| self.amp[k]).collect();
                for (r, &k) in idx.iter().enumerate() {
                    self.amp[k] = (0..4).map(|c| u[r][c] * v[c]).sum();
                }
            }
        }
        Ok(())
    }

    /// Project qubit `q` onto |outcome⟩ without renormalizing; the qubit
    /// stays in place (in the |outcome⟩ state) until removed.
    pub fn postselect_z(&mut self, q: usize, outcome: bool) -> Result<()> {
        self.check_qubit(q)?;
        let mask = 1usize << self.shift(q);
        for i in 0..self.amp.len() {
            if ((i & mask) != 0) != outcome {
                self.amp[i] = ZERO;
            }
        }
        Ok(())
    }

    /// Drop a qubit that is in a definite computational state (after
    /// postselection). Errors if the discarded branch still carries weight.
    pub fn remove_fixed_qubit(&mut self, q: usize, outcome: bool) -> Result<()> {
        self.check_qubit(q)?;
        let mask = 1usize << self.shift(q);
        let mut out = vec![ZERO; self.amp.len() / 2];
        let mut leak = 0.0;
        for i in 0..self.amp.len() {
            let bit = (i & mask) != 0;
            if bit == outcome {
                out[collapse_index(i, mask)] = self.amp[i];
            } else {
                leak += self.amp[i].norm_sqr();
            }
        }
        if leak > 1e-18 {
            return Err(Error::InvalidState(format!(
                "qubit {q} is not fixed; discarded weight {leak:e}"
            )));
        }
        self.amp = out;
        self.n -= 1;
        Ok(())
    }

    pub fn apply_op(&mut self, op: &CircuitOp) -> Result<()> {
        match *op {
            CircuitOp::H(q) => self.apply_single_qubit(q, &gates::hadamard()),
            CircuitOp::S(q) => self.apply_single_qubit(q, &gates::phase_s()),
            CircuitOp::SDagger(q) => self.apply_single_qubit(q, &gates::phase_s_dagger()),
            CircuitOp::X(q) => self.apply_single_qubit(q, &gates::pauli_x()),
            CircuitOp::Y(q) => self.apply_single_qubit(q, &gates::pauli_y()),
            CircuitOp::Z(q) => self.apply_single_qubit(q, &gates::pauli_z()),
            CircuitOp::RxQuarter(q) => self.apply_single_qubit(q, &gates::rx_quarter()),
            CircuitOp::RxQuarterInv(q) => self.apply_single_qubit(q, &gates::rx_quarter_inv()),
            CircuitOp::Cnot { control, target } => {
                self.apply_two_qubit(control, target, &gates::cnot())
            }
            CircuitOp::Cz(a, b) => self.apply_two_qubit(a, b, &gates::cz()),
            CircuitOp::PostselectZ { qubit, outcome } => self.postselect_z(qubit, outcome),
        }
    }

    /// Tensor product; `other`'s qubits are appended after `self`'s.
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        let n = self.n + other.n;
        let budget = self.budget.max(other.budget);
        if n > budget {
            return Err(Error::QubitBudget { needed: n, budget });
        }
        let mut amp = vec![ZERO; 1 << n];
        for (i, a) in self.amp.iter().enumerate() {
            if a.norm_sqr() == 0.0 {
                continue;
            }
            for (j, b) in other.amp.iter().enumerate() {
                amp[(i << other.n) | j] = a * b;
            }
        }
        Ok(Self { n, amp, budget })
    }

    /// Inner product ⟨self|other⟩.
    pub fn inner(&self, other: &Self) -> Result<C64> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch(format!(
                "{} vs {} qubits",
                self.n, other.n
            )));
        }
        Ok(self
            .amp
            .iter()
            .zip(&other.amp)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// Contract qubits (qa, qb) against a two-qubit bra ⟨φ| given in the
    /// |qa qb⟩ ordering. Returns the (subnormalized) state with both qubits
    /// removed.
    pub fn project_out_pair(&self, qa: usize, qb: usize, bra: &[C64; 4]) -> Result<Self> {
        self.check_qubit(qa)?;
        self.check_qubit(qb)?;
        if qa == qb {
            return Err(Error::InvalidState(
                "pair projection needs distinct qubits".into(),
            ));
        }
        let ma = 1usize << self.shift(qa);
        let mb = 1usize << self.shift(qb);
        let mut out = vec![ZERO; self.amp.len() / 4];
        for i in 0..self.amp.len() {
            if i & ma == 0 && i & mb == 0 {
                let r = collapse_index(collapse_index(i, ma.max(mb)), ma.min(mb));
                let mut acc = ZERO;
                for (k, &idx) in [i, i | mb, i | ma, i | ma | mb].iter().enumerate() {
                    acc += bra[k].conj() * self.amp[idx];
                }
                out[r] = acc;
            }
        }
        Ok(Self {
            n: self.n - 2,
            amp: out,
            budget: self.budget,
        })
    }
}

/// Remove the bit selected by `mask` (a single set bit) from index `i`,
/// shifting the higher bits down.
fn collapse_index(i: usize, mask: usize) -> usize {
    let low = i & (mask - 1);
    let high = (i >> 1) & !(mask - 1);
    high | low
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bell_pair_from_circuit() {
        let mut s = PureState::zero(2).unwrap();
        s.apply_op(&CircuitOp::H(0)).unwrap();
        s.apply_op(&CircuitOp::Cnot {
            control: 0,
            target: 1,
        })
        .unwrap();
        let r = std::f64::consts::FRAC_1_SQRT_2;
        assert!((s.amplitudes()[0].re - r).abs() < 1e-15);
        assert!((s.amplitudes()[3].re - r).abs() < 1e-15);
        assert!((s.weight() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn postselect_and_remove() {
        let mut s = PureState::zero(2).unwrap();
        s.apply_op(&CircuitOp::H(0)).unwrap();
        s.apply_op(&CircuitOp::Cnot {
            control: 0,
            target: 1,
        })
        .unwrap();
        s.postselect_z(1, false).unwrap();
        assert!((s.weight() - 0.5).abs() < 1e-15);
        s.remove_fixed_qubit(1, false).unwrap();
        assert_eq!(s.qubits(), 1);
        assert!((s.amplitudes()[0].re - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15);
    }

    #[test]
    fn budget_is_enforced() {
        assert!(PureState::zero_with_budget(5, 4).is_err());
        let a = PureState::zero_with_budget(3, 4).unwrap();
        let b = PureState::zero_with_budget(2, 4).unwrap();
        assert!(a.tensor(&b).is_err());
    }

    #[test]
    fn collapse_index_removes_bit() {
        // removing bit 2 (mask 0b100) from 0b1011 gives 0b111
        assert_eq!(collapse_index(0b1011, 0b100), 0b111);
        assert_eq!(collapse_index(0b1111, 0b100), 0b111);
        assert_eq!(collapse_index(0b0011, 0b100), 0b011);
    }
}
