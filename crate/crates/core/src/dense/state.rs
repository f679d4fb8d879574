//! Dense density-matrix states: the brute-force oracle for every closed-form
//! map and commutation identity in the crate.
//!
//! States may be subnormalized; `weight` (= trace) carries the accumulated
//! probability of the postselected branch. Qubit 0 owns the most significant
//! index bit, matching [`PureState`].

use num_complex::Complex64 as C64;

use super::gates::{Mat2, Mat4, ZERO};
use super::pure::{PureState, DEFAULT_QUBIT_BUDGET};
use crate::channel::PauliChannel;
use crate::error::{Error, Result};
use crate::pauli::{PauliLabel, PauliString};

/// A (possibly subnormalized) density matrix on `n ≤ budget` qubits.
#[derive(Debug, Clone)]
pub struct DenseState {
    n: usize,
    dim: usize,
    mat: Vec<C64>,
    budget: usize,
}

impl DenseState {
    pub fn from_pure(psi: &PureState) -> Self {
        let dim = psi.amplitudes().len();
        let mut mat = vec![ZERO; dim * dim];
        for (i, a) in psi.amplitudes().iter().enumerate() {
            if a.norm_sqr() == 0.0 {
                continue;
            }
            for (j, b) in psi.amplitudes().iter().enumerate() {
                mat[i * dim + j] = a * b.conj();
            }
        }
        Self {
            n: psi.qubits(),
            dim,
            mat,
            budget: psi.budget(),
        }
    }

    pub fn from_matrix(n: usize, mat: Vec<C64>) -> Result<Self> {
        Self::from_matrix_with_budget(n, mat, DEFAULT_QUBIT_BUDGET)
    }

    pub fn from_matrix_with_budget(n: usize, mat: Vec<C64>, budget: usize) -> Result<Self> {
        if n > budget {
            return Err(Error::QubitBudget { needed: n, budget });
        }
        let dim = 1usize << n;
        if mat.len() != dim * dim {
            return Err(Error::DimensionMismatch(format!(
                "matrix has {} entries, expected {}",
                mat.len(),
                dim * dim
            )));
        }
        Ok(Self {
            n,
            dim,
            mat,
            budget,
        })
    }

    /// The maximally mixed state I/2^n.
    pub fn maximally_mixed(n: usize) -> Result<Self> {
        let dim = 1usize << n;
        let mut mat = vec![ZERO; dim * dim];
        let w = C64::new(1.0 / dim as f64, 0.0);
        for i in 0..dim {
            mat[i * dim + i] = w;
        }
        Self::from_matrix(n, mat)
    }

    pub fn qubits(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn budget(&self) -> usize {
        self.budget
    }

    pub fn matrix(&self) -> &[C64] {
        &self.mat
    }

    pub fn entry(&self, i: usize, j: usize) -> C64 {
        self.mat[i * self.dim + j]
    }

    /// Trace (real part); the weight of this branch.
    pub fn weight(&self) -> f64 {
        (0..self.dim).map(|i| self.mat[i * self.dim + i].re).sum()
    }

    pub fn scaled(&self, factor: f64) -> Self {
        let f = C64::new(factor, 0.0);
        Self {
            n: self.n,
            dim: self.dim,
            mat: self.mat.iter().map(|m| m * f).collect(),
            budget: self.budget,
        }
    }

    pub fn normalized(&self) -> Result<Self> {
        let w = self.weight();
        if w < 1e-14 {
            return Err(Error::VanishingSuccess(1e-14));
        }
        Ok(self.scaled(1.0 / w))
    }

    pub fn add_assign(&mut self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch(format!(
                "{} vs {} qubits",
                self.n, other.n
            )));
        }
        for (a, b) in self.mat.iter_mut().zip(&other.mat) {
            *a += b;
        }
        Ok(())
    }

    /// Tensor product; `other`'s qubits are appended after `self`'s.
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        let n = self.n + other.n;
        let budget = self.budget.max(other.budget);
        if n > budget {
            return Err(Error::QubitBudget { needed: n, budget });
        }
        let dim = 1usize << n;
        let od = other.dim;
        let mut mat = vec![ZERO; dim * dim];
        for i1 in 0..self.dim {
            for j1 in 0..self.dim {
                let a = self.mat[i1 * self.dim + j1];
                if a.norm_sqr() == 0.0 {
                    continue;
                }
                for i2 in 0..od {
                    let row = ((i1 << other.n) | i2) * dim;
                    for j2 in 0..od {
                        mat[row + ((j1 << other.n) | j2)] = a * other.mat[i2 * od + j2];
                    }
                }
            }
        }
        Ok(Self {
            n,
            dim,
            mat,
            budget,
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

    /// Conjugate by a single-qubit unitary: ρ → (U_q)ρ(U_q)†.
    pub fn apply_single_qubit(&mut self, q: usize, u: &Mat2) -> Result<()> {
        self.check_qubit(q)?;
        let mask = 1usize << self.shift(q);
        let dim = self.dim;
        // rows: ρ ← (U ⊗ I) ρ
        for i in 0..dim {
            if i & mask == 0 {
                for j in 0..dim {
                    let a = self.mat[i * dim + j];
                    let b = self.mat[(i | mask) * dim + j];
                    self.mat[i * dim + j] = u[0][0] * a + u[0][1] * b;
                    self.mat[(i | mask) * dim + j] = u[1][0] * a + u[1][1] * b;
                }
            }
        }
        // columns: ρ ← ρ (U ⊗ I)†
        for j in 0..dim {
            if j & mask == 0 {
                for i in 0..dim {
                    let a = self.mat[i * dim + j];
                    let b = self.mat[i * dim + (j | mask)];
                    self.mat[i * dim + j] = a * u[0][0].conj() + b * u[0][1].conj();
                    self.mat[i * dim + (j | mask)] = a * u[1][0].conj() + b * u[1][1].conj();
                }
            }
        }
        Ok(())
    }

    /// Conjugate by a two-qubit unitary given in the |q1 q2⟩ ordering.
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
        let dim = self.dim;
        for i in 0..dim {
            if i & m1 == 0 && i & m2 == 0 {
                let idx = [i, i | m2, i | m1, i | m1 | m2];
                for j in 0..dim {
                    let v = [
                        self.mat[idx[0] * dim + j],
                        self.mat[idx[1] * dim + j],
                        self.mat[idx[2] * dim + j],
                        self.mat[idx[3] * dim + j],
                    ];
                    for (r, &k) in idx.iter().enumerate() {
                        self.mat[k * dim + j] = (0..4).map(|c| u[r][c] * v[c]).sum();
                    }
                }
            }
        }
        for j in 0..dim {
            if j & m1 == 0 && j & m2 == 0 {
                let idx = [j, j | m2, j | m1, j | m1 | m2];
                for i in 0..dim {
                    let v = [
                        self.mat[i * dim + idx[0]],
                        self.mat[i * dim + idx[1]],
                        self.mat[i * dim + idx[2]],
                        self.mat[i * dim + idx[3]],
                    ];
                    for (c, &k) in idx.iter().enumerate() {
                        self.mat[i * dim + k] = (0..4).map(|r| v[r] * u[c][r].conj()).sum();
                    }
                }
            }
        }
        Ok(())
    }

    /// Index permutation and phase pattern of an n-qubit Pauli string:
    /// P|i⟩ = phase(i)·|i ⊕ flip⟩.
    fn pauli_action(&self, p: &PauliString) -> Result<(usize, Vec<C64>)> {
        if p.len() != self.n {
            return Err(Error::LengthMismatch(p.len(), self.n));
        }
        let mut flip = 0usize;
        let mut zmask = 0usize;
        for q in 0..self.n {
            if p.x_bit(q) {
                flip |= 1 << self.shift(q);
            }
            if p.z_bit(q) {
                zmask |= 1 << self.shift(q);
            }
        }
        let global = match p.phase() {
            0 => C64::new(1.0, 0.0),
            1 => C64::new(0.0, 1.0),
            2 => C64::new(-1.0, 0.0),
            _ => C64::new(0.0, -1.0),
        };
        // P = i^phase · X^x Z^z acting per basis state: Z first, then X.
        let phases = (0..self.dim)
            .map(|i| {
                if ((i & zmask).count_ones() & 1) == 1 {
                    -global
                } else {
                    global
                }
            })
            .collect();
        Ok((flip, phases))
    }

    /// Conjugation ρ → PρP† by a Pauli string (global phase cancels).
    pub fn conjugate_pauli(&self, p: &PauliString) -> Result<Self> {
        let (flip, phases) = self.pauli_action(p)?;
        let dim = self.dim;
        let mut mat = vec![ZERO; dim * dim];
        for i in 0..dim {
            let pi = phases[i];
            for j in 0..dim {
                mat[(i ^ flip) * dim + (j ^ flip)] = pi * self.mat[i * dim + j] * phases[j].conj();
            }
        }
        Ok(Self {
            n: self.n,
            dim,
            mat,
            budget: self.budget,
        })
    }

    /// Left action ρ → Pρ (keeps the global phase).
    pub fn left_mul_pauli(&self, p: &PauliString) -> Result<Self> {
        let (flip, phases) = self.pauli_action(p)?;
        let dim = self.dim;
        let mut mat = vec![ZERO; dim * dim];
        for i in 0..dim {
            let pi = phases[i];
            for j in 0..dim {
                mat[(i ^ flip) * dim + j] = pi * self.mat[i * dim + j];
            }
        }
        Ok(Self {
            n: self.n,
            dim,
            mat,
            budget: self.budget,
        })
    }

    /// Right action ρ → ρP.
    pub fn right_mul_pauli(&self, p: &PauliString) -> Result<Self> {
        let (flip, phases) = self.pauli_action(p)?;
        let dim = self.dim;
        let mut mat = vec![ZERO; dim * dim];
        for i in 0..dim {
            for j in 0..dim {
                // (ρP)[i,j] = ρ[i, j^flip]·P[j^flip, j]; P[π(k), k] = phases[k]
                mat[i * dim + j] = self.mat[i * dim + (j ^ flip)] * phases[j];
            }
        }
        Ok(Self {
            n: self.n,
            dim,
            mat,
            budget: self.budget,
        })
    }

    /// Project one qubit onto |outcome⟩ and drop it; the result keeps the
    /// branch weight (no renormalization).
    pub fn postselect_z(&self, qubit: usize, outcome: bool) -> Result<Self> {
        self.check_qubit(qubit)?;
        let mask = 1usize << self.shift(qubit);
        let want = if outcome { mask } else { 0 };
        let dim = self.dim;
        let rdim = dim / 2;
        let mut mat = vec![ZERO; rdim * rdim];
        let mut keep_rows = Vec::with_capacity(rdim);
        for i in 0..dim {
            if i & mask == want {
                keep_rows.push(i);
            }
        }
        for (r, &i) in keep_rows.iter().enumerate() {
            for (c, &j) in keep_rows.iter().enumerate() {
                mat[r * rdim + c] = self.mat[i * dim + j];
            }
        }
        Ok(Self {
            n: self.n - 1,
            dim: rdim,
            mat,
            budget: self.budget,
        })
    }

    /// tr(ρ·P).
    pub fn expect_pauli(&self, p: &PauliString) -> Result<C64> {
        let (flip, phases) = self.pauli_action(p)?;
        let mut acc = ZERO;
        for i in 0..self.dim {
            // (ρP)[i,i] = ρ[i, i^flip]·P[i^flip, i]; P[π(j), j] = phases[j]
            acc += self.mat[i * self.dim + (i ^ flip)] * phases[i ^ flip];
        }
        Ok(acc)
    }

    /// Apply a single-qubit Pauli channel in Kraus form:
    /// ρ → Σ_i w_i σ_i ρ σ_i with the weights of the (p, α) parametrization.
    pub fn apply_channel(&self, ch: &PauliChannel, qubit: usize) -> Result<Self> {
        self.check_qubit(qubit)?;
        let w = ch.kraus_weights();
        let mut out = Self {
            n: self.n,
            dim: self.dim,
            mat: vec![ZERO; self.mat.len()],
            budget: self.budget,
        };
        for (i, label) in crate::pauli::PAULI_LABELS.iter().enumerate() {
            if w[i] == 0.0 {
                continue;
            }
            let p = PauliString::single(self.n, qubit, *label)?;
            let term = self.conjugate_pauli(&p)?.scaled(w[i]);
            out.add_assign(&term)?;
        }
        Ok(out)
    }

    /// Apply local white noise via the partial-trace identity
    /// ρ → p·ρ + (1−p)/2 · I_q ⊗ tr_q ρ — the independent route against the
    /// Kraus form.
    pub fn apply_lwn_trace_form(&self, p: f64, qubit: usize) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::InvalidProbability(p));
        }
        self.check_qubit(qubit)?;
        let mask = 1usize << self.shift(qubit);
        let dim = self.dim;
        let mut mat = vec![ZERO; dim * dim];
        let keep = C64::new(p, 0.0);
        let mix = C64::new((1.0 - p) / 2.0, 0.0);
        for i in 0..dim {
            for j in 0..dim {
                let mut v = keep * self.mat[i * dim + j];
                // (I ⊗ tr_q ρ)[i,j] is diagonal in the traced qubit
                if (i & mask) == (j & mask) {
                    let tr = self.mat[(i & !mask) * dim + (j & !mask)]
                        + self.mat[(i | mask) * dim + (j | mask)];
                    v += mix * tr;
                }
                mat[i * dim + j] = v;
            }
        }
        Ok(Self {
            n: self.n,
            dim,
            mat,
            budget: self.budget,
        })
    }

    /// Trace out the listed qubits.
    pub fn partial_trace(&self, drop: &[usize]) -> Result<Self> {
        let mut drop_sorted = drop.to_vec();
        drop_sorted.sort_unstable();
        drop_sorted.dedup();
        if drop_sorted.len() != drop.len() {
            return Err(Error::InvalidState(
                "duplicate qubits in partial trace".into(),
            ));
        }
        for &q in &drop_sorted {
            self.check_qubit(q)?;
        }
        if drop_sorted.len() == self.n {
            return Err(Error::InvalidState("cannot trace out every qubit".into()));
        }
        let keep: Vec<usize> = (0..self.n).filter(|q| !drop_sorted.contains(q)).collect();
        let nk = keep.len();
        let kd = 1usize << nk;
        let nd = drop_sorted.len();
        let dd = 1usize << nd;
        let keep_shifts: Vec<usize> = keep.iter().map(|&q| self.shift(q)).collect();
        let drop_shifts: Vec<usize> = drop_sorted.iter().map(|&q| self.shift(q)).collect();
        let expand = |bits: usize, shifts: &[usize]| -> usize {
            let mut full = 0usize;
            for (pos, &sh) in shifts.iter().enumerate() {
                if (bits >> (shifts.len() - 1 - pos)) & 1 == 1 {
                    full |= 1 << sh;
                }
            }
            full
        };
        let mut mat = vec![ZERO; kd * kd];
        for r in 0..kd {
            let base_r = expand(r, &keep_shifts);
            for c in 0..kd {
                let base_c = expand(c, &keep_shifts);
                let mut acc = ZERO;
                for d in 0..dd {
                    let extra = expand(d, &drop_shifts);
                    acc += self.mat[(base_r | extra) * self.dim + (base_c | extra)];
                }
                mat[r * kd + c] = acc;
            }
        }
        Ok(Self {
            n: nk,
            dim: kd,
            mat,
            budget: self.budget,
        })
    }

    /// ⟨ψ|ρ|ψ⟩ for a normalized pure state.
    pub fn fidelity_with_pure(&self, psi: &PureState) -> Result<f64> {
        if psi.qubits() != self.n {
            return Err(Error::DimensionMismatch(format!(
                "{} vs {} qubits",
                psi.qubits(),
                self.n
            )));
        }
        let amps = psi.amplitudes();
        let mut acc = ZERO;
        for i in 0..self.dim {
            if amps[i].norm_sqr() == 0.0 {
                continue;
            }
            let row: C64 = self.mat[i * self.dim..(i + 1) * self.dim]
                .iter()
                .zip(amps)
                .map(|(m, a)| m * a)
                .sum();
            acc += amps[i].conj() * row;
        }
        Ok(acc.re)
    }

    /// Max |ρ − ρ†| entry: 0 for exactly Hermitian matrices.
    pub fn hermiticity_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.dim {
            for j in i..self.dim {
                let d = (self.mat[i * self.dim + j] - self.mat[j * self.dim + i].conj()).norm();
                worst = worst.max(d);
            }
        }
        worst
    }

    /// Smallest eigenvalue, estimated by power iteration on c·I − ρ with c
    /// a Gershgorin upper bound. Deterministic; accurate to the stated
    /// tolerance for the Hermitian states this engine produces.
    pub fn min_eigenvalue_estimate(&self) -> f64 {
        let dim = self.dim;
        let c = (0..dim)
            .map(|i| {
                let row: f64 = (0..dim).map(|j| self.mat[i * dim + j].norm()).sum();
                self.mat[i * dim + i].re + row
            })
            .fold(0.0f64, f64::max)
            .max(1.0);
        let mut v: Vec<C64> = (0..dim)
            .map(|i| C64::new(1.0 + (i as f64) / (dim as f64), 0.0))
            .collect();
        let mut value = 0.0;
        for _ in 0..200 {
            // w = (cI − ρ)·v
            let mut w = vec![ZERO; dim];
            for i in 0..dim {
                let dot: C64 = self.mat[i * dim..(i + 1) * dim]
                    .iter()
                    .zip(&v)
                    .map(|(m, x)| m * x)
                    .sum();
                w[i] = C64::new(c, 0.0) * v[i] - dot;
            }
            let norm: f64 = w.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
            if norm < 1e-300 {
                return c;
            }
            let next = w
                .iter()
                .zip(&v)
                .map(|(wi, vi)| (vi.conj() * wi).re)
                .sum::<f64>()
                / v.iter().map(|x| x.norm_sqr()).sum::<f64>();
            for (wi, vi) in w.iter().zip(v.iter_mut()) {
                *vi = wi / C64::new(norm, 0.0);
            }
            if (next - value).abs() < 1e-13 * c.abs() {
                value = next;
                break;
            }
            value = next;
        }
        c - value
    }

    /// Check the state invariants: Hermitian within 1e-10, eigenvalues
    /// ≥ −1e-10, and a finite trace matching the carried weight.
    pub fn validate(&self) -> Result<()> {
        let defect = self.hermiticity_defect();
        if defect > 1e-10 {
            return Err(Error::InvalidState(format!(
                "hermiticity defect {defect:e}"
            )));
        }
        if !self.weight().is_finite() {
            return Err(Error::InvalidState("non-finite trace".into()));
        }
        let min_eig = self.min_eigenvalue_estimate();
        if min_eig < -1e-10 {
            return Err(Error::InvalidState(format!(
                "negative eigenvalue {min_eig:e}"
            )));
        }
        Ok(())
    }

    /// Max entry-wise distance to another state.
    pub fn max_deviation(&self, other: &Self) -> Result<f64> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch(format!(
                "{} vs {} qubits",
                self.n, other.n
            )));
        }
        Ok(self
            .mat
            .iter()
            .zip(&other.mat)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }
}

/// Extract the Bell-diagonal weights of a two-qubit pair inside a larger
/// state from the three correlation operators L ⊗ L^* (L ∈ {X, Y, Z}); on
/// (I⊗E)|Φ+⟩ each has expectation (−1)^{⟨L,E⟩}. The remaining qubits are
/// traced over, and the state is assumed normalized.
pub fn bell_diagonal_weights(state: &DenseState, qa: usize, qb: usize) -> Result<[f64; 4]> {
    let n = state.qubits();
    let mut t = [0.0f64; 3];
    for (k, label) in [PauliLabel::X, PauliLabel::Y, PauliLabel::Z]
        .iter()
        .enumerate()
    {
        let mut op = PauliString::identity(n);
        op.set(qa, *label)?;
        op.set(qb, *label)?;
        let e = state.expect_pauli(&op)?;
        // Y^* = −Y, so the Y correlation picks up a sign.
        t[k] = if *label == PauliLabel::Y { -e.re } else { e.re };
    }
    let (tx, ty, tz) = (t[0], t[1], t[2]);
    Ok([
        (1.0 + tx + ty + tz) / 4.0,
        (1.0 + tx - ty - tz) / 4.0,
        (1.0 - tx + ty - tz) / 4.0,
        (1.0 - tx - ty + tz) / 4.0,
    ])
}
